//! Exact rational sparse linear algebra.
//!
//! Everything here works over `BigRational`; there is no floating point
//! anywhere in the crate. Vectors are sorted `(index, value)` lists with no
//! stored zeros, matrices are stored row-major as vectors of such rows.
//!
//! Echelon forms use leftmost pivots. Reduced row echelon forms of a row
//! space are unique, so every basis handed out by this module (kernels,
//! images, subspaces) is canonical and independent of elimination order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("right-hand side is not in the column span")]
pub struct NoSolution;

/// Sparse vector: strictly increasing indices, no zero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Rational::one())] }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rational)>>(it: I) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in it {
            *map.entry(i).or_insert_with(Rational::zero) += v;
        }
        Self { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Self { entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Rational) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, v * c));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + y * c;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, v * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Reindexes entries through `f`; images must be distinct.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    fn push_unchecked(&mut self, i: usize, v: Rational) {
        debug_assert!(self.entries.last().is_none_or(|(j, _)| *j < i));
        self.entries.push((i, v));
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", i, format_rational(v))?;
        }
        write!(f, "}}")
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(rows.iter().all(|r| r.max_index().is_none_or(|c| c < cols)));
        Self { rows: rows.len(), cols, data: rows }
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut data = vec![SparseVec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                assert!(r < rows, "column entry out of bounds");
                data[r].push_unchecked(c, v.clone());
            }
        }
        Self { rows, cols: columns.len(), data }
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in it {
            assert!(r < rows && c < cols, "triplet out of bounds");
            buckets[r].push((c, v));
        }
        Self { rows, cols, data: buckets.into_iter().map(SparseVec::from_entries).collect() }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self { rows: rows.len(), cols, data: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![SparseVec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push_unchecked(r, v.clone());
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            let (mut a, mut b) = (row.entries.iter().peekable(), v.entries.iter().peekable());
            while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
                match i.cmp(j) {
                    std::cmp::Ordering::Less => {
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        acc += x * y;
                        a.next();
                        b.next();
                    }
                }
            }
            if !acc.is_zero() {
                out.push_unchecked(r, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, v) in row.iter() {
                    acc.add_scaled(&other.data[k], v);
                }
                acc
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> SparseMatrix {
        SparseMatrix { rows: rows.len(), cols: self.cols, data: self.data[rows].to_vec() }
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut ech = Echelon::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            aug.push_unchecked(n + r, Rational::one());
            ech.insert(aug);
        }
        let rref = ech.into_rref();
        if rref.len() != n || rref.iter().enumerate().any(|(i, r)| r.leading().map(|(c, _)| c) != Some(i)) {
            return None;
        }
        let data = rref
            .into_iter()
            .map(|r| SparseVec {
                entries: r.entries.into_iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v)).collect(),
            })
            .collect();
        Some(SparseMatrix { rows: n, cols: n, data })
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|c| format_rational(&self.get(r, c))).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental row echelon form: each stored row has a distinct leading
/// column and leading coefficient one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, a)) = v.leading() {
            match self.pivots.get(&c) {
                Some(row) => {
                    let a = -a.clone();
                    v.add_scaled(row, &a);
                }
                None => break,
            }
        }
        v
    }

    /// Remainder of `v` with every pivot column cleared.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let hit = v
                .entries
                .iter()
                .find(|(c, _)| *c >= cursor && self.pivots.contains_key(c))
                .map(|(c, a)| (*c, a.clone()));
            match hit {
                Some((c, a)) => {
                    v.add_scaled(&self.pivots[&c], &-a);
                    cursor = c + 1;
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce_leading(v);
        match v.leading() {
            None => false,
            Some((c, a)) => {
                let inv = a.recip();
                let row = v.scale(&inv);
                self.pivots.insert(c, row);
                true
            }
        }
    }

    /// Reduced row echelon basis, sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (c, row) in self.pivots.into_iter().rev() {
            let mut row = row;
            let mut cursor = c + 1;
            loop {
                let hit = row
                    .entries
                    .iter()
                    .find(|(k, _)| *k >= cursor && done.contains_key(k))
                    .map(|(k, a)| (*k, a.clone()));
                match hit {
                    Some((k, a)) => {
                        row.add_scaled(&done[&k], &-a);
                        cursor = k + 1;
                    }
                    None => break,
                }
            }
            done.insert(c, row);
        }
        done.into_values().collect()
    }
}

/// A subspace of `Q^ambient_dim` held by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: (0..ambient_dim).map(SparseVec::unit).collect() }
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vectors: I) -> Self {
        let mut ech = Echelon::new();
        for v in vectors {
            assert!(v.max_index().is_none_or(|i| i < ambient_dim), "vector outside ambient space");
            ech.insert(v);
        }
        Self { ambient_dim, basis: ech.into_rref() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v.leading().expect("nonzero basis vector").0).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new();
        for v in &self.basis {
            let c = v.leading().unwrap().0;
            ech.pivots.insert(c, v.clone());
        }
        ech
    }

    /// Reduces `v` modulo the subspace; the result vanishes on every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for b in &self.basis {
            let (c, _) = b.leading().unwrap();
            let a = v.get(c);
            if !a.is_zero() {
                v.add_scaled(b, &-a);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut ech = self.echelon();
        for v in &other.basis {
            ech.insert(v.clone());
        }
        Subspace { ambient_dim: self.ambient_dim, basis: ech.into_rref() }
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut ech = Echelon::new();
    for row in m.row_vectors() {
        ech.insert(row.clone());
    }
    ech.rank()
}

/// Echelonized basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let mut ech = Echelon::new();
    for row in m.row_vectors() {
        ech.insert(row.clone());
    }
    let rref = ech.into_rref();
    let pivot_cols: Vec<usize> = rref.iter().map(|r| r.leading().unwrap().0).collect();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let mut kernel: BTreeMap<usize, Vec<(usize, Rational)>> =
        (0..m.cols()).filter(|c| !is_pivot[*c]).map(|c| (c, vec![(c, Rational::one())])).collect();
    for (row, &p) in rref.iter().zip(&pivot_cols) {
        for (c, v) in row.iter() {
            if c != p {
                kernel.get_mut(&c).expect("rref entry off a free column").push((p, -v.clone()));
            }
        }
    }
    Subspace::span(m.cols(), kernel.into_values().map(SparseVec::from_entries))
}

/// Subspace spanned by the columns of `m`.
pub fn image_basis(m: &SparseMatrix) -> Subspace {
    Subspace::span(m.rows(), m.columns())
}

/// A complement of a subspace by standard basis vectors, with the
/// projection onto the quotient it realizes.
#[derive(Clone, Debug)]
pub struct QuotientSection {
    sub: Subspace,
    free: Vec<usize>,
}

impl QuotientSection {
    pub fn representatives(&self) -> Vec<SparseVec> {
        self.free.iter().map(|&c| SparseVec::unit(c)).collect()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of `v` on the representatives, modulo the subspace.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.sub.reduce(v);
        SparseVec::from_entries(self.free.iter().enumerate().map(|(k, &c)| (k, r.get(c))))
    }
}

pub fn quotient_section(ambient_dim: usize, sub: &Subspace) -> QuotientSection {
    assert_eq!(ambient_dim, sub.ambient_dim(), "subspace lives in a different space");
    let pivots = sub.pivots();
    let free = (0..ambient_dim).filter(|c| pivots.binary_search(c).is_err()).collect();
    QuotientSection { sub: sub.clone(), free }
}

/// Some `x` with `m x = b`.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Result<SparseVec, NoSolution> {
    assert!(b.max_index().is_none_or(|i| i < m.rows()), "rhs length mismatch");
    let n = m.cols();
    let mut ech = Echelon::new();
    for (r, row) in m.row_vectors().iter().enumerate() {
        let mut aug = row.clone();
        let rhs = b.get(r);
        if !rhs.is_zero() {
            aug.push_unchecked(n, rhs);
        }
        ech.insert(aug);
    }
    if ech.pivots.contains_key(&n) {
        return Err(NoSolution);
    }
    let rref = ech.into_rref();
    Ok(SparseVec::from_entries(rref.iter().filter_map(|row| {
        let (p, _) = row.leading().unwrap();
        let v = row.get(n);
        (!v.is_zero()).then_some((p, v))
    })))
}
