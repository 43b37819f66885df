//! Partitions, Schur polynomials, the Littlewood identity
//! `∏(1 - x_i) ∏_{i<j}(1 - x_i x_j) = Σ_λ (-1)^{(|λ| + r(λ))/2} s_λ`
//! over self-conjugate `λ`, and graded Euler characteristics.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chevalley::{ce_complex, cohomology, ChevalleyError};
use crate::lie::StructureConstants;
use crate::linalg::{format_rational, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Drops zero parts; `None` if the parts increase somewhere.
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        let parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.windows(2).all(|w| w[0] >= w[1]).then_some(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols).map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32).collect();
        Self { parts }
    }

    /// Number of diagonal boxes.
    pub fn rank(&self) -> u32 {
        self.parts.iter().enumerate().filter(|(i, &p)| p as usize > *i).count() as u32
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Self-conjugate partitions of size at most `max_size`, built from their
/// distinct odd diagonal hook lengths; sorted by size, then parts.
pub fn self_conjugate_partitions(max_size: u32) -> Vec<Partition> {
    fn rec(max_hook: u32, left: u32, hooks: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(from_hooks(hooks));
        let mut h = max_hook.min(left);
        if h.is_multiple_of(2) {
            h = h.saturating_sub(1);
        }
        while h >= 1 {
            hooks.push(h);
            rec(h.saturating_sub(2), left - h, hooks, out);
            hooks.pop();
            if h < 2 {
                break;
            }
            h -= 2;
        }
    }
    fn from_hooks(hooks: &[u32]) -> Partition {
        let arms: Vec<u32> = hooks.iter().map(|h| (h - 1) / 2).collect();
        let r = arms.len() as u32;
        let mut parts: Vec<u32> = arms.iter().enumerate().map(|(i, a)| a + i as u32 + 1).collect();
        let longest = arms.first().map_or(0, |a| a + 1);
        for i in r + 1..=longest {
            parts.push(arms.iter().enumerate().filter(|(k, &a)| a + *k as u32 + 1 >= i).count() as u32);
        }
        Partition { parts }
    }
    let mut out = Vec::new();
    rec(max_size, max_size, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts)));
    out
}

/// Polynomial in `vars` variables with exact coefficients, optionally
/// truncated above a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: usize,
    truncation: Option<u32>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SparsePolynomial {
    pub fn zero(vars: usize, truncation: Option<u32>) -> Self {
        Self { vars, truncation, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize, truncation: Option<u32>) -> Self {
        Self::monomial(vars, truncation, vec![0; vars], Rational::one())
    }

    pub fn monomial(vars: usize, truncation: Option<u32>, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), vars);
        let mut p = Self::zero(vars, truncation);
        p.add_term(exponents, c);
        p
    }

    /// `x_i`, zero-based.
    pub fn variable(vars: usize, truncation: Option<u32>, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, truncation, e, Rational::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn keeps(&self, exponents: &[u32]) -> bool {
        self.truncation.is_none_or(|t| exponents.iter().sum::<u32>() <= t)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if c.is_zero() || !self.keeps(&exponents) {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn combined_truncation(&self, other: &Self) -> Option<u32> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self { truncation: self.combined_truncation(other), ..self.clone() };
        out.terms.retain(|e, _| out.truncation.is_none_or(|t| e.iter().sum::<u32>() <= t));
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.vars, self.truncation);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// Product, dropping terms above the truncation degree as they arise.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars, self.combined_truncation(other));
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(g, a * b);
            }
        }
        out
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let mut out = Self::zero(self.vars, Some(self.truncation.map_or(degree, |t| t.min(degree))));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Exact quotient by `divisor`, or `None` if it does not divide.
    /// Untruncated polynomials only.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(self.truncation.is_none() && divisor.truncation.is_none());
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars, None);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let q_e: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let q = Self::monomial(self.vars, None, q_e, c / lead_c);
            rem = rem.sub(&q.mul(divisor));
            quot = quot.add(&q);
        }
        Some(quot)
    }

    /// Terms in display order: ascending total degree, then descending
    /// exponent vectors.
    pub fn ordered_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        t
    }
}

fn monomial_text(e: &[u32], single_var_name: Option<&str>) -> String {
    let mut factors = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        let name = single_var_name.map_or_else(|| format!("x{}", i + 1), str::to_string);
        match k {
            0 => {}
            1 => factors.push(name),
            _ => factors.push(format!("{name}^{k}")),
        }
    }
    factors.join("*")
}

impl SparsePolynomial {
    /// Text form; univariate polynomials may name their variable.
    pub fn to_string_with(&self, single_var_name: Option<&str>) -> String {
        let terms = self.ordered_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono = monomial_text(e, single_var_name.filter(|_| self.vars == 1));
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => format_rational(&mag),
                (false, true) => mono,
                (false, false) => format!("{}*{}", format_rational(&mag), mono),
            };
            match (k, c.is_negative()) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(None))
    }
}

/// `s_λ(x_1, …, x_m)` by enumerating semistandard tableaux, truncated at
/// total degree `degree_bound`.
pub fn schur(lambda: &Partition, m: usize, degree_bound: u32) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(m, Some(degree_bound));
    if lambda.len() > m || lambda.size() > degree_bound {
        return out;
    }
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut filling: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    fn rec(cells: &[(usize, usize)], k: usize, m: usize, filling: &mut Vec<Vec<usize>>, out: &mut SparsePolynomial) {
        if k == cells.len() {
            let mut e = vec![0u32; m];
            for row in filling.iter() {
                for &v in row {
                    e[v] += 1;
                }
            }
            out.add_term(e, Rational::one());
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { filling[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { filling[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..m {
            filling[r][c] = v;
            rec(cells, k + 1, m, filling, out);
        }
    }
    rec(&cells, 0, m, &mut filling, &mut out);
    out
}

fn permutations(m: usize) -> Vec<(Vec<usize>, bool)> {
    if m == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            // inserting at pos passes m - 1 - pos larger positions
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

fn alternant(exponents: &[u32]) -> SparsePolynomial {
    let m = exponents.len();
    let mut out = SparsePolynomial::zero(m, None);
    for (perm, odd) in permutations(m) {
        let e: Vec<u32> = perm.iter().map(|&i| exponents[i]).collect();
        out.add_term(e, if odd { rat(-1) } else { rat(1) });
    }
    out
}

/// `s_λ = a_{λ+δ} / a_δ`, the bialternant formula.
pub fn schur_bialternant(lambda: &Partition, m: usize) -> SparsePolynomial {
    if lambda.len() > m {
        return SparsePolynomial::zero(m, None);
    }
    let delta: Vec<u32> = (0..m as u32).rev().collect();
    let num: Vec<u32> = (0..m).map(|i| delta[i] + lambda.parts().get(i).copied().unwrap_or(0)).collect();
    alternant(&num).div_exact(&alternant(&delta)).expect("the Vandermonde determinant divides every alternant")
}

/// `∏_i (1 - x_i) ∏_{i<j} (1 - x_i x_j)`, truncated.
pub fn littlewood_product(m: usize, degree_bound: u32) -> SparsePolynomial {
    let t = Some(degree_bound);
    let one = SparsePolynomial::one(m, t);
    let mut p = one.clone();
    for i in 0..m {
        p = p.mul(&one.sub(&SparsePolynomial::variable(m, t, i)));
    }
    for i in 0..m {
        for j in i + 1..m {
            let xij = SparsePolynomial::variable(m, t, i).mul(&SparsePolynomial::variable(m, t, j));
            p = p.mul(&one.sub(&xij));
        }
    }
    p
}

/// `Σ (-1)^{(|λ| + r(λ))/2} s_λ` over self-conjugate `λ`, truncated.
pub fn littlewood_schur_sum(m: usize, degree_bound: u32) -> SparsePolynomial {
    let mut sum = SparsePolynomial::zero(m, Some(degree_bound));
    for lambda in self_conjugate_partitions(degree_bound) {
        let exponent = (lambda.size() + lambda.rank()) / 2;
        let s = schur(&lambda, m, degree_bound);
        sum = if exponent % 2 == 1 { sum.sub(&s) } else { sum.add(&s) };
    }
    sum
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LittlewoodReport {
    pub product: SparsePolynomial,
    pub schur_sum: SparsePolynomial,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("sides differ at exponent {exponents:?}: {product} vs {schur_sum}")]
pub struct Mismatch {
    pub exponents: Vec<u32>,
    pub product: String,
    pub schur_sum: String,
}

/// First differing term in display order.
pub fn first_difference(a: &SparsePolynomial, b: &SparsePolynomial) -> Option<Mismatch> {
    let diff = a.sub(b);
    let (e, _) = diff.ordered_terms().into_iter().next()?;
    Some(Mismatch {
        exponents: e.clone(),
        product: format_rational(&a.coefficient(e)),
        schur_sum: format_rational(&b.coefficient(e)),
    })
}

pub fn littlewood_check(m: usize, degree_bound: u32) -> Result<LittlewoodReport, Mismatch> {
    let product = littlewood_product(m, degree_bound);
    let schur_sum = littlewood_schur_sum(m, degree_bound);
    match first_difference(&product, &schur_sum) {
        Some(mismatch) => Err(mismatch),
        None => Ok(LittlewoodReport { product, schur_sum }),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("the algebra carries no weight grading")]
    UnweightedInput,
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `∏_i (1 - t^{w_i})`.
    pub product: SparsePolynomial,
    /// `Σ_k (-1)^k Σ_w dim H^k_w t^w`.
    pub cohomology: SparsePolynomial,
}

impl EulerReport {
    pub fn agrees(&self) -> bool {
        self.product == self.cohomology
    }
}

pub fn graded_euler(sc: &StructureConstants) -> Result<EulerReport, EulerError> {
    let weights = sc.weights().ok_or(EulerError::UnweightedInput)?;
    let one = SparsePolynomial::one(1, None);
    let mut product = one.clone();
    for &w in weights {
        product = product.mul(&one.sub(&SparsePolynomial::monomial(1, None, vec![w], Rational::one())));
    }
    let cx = ce_complex(sc)?;
    let weighted = cohomology(&cx).weighted_betti().expect("weighted complex");
    let mut coh = SparsePolynomial::zero(1, None);
    for (k, by_weight) in weighted.iter().enumerate() {
        for (&w, &b) in by_weight {
            let c = rat(b as i64);
            coh.add_term(vec![w], if k % 2 == 1 { -c } else { c });
        }
    }
    Ok(EulerReport { product, cohomology: coh })
}
