//! Free Lie algebras in the Lyndon basis and their free nilpotent quotients.
//!
//! A Lyndon word `w` stands for its standard bracketing `P_w`. Brackets of
//! basis elements are rewritten back into the basis with antisymmetry and
//! Jacobi; words longer than the nilpotency class are dropped.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{Rational, SparseVec};

/// A Lyndon word over the alphabet `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Vec<u8>);

impl LyndonWord {
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        is_lyndon(&letters).then_some(Self(letters))
    }

    pub fn letter(a: u8) -> Self {
        Self(vec![a])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w = uv` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        standard_split(&self.0).map(|(u, v)| (Self(u.to_vec()), Self(v.to_vec())))
    }

    /// Name with letters `a, b, c, ...` (or `x0.x1...` past 26 generators).
    pub fn name(&self, generators: usize) -> String {
        if generators <= 26 {
            self.0.iter().map(|&a| (b'a' + a) as char).collect()
        } else {
            self.0.iter().map(|a| format!("x{a}")).collect::<Vec<_>>().join(".")
        }
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(26))
    }
}

/// Strictly smaller than every proper rotation.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rotated) == Ordering::Less
    })
}

fn standard_split(w: &[u8]) -> Option<(&[u8], &[u8])> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len()).find(|&k| is_lyndon(&w[k..])).map(|k| w.split_at(k))
}

fn length_lex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All Lyndon words of length at most `max_len` on `m` letters, ordered by
/// length and then lexicographically.
pub fn lyndon_words(m: usize, max_len: usize) -> Vec<LyndonWord> {
    assert!(m >= 1 && m <= u8::MAX as usize, "alphabet size out of range");
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    // Duval's generation in lexicographic order.
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(LyndonWord(w.clone()));
        let period = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&(m as u8 - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| length_lex(&a.0, &b.0));
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`n` part of the free Lie algebra on `m`
/// generators: `(1/n) sum_{d | n} mu(d) m^(n/d)`.
pub fn witt_dimension(m: u64, n: u64) -> u64 {
    assert!(m >= 1 && n >= 1);
    let total: i128 =
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) as i128 * (m as i128).pow((n / d) as u32)).sum();
    (total / n as i128) as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Letter(u8),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn to_string_with(&self, generators: usize) -> String {
        match self {
            Bracketing::Letter(a) => LyndonWord::letter(*a).name(generators),
            Bracketing::Bracket(l, r) => {
                format!("[{},{}]", l.to_string_with(generators), r.to_string_with(generators))
            }
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(26))
    }
}

pub fn standard_bracketing(w: &LyndonWord) -> Bracketing {
    match w.standard_factorization() {
        None => Bracketing::Letter(w.0[0]),
        Some((u, v)) => Bracketing::Bracket(Box::new(standard_bracketing(&u)), Box::new(standard_bracketing(&v))),
    }
}

type LieComb = BTreeMap<Vec<u8>, Rational>;

fn add_into(acc: &mut LieComb, comb: &LieComb, c: &Rational) {
    for (w, x) in comb {
        let entry = acc.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += x * c;
        if entry.is_zero() {
            acc.remove(w);
        }
    }
}

/// Bracket of Lyndon basis elements in `L(V) / L^{>class}(V)`, memoized by
/// word pair.
pub struct LyndonBracket {
    class: usize,
    memo: HashMap<(Vec<u8>, Vec<u8>), LieComb>,
}

impl LyndonBracket {
    pub fn new(class: usize) -> Self {
        Self { class, memo: HashMap::new() }
    }

    /// `[P_u, P_v]` as a combination of Lyndon words.
    pub fn bracket(&mut self, u: &[u8], v: &[u8]) -> LieComb {
        if u.len() + v.len() > self.class || u == v {
            return LieComb::new();
        }
        if u > v {
            let mut out = self.bracket(v, u);
            out.values_mut().for_each(|x| *x = -x.clone());
            return out;
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = match standard_split(u) {
            Some((u1, u2)) if u2 < v => {
                // [[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]
                let mut acc = LieComb::new();
                for (w, c) in self.bracket(u2, v) {
                    let term = self.bracket(u1, &w);
                    add_into(&mut acc, &term, &c);
                }
                for (w, c) in self.bracket(u1, v) {
                    let term = self.bracket(&w, u2);
                    add_into(&mut acc, &term, &c);
                }
                acc
            }
            _ => {
                let mut uv = u.to_vec();
                uv.extend_from_slice(v);
                debug_assert!(is_lyndon(&uv));
                LieComb::from([(uv, Rational::one())])
            }
        };
        self.memo.insert(key, out.clone());
        out
    }
}

/// `L^{<=n}(V)` for `dim V = m` on the Lyndon basis.
#[derive(Clone, Debug)]
pub struct FreeNilpotentPresentation {
    pub generators: usize,
    pub class: usize,
    pub basis: Vec<LyndonWord>,
    /// `(i, j)` with `i < j` in basis order to the coefficients of `[b_i, b_j]`.
    pub brackets: BTreeMap<(usize, usize), SparseVec>,
}

impl FreeNilpotentPresentation {
    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(|w| w.name(self.generators)).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.basis.iter().map(|w| w.len() as u32).collect()
    }
}

pub fn free_nilpotent(m: usize, n: usize) -> FreeNilpotentPresentation {
    assert!(m >= 1 && n >= 1);
    let basis = lyndon_words(m, n);
    let index: HashMap<&[u8], usize> = basis.iter().enumerate().map(|(i, w)| (w.letters(), i)).collect();
    let mut rewriter = LyndonBracket::new(n);
    let mut brackets = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let comb = rewriter.bracket(basis[i].letters(), basis[j].letters());
            if comb.is_empty() {
                continue;
            }
            let v = SparseVec::from_entries(comb.into_iter().map(|(w, c)| (index[w.as_slice()], c)));
            brackets.insert((i, j), v);
        }
    }
    FreeNilpotentPresentation { generators: m, class: n, basis, brackets }
}
