//! Weight components of bar constructions, and the PBW comparison for the
//! bar construction of `C^{>0}(g)`.
//!
//! A bar word `sx_1 ⊗ … ⊗ sx_n` has degree `Σ(|x_i| - 1)`. The differential
//! is the coderivation extending components `b_s`:
//!
//! ```text
//! d(sx_1 ⊗ … ⊗ sx_n) = Σ_{r,s} (-1)^{Σ_{i≤r}(|x_i| - 1)} sx_1 ⊗ … ⊗ sx_r ⊗ b_s(sx_{r+1} … sx_{r+s}) ⊗ …
//! ```
//!
//! For `C^{>0}(g)` the only components are `b_1(sa) = s(δa)` and
//! `b_2(sa ⊗ sb) = (-1)^{|a|} s(a ∧ b)`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::chevalley::{ce_complex, ChevalleyError, CochainComplex};
use crate::lie::StructureConstants;
use crate::linalg::{self, SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("the algebra carries no weight grading")]
    UnweightedInput,
    #[error("the algebra is not nilpotent")]
    NotNilpotent,
    #[error("letter {0} has weight zero, so weight components are infinite")]
    WeightZeroLetter(usize),
    #[error("d∘d ≠ 0 on the bar construction in weight {weight}, degree {degree}")]
    NotSquareZero { weight: u32, degree: usize },
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

/// Components `s⁻¹ b_s s^{⊗s}` of a bar differential on a graded alphabet.
pub trait BarComponents {
    /// `(degree, weight)` of each letter; degrees are at least one.
    fn letter_grades(&self) -> &[(usize, u32)];
    fn max_arity(&self) -> usize;
    /// Value of `s⁻¹ b_s` on the suspended word, as a vector over letters.
    fn component(&self, word: &[usize]) -> SparseVec;
}

/// The weight-`w` part of a bar construction, split by bar degree.
#[derive(Clone, Debug)]
pub struct BarWeightComplex {
    pub weight: u32,
    /// `words[j]` lists the words of bar degree `j`.
    pub words: Vec<Vec<Vec<usize>>>,
    /// `parts[j][s]`: contribution of `b_s` to `d: B^j → B^{j+1}`.
    pub parts: Vec<BTreeMap<usize, SparseMatrix>>,
}

impl BarWeightComplex {
    pub fn top_degree(&self) -> usize {
        self.words.len().saturating_sub(1)
    }

    pub fn dim(&self, j: usize) -> usize {
        self.words.get(j).map_or(0, Vec::len)
    }

    pub fn differential(&self, j: usize) -> SparseMatrix {
        let rows = self.dim(j + 1);
        let mut d = SparseMatrix::zero(rows, self.dim(j));
        if let Some(parts) = self.parts.get(j) {
            for m in parts.values() {
                d = d.add(m);
            }
        }
        d
    }

    pub fn part(&self, j: usize, arity: usize) -> Option<&SparseMatrix> {
        self.parts.get(j)?.get(&arity)
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.words.len()).map(|j| linalg::rank(&self.differential(j))).collect()
    }

    /// Dimensions of cohomology by bar degree.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.words.len()).map(|j| self.dim(j) - ranks[j] - if j > 0 { ranks[j - 1] } else { 0 }).collect()
    }
}

fn bar_degree(grades: &[(usize, u32)], word: &[usize]) -> usize {
    word.iter().map(|&c| grades[c].0 - 1).sum()
}

fn words_of_weight(grades: &[(usize, u32)], w: u32) -> Vec<Vec<Vec<usize>>> {
    let mut by_degree: Vec<Vec<Vec<usize>>> = Vec::new();
    fn rec(grades: &[(usize, u32)], left: u32, word: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if left == 0 {
            let d = bar_degree(grades, word);
            if out.len() <= d {
                out.resize(d + 1, Vec::new());
            }
            out[d].push(word.clone());
            return;
        }
        for (c, &(_, wc)) in grades.iter().enumerate() {
            if wc <= left {
                word.push(c);
                rec(grades, left - wc, word, out);
                word.pop();
            }
        }
    }
    if w == 0 {
        return vec![vec![Vec::new()]];
    }
    rec(grades, w, &mut Vec::new(), &mut by_degree);
    by_degree
}

/// Assembles the weight-`w` component and asserts `d∘d = 0`.
pub fn build_bar<B: BarComponents>(coder: &B, w: u32) -> Result<BarWeightComplex, BarError> {
    let grades = coder.letter_grades();
    if let Some(c) = grades.iter().position(|g| g.1 == 0) {
        return Err(BarError::WeightZeroLetter(c));
    }
    let words = words_of_weight(grades, w);
    let index: Vec<HashMap<&[usize], usize>> =
        words.iter().map(|ws| ws.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect()).collect();
    let mut cache: HashMap<Vec<usize>, SparseVec> = HashMap::new();
    let mut parts = Vec::with_capacity(words.len());
    for (j, ws) in words.iter().enumerate() {
        let mut triplets: BTreeMap<usize, Vec<(usize, usize, linalg::Rational)>> = BTreeMap::new();
        for (col, word) in ws.iter().enumerate() {
            let mut prefix = 0usize;
            for r in 0..word.len() {
                if r > 0 {
                    prefix += grades[word[r - 1]].0 - 1;
                }
                for s in 1..=coder.max_arity().min(word.len() - r) {
                    let slice = &word[r..r + s];
                    let value = cache.entry(slice.to_vec()).or_insert_with(|| coder.component(slice));
                    if value.is_zero() {
                        continue;
                    }
                    let mut target = Vec::with_capacity(word.len() - s + 1);
                    target.extend_from_slice(&word[..r]);
                    target.push(0);
                    target.extend_from_slice(&word[r + s..]);
                    for (letter, c) in value.iter() {
                        target[r] = letter;
                        let row = index
                            .get(j + 1)
                            .and_then(|m| m.get(target.as_slice()))
                            .copied()
                            .expect("differential leaves the weight component");
                        let c = if prefix % 2 == 1 { -c.clone() } else { c.clone() };
                        triplets.entry(s).or_default().push((row, col, c));
                    }
                }
            }
        }
        let rows = words.get(j + 1).map_or(0, Vec::len);
        parts.push(triplets.into_iter().map(|(s, t)| (s, SparseMatrix::from_triplets(rows, ws.len(), t))).collect());
    }
    let bar = BarWeightComplex { weight: w, words, parts };
    for j in 0..bar.words.len().saturating_sub(2) {
        if !bar.differential(j + 1).mul(&bar.differential(j)).is_zero() {
            return Err(BarError::NotSquareZero { weight: w, degree: j });
        }
    }
    Ok(bar)
}

/// `C^{>0}(g)` as an alphabet of exterior monomials of positive degree.
pub struct CeAugmentationIdeal {
    cx: CochainComplex,
    grades: Vec<(usize, u32)>,
    /// `(degree, position in that degree)` of each letter.
    letters: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl CeAugmentationIdeal {
    pub fn new(sc: &StructureConstants) -> Result<Self, BarError> {
        if sc.weights().is_none() {
            return Err(BarError::UnweightedInput);
        }
        if !sc.is_nilpotent() {
            return Err(BarError::NotNilpotent);
        }
        let cx = ce_complex(sc)?;
        let mut grades = Vec::new();
        let mut letters = Vec::new();
        let mut offsets = vec![0];
        for k in 1..=cx.top_degree() {
            offsets.push(letters.len());
            for (i, &m) in cx.basis(k).iter().enumerate() {
                grades.push((k, cx.monomial_weight(m).expect("weighted")));
                letters.push((k, i));
            }
        }
        Ok(Self { cx, grades, letters, offsets })
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.cx
    }

    pub fn letter_name(&self, c: usize) -> String {
        let (k, i) = self.letters[c];
        self.cx.monomial_name(self.cx.basis(k)[i])
    }
}

impl BarComponents for CeAugmentationIdeal {
    fn letter_grades(&self) -> &[(usize, u32)] {
        &self.grades
    }

    fn max_arity(&self) -> usize {
        2
    }

    fn component(&self, word: &[usize]) -> SparseVec {
        match *word {
            [a] => {
                let (k, i) = self.letters[a];
                if k == self.cx.top_degree() {
                    return SparseVec::new();
                }
                let off = self.offsets[k + 1];
                self.cx.apply_differential(k, &SparseVec::unit(i)).remap(|r| r + off)
            }
            [a, b] => {
                let ((p, i), (q, j)) = (self.letters[a], self.letters[b]);
                if p + q > self.cx.top_degree() {
                    return SparseVec::new();
                }
                let prod = self.cx.wedge(p, &SparseVec::unit(i), q, &SparseVec::unit(j));
                let off = self.offsets[p + q];
                let v = prod.remap(|r| r + off);
                if p % 2 == 1 {
                    v.neg()
                } else {
                    v
                }
            }
            _ => SparseVec::new(),
        }
    }
}

/// The bar construction of `C^{>0}(g)` in weight `w`.
pub fn bar_weight_complex(sc: &StructureConstants, w: u32) -> Result<BarWeightComplex, BarError> {
    build_bar(&CeAugmentationIdeal::new(sc)?, w)
}

/// Coefficients of `∏_i 1/(1 - t^{w_i})` up to `t^max`.
pub fn sym_dims(weights: &[u32], max: u32) -> Vec<u64> {
    let mut c = vec![0u64; max as usize + 1];
    c[0] = 1;
    for &w in weights {
        let w = w as usize;
        for t in w..c.len() {
            c[t] += c[t - w];
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwRow {
    pub weight: u32,
    pub h0: usize,
    pub sym: u64,
    /// Dimensions of `H^j` for `j = 1, 2, …` up to the top bar degree.
    pub higher: Vec<usize>,
}

impl PbwRow {
    pub fn ok(&self) -> bool {
        self.h0 as u64 == self.sym && self.higher.iter().all(|&d| d == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwReport {
    pub rows: Vec<PbwRow>,
}

impl PbwReport {
    pub fn verdict(&self) -> bool {
        self.rows.iter().all(PbwRow::ok)
    }
}

pub fn pbw_check(sc: &StructureConstants, max_weight: u32) -> Result<PbwReport, BarError> {
    let ideal = CeAugmentationIdeal::new(sc)?;
    let sym = sym_dims(sc.weights().expect("checked by CeAugmentationIdeal"), max_weight);
    let mut rows = Vec::new();
    for w in 0..=max_weight {
        let bar = build_bar(&ideal, w)?;
        let dims = bar.cohomology_dims();
        rows.push(PbwRow {
            weight: w,
            h0: dims.first().copied().unwrap_or(0),
            sym: sym[w as usize],
            higher: dims.get(1..).map(<[usize]>::to_vec).unwrap_or_default(),
        });
    }
    Ok(PbwReport { rows })
}
