//! The Chevalley–Eilenberg algebra `Λ g*`, its cohomology, and a
//! deformation retract onto the cohomology.
//!
//! Conventions: `(δα)(x ∧ y) = -α([x, y])` on generators, extended to
//! `Λ g*` as a degree-one derivation. Monomials are bitmasks over the dual
//! basis; degree `k` monomials are listed in lexicographic order of their
//! index tuples.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::lie::StructureConstants;
use crate::linalg::{self, Echelon, Rational, SparseMatrix, SparseVec, Subspace};
use crate::transfer::TransferData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("δ∘δ ≠ 0 from degree {degree}")]
    NotSquareZero { degree: usize },
    #[error("dimension {0} is too large for the exterior algebra")]
    TooLarge(usize),
    #[error("retract identity {identity} fails in degree {degree}")]
    RetractViolation { identity: &'static str, degree: usize },
}

/// Sign and product of two exterior monomials, `None` when they overlap.
pub fn wedge_monomials(a: u64, b: u64) -> Option<(bool, u64)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((swaps % 2 == 1, a | b))
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn combinations(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    generator_names: Vec<String>,
    generator_weights: Option<Vec<u32>>,
    bases: Vec<Vec<u64>>,
    index: Vec<HashMap<u64, usize>>,
    /// `differentials[k]: C^k -> C^{k+1}`
    differentials: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.bases.get(degree).map_or(0, Vec::len)
    }

    pub fn basis(&self, degree: usize) -> &[u64] {
        &self.bases[degree]
    }

    pub fn monomial_index(&self, mask: u64) -> Option<usize> {
        self.index.get(mask.count_ones() as usize)?.get(&mask).copied()
    }

    pub fn differential(&self, degree: usize) -> &SparseMatrix {
        &self.differentials[degree]
    }

    pub fn is_weighted(&self) -> bool {
        self.generator_weights.is_some()
    }

    pub fn generator_weights(&self) -> Option<&[u32]> {
        self.generator_weights.as_deref()
    }

    pub fn monomial_weight(&self, mask: u64) -> Option<u32> {
        let w = self.generator_weights.as_ref()?;
        Some(mask_indices(mask).iter().map(|&i| w[i]).sum())
    }

    /// Weight of a homogeneous element; `None` for zero, unweighted, or mixed.
    pub fn vector_weight(&self, degree: usize, v: &SparseVec) -> Option<u32> {
        let mut ws = v.indices().map(|i| self.monomial_weight(self.bases[degree][i]));
        let first = ws.next()??;
        ws.all(|w| w == Some(first)).then_some(first)
    }

    pub fn monomial_name(&self, mask: u64) -> String {
        if mask == 0 {
            return "1".into();
        }
        mask_indices(mask).iter().map(|&i| format!("{}*", self.generator_names[i])).collect::<Vec<_>>().join("^")
    }

    /// Product of homogeneous elements of degrees `p` and `q`.
    pub fn wedge(&self, p: usize, x: &SparseVec, q: usize, y: &SparseVec) -> SparseVec {
        if p + q > self.top_degree() {
            return SparseVec::new();
        }
        let mut terms = Vec::with_capacity(x.nnz() * y.nnz());
        for (i, a) in x.iter() {
            let ma = self.bases[p][i];
            for (j, b) in y.iter() {
                if let Some((neg, m)) = wedge_monomials(ma, self.bases[q][j]) {
                    let c = a * b;
                    terms.push((self.index[p + q][&m], if neg { -c } else { c }));
                }
            }
        }
        SparseVec::from_entries(terms)
    }

    pub fn apply_differential(&self, degree: usize, v: &SparseVec) -> SparseVec {
        self.differentials[degree].mul_vec(v)
    }
}

pub fn ce_complex(sc: &StructureConstants) -> Result<CochainComplex, ChevalleyError> {
    let n = sc.dim();
    if n > 24 {
        return Err(ChevalleyError::TooLarge(n));
    }
    let bases: Vec<Vec<u64>> = (0..=n).map(|k| combinations(n, k)).collect();
    let index: Vec<HashMap<u64, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();

    // δ e_k^* = -Σ_{i<j} c^k_{ij} e_i^* ∧ e_j^*
    let mut on_generators: Vec<Vec<(u64, Rational)>> = vec![Vec::new(); n];
    for ((i, j), v) in sc.stored_brackets() {
        for (k, c) in v.iter() {
            on_generators[k].push((1 << i | 1 << j, -c.clone()));
        }
    }

    let mut differentials = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let rows = if k < n { bases[k + 1].len() } else { 0 };
        let mut triplets = Vec::new();
        if k < n {
            for (col, &mask) in bases[k].iter().enumerate() {
                let members = mask_indices(mask);
                for (s, &g) in members.iter().enumerate() {
                    let prefix: u64 = members[..s].iter().map(|&i| 1u64 << i).sum();
                    let suffix: u64 = members[s + 1..].iter().map(|&i| 1u64 << i).sum();
                    for (two_form, c) in &on_generators[g] {
                        let Some((n1, left)) = wedge_monomials(prefix, *two_form) else { continue };
                        let Some((n2, full)) = wedge_monomials(left, suffix) else { continue };
                        let negative = (s % 2 == 1) ^ n1 ^ n2;
                        triplets.push((index[k + 1][&full], col, if negative { -c.clone() } else { c.clone() }));
                    }
                }
            }
        }
        differentials.push(SparseMatrix::from_triplets(rows, bases[k].len(), triplets));
    }

    let cx = CochainComplex {
        generator_names: sc.basis_names().to_vec(),
        generator_weights: sc.weights().map(<[u32]>::to_vec),
        bases,
        index,
        differentials,
    };
    for k in 0..n {
        if !cx.differentials[k + 1].mul(&cx.differentials[k]).is_zero() {
            return Err(ChevalleyError::NotSquareZero { degree: k });
        }
    }
    Ok(cx)
}

/// `C^k = H_k ⊕ B_k ⊕ A_k` for one degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub representatives: Vec<SparseVec>,
    /// Echelon basis of the coboundaries `B_k`.
    pub coboundaries: Vec<SparseVec>,
    /// Standard basis vectors spanning `A_k`, on which `δ` is injective.
    pub complement: Vec<SparseVec>,
    pub weights: Option<Vec<u32>>,
}

impl DegreeCohomology {
    pub fn betti(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyData {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeCohomology::betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti().iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Per degree, the number of classes of each weight.
    pub fn weighted_betti(&self) -> Option<Vec<BTreeMap<u32, usize>>> {
        self.degrees
            .iter()
            .map(|d| {
                let ws = d.weights.as_ref()?;
                let mut m = BTreeMap::new();
                for &w in ws {
                    *m.entry(w).or_insert(0) += 1;
                }
                Some(m)
            })
            .collect()
    }
}

pub fn cohomology(cx: &CochainComplex) -> CohomologyData {
    let top = cx.top_degree();
    let mut degrees = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let dim = cx.dim(k);
        let cocycles = linalg::kernel_basis(cx.differential(k));
        let coboundaries = if k == 0 { Subspace::zero(dim) } else { linalg::image_basis(cx.differential(k - 1)) };
        debug_assert!(cocycles.contains_subspace(&coboundaries));

        let mut ech = Echelon::new();
        for b in coboundaries.basis() {
            ech.insert(b.clone());
        }
        let mut representatives = Vec::new();
        for z in cocycles.basis() {
            let r = ech.reduce(z.clone());
            if !r.is_zero() {
                ech.insert(r.clone());
                representatives.push(r);
            }
        }
        let complement = linalg::quotient_section(dim, &cocycles).representatives();
        let weights = if cx.is_weighted() {
            Some(
                representatives
                    .iter()
                    .map(|r| cx.vector_weight(k, r).expect("cohomology representative is weight-homogeneous"))
                    .collect(),
            )
        } else {
            None
        };
        degrees.push(DegreeCohomology {
            representatives,
            coboundaries: coboundaries.basis().to_vec(),
            complement,
            weights,
        });
    }
    CohomologyData { degrees }
}

/// Builds `(i, p, h)` with `h = (δ|_A)^{-1}` on coboundaries and zero on `H ⊕ A`.
pub fn retract_data(cx: &CochainComplex, coh: &CohomologyData) -> Result<TransferData, ChevalleyError> {
    let top = cx.top_degree();
    let mut inclusion = Vec::with_capacity(top + 1);
    let mut projection = Vec::with_capacity(top + 1);
    let mut homotopy = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let d = &coh.degrees[k];
        let dim = cx.dim(k);
        let (nh, nb) = (d.representatives.len(), d.coboundaries.len());
        let mut columns = d.representatives.clone();
        columns.extend(d.coboundaries.iter().cloned());
        columns.extend(d.complement.iter().cloned());
        assert_eq!(columns.len(), dim, "H ⊕ B ⊕ A must fill degree {k}");
        let change = SparseMatrix::from_columns(dim, &columns);
        let coords = change.inverse().expect("H, B, A are independent");

        inclusion.push(SparseMatrix::from_columns(dim, &d.representatives));
        projection.push(coords.select_rows(0..nh));

        let h = if k == 0 {
            SparseMatrix::zero(0, dim)
        } else {
            let below = &coh.degrees[k - 1].complement;
            let delta = cx.differential(k - 1);
            let images: Vec<SparseVec> = below.iter().map(|a| delta.mul_vec(a)).collect();
            let restricted = SparseMatrix::from_columns(dim, &images);
            let preimages: Vec<SparseVec> = d
                .coboundaries
                .iter()
                .map(|b| {
                    let c = linalg::solve(&restricted, b).expect("δ maps A onto B");
                    let mut pre = SparseVec::new();
                    for (j, x) in c.iter() {
                        pre.add_scaled(&below[j], x);
                    }
                    pre
                })
                .collect();
            let lift = SparseMatrix::from_columns(cx.dim(k - 1), &preimages);
            lift.mul(&coords.select_rows(nh..nh + nb))
        };
        homotopy.push(h);
    }
    let td = TransferData::new(inclusion, projection, homotopy);
    td.check_side_conditions(cx)?;
    Ok(td)
}

impl TransferData {
    /// `p i = id`, `δh + hδ = id - i p`, `h h = 0`, `h i = 0`, `p h = 0`, exactly.
    pub fn check_side_conditions(&self, cx: &CochainComplex) -> Result<(), ChevalleyError> {
        let top = cx.top_degree();
        let fail = |identity, degree| Err(ChevalleyError::RetractViolation { identity, degree });
        for k in 0..=top {
            let (i, p, h) = (self.inclusion(k), self.projection(k), self.homotopy(k));
            if p.mul(i) != SparseMatrix::identity(i.cols()) {
                return fail("p∘i = id", k);
            }
            let n = cx.dim(k);
            let mut lhs = SparseMatrix::zero(n, n);
            if k > 0 {
                lhs = lhs.add(&cx.differential(k - 1).mul(h));
            }
            if k < top {
                lhs = lhs.add(&self.homotopy(k + 1).mul(cx.differential(k)));
            }
            if lhs != SparseMatrix::identity(n).sub(&i.mul(p)) {
                return fail("δh + hδ = id − i∘p", k);
            }
            if k > 0 {
                if !self.homotopy(k - 1).mul(h).is_zero() {
                    return fail("h∘h = 0", k);
                }
                if !h.mul(i).is_zero() {
                    return fail("h∘i = 0", k);
                }
                if !self.projection(k - 1).mul(h).is_zero() {
                    return fail("p∘h = 0", k);
                }
            }
        }
        Ok(())
    }
}

/// `∏_i (1 - t^{w_i})` has as coefficients the alternating counts of
/// weighted monomials; used by tests as a cheap independent check.
pub fn euler_coefficients_by_weight(cx: &CochainComplex) -> Option<BTreeMap<u32, i64>> {
    let mut out: BTreeMap<u32, i64> = BTreeMap::new();
    for k in 0..=cx.top_degree() {
        for &m in cx.basis(k) {
            let w = cx.monomial_weight(m)?;
            *out.entry(w).or_insert(0) += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    out.retain(|_, c| *c != 0);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::linalg::rat;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_monomials(0b001, 0b010), Some((false, 0b011)));
        assert_eq!(wedge_monomials(0b010, 0b001), Some((true, 0b011)));
        assert_eq!(wedge_monomials(0b101, 0b010), Some((true, 0b111)));
        assert_eq!(wedge_monomials(0b011, 0b010), None);
    }

    #[test]
    fn abelian_has_zero_differential() {
        for n in 1..=4 {
            let cx = ce_complex(&lie::abelian(n)).unwrap();
            for k in 0..=n {
                assert!(cx.differential(k).is_zero());
            }
            let betti = cohomology(&cx).betti();
            assert_eq!(betti, (0..=n).map(|k| binom(n, k)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn heisenberg_differential() {
        let cx = ce_complex(&lie::heisenberg(3).unwrap()).unwrap();
        let d1 = cx.differential(1);
        let e12 = cx.monomial_index(0b011).unwrap();
        assert_eq!(d1.mul_vec(&SparseVec::unit(2)), SparseVec::unit(e12).scale(&rat(-1)));
        assert!(d1.mul_vec(&SparseVec::unit(0)).is_zero());
        assert!(d1.mul_vec(&SparseVec::unit(1)).is_zero());
        assert_eq!(cohomology(&cx).betti(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn free_nilpotent_2_3_differential() {
        let sc = lie::free_nilpotent(2, 3).unwrap();
        let cx = ce_complex(&sc).unwrap();
        let d1 = cx.differential(1);
        let idx = |mask: u64| cx.monomial_index(mask).unwrap();
        // basis order a, b, ab, aab, abb
        assert_eq!(d1.mul_vec(&SparseVec::unit(3)), SparseVec::unit(idx(0b00101)).scale(&rat(-1)));
        // -ab*∧b* = +b*∧ab*
        assert_eq!(d1.mul_vec(&SparseVec::unit(4)), SparseVec::unit(idx(0b00110)));
        assert_eq!(d1.mul_vec(&SparseVec::unit(2)), SparseVec::unit(idx(0b00011)).scale(&rat(-1)));
        let betti = cohomology(&cx).betti();
        assert_eq!(&betti[..3], &[1, 2, 3]);
    }

    #[test]
    fn heisenberg_homotopy_in_degree_two() {
        let cx = ce_complex(&lie::heisenberg(3).unwrap()).unwrap();
        let coh = cohomology(&cx);
        let td = retract_data(&cx, &coh).unwrap();
        let h2 = td.homotopy(2);
        let e12 = cx.monomial_index(0b011).unwrap();
        let e13 = cx.monomial_index(0b101).unwrap();
        let e23 = cx.monomial_index(0b110).unwrap();
        assert_eq!(h2.mul_vec(&SparseVec::unit(e12)), SparseVec::unit(2).scale(&rat(-1)));
        assert!(h2.mul_vec(&SparseVec::unit(e13)).is_zero());
        assert!(h2.mul_vec(&SparseVec::unit(e23)).is_zero());
    }

    #[test]
    fn abelian_retract_is_trivial() {
        let cx = ce_complex(&lie::abelian(3)).unwrap();
        let coh = cohomology(&cx);
        let td = retract_data(&cx, &coh).unwrap();
        for k in 0..=3 {
            assert!(td.homotopy(k).is_zero());
            assert_eq!(td.inclusion(k).mul(td.projection(k)), SparseMatrix::identity(cx.dim(k)));
        }
    }

    #[test]
    fn zoo_retracts_satisfy_side_conditions() {
        for (name, sc) in lie::zoo() {
            let cx = ce_complex(&sc).unwrap();
            let coh = cohomology(&cx);
            retract_data(&cx, &coh).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn first_betti_is_abelianization() {
        for (name, sc) in lie::zoo() {
            let cx = ce_complex(&sc).unwrap();
            let dims = sc.lower_central_series().dims();
            assert_eq!(cohomology(&cx).betti()[1], dims[0] - dims[1], "{name}");
        }
    }
}
