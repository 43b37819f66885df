//! Generation of a minimal A∞-algebra by its degree-one part.
//!
//! `S¹ = H¹` and `S^k` is spanned by `m_j(S^{p_1} ⊗ … ⊗ S^{p_j})` over all
//! `j ≥ 2` and `p_i ≥ 1` with `Σ p_i = k + j - 2`. The algebra is generated
//! in degree one when `S^k = H^k` for every `k ≥ 1`. A second, independent
//! test is the vanishing of the tensor-length-one part of the cohomology of
//! the bar construction in positive degrees.
//!
//! On weighted algebras every input has weight at least one, so the
//! arities that can contribute are bounded; the exact bound is found by a
//! feasibility search over the `(degree, weight)` support of `H^{≥1}`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::bar_pbw::{build_bar, BarComponents, BarError};
use crate::linalg::{self, Echelon, Rational, SparseVec, Subspace};
use crate::transfer::{for_each_tuple, tuple_feasible, Grade, MinimalAInfinity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerationError {
    #[error("the minimal model carries no weight grading")]
    UnweightedInput,
    #[error("operations up to arity {have} are available but arity {need} can contribute")]
    ArityBoundInsufficient { have: usize, need: usize },
    #[error(transparent)]
    Bar(#[from] BarError),
}

/// An element of some `S^k`, built from degree-one classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Generator(usize),
    /// `m_arity` applied to earlier elements, referenced by position.
    Apply {
        arity: usize,
        args: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct Element {
    pub degree: usize,
    pub expr: Expr,
    /// Value as a vector over classes.
    pub value: SparseVec,
}

/// A class of `H^k` written as a combination of elements.
#[derive(Clone, Debug)]
pub struct ClassCertificate {
    pub class: usize,
    pub combination: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim_h: usize,
    pub dim_s: usize,
    /// Classes spanning a complement of `S^k` in `H^k`.
    pub cokernel: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Generated,
    NotGenerated,
    /// `S ≠ H` using arities up to `arity_bound`, and larger arities could
    /// still contribute (`required` is `None` when no bound is known).
    ArityBoundInsufficient {
        arity_bound: usize,
        required: Option<usize>,
    },
}

impl Verdict {
    pub fn is_generated(&self) -> bool {
        *self == Verdict::Generated
    }
}

#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub arity_bound: usize,
    /// Largest arity that can contribute to any `S^k`, when one exists.
    pub required_arity: Option<usize>,
    pub elements: Vec<Element>,
    pub degrees: Vec<DegreeReport>,
    pub certificates: Vec<ClassCertificate>,
    pub verdict: Verdict,
}

impl GenerationReport {
    /// Weights of classes outside `S`, with multiplicity.
    pub fn cokernel_weights(&self, ma: &MinimalAInfinity) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for d in &self.degrees {
            for &c in &d.cokernel {
                *out.entry(ma.class_weight(c).unwrap_or(0)).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Largest `j ≥ 2` for which `m_j` on positive-degree classes can reach a
/// class of degree at least two; `None` if arbitrarily large `j` can.
pub fn required_arity(ma: &MinimalAInfinity) -> Option<usize> {
    let positive = ma.positive_classes();
    if positive.is_empty() {
        return Some(2);
    }
    let max_weight = ma.max_class_weight()? as usize;
    let grades = ma.grades();
    let higher: Vec<Grade> = ma.support().into_iter().filter(|&(d, _)| d >= 2).collect();
    let mut best = 2;
    for j in 2..=max_weight.max(2) {
        let targets: BTreeSet<Grade> = higher.iter().map(|&(d, w)| (d + j - 2, w)).collect();
        if tuple_feasible(&grades, &positive, j, &targets) {
            best = j;
        }
    }
    Some(best)
}

pub fn span_closure(ma: &MinimalAInfinity) -> GenerationReport {
    span_closure_bounded(ma, ma.arity_bound())
}

/// The closure using only `m_j` with `j ≤ bound`.
#[allow(clippy::needless_range_loop)]
pub fn span_closure_bounded(ma: &MinimalAInfinity, bound: usize) -> GenerationReport {
    let bound = bound.min(ma.arity_bound());
    let required = required_arity(ma);
    let used = required.map_or(bound, |r| bound.min(r));
    let top = ma.top_degree();

    let mut elements: Vec<Element> = Vec::new();
    let mut degrees = Vec::new();
    let mut certificates = Vec::new();
    let mut grades: Vec<Grade> = Vec::new();

    for c in ma.classes_in_degree(1) {
        elements.push(Element { degree: 1, expr: Expr::Generator(c), value: SparseVec::unit(c) });
        grades.push((1, ma.class_weight(c).unwrap_or(0)));
    }
    let mut span_in_degree: Vec<Echelon> = vec![Echelon::new(); top + 1];
    for e in &elements {
        span_in_degree[1].insert(e.value.clone());
    }

    for k in 2..=top {
        let dim_h = ma.betti()[k];
        let mut ech = Echelon::new();
        if dim_h > 0 {
            let candidates: Vec<usize> = (0..elements.len()).filter(|&e| elements[e].degree < k).collect();
            let weights_k: BTreeSet<u32> = ma.classes_in_degree(k).map(|c| ma.class_weight(c).unwrap_or(0)).collect();
            'arity: for j in 2..=used {
                if ech.rank() == dim_h {
                    break;
                }
                let targets: BTreeSet<Grade> = weights_k.iter().map(|&w| (k + j - 2, w)).collect();
                let mut found = Vec::new();
                let mut full = false;
                for_each_tuple(&grades, &candidates, j, &targets, |tuple| {
                    if full {
                        return;
                    }
                    let args: Vec<SparseVec> = tuple.iter().map(|&e| elements[e].value.clone()).collect();
                    let v = ma.apply(j, &args);
                    if !v.is_zero() && ech.insert(v.clone()) {
                        found.push((tuple.to_vec(), v));
                        full = ech.rank() == dim_h;
                    }
                });
                for (args, value) in found {
                    let w = ma.class_weight(value.leading().unwrap().0).unwrap_or(0);
                    elements.push(Element { degree: k, expr: Expr::Apply { arity: j, args }, value });
                    grades.push((k, w));
                }
                if full {
                    break 'arity;
                }
            }
        }
        let offset = ma.classes_in_degree(k).start;
        let local = Subspace::span(dim_h, ech_rows(&ech).into_iter().map(|v| v.remap(|c| c - offset)));
        let cokernel: Vec<usize> = linalg::quotient_section(dim_h, &local)
            .representatives()
            .iter()
            .map(|v| v.leading().unwrap().0 + offset)
            .collect();
        degrees.push(DegreeReport { degree: k, dim_h, dim_s: ech.rank(), cokernel });
        span_in_degree[k] = ech;
    }

    // degree one is generated by definition
    degrees.insert(
        0,
        DegreeReport {
            degree: 1,
            dim_h: ma.betti().get(1).copied().unwrap_or(0),
            dim_s: span_in_degree.get(1).map_or(0, Echelon::rank),
            cokernel: Vec::new(),
        },
    );

    for k in 1..=top {
        let members: Vec<usize> = (0..elements.len()).filter(|&e| elements[e].degree == k).collect();
        if members.is_empty() {
            continue;
        }
        let columns: Vec<SparseVec> = members.iter().map(|&e| elements[e].value.clone()).collect();
        let m = linalg::SparseMatrix::from_columns(ma.num_classes(), &columns);
        for c in ma.classes_in_degree(k) {
            if let Ok(x) = linalg::solve(&m, &SparseVec::unit(c)) {
                certificates.push(ClassCertificate {
                    class: c,
                    combination: x.iter().map(|(i, a)| (members[i], a.clone())).collect(),
                });
            }
        }
    }

    let complete = degrees.iter().all(|d| d.cokernel.is_empty());
    let no_degree_one = ma.betti().get(1).copied().unwrap_or(0) == 0;
    let verdict = if complete {
        Verdict::Generated
    } else if no_degree_one || required.is_some_and(|r| r <= bound) {
        Verdict::NotGenerated
    } else {
        Verdict::ArityBoundInsufficient { arity_bound: bound, required }
    };
    GenerationReport { arity_bound: bound, required_arity: required, elements, degrees, certificates, verdict }
}

fn ech_rows(ech: &Echelon) -> Vec<SparseVec> {
    ech.clone().into_rref()
}

/// Value of an element, recomputed from its expression.
pub fn evaluate_element(ma: &MinimalAInfinity, elements: &[Element], id: usize) -> SparseVec {
    match &elements[id].expr {
        Expr::Generator(c) => SparseVec::unit(*c),
        Expr::Apply { arity, args } => {
            let vals: Vec<SparseVec> = args.iter().map(|&a| evaluate_element(ma, elements, a)).collect();
            ma.apply(*arity, &vals)
        }
    }
}

struct MinimalBar<'a> {
    ma: &'a MinimalAInfinity,
    letters: Vec<usize>,
    letter_of: BTreeMap<usize, usize>,
    grades: Vec<(usize, u32)>,
}

impl BarComponents for MinimalBar<'_> {
    fn letter_grades(&self) -> &[(usize, u32)] {
        &self.grades
    }

    fn max_arity(&self) -> usize {
        self.ma.arity_bound()
    }

    fn component(&self, word: &[usize]) -> SparseVec {
        if word.len() < 2 {
            return SparseVec::new();
        }
        let classes: Vec<usize> = word.iter().map(|&l| self.letters[l]).collect();
        self.ma.bar_op(word.len(), &classes).remap(|c| self.letter_of[&c])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    pub weight: u32,
    /// `(j, dim F¹H^j)` for every bar degree `j ≥ 1` carrying length-one words.
    pub f1: Vec<(usize, usize)>,
}

impl WeightFiltration {
    pub fn ok(&self) -> bool {
        self.f1.iter().all(|&(_, d)| d == 0)
    }
}

/// For each weight `w ≤ max_weight`, the dimension of the image of
/// tensor-length-one words in the bar cohomology of `H^{>0}`.
pub fn bar_filtration_check(ma: &MinimalAInfinity, max_weight: u32) -> Result<Vec<WeightFiltration>, GenerationError> {
    if !ma.is_weighted() {
        return Err(GenerationError::UnweightedInput);
    }
    let letters = ma.positive_classes();
    let grades_all = ma.grades();
    let grades: Vec<(usize, u32)> = letters.iter().map(|&c| grades_all[c]).collect();
    let support: Vec<Grade> = ma.support().into_iter().filter(|&(d, w)| d >= 1 && w <= max_weight).collect();
    for j in (ma.arity_bound() + 1)..=max_weight as usize {
        let targets: BTreeSet<Grade> = support.iter().map(|&(d, w)| (d + j - 2, w)).collect();
        if tuple_feasible(&grades_all, &letters, j, &targets) {
            return Err(GenerationError::ArityBoundInsufficient { have: ma.arity_bound(), need: j });
        }
    }
    let letter_of = letters.iter().enumerate().map(|(l, &c)| (c, l)).collect();
    let coder = MinimalBar { ma, letters, letter_of, grades };
    let mut out = Vec::new();
    for w in 1..=max_weight {
        let bar = build_bar(&coder, w)?;
        let mut f1 = Vec::new();
        for j in 1..bar.words.len() {
            let singles: Vec<usize> =
                bar.words[j].iter().enumerate().filter(|(_, word)| word.len() == 1).map(|(i, _)| i).collect();
            if singles.is_empty() {
                continue;
            }
            let mut ech = Echelon::new();
            for col in bar.differential(j - 1).columns() {
                ech.insert(col);
            }
            let base = ech.rank();
            for &i in &singles {
                ech.insert(SparseVec::unit(i));
            }
            f1.push((j, ech.rank() - base));
        }
        out.push(WeightFiltration { weight: w, f1 });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{ce_complex, cohomology, retract_data};
    use crate::lie;
    use crate::transfer::transferred_operations;

    fn model(sc: &lie::StructureConstants, arity: usize) -> MinimalAInfinity {
        let cx = ce_complex(sc).unwrap();
        let coh = cohomology(&cx);
        let td = retract_data(&cx, &coh).unwrap();
        transferred_operations(&cx, &td, arity).unwrap()
    }

    #[test]
    fn heisenberg_is_generated() {
        let ma = model(&lie::heisenberg(3).unwrap(), 6);
        let report = span_closure(&ma);
        assert_eq!(report.verdict, Verdict::Generated);
        let dims: Vec<(usize, usize, usize)> = report.degrees.iter().map(|d| (d.degree, d.dim_s, d.dim_h)).collect();
        assert_eq!(dims, vec![(1, 2, 2), (2, 2, 2), (3, 1, 1)]);
        // H² needs m_3
        assert!(report
            .elements
            .iter()
            .filter(|e| e.degree == 2)
            .all(|e| matches!(e.expr, Expr::Apply { arity: 3, .. })));
    }

    #[test]
    fn sl2_is_not_generated() {
        let ma = model(&lie::sl2(), 6);
        let report = span_closure(&ma);
        assert_eq!(report.verdict, Verdict::NotGenerated);
        let d3 = report.degrees.iter().find(|d| d.degree == 3).unwrap();
        assert_eq!((d3.dim_h, d3.dim_s, d3.cokernel.len()), (1, 0, 1));
    }

    #[test]
    fn abelian_is_generated_by_products() {
        let ma = model(&lie::abelian(3), 6);
        let report = span_closure(&ma);
        assert_eq!(report.verdict, Verdict::Generated);
        assert!(report.elements.iter().all(|e| matches!(e.expr, Expr::Generator(_) | Expr::Apply { arity: 2, .. })));
    }

    #[test]
    fn certificates_are_sound() {
        for sc in [lie::heisenberg(3).unwrap(), lie::free_nilpotent(2, 3).unwrap(), lie::filiform(5).unwrap()] {
            let ma = model(&sc, 8);
            let report = span_closure(&ma);
            for (id, e) in report.elements.iter().enumerate() {
                assert_eq!(evaluate_element(&ma, &report.elements, id), e.value);
            }
            for cert in &report.certificates {
                let mut v = SparseVec::new();
                for (id, a) in &cert.combination {
                    v.add_scaled(&evaluate_element(&ma, &report.elements, *id), a);
                }
                assert_eq!(v, SparseVec::unit(cert.class));
            }
            assert_eq!(report.certificates.len(), ma.positive_classes().len());
        }
    }

    #[test]
    fn bounded_closure_is_monotone() {
        let ma = model(&lie::free_nilpotent(2, 3).unwrap(), 8);
        let mut previous: Option<Vec<Subspace>> = None;
        for j in 2..=8 {
            let report = span_closure_bounded(&ma, j);
            let spans: Vec<Subspace> = (0..=ma.top_degree())
                .map(|k| {
                    Subspace::span(
                        ma.num_classes(),
                        report.elements.iter().filter(|e| e.degree == k).map(|e| e.value.clone()),
                    )
                })
                .collect();
            if let Some(prev) = &previous {
                for (a, b) in prev.iter().zip(&spans) {
                    assert!(b.contains_subspace(a));
                }
            }
            previous = Some(spans);
        }
    }

    #[test]
    fn small_bound_is_reported_honestly() {
        let ma = model(&lie::heisenberg(3).unwrap(), 6);
        let report = span_closure_bounded(&ma, 2);
        assert_eq!(report.verdict, Verdict::ArityBoundInsufficient { arity_bound: 2, required: report.required_arity });
    }

    #[test]
    fn abelian_one_bar_filtration() {
        let ma = model(&lie::abelian(1), 6);
        let report = bar_filtration_check(&ma, 4).unwrap();
        assert!(report.iter().all(WeightFiltration::ok));
        // H¹ sits in bar degree zero, so nothing is tested
        assert!(report.iter().all(|r| r.f1.is_empty()));
    }

    #[test]
    fn heisenberg_bar_filtration() {
        let ma = model(&lie::heisenberg(3).unwrap(), 6);
        let report = bar_filtration_check(&ma, 5).unwrap();
        assert!(report.iter().all(WeightFiltration::ok));
        assert!(report.iter().any(|r| !r.f1.is_empty()));
    }

    #[test]
    fn bar_filtration_detects_missing_operations() {
        // dropping m_3 leaves H² outside the span of degree-one words
        let full = model(&lie::heisenberg(3).unwrap(), 6);
        let mut ops = BTreeMap::new();
        ops.insert(2, full.operation(2).map(|(k, v)| (k.clone(), v.clone())).collect());
        let truncated =
            MinimalAInfinity::from_operations(full.betti().to_vec(), full.weights().map(<[u32]>::to_vec), 6, ops);
        let report = bar_filtration_check(&truncated, 3).unwrap();
        let w3 = report.iter().find(|r| r.weight == 3).unwrap();
        assert!(!w3.ok());
        assert_eq!(span_closure(&truncated).verdict, Verdict::NotGenerated);
    }

    #[test]
    fn unweighted_bar_check_is_rejected() {
        let ma = model(&lie::sl2(), 4);
        assert_eq!(bar_filtration_check(&ma, 3).unwrap_err(), GenerationError::UnweightedInput);
    }
}
