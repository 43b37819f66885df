use nilcohom::bar_pbw::pbw_check;
use nilcohom::chevalley::{ce_complex, cohomology, retract_data};
use nilcohom::generation::{span_closure, Verdict};
use nilcohom::lie::{self, StructureConstants};
use nilcohom::linalg::{self, rat, SparseMatrix, SparseVec};
use nilcohom::symfun::graded_euler;
use nilcohom::transfer::{check_stasheff, transferred_operations};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..=3], rows * cols).prop_map(move |v| {
        SparseMatrix::from_triplets(
            rows,
            cols,
            v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k / cols, k % cols, rat(x))),
        )
    })
}

fn sized_matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Random two-step nilpotent algebra: brackets of the first `g` basis
/// vectors land in the last `z`, which are central.
fn two_step() -> impl Strategy<Value = StructureConstants> {
    (2usize..=4, 1usize..=2).prop_flat_map(|(g, z)| {
        let pairs = g * (g - 1) / 2;
        proptest::collection::vec(-2i64..=2, pairs * z).prop_map(move |coeffs| {
            let mut brackets = Vec::new();
            let mut k = 0;
            for i in 0..g {
                for j in i + 1..g {
                    let v = SparseVec::from_entries((0..z).map(|c| (g + c, rat(coeffs[k * z + c]))));
                    k += 1;
                    if !v.is_zero() {
                        brackets.push(((i, j), v));
                    }
                }
            }
            let names = (1..=g + z).map(|i| format!("e{i}")).collect();
            let weights = (0..g + z).map(|i| if i < g { 1 } else { 2 }).collect();
            StructureConstants::new(names, brackets, Some(weights)).unwrap()
        })
    })
}

fn invertible(n: usize) -> impl Strategy<Value = SparseMatrix> {
    // L Lᵀ with L lower triangular, unit diagonal up to sign
    proptest::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, rat(if v[i * n + i] < 0 { -1 } else { 1 })));
            for j in 0..i {
                if v[i * n + j] != 0 {
                    t.push((i, j, rat(v[i * n + j])));
                }
            }
        }
        let lower = SparseMatrix::from_triplets(n, n, t);
        let upper = lower.transpose();
        lower.mul(&upper)
    })
}

fn zoo_member() -> impl Strategy<Value = StructureConstants> {
    let zoo: Vec<StructureConstants> = lie::zoo().into_iter().map(|(_, sc)| sc).filter(|sc| sc.dim() <= 5).collect();
    proptest::sample::select(zoo)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(m in sized_matrix()) {
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn kernel_vectors_are_killed(m in sized_matrix()) {
        let k = linalg::kernel_basis(&m);
        prop_assert_eq!(k.dim() + linalg::rank(&m), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_reproduces_rhs(m in sized_matrix(), x in proptest::collection::vec(-3i64..=3, 6)) {
        let x = SparseVec::from_entries(x.iter().take(m.cols()).enumerate().map(|(i, &c)| (i, rat(c))));
        let b = m.mul_vec(&x);
        let y = linalg::solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn quotient_section_projects_representatives(m in sized_matrix()) {
        let sub = linalg::image_basis(&m);
        let q = linalg::quotient_section(m.rows(), &sub);
        prop_assert_eq!(q.dim() + sub.dim(), m.rows());
        for (i, r) in q.representatives().iter().enumerate() {
            prop_assert_eq!(q.project(r), SparseVec::unit(i));
        }
        for b in sub.basis() {
            prop_assert!(q.project(b).is_zero());
        }
    }

    #[test]
    fn cohomology_is_basis_independent(sc in zoo_member(), p in invertible(5)) {
        let n = sc.dim();
        let p = SparseMatrix::from_triplets(n, n, p.entries().filter(|(r, c, _)| *r < n && *c < n).map(|(r, c, x)| (r, c, x.clone())));
        prop_assume!(linalg::rank(&p) == n);
        let moved = sc.change_basis(&p).unwrap();
        moved.validate().unwrap();
        let cx = ce_complex(&moved).unwrap();
        let coh = cohomology(&cx);
        prop_assert_eq!(coh.betti(), cohomology(&ce_complex(&sc).unwrap()).betti());
        retract_data(&cx, &coh).unwrap();
    }

    #[test]
    fn two_step_algebras_behave(sc in two_step()) {
        sc.validate().unwrap();
        let cx = ce_complex(&sc).unwrap();
        let coh = cohomology(&cx);
        let b = coh.betti();
        prop_assert_eq!(coh.euler_characteristic(), 0);
        let rev: Vec<usize> = b.iter().rev().copied().collect();
        prop_assert_eq!(&b, &rev);
        let lcs = sc.lower_central_series().dims();
        prop_assert_eq!(b[1], lcs[0] - lcs.get(1).copied().unwrap_or(0));
        let td = retract_data(&cx, &coh).unwrap();
        let ma = transferred_operations(&cx, &td, 5).unwrap();
        check_stasheff(&ma, 5).unwrap();
        prop_assert_eq!(span_closure(&ma).verdict, Verdict::Generated);
        prop_assert!(graded_euler(&sc).unwrap().agrees());
        prop_assert!(pbw_check(&sc, 3).unwrap().verdict());
    }
}
