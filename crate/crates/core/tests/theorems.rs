use nilcohom::bar_pbw::{bar_weight_complex, pbw_check};
use nilcohom::chevalley::{ce_complex, cohomology, retract_data, CochainComplex};
use nilcohom::free_lie::witt_dimension;
use nilcohom::generation::{bar_filtration_check, required_arity, span_closure, Verdict};
use nilcohom::lie::{self, StructureConstants};
use nilcohom::linalg::Echelon;
use nilcohom::transfer::{check_stasheff, shuffle_defect, transferred_operations, MinimalAInfinity};

fn minimal_model(sc: &StructureConstants, arity: usize) -> (CochainComplex, MinimalAInfinity) {
    let cx = ce_complex(sc).unwrap();
    let coh = cohomology(&cx);
    let td = retract_data(&cx, &coh).unwrap();
    let ma = transferred_operations(&cx, &td, arity).unwrap();
    (cx, ma)
}

/// Arity large enough for every operation that can contribute.
fn full_model(sc: &StructureConstants) -> MinimalAInfinity {
    let (_, probe) = minimal_model(sc, 2);
    let arity = required_arity(&probe).unwrap_or(6).max(6);
    minimal_model(sc, arity).1
}

fn nilpotent_zoo() -> Vec<(String, StructureConstants)> {
    lie::zoo().into_iter().filter(|(_, sc)| sc.is_nilpotent()).collect()
}

#[test]
fn betti_numbers_satisfy_duality_and_euler() {
    for (name, sc) in lie::zoo() {
        let b = cohomology(&ce_complex(&sc).unwrap()).betti();
        let chi: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(chi, 0, "{name}");
        if sc.is_nilpotent() {
            let rev: Vec<usize> = b.iter().rev().copied().collect();
            assert_eq!(b, rev, "{name}");
        }
    }
    assert_eq!(cohomology(&ce_complex(&lie::sl2()).unwrap()).betti(), vec![1, 0, 0, 1]);
}

#[test]
fn second_cohomology_of_free_nilpotent() {
    for (m, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let sc = lie::free_nilpotent(m, n).unwrap();
        let cx = ce_complex(&sc).unwrap();
        let coh = cohomology(&cx);
        assert_eq!(coh.betti()[2] as u64, witt_dimension(m as u64, n as u64 + 1), "({m},{n})");
        let w = &coh.degrees[2].weights.as_ref().unwrap();
        assert!(w.iter().all(|&x| x as usize == n + 1));
    }
}

#[test]
fn differential_preserves_weight() {
    for (name, sc) in lie::zoo() {
        let cx = ce_complex(&sc).unwrap();
        if !cx.is_weighted() {
            continue;
        }
        for k in 0..cx.top_degree() {
            for (r, c, _) in cx.differential(k).entries() {
                let wr = cx.monomial_weight(cx.basis(k + 1)[r]);
                let wc = cx.monomial_weight(cx.basis(k)[c]);
                assert_eq!(wr, wc, "{name} degree {k}");
            }
        }
    }
}

#[test]
fn degree_one_operations_into_second_cohomology() {
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let sc = lie::free_nilpotent(m, n).unwrap();
        let (_, ma) = minimal_model(&sc, n + 1);
        let h1: Vec<usize> = ma.classes_in_degree(1).collect();
        for j in 2..=n + 1 {
            let mut ech = Echelon::new();
            let mut tuple = vec![0usize; j];
            let total = h1.len().pow(j as u32);
            for code in 0..total {
                let mut c = code;
                for slot in tuple.iter_mut() {
                    *slot = h1[c % h1.len()];
                    c /= h1.len();
                }
                let v = ma.op(j, &tuple);
                assert!(v.indices().all(|c| ma.class_degree(c) == 2));
                ech.insert(v);
            }
            let expected = if j <= n { 0 } else { ma.betti()[2] };
            assert_eq!(ech.rank(), expected, "({m},{n}) m_{j}");
        }
    }
}

#[test]
fn nilpotent_zoo_is_generated_in_degree_one() {
    for (name, sc) in nilpotent_zoo() {
        let ma = full_model(&sc);
        check_stasheff(&ma, 6).unwrap();
        let report = span_closure(&ma);
        assert_eq!(report.verdict, Verdict::Generated, "{name}");
        assert!(report.required_arity.is_some_and(|r| r <= ma.arity_bound()));
    }
}

#[test]
fn sl2_is_not_generated_in_degree_one() {
    let ma = full_model(&lie::sl2());
    assert_eq!(span_closure(&ma).verdict, Verdict::NotGenerated);
}

#[test]
fn bar_filtration_agrees_with_span_closure() {
    for (name, sc) in nilpotent_zoo() {
        let ma = full_model(&sc);
        let report = span_closure(&ma);
        let missing = report.cokernel_weights(&ma);
        for row in bar_filtration_check(&ma, 5).unwrap() {
            assert_eq!(row.ok(), !missing.contains_key(&row.weight), "{name} weight {}", row.weight);
        }
    }
}

#[test]
fn conilpotent_pbw_up_to_weight_six() {
    for (name, sc) in nilpotent_zoo() {
        let report = pbw_check(&sc, 6).unwrap();
        assert!(report.verdict(), "{name}: {:?}", report.rows);
        let abelian = pbw_check(&sc.abelianized(), 6).unwrap();
        assert!(abelian.verdict(), "{name} abelianized");
        assert_eq!(
            report.rows.iter().map(|r| r.h0).collect::<Vec<_>>(),
            abelian.rows.iter().map(|r| r.h0).collect::<Vec<_>>()
        );
    }
}

#[test]
fn bar_differential_squares_to_zero() {
    for (name, sc) in nilpotent_zoo() {
        for w in 0..=6 {
            bar_weight_complex(&sc, w).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}

#[test]
fn abelian_transfer_has_no_shuffle_defect() {
    for n in 1..=3 {
        let (_, ma) = minimal_model(&lie::abelian(n), 4);
        for k in 2..=4 {
            assert!(shuffle_defect(&ma, k).is_empty());
        }
    }
}

#[test]
fn shuffle_defect_of_heisenberg_is_computable() {
    let (_, ma) = minimal_model(&lie::heisenberg(3).unwrap(), 4);
    assert!(shuffle_defect(&ma, 2).is_empty());
    for d in shuffle_defect(&ma, 3) {
        assert_eq!(d.left.len() + d.right.len(), 3);
        assert!(!d.value.is_zero());
    }
}
