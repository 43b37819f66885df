//! One function per subcommand, each producing a [`Report`].

use std::collections::BTreeSet;
use std::fs;

use nilcohom::bar_pbw::{pbw_check, BarError};
use nilcohom::chevalley::{
    ce_complex, cohomology as compute_cohomology, retract_data, ChevalleyError, CochainComplex, CohomologyData,
};
use nilcohom::generation::{
    bar_filtration_check, evaluate_element, required_arity, span_closure_bounded, Element, Expr, GenerationError,
    Verdict,
};
use nilcohom::lie::{self, StructureConstants};
use nilcohom::linalg::{format_rational, SparseVec};
use nilcohom::symfun::{
    first_difference, graded_euler, littlewood_product, littlewood_schur_sum, EulerError, SparsePolynomial,
};
use nilcohom::transfer::{check_stasheff, transferred_operations, MinimalAInfinity, TransferData, TransferError};
use serde_json::{json, Map, Value};

use crate::report::{join, q, vector, Report, Table};
use crate::Source;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable or invalid algebra.
    Input(String),
    /// A computed object failed one of its defining identities.
    Internal(String),
}

impl From<ChevalleyError> for Failure {
    fn from(e: ChevalleyError) -> Self {
        match e {
            ChevalleyError::TooLarge(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<TransferError> for Failure {
    fn from(e: TransferError) -> Self {
        match e {
            TransferError::ArityTooSmall(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<BarError> for Failure {
    fn from(e: BarError) -> Self {
        match e {
            BarError::NotSquareZero { .. } => Failure::Internal(e.to_string()),
            BarError::Chevalley(c) => c.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(source: &Source) -> Result<(Value, StructureConstants), Failure> {
    let input_err = |e: lie::LieError| Failure::Input(e.to_string());
    let (mut input, sc) = match (&source.algebra, &source.file) {
        (Some(name), None) => (json!({ "algebra": name }), lie::example(name).map_err(input_err)?),
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            (
                json!({ "file": path.display().to_string() }),
                StructureConstants::from_json_str(&text).map_err(input_err)?,
            )
        }
        _ => return Err(Failure::Input("exactly one of --algebra and --file is required".into())),
    };
    sc.validate().map_err(input_err)?;
    input["structure"] = sc.to_json();
    Ok((input, sc))
}

struct Complex {
    cx: CochainComplex,
    coh: CohomologyData,
    td: TransferData,
}

fn complex(sc: &StructureConstants) -> Result<Complex, Failure> {
    let cx = ce_complex(sc)?;
    let coh = compute_cohomology(&cx);
    let td = retract_data(&cx, &coh)?;
    Ok(Complex { cx, coh, td })
}

/// Largest arity that can be nonzero, never below `max(6, class + 1)`.
fn default_arity(sc: &StructureConstants, c: &Complex) -> Result<usize, Failure> {
    let mut arity = 6.max(1 + sc.nilpotency_class().unwrap_or(5));
    if sc.weights().is_some() {
        let probe = transferred_operations(&c.cx, &c.td, 2)?;
        if let Some(j) = required_arity(&probe) {
            arity = arity.max(j);
        }
    }
    Ok(arity)
}

fn model(sc: &StructureConstants, c: &Complex, arity: Option<usize>) -> Result<MinimalAInfinity, Failure> {
    let arity = match arity {
        Some(a) => a,
        None => default_arity(sc, c)?,
    };
    let ma = transferred_operations(&c.cx, &c.td, arity)?;
    check_stasheff(&ma, arity)?;
    if !ma.degrees_consistent() || ma.weights_consistent() == Some(false) {
        return Err(Failure::Internal("transferred operation violates degree or weight bookkeeping".into()));
    }
    Ok(ma)
}

fn classes(c: &Complex) -> Vec<Value> {
    let mut out = Vec::new();
    for (k, d) in c.coh.degrees.iter().enumerate() {
        for (i, rep) in d.representatives.iter().enumerate() {
            out.push(json!({
                "class": out.len(),
                "degree": k,
                "weight": d.weights.as_ref().map(|w| w[i]),
                "cocycle": vector(rep, |m| c.cx.monomial_name(c.cx.basis(k)[m])),
            }));
        }
    }
    out
}

pub fn cohomology(source: &Source) -> Result<Report, Failure> {
    let (input, sc) = load(source)?;
    let c = complex(&sc)?;
    let betti = c.coh.betti();
    let chi = c.coh.euler_characteristic();
    let rev: Vec<usize> = betti.iter().rev().copied().collect();
    let mut table = Table::new(&["degree", "weight", "dim"]);
    let weighted = c.coh.weighted_betti().map(|per_degree| {
        let mut rows = Vec::new();
        for (k, by_weight) in per_degree.iter().enumerate() {
            for (&w, &d) in by_weight {
                table.push(vec![k.to_string(), w.to_string(), d.to_string()]);
                rows.push(json!({ "degree": k, "weight": w, "dim": d }));
            }
        }
        rows
    });
    if weighted.is_none() {
        for (k, &b) in betti.iter().enumerate() {
            table.push(vec![k.to_string(), String::new(), b.to_string()]);
        }
    }
    let result = json!({
        "dim": sc.dim(),
        "nilpotency_class": sc.nilpotency_class(),
        "betti": betti,
        "euler_characteristic": chi,
        "weighted_betti": weighted,
        "representatives": classes(&c),
    });
    let checks = json!({
        "d_squared_zero": true,
        "retract_side_conditions": true,
        "euler_characteristic_zero": chi == 0,
        "poincare_duality": betti == rev,
    });
    Ok(Report { command: "cohomology", input, result, invariant_checks: checks, table, ok: true })
}

pub fn minimal_model(source: &Source, arity: Option<usize>) -> Result<Report, Failure> {
    let (mut input, sc) = load(source)?;
    let c = complex(&sc)?;
    let ma = model(&sc, &c, arity)?;
    input["arity"] = json!(ma.arity_bound());
    let mut table = Table::new(&["arity", "inputs", "output_class", "coefficient"]);
    let mut operations = Vec::new();
    for n in ma.operation_arities().collect::<Vec<_>>() {
        let mut entries = Vec::new();
        for (inputs, v) in ma.operation(n) {
            if v.is_zero() {
                continue;
            }
            for (k, x) in v.iter() {
                table.push(vec![n.to_string(), join(inputs), k.to_string(), format_rational(x)]);
            }
            entries.push(json!({ "inputs": inputs, "output": vector(v, |k| k.to_string()) }));
        }
        if !entries.is_empty() {
            operations.push(json!({ "arity": n, "entries": entries }));
        }
    }
    let result = json!({
        "betti": ma.betti(),
        "arity_bound": ma.arity_bound(),
        "classes": classes(&c),
        "operations": operations,
    });
    let checks = json!({
        "retract_side_conditions": true,
        "stasheff_up_to_arity": ma.arity_bound(),
        "stasheff": true,
        "degrees_consistent": true,
        "weights_consistent": ma.weights_consistent(),
    });
    Ok(Report { command: "minimal-model", input, result, invariant_checks: checks, table, ok: true })
}

fn expression(elements: &[Element], id: usize) -> Value {
    match &elements[id].expr {
        Expr::Generator(c) => json!(c),
        Expr::Apply { arity, args } => {
            let mut out = vec![json!(format!("m{arity}"))];
            out.extend(args.iter().map(|&a| expression(elements, a)));
            Value::Array(out)
        }
    }
}

pub fn one_generated(source: &Source, arity: Option<usize>, max_weight: u32) -> Result<Report, Failure> {
    let (mut input, sc) = load(source)?;
    let c = complex(&sc)?;
    let ma = model(&sc, &c, arity)?;
    input["arity"] = json!(ma.arity_bound());
    input["max_weight"] = json!(max_weight);
    let report = span_closure_bounded(&ma, ma.arity_bound());

    let mut certified = true;
    for (id, e) in report.elements.iter().enumerate() {
        certified &= evaluate_element(&ma, &report.elements, id) == e.value;
    }
    for cert in &report.certificates {
        let mut v = SparseVec::new();
        for (id, a) in &cert.combination {
            v.add_scaled(&evaluate_element(&ma, &report.elements, *id), a);
        }
        certified &= v == SparseVec::unit(cert.class);
    }
    if !certified {
        return Err(Failure::Internal("generation certificate does not evaluate to its class".into()));
    }

    let bar = if ma.is_weighted() {
        match bar_filtration_check(&ma, max_weight) {
            Ok(rows) => Some(rows),
            Err(GenerationError::ArityBoundInsufficient { .. }) => None,
            Err(GenerationError::Bar(e)) => return Err(e.into()),
            Err(e) => return Err(Failure::Internal(e.to_string())),
        }
    } else {
        None
    };
    let missing = report.cokernel_weights(&ma);
    let agrees = bar.as_ref().map(|rows| rows.iter().all(|r| r.ok() != missing.contains_key(&r.weight)));
    if agrees == Some(false) {
        return Err(Failure::Internal("bar filtration disagrees with span closure".into()));
    }

    let verdict = match &report.verdict {
        Verdict::Generated => "generated",
        Verdict::NotGenerated => "not_generated",
        Verdict::ArityBoundInsufficient { .. } => "arity_bound_insufficient",
    };
    let summary = match &report.verdict {
        Verdict::Generated => "generated in degree one".to_string(),
        Verdict::NotGenerated => "not generated in degree one".to_string(),
        Verdict::ArityBoundInsufficient { arity_bound, .. } => {
            format!("undecided: not generated using arities up to {arity_bound}")
        }
    };
    let mut table = Table::new(&["degree", "dim_h", "dim_s", "cokernel_dim"]);
    let degrees: Vec<Value> = report
        .degrees
        .iter()
        .map(|d| {
            table.push(vec![
                d.degree.to_string(),
                d.dim_h.to_string(),
                d.dim_s.to_string(),
                d.cokernel.len().to_string(),
            ]);
            json!({ "degree": d.degree, "dim_h": d.dim_h, "dim_s": d.dim_s, "cokernel": d.cokernel })
        })
        .collect();
    let elements: Vec<Value> = report
        .elements
        .iter()
        .enumerate()
        .map(|(id, e)| {
            json!({
                "id": id,
                "degree": e.degree,
                "expression": expression(&report.elements, id),
                "value": vector(&e.value, |k| k.to_string()),
            })
        })
        .collect();
    let certificates: Vec<Value> = report
        .certificates
        .iter()
        .map(|cert| {
            let combination: Vec<Value> =
                cert.combination.iter().map(|(id, a)| json!({ "element": id, "coefficient": q(a) })).collect();
            json!({ "class": cert.class, "combination": combination })
        })
        .collect();
    let bar_json = bar.as_ref().map(|rows| {
        rows.iter()
            .map(|r| {
                let f1: Vec<Value> = r.f1.iter().map(|&(j, d)| json!({ "degree": j, "dim": d })).collect();
                json!({ "weight": r.weight, "f1": f1, "ok": r.ok() })
            })
            .collect::<Vec<_>>()
    });
    let result = json!({
        "verdict": verdict,
        "summary": summary,
        "one_generated": report.verdict.is_generated(),
        "arity_bound": report.arity_bound,
        "required_arity": report.required_arity,
        "degrees": degrees,
        "elements": elements,
        "certificates": certificates,
        "bar_filtration": bar_json,
    });
    let checks = json!({
        "stasheff": true,
        "certificates_verified": true,
        "bar_filtration_agrees": agrees,
    });
    let ok = report.verdict.is_generated();
    Ok(Report { command: "check one-generated", input, result, invariant_checks: checks, table, ok })
}

pub fn pbw(source: &Source, max_weight: u32) -> Result<Report, Failure> {
    let (mut input, sc) = load(source)?;
    input["max_weight"] = json!(max_weight);
    let report = pbw_check(&sc, max_weight)?;
    let mut table = Table::new(&["weight", "h0", "sym", "higher", "ok"]);
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            table.push(vec![
                r.weight.to_string(),
                r.h0.to_string(),
                r.sym.to_string(),
                join(&r.higher),
                r.ok().to_string(),
            ]);
            json!({ "weight": r.weight, "h0": r.h0, "sym": r.sym, "higher": r.higher, "ok": r.ok() })
        })
        .collect();
    let ok = report.verdict();
    let result = json!({ "rows": rows, "verdict": ok });
    let checks = json!({ "bar_d_squared_zero": true });
    Ok(Report { command: "check pbw", input, result, invariant_checks: checks, table, ok })
}

/// Exponent vectors of both polynomials, in display order.
fn union_terms(a: &SparsePolynomial, b: &SparsePolynomial) -> Vec<Vec<u32>> {
    let set: BTreeSet<Vec<u32>> = a.terms().chain(b.terms()).map(|(e, _)| e.clone()).collect();
    let mut out: Vec<Vec<u32>> = set.into_iter().collect();
    out.sort_by(|x, y| {
        let dx: u32 = x.iter().sum();
        let dy: u32 = y.iter().sum();
        dx.cmp(&dy).then_with(|| y.cmp(x))
    });
    out
}

pub fn littlewood(vars: usize, max_degree: u32) -> Result<Report, Failure> {
    let input = json!({ "vars": vars, "max_degree": max_degree });
    let product = littlewood_product(vars, max_degree);
    let schur_sum = littlewood_schur_sum(vars, max_degree);
    let mismatch = first_difference(&product, &schur_sum);
    let mut table = Table::new(&["exponents", "product", "schur_sum"]);
    let terms: Vec<Value> = union_terms(&product, &schur_sum)
        .into_iter()
        .map(|e| {
            let (p, s) = (product.coefficient(&e), schur_sum.coefficient(&e));
            table.push(vec![join(&e), format_rational(&p), format_rational(&s)]);
            json!({ "exponents": e, "product": q(&p), "schur_sum": q(&s) })
        })
        .collect();
    let ok = mismatch.is_none();
    let result = json!({
        "product": product.to_string(),
        "schur_sum": schur_sum.to_string(),
        "terms": terms,
        "first_mismatch": mismatch.map(|m| json!({ "exponents": m.exponents, "product": m.product, "schur_sum": m.schur_sum })),
        "ok": ok,
    });
    let checks = Value::Object(Map::new());
    Ok(Report { command: "check littlewood", input, result, invariant_checks: checks, table, ok })
}

pub fn euler(source: &Source) -> Result<Report, Failure> {
    let (input, sc) = load(source)?;
    let report = graded_euler(&sc).map_err(|e| match e {
        EulerError::UnweightedInput => Failure::Input(e.to_string()),
        EulerError::Chevalley(c) => c.into(),
    })?;
    let top = report.product.degree().max(report.cohomology.degree()).unwrap_or(0);
    let mut table = Table::new(&["weight", "product", "cohomology"]);
    let coefficients: Vec<Value> = (0..=top)
        .map(|w| {
            let (p, c) = (report.product.coefficient(&[w]), report.cohomology.coefficient(&[w]));
            table.push(vec![w.to_string(), format_rational(&p), format_rational(&c)]);
            json!({ "weight": w, "product": q(&p), "cohomology": q(&c) })
        })
        .collect();
    let ok = report.agrees();
    let result = json!({
        "product": report.product.to_string_with(Some("t")),
        "cohomology": report.cohomology.to_string_with(Some("t")),
        "coefficients": coefficients,
        "agrees": ok,
    });
    let checks = json!({ "d_squared_zero": true });
    Ok(Report { command: "check euler", input, result, invariant_checks: checks, table, ok })
}
