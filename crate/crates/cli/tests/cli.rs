use std::process::{Command, Output};

use nilcohom::linalg::{parse_rational, Echelon, SparseVec};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcohom")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn numbers(v: &Value) -> Vec<usize> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

fn class_vector(obj: &Value) -> SparseVec {
    SparseVec::from_entries(
        obj.as_object()
            .unwrap()
            .iter()
            .map(|(k, c)| (k.parse().unwrap(), parse_rational(c.as_str().unwrap()).unwrap())),
    )
}

/// Rank of the outputs of `m_arity` on inputs of degree one landing in degree two.
fn h1_to_h2_rank(result: &Value, arity: u64) -> usize {
    let degree: Vec<u64> =
        result["classes"].as_array().unwrap().iter().map(|c| c["degree"].as_u64().unwrap()).collect();
    let mut ech = Echelon::new();
    for op in result["operations"].as_array().unwrap() {
        if op["arity"].as_u64() != Some(arity) {
            continue;
        }
        for e in op["entries"].as_array().unwrap() {
            if e["inputs"].as_array().unwrap().iter().all(|c| degree[c.as_u64().unwrap() as usize] == 1) {
                let v = class_vector(&e["output"]);
                assert!(v.indices().all(|c| degree[c] == 2));
                ech.insert(v);
            }
        }
    }
    ech.rank()
}

#[test]
fn top_level_keys_are_ordered() {
    let out = run(&["cohomology", "--algebra", "heisenberg:3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos: Vec<usize> = ["\"command\"", "\"input\"", "\"result\"", "\"invariant_checks\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn cohomology_betti_tables() {
    let (code, v) = json(&["cohomology", "--algebra", "heisenberg:3"]);
    assert_eq!(code, 0);
    assert_eq!(numbers(&v["result"]["betti"]), vec![1, 2, 2, 1]);
    assert_eq!(v["command"], "cohomology");
    assert_eq!(v["invariant_checks"]["d_squared_zero"], true);
    let (code, v) = json(&["cohomology", "--algebra", "abelian:3"]);
    assert_eq!(code, 0);
    assert_eq!(numbers(&v["result"]["betti"]), vec![1, 3, 3, 1]);
}

#[test]
fn invalid_jacobi_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"dim":3,"basis":["x","y","z"],"brackets":[
            {"i":0,"j":1,"coeffs":{"1":"1"}},
            {"i":0,"j":2,"coeffs":{"0":"1"}},
            {"i":1,"j":2,"coeffs":{"2":"1"}}]}"#,
    )
    .unwrap();
    let out = run(&["cohomology", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Jacobi identity fails"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn file_input_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let sc = nilcohom::lie::heisenberg(3).unwrap();
    std::fs::write(&path, sc.to_json_string()).unwrap();
    let (code, a) = json(&["cohomology", "--file", path.to_str().unwrap()]);
    let (_, b) = json(&["cohomology", "--algebra", "heisenberg:3"]);
    assert_eq!(code, 0);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["input"]["structure"], b["input"]["structure"]);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let extra = dir.path().join("extra.json");
    std::fs::write(&extra, r#"{"dim":1,"basis":["x"],"brackets":[],"colour":"red"}"#).unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["cohomology", "--algebra", "nonexistent:3"],
        vec!["cohomology", "--algebra", "heisenberg:4"],
        vec!["cohomology"],
        vec!["cohomology", "--algebra", "abelian:2", "--file", extra.to_str().unwrap()],
        vec!["cohomology", "--file", extra.to_str().unwrap()],
        vec!["cohomology", "--file", garbage.to_str().unwrap()],
        vec!["cohomology", "--file", missing.to_str().unwrap()],
        vec!["check", "pbw", "--algebra", "heisenberg:3", "--max-weight", "0"],
        vec!["check", "pbw", "--algebra", "sl2"],
        vec!["check", "euler", "--algebra", "sl2"],
        vec!["minimal-model", "--algebra", "abelian:2", "--arity", "1"],
        vec!["cohomology", "--algebra", "abelian:2", "--bogus"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn heisenberg_minimal_model() {
    let (code, v) = json(&["minimal-model", "--algebra", "heisenberg:3", "--arity", "4"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["arity_bound"], 4);
    assert_eq!(h1_to_h2_rank(r, 2), 0);
    assert_eq!(h1_to_h2_rank(r, 3), 2);
    assert_eq!(v["invariant_checks"]["stasheff"], true);
}

#[test]
fn abelian_minimal_model_is_exterior() {
    let (_, v) = json(&["minimal-model", "--algebra", "abelian:2"]);
    let ops = v["result"]["operations"].as_array().unwrap();
    assert_eq!(ops.len(), 1);
    assert_eq!(ops[0]["arity"], 2);
    let entry = |a: u64, b: u64| {
        ops[0]["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["inputs"] == serde_json::json!([a, b]))
            .map(|e| e["output"].clone())
    };
    assert_eq!(entry(1, 2).unwrap(), serde_json::json!({"3": "1"}));
    assert_eq!(entry(2, 1).unwrap(), serde_json::json!({"3": "-1"}));
    assert!(entry(1, 1).is_none());
}

#[test]
fn free_nilpotent_m4_hits_h2() {
    let (code, v) = json(&["minimal-model", "--algebra", "free_nilpotent:2,3"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(numbers(&r["betti"])[2], 3);
    for j in 2..=3 {
        assert_eq!(h1_to_h2_rank(r, j), 0);
    }
    assert_eq!(h1_to_h2_rank(r, 4), 3);
}

#[test]
fn one_generated_verdicts() {
    let (code, v) = json(&["check", "one-generated", "--algebra", "free_nilpotent:2,3"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["one_generated"], true);
    assert_eq!(r["verdict"], "generated");
    assert!(!r["certificates"].as_array().unwrap().is_empty());
    assert_eq!(v["invariant_checks"]["bar_filtration_agrees"], true);
    for d in r["degrees"].as_array().unwrap() {
        assert_eq!(d["dim_h"], d["dim_s"]);
    }
    let (code, v) = json(&["check", "one-generated", "--algebra", "sl2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "not_generated");
}

#[test]
fn too_small_arity_is_not_a_positive_verdict() {
    let (code, v) = json(&["check", "one-generated", "--algebra", "free_nilpotent:2,3", "--arity", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "arity_bound_insufficient");
}

#[test]
fn pbw_reference_row() {
    let (code, v) = json(&["check", "pbw", "--algebra", "heisenberg:3", "--max-weight", "4"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    let h0: Vec<u64> = rows.iter().map(|r| r["h0"].as_u64().unwrap()).collect();
    let sym: Vec<u64> = rows.iter().map(|r| r["sym"].as_u64().unwrap()).collect();
    assert_eq!(h0, vec![1, 2, 4, 6, 9]);
    assert_eq!(sym, h0);
    assert!(rows.iter().all(|r| r["higher"].as_array().unwrap().iter().all(|x| x == 0)));
    assert_eq!(v["result"]["verdict"], true);
}

#[test]
fn littlewood_and_euler() {
    let (code, v) = json(&["check", "littlewood", "--vars", "2", "--max-degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ok"], true);
    assert_eq!(v["result"]["product"], "1 - x1 - x2 + x1^2*x2 + x1*x2^2 - x1^2*x2^2");
    let (code, v) = json(&["check", "euler", "--algebra", "heisenberg:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cohomology"], "1 - 2*t + 2*t^3 - t^4");
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let mut full = args.to_vec();
    full.extend(["--format", "csv"]);
    let out = run(&full);
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => String::new(),
        Value::Array(xs) => xs.iter().map(s).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[test]
fn csv_matches_json() {
    let (_, v) = json(&["cohomology", "--algebra", "heisenberg:3"]);
    let expected: Vec<Vec<String>> = v["result"]["weighted_betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| vec![s(&r["degree"]), s(&r["weight"]), s(&r["dim"])])
        .collect();
    assert_eq!(csv_rows(&["cohomology", "--algebra", "heisenberg:3"]), expected);

    let args = ["minimal-model", "--algebra", "heisenberg:3", "--arity", "4"];
    let (_, v) = json(&args);
    let mut expected = Vec::new();
    for op in v["result"]["operations"].as_array().unwrap() {
        for e in op["entries"].as_array().unwrap() {
            for (k, c) in e["output"].as_object().unwrap() {
                expected.push(vec![s(&op["arity"]), s(&e["inputs"]), k.clone(), s(c)]);
            }
        }
    }
    assert_eq!(csv_rows(&args), expected);

    let args = ["check", "one-generated", "--algebra", "free_nilpotent:2,3"];
    let (_, v) = json(&args);
    let expected: Vec<Vec<String>> = v["result"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| {
            vec![s(&d["degree"]), s(&d["dim_h"]), s(&d["dim_s"]), d["cokernel"].as_array().unwrap().len().to_string()]
        })
        .collect();
    assert_eq!(csv_rows(&args), expected);

    let args = ["check", "pbw", "--algebra", "heisenberg:3", "--max-weight", "4"];
    let (_, v) = json(&args);
    let expected: Vec<Vec<String>> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| vec![s(&r["weight"]), s(&r["h0"]), s(&r["sym"]), s(&r["higher"]), s(&r["ok"])])
        .collect();
    assert_eq!(csv_rows(&args), expected);

    let args = ["check", "littlewood", "--vars", "2", "--max-degree", "6"];
    let (_, v) = json(&args);
    let expected: Vec<Vec<String>> = v["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| vec![s(&t["exponents"]), s(&t["product"]), s(&t["schur_sum"])])
        .collect();
    assert_eq!(csv_rows(&args), expected);

    let args = ["check", "euler", "--algebra", "free_nilpotent:2,3"];
    let (_, v) = json(&args);
    let expected: Vec<Vec<String>> = v["result"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| vec![s(&t["weight"]), s(&t["product"]), s(&t["cohomology"])])
        .collect();
    assert_eq!(csv_rows(&args), expected);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["check", "pbw", "--algebra", "heisenberg:3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let stdout = run(&["check", "pbw", "--algebra", "heisenberg:3"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn table_format_is_aligned() {
    let out = run(&["check", "pbw", "--algebra", "heisenberg:3", "--max-weight", "2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "weight  h0  sym  higher  ok");
    assert_eq!(lines.len(), 2 + 3);
    assert!(lines[1].chars().all(|c| c == '-' || c == ' '));
}
