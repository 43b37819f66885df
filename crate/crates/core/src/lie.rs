//! Finite-dimensional Lie algebras given by structure constants.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are stored; antisymmetry is
//! structural. Weights, when present, are a positive grading that the
//! bracket must respect.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::free_lie;
use crate::linalg::{format_rational, parse_rational, rat, SparseMatrix, SparseVec, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("bracket index out of range: ({i}, {j}) for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("bracket ({i}, {j}) must satisfy i < j")]
    NotIncreasing { i: usize, j: usize },
    #[error("bracket ({i}, {j}) listed twice")]
    DuplicateBracket { i: usize, j: usize },
    #[error("basis has {names} names but dim is {dim}")]
    BasisLength { names: usize, dim: usize },
    #[error("weights have length {len}, expected {dim}")]
    WeightLength { len: usize, dim: usize },
    #[error("weights must be positive integers")]
    NonPositiveWeight,
    #[error("Jacobi identity fails on ({i}, {j}, {k}) with defect {defect}")]
    JacobiFailure { i: usize, j: usize, k: usize, defect: SparseVec },
    #[error("bracket [{i}, {j}] has a component on {k} with weight {found}, expected {expected}")]
    WeightViolation { i: usize, j: usize, k: usize, found: u32, expected: u32 },
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("malformed algebra description: {0}")]
    Malformed(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
    #[error("change of basis matrix must be square of size {dim} and invertible")]
    SingularChangeOfBasis { dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    basis_names: Vec<String>,
    bracket: BTreeMap<(usize, usize), SparseVec>,
    weights: Option<Vec<u32>>,
}

impl StructureConstants {
    /// Checks shape only; call [`validate`](Self::validate) for Jacobi and weights.
    pub fn new(
        basis_names: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self, LieError> {
        let dim = basis_names.len();
        let mut bracket = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= dim || j >= dim || v.max_index().is_some_and(|k| k >= dim) {
                return Err(LieError::IndexOutOfRange { i, j, dim });
            }
            if i >= j {
                return Err(LieError::NotIncreasing { i, j });
            }
            if bracket.contains_key(&(i, j)) {
                return Err(LieError::DuplicateBracket { i, j });
            }
            if !v.is_zero() {
                bracket.insert((i, j), v);
            }
        }
        if let Some(w) = &weights {
            if w.len() != dim {
                return Err(LieError::WeightLength { len: w.len(), dim });
            }
            if w.contains(&0) {
                return Err(LieError::NonPositiveWeight);
            }
        }
        Ok(Self { dim, basis_names, bracket, weights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn stored_brackets(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> + '_ {
        self.bracket.iter().map(|(k, v)| (*k, v))
    }

    /// Same underlying space and weights, zero bracket.
    pub fn abelianized(&self) -> Self {
        Self { bracket: BTreeMap::new(), ..self.clone() }
    }

    pub fn without_weights(&self) -> Self {
        Self { weights: None, ..self.clone() }
    }

    pub fn with_weights(&self, weights: Vec<u32>) -> Result<Self, LieError> {
        Self::new(self.basis_names.clone(), self.bracket.clone(), Some(weights))
    }

    /// `[e_i, e_j]` for any pair of basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.bracket.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.bracket.get(&(j, i)).map(SparseVec::neg).unwrap_or_default(),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if i != j {
                    out.add_scaled(&self.bracket_basis(i, j), &(a * b));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (ei, ej, ek) = (SparseVec::unit(i), SparseVec::unit(j), SparseVec::unit(k));
                    let defect = self
                        .bracket(&self.bracket_basis(i, j), &ek)
                        .add(&self.bracket(&self.bracket_basis(j, k), &ei))
                        .add(&self.bracket(&self.bracket_basis(k, i), &ej));
                    if !defect.is_zero() {
                        return Err(LieError::JacobiFailure { i, j, k, defect });
                    }
                }
            }
        }
        if let Some(w) = &self.weights {
            for (&(i, j), v) in &self.bracket {
                for k in v.indices() {
                    if w[k] != w[i] + w[j] {
                        return Err(LieError::WeightViolation { i, j, k, found: w[k], expected: w[i] + w[j] });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn lower_central_series(&self) -> LowerCentralSeries {
        let mut terms = vec![Subspace::full(self.dim)];
        loop {
            let current = terms.last().unwrap();
            if current.dim() == 0 {
                break;
            }
            let next = Subspace::span(
                self.dim,
                (0..self.dim).flat_map(|a| current.basis().iter().map(move |v| self.bracket(&SparseVec::unit(a), v))),
            );
            let stalled = next.dim() == current.dim();
            terms.push(next);
            if stalled {
                break;
            }
        }
        LowerCentralSeries { terms }
    }

    /// Nilpotency class, or `None` when the algebra is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lcs = self.lower_central_series();
        let dims = lcs.dims();
        if *dims.last().unwrap() != 0 {
            return None;
        }
        Some(dims.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// Structure constants in the basis `f_j = sum_a p[a][j] e_a`. Weights are dropped.
    pub fn change_basis(&self, p: &SparseMatrix) -> Result<Self, LieError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LieError::SingularChangeOfBasis { dim: n });
        }
        let inv = p.inverse().ok_or(LieError::SingularChangeOfBasis { dim: n })?;
        let cols = p.columns();
        let mut bracket = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                if !v.is_zero() {
                    bracket.insert((i, j), v);
                }
            }
        }
        let names = (1..=n).map(|k| format!("f{k}")).collect();
        Self::new(names, bracket, None)
    }

    pub fn to_json(&self) -> Value {
        let brackets: Vec<Value> = self
            .bracket
            .iter()
            .map(|(&(i, j), v)| {
                let coeffs: Map<String, Value> =
                    v.iter().map(|(k, c)| (k.to_string(), Value::String(format_rational(c)))).collect();
                json!({ "i": i, "j": j, "coeffs": coeffs })
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("dim".into(), json!(self.dim));
        obj.insert("basis".into(), json!(self.basis_names));
        if let Some(w) = &self.weights {
            obj.insert("weights".into(), json!(w));
        }
        obj.insert("brackets".into(), Value::Array(brackets));
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json serialization") + "\n"
    }

    /// Parses the ingestion format. Shape errors are reported; Jacobi is not
    /// checked here.
    pub fn from_json_str(text: &str) -> Result<Self, LieError> {
        let raw: JsonAlgebra = serde_json::from_str(text).map_err(|e| LieError::Malformed(e.to_string()))?;
        if raw.basis.len() != raw.dim {
            return Err(LieError::BasisLength { names: raw.basis.len(), dim: raw.dim });
        }
        let mut brackets = Vec::with_capacity(raw.brackets.len());
        for b in raw.brackets {
            let mut entries = Vec::new();
            for (k, c) in &b.coeffs {
                let k: usize = k.parse().map_err(|_| LieError::Malformed(format!("basis index {k:?}")))?;
                let c = parse_rational(c).ok_or_else(|| LieError::InvalidRational(c.clone()))?;
                entries.push((k, c));
            }
            brackets.push(((b.i, b.j), SparseVec::from_entries(entries)));
        }
        Self::new(raw.basis, brackets, raw.weights)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonAlgebra {
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    weights: Option<Vec<u32>>,
    brackets: Vec<JsonBracket>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonBracket {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

/// `g = g^1 ⊇ g^2 ⊇ ...`, ending at zero or at the first repeated term.
#[derive(Clone, Debug)]
pub struct LowerCentralSeries {
    pub terms: Vec<Subspace>,
}

impl LowerCentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn unit_bracket(i: usize, j: usize, k: usize, c: i64) -> ((usize, usize), SparseVec) {
    ((i, j), SparseVec::unit(k).scale(&rat(c)))
}

/// Heisenberg algebra of dimension `2k+1`: `[e_i, e_{i+k}] = e_{2k+1}`.
pub fn heisenberg(dim: usize) -> Result<StructureConstants, LieError> {
    if dim < 3 || dim.is_multiple_of(2) {
        return Err(LieError::BadParams {
            name: "heisenberg".into(),
            reason: "dimension must be odd and at least 3".into(),
        });
    }
    let k = dim / 2;
    let brackets = (0..k).map(|i| unit_bracket(i, i + k, dim - 1, 1));
    let mut weights = vec![1; dim];
    weights[dim - 1] = 2;
    StructureConstants::new(names("e", dim), brackets, Some(weights))
}

/// Standard filiform algebra: `[e_1, e_i] = e_{i+1}` for `2 <= i < n`.
pub fn filiform(dim: usize) -> Result<StructureConstants, LieError> {
    if dim < 3 {
        return Err(LieError::BadParams { name: "filiform".into(), reason: "dimension must be at least 3".into() });
    }
    let brackets = (1..dim - 1).map(|i| unit_bracket(0, i, i + 1, 1));
    let weights = (1..=dim as u32).collect();
    StructureConstants::new(names("e", dim), brackets, Some(weights))
}

pub fn abelian(dim: usize) -> StructureConstants {
    StructureConstants::new(names("e", dim), [], Some(vec![1; dim])).expect("abelian algebra")
}

/// `sl_2` in the basis `h, e, f`; unweighted.
pub fn sl2() -> StructureConstants {
    let brackets = [unit_bracket(0, 1, 1, 2), unit_bracket(0, 2, 2, -2), unit_bracket(1, 2, 0, 1)];
    StructureConstants::new(vec!["h".into(), "e".into(), "f".into()], brackets, None).expect("sl2")
}

/// `L^{<=n}` on `m` generators, weighted by word length.
pub fn free_nilpotent(m: usize, n: usize) -> Result<StructureConstants, LieError> {
    if m == 0 || n == 0 {
        return Err(LieError::BadParams {
            name: "free_nilpotent".into(),
            reason: "generators and class must be positive".into(),
        });
    }
    let p = free_lie::free_nilpotent(m, n);
    StructureConstants::new(p.basis_names(), p.brackets.clone(), Some(p.weights()))
}

/// Looks up `name:params`, e.g. `heisenberg:3`, `free_nilpotent:2,3`, `sl2`.
pub fn example(name: &str) -> Result<StructureConstants, LieError> {
    let (name, params) = name.split_once(':').unwrap_or((name, ""));
    let params: Vec<usize> = if params.trim().is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| LieError::BadParams { name: name.into(), reason: format!("cannot parse {params:?}") })?
    };
    let arity = |n: usize| -> Result<(), LieError> {
        if params.len() == n {
            Ok(())
        } else {
            Err(LieError::BadParams {
                name: name.into(),
                reason: format!("expected {n} parameter(s), got {}", params.len()),
            })
        }
    };
    match name {
        "heisenberg" => arity(1).and_then(|_| heisenberg(params[0])),
        "filiform" => arity(1).and_then(|_| filiform(params[0])),
        "abelian" => arity(1).map(|_| abelian(params[0])),
        "free_nilpotent" => arity(2).and_then(|_| free_nilpotent(params[0], params[1])),
        "sl2" => arity(0).map(|_| sl2()),
        _ => Err(LieError::UnknownExample(name.into())),
    }
}

/// Every algebra the checks in this crate are exercised on.
pub fn zoo() -> Vec<(String, StructureConstants)> {
    let names = [
        "abelian:1",
        "abelian:2",
        "abelian:3",
        "abelian:4",
        "heisenberg:3",
        "heisenberg:5",
        "filiform:4",
        "filiform:5",
        "free_nilpotent:2,2",
        "free_nilpotent:2,3",
        "free_nilpotent:3,2",
        "sl2",
    ];
    names.iter().map(|n| (n.to_string(), example(n).expect("zoo member"))).collect()
}
