//! Report assembly and rendering in the three output formats.

use std::fmt::Write as _;

use nilcohom::linalg::{format_rational, Rational, SparseVec};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Flat view of a report's main numbers, shared by the csv and table formats.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub invariant_checks: Value,
    pub table: Table,
    /// Whether the verdict this command computes came out true.
    pub ok: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "invariant_checks": self.invariant_checks,
        })
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.headers).map_err(|e| e.to_string())?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
            Format::Table => Ok(aligned(&self.table)),
        }
    }
}

fn aligned(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &mut t.headers.iter().copied());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let _ = writeln!(out, "{}", rule.join("  "));
    for row in &t.rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}

pub fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

/// `{label(i): "p/q"}` in index order.
pub fn vector(v: &SparseVec, label: impl Fn(usize) -> String) -> Value {
    let mut m = Map::new();
    for (i, c) in v.iter() {
        m.insert(label(i), q(c));
    }
    Value::Object(m)
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
