//! Reports and their CSV / JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;

/// A table with a fixed column set. Cells are JSON scalars; non-finite
/// numbers never appear, absent values are the string `"none"`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
            .collect();
        json!({ "name": self.name, "columns": self.columns, "rows": rows })
    }
}

/// Number cell; non-finite values become a tag.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn opt(x: Option<f64>) -> Value {
    x.map_or(json!("none"), num)
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gate {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub kind: &'static str,
    pub seed: u64,
    /// The experiment's config entry with defaults filled in, as TOML.
    pub config: String,
    pub grid: Value,
    pub tables: Vec<Table>,
    pub gates: Vec<Gate>,
    /// Observations that are reported but not gated.
    pub notes: Vec<String>,
    pub elapsed_s: f64,
}

impl Report {
    pub fn gate(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.gates.push(Gate {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.gates.iter().all(|g| g.pass)
    }

    /// Everything except timing; identical for identical config and seed.
    pub fn payload(&self) -> Value {
        json!({
            "experiment": self.experiment,
            "kind": self.kind,
            "seed": self.seed,
            "config": self.config,
            "grid": self.grid,
            "tables": self.tables.iter().map(Table::to_json).collect::<Vec<_>>(),
            "summary": { "pass": self.passed(), "gates": self.gates },
            "notes": self.notes,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "payload": self.payload(),
            "meta": {
                "version": env!("CARGO_PKG_VERSION"),
                "parallel": polydisc::par::is_parallel(),
                "workers": rayon::current_num_threads(),
            },
            "timing": { "elapsed_s": self.elapsed_s },
        })
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Writes `<dir>/<experiment>.json` and one CSV per table
/// (`<experiment>.csv` for the first, `<experiment>.<table>.csv` for the rest).
pub fn emit(report: &Report, dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    if format.csv() {
        for (i, t) in report.tables.iter().enumerate() {
            let file = if i == 0 {
                format!("{}.csv", report.experiment)
            } else {
                format!("{}.{}.csv", report.experiment, t.name)
            };
            let path = dir.join(file);
            let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
            w.write_record(&t.columns)?;
            for row in &t.rows {
                w.write_record(row.iter().map(csv_cell))?;
            }
            w.flush()?;
            written.push(path);
        }
    }
    if format.json() {
        let path = dir.join(format!("{}.json", report.experiment));
        let body = serde_json::to_string_pretty(&report.to_json())?;
        fs::write(&path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
