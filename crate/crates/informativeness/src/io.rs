//! File formats: experiments as JSON or CSV, cost specifications as JSON,
//! and round-trip-exact numeric formatting for witnesses and paths.

use std::fs;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cost::Cost;
use crate::error::Error;
use crate::experiment::{Experiment, StochasticMatrix};
use crate::path::Path;
use crate::tol::Tol;
use crate::Result;

/// On-disk JSON form of an experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentDoc {
    pub states: usize,
    pub signals: usize,
    pub rows: Vec<Vec<f64>>,
}

impl From<&Experiment> for ExperimentDoc {
    fn from(e: &Experiment) -> Self {
        ExperimentDoc {
            states: e.states(),
            signals: e.signals(),
            rows: e.rows().to_vec(),
        }
    }
}

/// Formats a float with 17 significant digits, enough to round-trip f64.
pub fn fmt_f64(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.17e}")
    }
}

/// Parses an experiment from a JSON document (shape
/// `{"states": n, "signals": m, "rows": [[..], ..]}` or a bare row array),
/// revalidating rows against the given tolerances.
pub fn experiment_from_json(text: &str, tol: &Tol) -> Result<Experiment> {
    let value: Value = serde_json::from_str(text)?;
    let rows_value = match &value {
        Value::Object(map) => map
            .get("rows")
            .ok_or_else(|| Error::Parse("missing \"rows\" field".into()))?,
        Value::Array(_) => &value,
        _ => return Err(Error::Parse("expected a JSON object or array".into())),
    };
    let rows: Vec<Vec<f64>> = serde_json::from_value(rows_value.clone())?;
    let e = Experiment::with_tol(rows, tol)?;
    if let Value::Object(map) = &value {
        if let Some(n) = map.get("states").and_then(Value::as_u64) {
            if n as usize != e.states() {
                return Err(Error::Parse(format!(
                    "declared states {n} but rows give {}",
                    e.states()
                )));
            }
        }
        if let Some(m) = map.get("signals").and_then(Value::as_u64) {
            if m as usize != e.signals() {
                return Err(Error::Parse(format!(
                    "declared signals {m} but rows give {}",
                    e.signals()
                )));
            }
        }
    }
    Ok(e)
}

/// Parses an experiment from CSV: one row per state, comma-separated.
pub fn experiment_from_csv(text: &str, tol: &Tol) -> Result<Experiment> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|t| t.trim().parse::<f64>()).collect();
        rows.push(row.map_err(|e| {
            Error::Parse(format!("line {}: {e}", lineno + 1))
        })?);
    }
    Experiment::with_tol(rows, tol)
}

/// Reads an experiment from a file, dispatching on the `.csv` extension
/// (everything else is treated as JSON).
pub fn read_experiment(path: &FsPath, tol: &Tol) -> Result<Experiment> {
    let text = fs::read_to_string(path)?;
    if path.extension().map_or(false, |e| e.eq_ignore_ascii_case("csv")) {
        experiment_from_csv(&text, tol)
    } else {
        experiment_from_json(&text, tol)
    }
}

/// Serializes an experiment to pretty JSON.
pub fn experiment_to_json(e: &Experiment) -> String {
    serde_json::to_string_pretty(&ExperimentDoc::from(e)).expect("serialization cannot fail")
}

/// Serializes an experiment to CSV (one row per state).
pub fn experiment_to_csv(e: &Experiment) -> String {
    e.rows()
        .iter()
        .map(|r| r.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Parses a cost specification from JSON (tagged by `"family"`).
pub fn cost_from_json(text: &str) -> Result<Cost> {
    let cost: Cost = serde_json::from_str(text).map_err(|e| Error::CostSpec(e.to_string()))?;
    Ok(cost)
}

/// Reads a cost specification from a file.
pub fn read_cost(path: &FsPath) -> Result<Cost> {
    cost_from_json(&fs::read_to_string(path)?)
}

/// Renders a garbling kernel row-major with 17 significant digits.
pub fn witness_lines(m: &StochasticMatrix) -> Vec<String> {
    m.entries()
        .iter()
        .map(|r| r.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" "))
        .collect()
}

/// Writes a path certificate as pretty JSON.
pub fn path_to_json(p: &Path) -> String {
    serde_json::to_string_pretty(p).expect("serialization cannot fail")
}

/// Reads a path certificate, revalidating every stored experiment.
pub fn read_path(path: &FsPath, tol: &Tol) -> Result<Path> {
    let p: Path = serde_json::from_str(&fs::read_to_string(path)?)?;
    for step in &p.steps {
        Experiment::with_tol(step.experiment.rows().to_vec(), tol)?;
    }
    Experiment::with_tol(p.source.rows().to_vec(), tol)?;
    Experiment::with_tol(p.target.rows().to_vec(), tol)?;
    Ok(p)
}
