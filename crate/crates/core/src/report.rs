//! Machine-readable output: a versioned JSON envelope and CSV tables.
//!
//! JSON floats are written by `serde_json`, which prints the shortest string
//! that parses back to the same `f64` (so no precision is lost). CSV floats
//! are written in scientific notation with 17 significant digits.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::moments::MomentTable;

/// Bumped whenever a report field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// 17 significant digits, scientific notation.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// `{schema_version, command, config, result}`; no timestamps, so identical
/// inputs give byte-identical output.
pub fn envelope<C: Serialize, R: Serialize>(command: &str, config: &C, result: &R) -> Result<Value> {
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": serde_json::to_value(config)?,
        "result": serde_json::to_value(result)?,
    }))
}

/// Opens `path` for writing, or standard output when `path` is `None`.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<W: Write>(mut out: W, value: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Header row then one row per record.
pub fn write_csv<W: Write>(out: W, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Moment table as CSV: `alpha_1, …, alpha_n, value, provenance`.
pub fn moments_csv<W: Write>(out: W, table: &MomentTable) -> Result<()> {
    let n = table.config().dim();
    let mut header: Vec<String> = (1..=n).map(|j| format!("alpha_{j}")).collect();
    header.push("value".into());
    header.push("provenance".into());
    let rows: Vec<Vec<String>> = table
        .entries()
        .iter()
        .map(|e| {
            let mut row: Vec<String> = e.alpha.entries().iter().map(|a| a.to_string()).collect();
            row.push(fmt_f64(e.value));
            row.push(e.provenance.as_str().into());
            row
        })
        .collect();
    write_csv(out, &header, &rows)
}

/// Flattens a JSON object of scalars (and scalar arrays) into one CSV row.
pub fn flat_row(value: &Value) -> (Vec<String>, Vec<String>) {
    let mut header = Vec::new();
    let mut row = Vec::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        header.push(format!("{k}_{}", i + 1));
                        row.push(scalar(item));
                    }
                }
                Value::Object(_) => {}
                other => {
                    header.push(k.clone());
                    row.push(scalar(other));
                }
            }
        }
    }
    (header, row)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(fmt_f64).unwrap_or_default(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
