//! Result rendering and the append-only job store.
//!
//! Every subcommand produces one JSON payload; `--json` prints it verbatim
//! (serde_json sorts object keys, so re-serialization is stable) and the
//! human renderer formats the same data as text. `--store PATH` appends a
//! one-line job record carrying the payload, a digest of the parameters,
//! and a timestamp.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use apolar::exactla::RationalMatrix;
use apolar::forms::{format_form, Form};
use apolar::scalar::{format_scalar, Scalar};

use crate::CliError;

pub fn scalar_value(s: &Scalar) -> Value {
    Value::String(format_scalar(s))
}

pub fn form_value(f: &Form) -> Value {
    Value::String(format_form(f))
}

pub fn scalars_value(list: &[Scalar]) -> Value {
    Value::Array(list.iter().map(scalar_value).collect())
}

pub fn points_value(points: &[Vec<Scalar>]) -> Value {
    Value::Array(points.iter().map(|p| scalars_value(p)).collect())
}

pub fn matrix_value(m: &RationalMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| scalar_value(m.at(r, c))).collect()))
            .collect(),
    )
}

pub fn checks_value(checks: &[(String, bool)]) -> Value {
    let mut map = Map::new();
    for (name, ok) in checks {
        map.insert(name.clone(), Value::Bool(*ok));
    }
    Value::Object(map)
}

pub fn matrix_lines(m: &RationalMatrix) -> String {
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(m.rows());
    let mut width = 1usize;
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| format_scalar(m.at(r, c))).collect();
        for cell in &row {
            width = width.max(cell.len());
        }
        cells.push(row);
    }
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("[ {} ]", padded.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn points_line(points: &[Vec<Scalar>]) -> String {
    points
        .iter()
        .map(|p| {
            let coords: Vec<String> = p.iter().map(format_scalar).collect();
            format!("({})", coords.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Append a one-line JSON job record. The digest covers the canonical
/// parameter serialization, so identical jobs get identical digests.
pub fn store_record(
    path: &Path,
    command: &str,
    params: &Value,
    result: &Value,
) -> Result<(), CliError> {
    let canonical = serde_json::to_string(params).expect("params serialize");
    let digest = hex(&Sha256::digest(canonical.as_bytes()));
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let record = json!({
        "command": command,
        "digest": digest,
        "params": params,
        "result": result,
        "timestamp": timestamp,
    });
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::Usage(format!("--store: cannot open {}: {e}", path.display())))?;
    writeln!(file, "{record}")
        .map_err(|e| CliError::Usage(format!("--store: write failed: {e}")))?;
    Ok(())
}
