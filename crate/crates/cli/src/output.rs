use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command prints and the exit code that goes with it.
pub struct Output {
    pub text: String,
    pub exit: u8,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Self { text, exit: 0 }
    }
}

/// `{"schema_version": 1, "command": …, …payload}`, pretty-printed.
pub fn json_envelope<T: Serialize>(command: &str, payload: &T) -> Result<String, CliError> {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    match serde_json::to_value(payload).map_err(internal)? {
        Value::Object(fields) => doc.as_object_mut().unwrap().extend(fields),
        other => {
            doc["result"] = other;
        }
    }
    let mut text = serde_json::to_string_pretty(&doc).map_err(internal)?;
    text.push('\n');
    Ok(text)
}

pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(internal)?;
    for row in rows {
        w.write_record(row).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| internal(e.error()))?;
    String::from_utf8(bytes).map_err(internal)
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.zip(&width).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&mut header.iter().copied());
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    out
}

/// Shortest round-trip decimal.
pub fn decimal(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn scientific(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3e}")).unwrap_or_default()
}

pub fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}
