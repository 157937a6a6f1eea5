//! CSV and JSON rendering.

use std::io::Write;

use serde::Serialize;

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(()),
        }
    }
}

/// Seventeen significant digits, so every value round-trips.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// Result of a command: a CSV table and the JSON payload mirroring it.
pub struct Output {
    pub table: Table,
    pub json: serde_json::Value,
}

impl Output {
    pub fn new<T: Serialize>(table: Table, payload: &T) -> Result<Self, CliError> {
        Ok(Output {
            table,
            json: serde_json::to_value(payload).map_err(|e| CliError::Io(e.to_string()))?,
        })
    }
}

/// Writes to `--out` or stdout. JSON carries the effective configuration
/// alongside the result; CSV keeps the header row first and echoes the
/// configuration on stderr instead.
pub fn emit(cfg: &RunConfig, format: Format, out: Output) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => {
            eprintln!("# {}", cfg.echo());
            out.table.render()
        }
        Format::Json => {
            let doc = serde_json::json!({ "config": cfg, "result": out.json });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match cfg.get("out") {
        Some(path) if path != "-" => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))
        }
        _ => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())
                .and_then(|_| so.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
