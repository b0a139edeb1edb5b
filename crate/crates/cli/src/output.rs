//! Output shaping: 12-significant-digit floats, CSV/JSON tables, and file
//! or stdout sinks.

use crate::config::CliError;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::path::Path;

/// Output format for tabular commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Formats a float with 12 significant digits, trimming trailing zeros.
/// Large and tiny magnitudes switch to scientific notation.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..=11).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        trim_trailing_zeros(format!("{x:.decimals$}"))
    } else {
        let scientific = format!("{x:.11e}");
        let (mantissa, exp) = scientific.split_once('e').expect("scientific format has e");
        format!("{}e{exp}", trim_trailing_zeros(mantissa.to_string()))
    }
}

/// Rounds to the f64 nearest the 12-significant-digit decimal, so JSON
/// numbers print as compactly as the CSV text.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted floats parse")
}

fn trim_trailing_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// A rectangular result table rendered to CSV rows or a JSON array of
/// objects with the column names as keys.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width matches header");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(render_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (column, cell) in self.columns.iter().zip(row) {
                    object.insert((*column).to_string(), cell.clone());
                }
                Value::Object(object)
            })
            .collect();
        let mut text =
            serde_json::to_string_pretty(&objects).expect("tables serialize to JSON");
        text.push('\n');
        text
    }
}

fn render_cell(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => {
            if let Some(f) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                fmt_sig12(f)
            } else {
                n.to_string()
            }
        }
        other => other.to_string(),
    }
}

/// JSON value carrying a float rounded to the printed precision.
pub fn float_value(x: f64) -> Value {
    Value::from(round_sig12(x))
}

/// JSON value for resource counts: integers up to u64 stay numeric; larger
/// counts become decimal strings (JSON numbers cannot hold full u128).
pub fn count_value(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(small) => Value::from(small),
        Err(_) => Value::from(x.to_string()),
    }
}

/// Writes to the path, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
