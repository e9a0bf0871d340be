//! Row-oriented output in CSV, TSV or JSON with fixed 4-decimal rounding,
//! so the same run is byte-identical across formats and invocations.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Map, Value as Json};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
    Json,
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Value {
    Int(usize),
    Float(f64),
    Str(String),
    Bool(bool),
}

/// The rows of one command invocation.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// Rounds to 4 decimals and normalizes -0.0 away.
fn round4(v: f64) -> f64 {
    let r = (v * 1e4).round() / 1e4;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn delimited_cell(v: &Value, sep: char) -> String {
    match v {
        Value::Int(n) => n.to_string(),
        Value::Float(f) => format!("{:.4}", round4(*f)),
        Value::Bool(b) => b.to_string(),
        Value::Str(s) => {
            if s.contains(sep) || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
    }
}

fn json_cell(v: &Value) -> Json {
    match v {
        Value::Int(n) => json!(n),
        Value::Float(f) => serde_json::Number::from_f64(round4(*f))
            .map(Json::Number)
            .unwrap_or(Json::Null),
        Value::Bool(b) => json!(b),
        Value::Str(s) => json!(s),
    }
}

/// Renders the table in the requested format. JSON wraps the rows in
/// `{"meta": ..., "data": [...]}`; the delimited formats carry a header
/// line instead.
pub fn render(table: &Table, format: Format, meta: Map<String, Json>) -> String {
    match format {
        Format::Csv => render_delimited(table, ','),
        Format::Tsv => render_delimited(table, '\t'),
        Format::Json => {
            let data: Vec<Json> = table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (col, cell) in table.columns.iter().zip(row) {
                        obj.insert((*col).to_string(), json_cell(cell));
                    }
                    Json::Object(obj)
                })
                .collect();
            let doc = json!({ "meta": Json::Object(meta), "data": data });
            let mut text = serde_json::to_string_pretty(&doc).expect("static document");
            text.push('\n');
            text
        }
    }
}

fn render_delimited(table: &Table, sep: char) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(&sep.to_string()));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| delimited_cell(v, sep)).collect();
        out.push_str(&cells.join(&sep.to_string()));
        out.push('\n');
    }
    out
}

/// Writes to the `--out` path or standard output.
pub fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_to_four_decimals() {
        assert_eq!(delimited_cell(&Value::Float(2.78449), ','), "2.7845");
        assert_eq!(delimited_cell(&Value::Float(-1e-9), ','), "0.0000");
        assert_eq!(delimited_cell(&Value::Float(212.01184), ','), "212.0118");
    }

    #[test]
    fn strings_with_separators_are_quoted() {
        assert_eq!(delimited_cell(&Value::Str("a,b".into()), ','), "\"a,b\"");
        assert_eq!(delimited_cell(&Value::Str("a,b".into()), '\t'), "a,b");
        assert_eq!(
            delimited_cell(&Value::Str("say \"hi\",x".into()), ','),
            "\"say \"\"hi\"\",x\""
        );
    }

    #[test]
    fn json_rows_carry_rounded_numbers() {
        let table = Table {
            columns: vec!["p", "power"],
            rows: vec![vec![Value::Int(5), Value::Float(361.98373)]],
        };
        let text = render(&table, Format::Json, Map::new());
        let doc: Json = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["data"][0]["p"], json!(5));
        assert_eq!(doc["data"][0]["power"], json!(361.9837));
    }
}
