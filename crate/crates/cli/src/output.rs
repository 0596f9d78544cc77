//! CSV and JSON rendering.
//!
//! Rows and reports are built as ordered JSON objects. CSV keeps the column
//! names as given; JSON keys are lower-cased. Floats in CSV are written with
//! 17 significant digits.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(format!("unknown format '{s}' (csv or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Output {
    Rows(Vec<Map<String, Value>>),
    Report(Map<String, Value>),
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => match self {
                Output::Rows(rows) => csv(rows),
                Output::Report(obj) => csv(std::slice::from_ref(obj)),
            },
            Format::Json => {
                let v = match self {
                    Output::Rows(rows) => Value::Array(rows.iter().map(|r| Value::Object(lower(r))).collect()),
                    Output::Report(obj) => Value::Object(lower(obj)),
                };
                let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Maps `-0.0` to `0.0` so signed zeros never show up in output.
fn unsign_zero(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.as_f64() == Some(0.0) && n.is_f64() => json!(0.0),
        Value::Array(items) => Value::Array(items.iter().map(unsign_zero).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), unsign_zero(v))).collect()),
        other => other.clone(),
    }
}

fn lower(obj: &Map<String, Value>) -> Map<String, Value> {
    obj.iter().map(|(k, v)| (k.to_lowercase(), unsign_zero(v))).collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                u.to_string()
            } else if let Some(i) = n.as_i64() {
                i.to_string()
            } else {
                format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN) + 0.0)
            }
        }
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Object(m) => m.values().map(cell).collect::<Vec<_>>().join(";"),
    }
}

fn quote(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn csv(rows: &[Map<String, Value>]) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    out.push_str(&first.keys().cloned().map(quote).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.values().map(|v| quote(cell(v))).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
