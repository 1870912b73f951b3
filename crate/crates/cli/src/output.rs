use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::CliError;

/// A command result: always a JSON object, optionally with a dedicated CSV
/// table. Without a table, CSV output is the JSON object flattened to one
/// row.
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Output {
    pub fn json(value: impl serde::Serialize) -> Result<Self, CliError> {
        let json = serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))?;
        Ok(Self { json, table: None })
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(&self.json)
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => match &self.table {
                Some(t) => {
                    let rows = t
                        .rows
                        .iter()
                        .map(|r| r.iter().map(|x| format!("{x:?}")).collect());
                    write_csv(t.header.iter().map(|h| h.to_string()).collect(), rows)
                }
                None => {
                    let mut fields = Vec::new();
                    flatten("", &self.json, &mut fields);
                    let (header, row): (Vec<_>, Vec<_>) = fields.into_iter().unzip();
                    write_csv(header, std::iter::once(row))
                }
            },
        }
    }
}

fn write_csv(
    header: Vec<String>,
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&header).map_err(internal)?;
    for row in rows {
        w.write_record(&row).map_err(internal)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => flatten_object(map, &key, out),
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn flatten_object(
    map: &Map<String, Value>,
    key: &dyn Fn(&str) -> String,
    out: &mut Vec<(String, String)>,
) {
    for (k, v) in map {
        flatten(&key(k), v, out);
    }
}

pub fn error_envelope(e: &CliError) -> String {
    let body = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    format!("{body}\n")
}
