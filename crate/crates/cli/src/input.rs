//! Inline-or-file inputs. A value whose first non-blank character is `[` or
//! `{` is inline JSON; anything else is a path.

use std::fs;

use serde::de::DeserializeOwned;

use crate::error::CliError;

fn is_inline(arg: &str) -> bool {
    matches!(arg.trim_start().chars().next(), Some('[' | '{'))
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|_| CliError::FileNotFound(path.to_string()))
}

/// Raw text of an inline value or file.
pub fn source_text(arg: &str) -> Result<String, CliError> {
    if is_inline(arg) {
        Ok(arg.to_string())
    } else {
        read_file(arg)
    }
}

pub fn json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = source_text(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::BadInput(format!("{what}: {e}")))
}

/// `(p, φ′(p))` samples from a JSON array of pairs or a two-column CSV with
/// an optional header row.
pub fn samples(arg: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let text = source_text(arg)?;
    if is_inline(&text) {
        return serde_json::from_str(&text)
            .map_err(|e| CliError::BadInput(format!("samples: {e}")));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::BadInput(format!("samples: {e}")))?;
        let parsed: Vec<Option<f64>> = record.iter().map(|f| f.parse().ok()).collect();
        match parsed.as_slice() {
            [Some(p), Some(g)] => out.push((*p, *g)),
            [None, None] if line == 0 => {}
            _ => {
                return Err(CliError::BadInput(format!(
                    "samples: row {} must be two numbers `p,phi_prime`",
                    line + 1
                )))
            }
        }
    }
    Ok(out)
}
