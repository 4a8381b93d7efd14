//! Reading matrices, morphisms and subcategory specs from files.

use std::fmt;
use std::path::Path;

use serde_json::{json, Value};
use tricat::category::CatError;
use tricat::linalg::{matrix_from_json, ExactMatrix, Field};

/// Errors that end the run with exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<CatError> for InputError {
    fn from(e: CatError) -> Self {
        InputError(e.to_string())
    }
}

impl From<tricat::linalg::LinalgError> for InputError {
    fn from(e: tricat::linalg::LinalgError) -> Self {
        InputError(e.to_string())
    }
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("invalid JSON: {e}")))
}

/// A matrix as the JSON object format, a JSON array of rows, or plain text
/// with rows separated by newlines or `;` (brackets and commas ignored),
/// e.g. `[1 0]`. Entries are integers or `p/q`.
pub fn parse_matrix(text: &str, field: Field) -> Result<ExactMatrix, InputError> {
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        return matrix_value(&v, field);
    }
    let cleaned: String = text.chars().map(|c| if matches!(c, '[' | ']' | ',') { ' ' } else { c }).collect();
    let rows: Vec<Vec<&str>> = cleaned
        .split(['\n', ';'])
        .map(|r| r.split_whitespace().collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect();
    let values: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(|e| Value::String(e.to_string())).collect()).collect();
    rows_to_matrix(&values, field)
}

/// A matrix from a JSON value: the object format or an array of rows.
pub fn matrix_value(v: &Value, field: Field) -> Result<ExactMatrix, InputError> {
    match v {
        Value::Object(_) => {
            let m = matrix_from_json(v)?;
            if m.field() != field {
                return Err(InputError(format!("matrix is over {} but --field is {field}", m.field())));
            }
            Ok(m)
        }
        Value::Array(rows) => {
            let rows: Vec<Vec<Value>> = rows
                .iter()
                .map(|r| match r {
                    Value::Array(es) => Ok(es.clone()),
                    other => Ok(vec![other.clone()]),
                })
                .collect::<Result<_, InputError>>()?;
            rows_to_matrix(&rows, field)
        }
        _ => Err(InputError("expected a matrix".into())),
    }
}

fn rows_to_matrix(rows: &[Vec<Value>], field: Field) -> Result<ExactMatrix, InputError> {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(InputError("matrix rows have different lengths".into()));
    }
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for e in rows.iter().flatten() {
        entries.push(match e {
            Value::String(s) => match s.split_once('/') {
                Some((n, d)) => json!([n.trim(), d.trim()]),
                None => json!(s.trim()),
            },
            other => other.clone(),
        });
    }
    let v = json!({ "field": field.to_string(), "rows": rows.len(), "cols": cols, "entries": entries });
    Ok(matrix_from_json(&v)?)
}

/// `--subcat`: a bare kind, inline JSON, or a path to a JSON file.
#[derive(Clone, Debug)]
pub struct SubcatSpec {
    pub kind: String,
    pub generators: Vec<Value>,
}

pub fn parse_subcat(arg: &str) -> Result<SubcatSpec, InputError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if Path::new(arg).is_file() {
        read_text(Path::new(arg))?
    } else {
        return Ok(SubcatSpec { kind: arg.to_string(), generators: Vec::new() });
    };
    let v = parse_json(&text)?;
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| InputError("subcategory spec needs a \"kind\"".into()))?
        .to_string();
    let generators = v.get("generators").and_then(Value::as_array).cloned().unwrap_or_default();
    Ok(SubcatSpec { kind, generators })
}
