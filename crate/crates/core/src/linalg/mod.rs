//! Exact arithmetic over `Q` and prime fields, and the dense linear algebra
//! every concrete instance is built on.

mod arith;
mod field;
mod matrix;
mod system;

pub use field::{Field, FieldElement, MAX_MODULUS};
pub use matrix::{ExactMatrix, Rref};
pub use system::{LinearSystem, SolutionSpace, Subquotient, Unknown};

use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed matrix literal: {0}")]
    Parse(String),
}

/// Serializes a matrix in the shared literal format
/// `{"field", "rows", "cols", "entries"}` (integers where possible).
pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = m
        .entries()
        .iter()
        .map(|e| match e.to_i64() {
            Some(n) => json!(n),
            None => {
                let (n, d) = e.to_ratio_strings();
                json!([n, d])
            }
        })
        .collect();
    json!({
        "field": m.field().to_string(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

/// Parses the shared matrix literal format.
pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix, LinalgError> {
    let err = |s: &str| LinalgError::Parse(s.to_string());
    let field: Field = v
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| err("missing \"field\""))?
        .parse()?;
    let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| err("missing \"rows\""))? as usize;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| err("missing \"cols\""))? as usize;
    let raw = v.get("entries").and_then(Value::as_array).ok_or_else(|| err("missing \"entries\""))?;
    if raw.len() != rows * cols {
        return Err(err(&format!("expected {} entries, found {}", rows * cols, raw.len())));
    }
    let mut entries = Vec::with_capacity(raw.len());
    for e in raw {
        let (num, den) = parse_entry(e).ok_or_else(|| err(&format!("bad entry {e}")))?;
        entries.push(FieldElement::from_ratio(field, &num, &den)?);
    }
    ExactMatrix::from_entries(field, rows, cols, entries)
}

fn parse_entry(e: &Value) -> Option<(BigInt, BigInt)> {
    let big = |v: &Value| -> Option<BigInt> {
        match v {
            Value::String(s) => s.trim().parse().ok(),
            Value::Number(n) => n.as_i64().map(BigInt::from),
            _ => None,
        }
    };
    match e {
        Value::Number(_) | Value::String(_) => Some((big(e)?, BigInt::from(1))),
        Value::Array(pair) if pair.len() == 2 => Some((big(&pair[0])?, big(&pair[1])?)),
        _ => None,
    }
}
