//! Deterministic JSON reports: keys sorted, floats printed with 17 significant
//! digits.

use std::fmt::Write as _;

use gframe::linalg::{ComplexMatrix, ComplexVector};
use gframe::{ErrorReport, ReconstructionSystem, SystemClassification};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub tolerance: f64,
}

impl Report {
    pub fn new(command: &str, tolerance: f64) -> Self {
        Self {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            tolerance,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "outputs": Value::Object(self.outputs.clone()),
            "tolerances": { "tolerance": self.tolerance },
        })
    }

    pub fn render(&self) -> String {
        to_canonical_json(&self.to_value())
    }
}

/// Serializes with sorted object keys and `%.16e` floats.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else {
                let f = n.as_f64().expect("JSON numbers are finite");
                write!(out, "{f:.16e}").unwrap();
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push(':');
                write_value(out, &map[*key]);
            }
            out.push('}');
        }
    }
}

/// Floats in reports are always tagged as floats, even when integral.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float(x)).collect())
}

pub fn matrix(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| Value::Array(vec![float(m[(i, j)].re), float(m[(i, j)].im)]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn vector(v: &ComplexVector) -> Value {
    Value::Array(v.iter().map(|z| Value::Array(vec![float(z.re), float(z.im)])).collect())
}

pub fn system(v: &ReconstructionSystem) -> Value {
    json!({
        "d": v.d(),
        "k": v.k(),
        "blocks": v.blocks().iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn classification(c: &SystemClassification) -> Value {
    json!({
        "is_rs": c.is_rs,
        "is_injective": c.is_injective,
        "is_projective": c.is_projective,
        "weights": c.weights.as_deref().map(floats),
        "is_uniform": c.is_uniform,
        "is_protocol": c.is_protocol,
        "is_riesz": c.is_riesz,
        "lower_bound": float(c.lower_bound),
        "upper_bound": float(c.upper_bound),
        "tolerance": float(c.tolerance),
    })
}

pub fn error_report(r: &ErrorReport) -> Value {
    json!({
        "per_index": floats(&r.per_index),
        "two_error": float(r.two_error),
        "worst_case": float(r.worst_case),
    })
}
