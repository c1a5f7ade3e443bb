//! Scalar formatting and the plain-text rendering of JSON reports.

use serde_json::Value;

use centerfocus::field::{Field, ParamExpr, Rational};
use centerfocus::Extended;

/// Scalars that can be printed, with parameter names for symbolic ones.
pub trait Showable: Field {
    fn show(&self, names: &[String]) -> String;
}

impl Showable for ParamExpr {
    fn show(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

impl Showable for Rational {
    fn show(&self, _: &[String]) -> String {
        self.to_string()
    }
}

impl Showable for f64 {
    fn show(&self, _: &[String]) -> String {
        self.to_string()
    }
}

impl Showable for Extended {
    /// `hi + lo` pair.
    fn show(&self, _: &[String]) -> String {
        format!("{self:e}")
    }
}

/// Indented `key: value` lines.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(x, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
