//! Text and JSON renderings of computation results.

use num_bigint::BigInt;
use num_traits::{Pow, Signed};
use qclass_core::{NovikovScalar, QCClass, QuantumElement, Rational};
use serde_json::{json, Value};

const DECIMAL_DIGITS: u32 = 6;

/// Output of one task: a text block and its structured mirror.
#[derive(Debug, Clone)]
pub struct Section {
    pub task: String,
    pub text: String,
    pub data: Value,
}

/// Formatting options shared by every task.
#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub decimal: bool,
}

impl Style {
    /// Exact rational, followed by a labelled approximation under `--decimal`.
    pub fn num(&self, r: &Rational) -> String {
        if self.decimal {
            format!("{r} (decimal approx. {})", approx(r))
        } else {
            r.to_string()
        }
    }

    pub fn num_json(&self, r: &Rational) -> Value {
        if self.decimal {
            json!({ "exact": r.to_string(), "decimal_approx": approx(r) })
        } else {
            Value::String(r.to_string())
        }
    }
}

/// `r` rounded to six decimal places.
pub fn approx(r: &Rational) -> String {
    let scale = BigInt::from(10).pow(DECIMAL_DIGITS);
    let scaled = (r * Rational::from_integer(scale.clone())).round().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let mag = scaled.abs();
    let int = &mag / &scale;
    let frac = (&mag % &scale).to_string();
    format!("{sign}{int}.{frac:0>width$}", width = DECIMAL_DIGITS as usize)
}

/// One-line form `label ⊗ (scalar) + ...`.
pub fn element_inline(x: &QuantumElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.coeffs()
        .iter()
        .map(|(i, s)| format!("{} ⊗ ({s})", x.model.basis[*i].label))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn scalar_json(s: &NovikovScalar) -> Value {
    Value::String(s.to_string())
}

pub fn element_json(x: &QuantumElement) -> Value {
    Value::Array(
        x.coeffs()
            .iter()
            .map(|(i, s)| json!({ "basis": x.model.basis[*i].label, "coeff": scalar_json(s) }))
            .collect(),
    )
}

pub fn class_json(c: &QCClass) -> Value {
    let bl = &c.base.homology().basis;
    let terms: Vec<Value> = c
        .coeffs()
        .iter()
        .map(|((b, f), s)| {
            json!({ "base": bl[*b].label, "fiber": c.model.basis[*f].label, "coeff": scalar_json(s) })
        })
        .collect();
    json!({ "complete": c.complete, "terms": terms })
}

/// Renders a whole run. A single section prints bare; several get headers.
pub fn render_text(sections: &[Section]) -> String {
    if let [only] = sections {
        return only.text.clone();
    }
    let mut out = String::new();
    for (k, s) in sections.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&format!("[{}]\n", s.task));
        out.push_str(&s.text);
    }
    out
}

pub fn render_json(command: &str, source: Option<&str>, sections: &[Section]) -> String {
    let results: serde_json::Map<String, Value> =
        sections.iter().map(|s| (s.task.clone(), s.data.clone())).collect();
    let order: Vec<&str> = sections.iter().map(|s| s.task.as_str()).collect();
    let doc = json!({
        "command": command,
        "source": source,
        "tasks": order,
        "results": results,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use qclass_core::rat;

    #[test]
    fn decimal_rounding() {
        assert_eq!(approx(&rat(1, 2)), "0.500000");
        assert_eq!(approx(&rat(-2, 3)), "-0.666667");
        assert_eq!(approx(&rat(7, 1)), "7.000000");
        assert_eq!(approx(&rat(-1, 3_000_000)), "0.000000");
    }

    #[test]
    fn plain_style_is_exact() {
        let s = Style::default();
        assert_eq!(s.num(&rat(3, 4)), "3/4");
        assert_eq!(Style { decimal: true }.num(&rat(3, 4)), "3/4 (decimal approx. 0.750000)");
    }
}
