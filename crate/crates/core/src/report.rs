//! Serialization helpers shared by the report types.

use serde::Serializer;
use serde_json::Value;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};

/// Writes a polynomial in its text format.
pub fn ser_poly<S: Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Writes a list of polynomials in their text format.
pub fn ser_polys<S: Serializer>(ps: &[Polynomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

/// Looks up a dotted path such as `probability.p_hat` in a JSON report.
pub fn lookup<'a>(report: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(report, |v, key| v.get(key))
}

fn operand(report: &Value, token: &str) -> Result<f64> {
    if let Ok(x) = token.parse::<f64>() {
        return Ok(x);
    }
    match lookup(report, token) {
        Some(Value::Number(n)) => n
            .as_f64()
            .ok_or_else(|| Error::Parameter(format!("{token} is not finite"))),
        Some(Value::Bool(b)) => Ok(f64::from(u8::from(*b))),
        Some(other) => Err(Error::Parameter(format!(
            "{token} = {other} is not numeric"
        ))),
        None => Err(Error::Parameter(format!("report has no field {token}"))),
    }
}

/// Relative slack allowed when comparing floating report fields.
pub const RELATION_TOL: f64 = 1e-12;

/// Evaluates `lhs OP rhs` (OP one of `<=`, `>=`, `==`, `<`, `>`) or a bare
/// boolean field against a report. Operands are field paths or numbers.
pub fn check_relation(report: &Value, relation: &str) -> Result<bool> {
    let relation = relation.trim();
    for op in ["<=", ">=", "==", "<", ">"] {
        if let Some((l, r)) = relation.split_once(op) {
            let (a, b) = (operand(report, l.trim())?, operand(report, r.trim())?);
            let slack = RELATION_TOL * a.abs().max(b.abs()).max(1.0);
            return Ok(match op {
                "<=" => a <= b + slack,
                ">=" => a + slack >= b,
                "==" => (a - b).abs() <= slack,
                "<" => a < b - slack,
                _ => a > b + slack,
            });
        }
    }
    match lookup(report, relation) {
        Some(Value::Bool(b)) => Ok(*b),
        Some(other) => Err(Error::Parameter(format!(
            "{relation} = {other} is not a boolean"
        ))),
        None => Err(Error::Parameter(format!("report has no field {relation}"))),
    }
}

/// The scalar leaves of a report in document order, keyed by dotted path.
pub fn flatten(report: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            Value::Array(_) => {}
            Value::Null => out.push((prefix.to_string(), String::new())),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", report, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn relations() {
        let r = json!({ "p_hat": 0.5, "bound": 0.5, "ok": true, "nested": { "x": 3 } });
        assert!(check_relation(&r, "p_hat <= bound").unwrap());
        assert!(check_relation(&r, "p_hat>=0.25").unwrap());
        assert!(check_relation(&r, "p_hat == bound").unwrap());
        assert!(!check_relation(&r, "p_hat < bound").unwrap());
        assert!(check_relation(&r, "nested.x > 2").unwrap());
        assert!(check_relation(&r, "ok").unwrap());
        assert!(check_relation(&r, "missing <= 1").is_err());
        assert!(check_relation(&r, "p_hat").is_err());
    }

    #[test]
    fn flattening() {
        let r = json!({ "a": { "b": 1, "c": null }, "d": "x", "e": [1, 2] });
        let f = flatten(&r);
        assert_eq!(
            f,
            vec![
                ("a.b".into(), "1".into()),
                ("a.c".into(), String::new()),
                ("d".into(), "x".into())
            ]
        );
    }
}
