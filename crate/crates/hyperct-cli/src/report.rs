//! JSON report writer.
//!
//! Every element carries exactly the fields identity, params, lhs{re,im},
//! rhs{re,im}, abs_err, rel_err, tol, passed, diagnostics and wall_ms.
//! Numbers are serialized with 17 significant digits so a round-trip parse
//! recovers the doubles bit-exactly; non-finite values become null.

use hyperct::verifier::VerificationReport;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

fn num(v: f64) -> Value {
    if v.is_finite() {
        // 17 significant digits, parsed back into a JSON number
        let s = format!("{v:.16e}");
        let parsed: f64 = s.parse().expect("formatted double parses");
        serde_json::Number::from_f64(parsed).map(Value::Number).unwrap_or(Value::Null)
    } else {
        Value::Null
    }
}

fn complex_obj(z: hyperct::Complex) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

/// The JSON value for one report.
pub fn report_value(r: &VerificationReport) -> Value {
    let mut diagnostics = Map::new();
    for (k, v) in &r.diagnostics {
        diagnostics.insert(k.clone(), num(*v));
    }
    if let Some(e) = &r.error {
        diagnostics.insert("error".to_string(), Value::String(e.clone()));
    }
    json!({
        "identity": r.identity_name,
        "params": r.parameters,
        "lhs": complex_obj(r.lhs),
        "rhs": complex_obj(r.rhs),
        "abs_err": num(r.abs_err),
        "rel_err": num(r.rel_err),
        "tol": num(r.tolerance),
        "passed": r.passed,
        "diagnostics": Value::Object(diagnostics),
        "wall_ms": num(r.wall_ms),
    })
}

/// Serialize reports as a JSON array with 17-significant-digit doubles.
pub fn render_reports(reports: &[VerificationReport]) -> String {
    let values: Vec<Value> = reports.iter().map(report_value).collect();
    let mut out = Vec::new();
    let formatter = SignificantDigits;
    let mut ser = serde_json::Serializer::with_formatter(&mut out, formatter);
    use serde::Serialize;
    Value::Array(values)
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits utf-8")
}

/// Write the JSON array to `path`.
pub fn emit_report(reports: &[VerificationReport], path: &Path) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(render_reports(reports).as_bytes())?;
    file.write_all(b"\n")?;
    Ok(())
}

/// serde_json formatter that prints every double with 17 significant digits.
struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperct::c;
    use std::collections::BTreeMap;
    use std::time::Instant;

    fn sample_report(passed: bool) -> VerificationReport {
        let _ = Instant::now();
        VerificationReport {
            identity_name: "hyperbolic_ct".into(),
            parameters: "A1 case i".into(),
            lhs: c(0.1234567890123456789, -1.0 / 3.0),
            rhs: c(0.1234567890123456, -1.0 / 3.0),
            abs_err: 1e-16,
            rel_err: 2.5e-16,
            tolerance: 1e-6,
            passed,
            error: None,
            diagnostics: BTreeMap::from([("evaluations".to_string(), 1234.0)]),
            wall_ms: 1.5,
        }
    }

    #[test]
    fn empty_list_renders_brackets() {
        assert_eq!(render_reports(&[]), "[]");
    }

    #[test]
    fn round_trip_preserves_doubles() {
        let text = render_reports(&[sample_report(true)]);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let obj = &parsed[0];
        assert_eq!(obj["passed"], serde_json::Value::Bool(true));
        let lhs_re = obj["lhs"]["re"].as_f64().unwrap();
        assert_eq!(lhs_re, 0.1234567890123456789f64);
        let lhs_im = obj["lhs"]["im"].as_f64().unwrap();
        assert_eq!(lhs_im, -1.0 / 3.0);
        for key in [
            "identity", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "passed",
            "diagnostics", "wall_ms",
        ] {
            assert!(obj.get(key).is_some(), "missing {key}");
        }
        assert_eq!(obj.as_object().unwrap().len(), 10);
    }
}
