//! Rendering check reports for the terminal and for machine consumption.
//! The NDJSON stream emits one record per residual with a stable key order,
//! so byte-identical input produces byte-identical output.

use homconf_core::report::Report;

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One JSON object per line per residual, keys always in the order
/// subject, axiom, tuple, residual, pass.
pub fn ndjson_records(report: &Report) -> String {
    let mut out = String::new();
    for check in &report.checks {
        for res in &check.residuals {
            out.push_str(&format!(
                "{{\"subject\":\"{}\",\"axiom\":\"{}\",\"tuple\":\"{}\",\"residual\":\"{}\",\"pass\":{}}}\n",
                json_escape(&check.subject),
                json_escape(&check.axiom),
                json_escape(&res.tuple.join(",")),
                json_escape(&res.value.to_string()),
                res.passes(),
            ));
        }
    }
    out
}

/// Per-check summary lines; failing checks also show the first offending
/// tuple and its residual.
pub fn text_records(report: &Report) -> String {
    let mut out = String::new();
    for check in &report.checks {
        let verdict = if check.passes() { "ok" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict}  {} :: {}  ({} residuals)\n",
            check.subject,
            check.axiom,
            check.residuals.len()
        ));
        if let Some(res) = check.first_failure() {
            out.push_str(&format!(
                "      at ({}): {}\n",
                res.tuple.join(", "),
                res.value
            ));
        }
    }
    let verdict = if report.passes() { "PASS" } else { "FAIL" };
    out.push_str(&format!(
        "{verdict}: {} of {} checks clean\n",
        report.checks.iter().filter(|c| c.passes()).count(),
        report.checks.len()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use homconf_core::poly::{Poly, LAM};
    use homconf_core::report::Check;

    fn sample() -> Report {
        let mut check = Check::new("demo", "skew");
        check.push(vec!["a".into(), "b".into()], Poly::zero());
        check.push(
            vec!["b".into(), "b".into()],
            Poly::var(LAM).mul(&Poly::int(2)),
        );
        let mut report = Report::new();
        report.push(check);
        report
    }

    #[test]
    fn ndjson_has_one_line_per_residual_with_fixed_keys() {
        let s = ndjson_records(&sample());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            "{\"subject\":\"demo\",\"axiom\":\"skew\",\"tuple\":\"a,b\",\"residual\":\"0\",\"pass\":true}"
        );
        assert_eq!(
            lines[1],
            "{\"subject\":\"demo\",\"axiom\":\"skew\",\"tuple\":\"b,b\",\"residual\":\"2*L\",\"pass\":false}"
        );
    }

    #[test]
    fn text_summary_points_at_the_first_failure() {
        let s = text_records(&sample());
        assert!(s.contains("FAIL  demo :: skew"), "{s}");
        assert!(s.contains("at (b, b): 2*L"), "{s}");
        assert!(s.ends_with("FAIL: 0 of 1 checks clean\n"), "{s}");
    }

    #[test]
    fn escaping_covers_quotes_and_newlines() {
        assert_eq!(json_escape("a\"b\\c\nd"), "a\\\"b\\\\c\\nd");
    }
}
