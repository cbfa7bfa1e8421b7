//! Text and JSON rendering of an analysis report.

use std::fmt::Write as _;

use hyperirreg::{BoundCheck, IrregularityReport};

/// 17 significant digits, enough to round-trip any `f64`. Non-finite
/// values become `null`.
pub(crate) fn json_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

pub(crate) fn to_json(report: &IrregularityReport<f64>) -> String {
    let mut out = String::from("{");
    let field = |out: &mut String, key: &str, value: String| {
        if out.len() > 1 {
            out.push(',');
        }
        let _ = write!(out, "{}:{}", json_string(key), value);
    };
    field(&mut out, "n", report.n.to_string());
    field(&mut out, "m", report.m.to_string());
    field(&mut out, "r", report.r.to_string());
    field(&mut out, "rho", json_number(report.rho));
    field(&mut out, "rho_lower", json_number(report.spectral.lower));
    field(&mut out, "rho_upper", json_number(report.spectral.upper));
    field(&mut out, "residual", json_number(report.spectral.residual));
    field(&mut out, "iterations", report.spectral.iterations.to_string());
    field(&mut out, "converged", report.spectral.converged.to_string());
    field(&mut out, "avg_degree", json_number(report.average_degree));
    field(&mut out, "epsilon", json_number(report.epsilon));
    field(&mut out, "s", json_number(report.s));
    field(&mut out, "v", json_number(report.v));
    if let Some(s_r) = report.s_r {
        field(&mut out, "s_r", json_number(s_r));
    }
    let bounds: Vec<String> = report.bounds.checks.iter().map(bound_json).collect();
    field(&mut out, "bounds", format!("[{}]", bounds.join(",")));
    let skipped: Vec<String> = report
        .bounds
        .skipped
        .iter()
        .map(|s| {
            format!(
                "{{\"name\":{},\"reason\":{}}}",
                json_string(s.name),
                json_string(s.reason)
            )
        })
        .collect();
    field(&mut out, "skipped", format!("[{}]", skipped.join(",")));
    out.push_str("}\n");
    out
}

fn bound_json(c: &BoundCheck<f64>) -> String {
    let mut s = format!(
        "{{\"name\":{},\"lhs\":{},\"rhs\":{},\"slack\":{},\"holds\":{}",
        json_string(c.name),
        json_number(c.lhs),
        json_number(c.rhs),
        json_number(c.slack),
        c.holds
    );
    if let Some(eq) = c.equality_expected {
        let _ = write!(s, ",\"equality_expected\":{eq}");
    }
    s.push('}');
    s
}

pub(crate) fn to_text(report: &IrregularityReport<f64>) -> String {
    let mut out = String::new();
    let sp = &report.spectral;
    let _ = writeln!(out, "n {}  m {}  r {}", report.n, report.m, report.r);
    let _ = writeln!(
        out,
        "rho        {:.12}  (bracket [{:.12}, {:.12}], residual {:.3e}, {} iterations{})",
        report.rho,
        sp.lower,
        sp.upper,
        sp.residual,
        sp.iterations,
        if sp.converged { "" } else { ", NOT CONVERGED" }
    );
    let _ = writeln!(out, "avg degree {:.12}", report.average_degree);
    let _ = writeln!(out, "epsilon    {:.12}", report.epsilon);
    let _ = writeln!(out, "s          {:.12}", report.s);
    let _ = writeln!(out, "v          {:.12}", report.v);
    if let Some(s_r) = report.s_r {
        let _ = writeln!(out, "s_r        {s_r:.12}");
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<20} {:>20} {:>20} {:>12}  {:<5} equality",
        "bound", "lhs", "rhs", "slack", "holds"
    );
    for c in &report.bounds.checks {
        let eq = match c.equality_expected {
            Some(true) => "expected",
            Some(false) => "no",
            None => "-",
        };
        let _ = writeln!(
            out,
            "{:<20} {:>20.12} {:>20.12} {:>12.3e}  {:<5} {}",
            c.name,
            c.lhs,
            c.rhs,
            c.slack,
            if c.holds { "yes" } else { "NO" },
            eq
        );
    }
    for s in &report.bounds.skipped {
        let _ = writeln!(out, "{:<20} skipped: {}", s.name, s.reason);
    }
    out
}
