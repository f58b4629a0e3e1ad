use std::fmt::Write as _;

use crate::analysis::MetricsReport;

/// Decimal rendering with `digits` significant digits; non-finite values
/// become `null`.
pub fn format_significant(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return "null".to_string();
    }
    if v == 0.0 {
        return "0.0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn number(v: f64) -> String {
    format_significant(v, 10)
}

fn optional(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_string(), number)
}

/// The report as a JSON object. Reals carry 10 significant digits; an
/// undefined correlation is `null`.
pub fn report_json(report: &MetricsReport) -> String {
    let mut s = String::from("{\n");
    let _ = writeln!(s, "  \"entropy\": {},", number(report.entropy));
    let _ = writeln!(s, "  \"cc_horizontal\": {},", optional(report.cc_horizontal));
    let _ = writeln!(s, "  \"cc_vertical\": {},", optional(report.cc_vertical));
    let _ = writeln!(s, "  \"cc_diagonal\": {},", optional(report.cc_diagonal));
    let _ = writeln!(s, "  \"npcr\": {},", number(report.npcr));
    let bins: Vec<String> = report.histogram.iter().map(u64::to_string).collect();
    let _ = writeln!(s, "  \"histogram\": [{}],", bins.join(", "));
    let _ = writeln!(s, "  \"histogram_std\": {}", number(report.histogram_std));
    s.push_str("}\n");
    s
}
