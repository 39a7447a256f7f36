//! Text, JSON and CSV renderings of model results and comparisons.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::engine::{explain_trace, ModelResult};
use crate::model::{format_signed_micros, Micros};

use super::compare::ComparisonReport;
use super::settings::ModelResponse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}' (text, json, csv)")),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn render_model(response: &ModelResponse, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render_text(&response.result, response.explanation.is_some()),
        OutputFormat::Json => to_json(response),
        OutputFormat::Csv => render_csv(&response.result),
    }
}

fn render_text(result: &ModelResult, explain: bool) -> String {
    let s = &result.settings;
    let mut out = String::new();
    let fitts = match &s.fitts {
        Some(c) => format!("on (a={} s, b={} s/bit)", c.a, c.b),
        None => "off".to_string(),
    };
    let _ = writeln!(
        out,
        "profile: {} (motor x{}, cognitive x{})  strategy: {}  mental: {}  fitts: {}",
        s.profile.typing_skill,
        s.profile.motor_multiplier,
        s.profile.cognitive_multiplier,
        s.strategy.kind.as_str(),
        s.mental_rule.as_str(),
        fitts
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "{:>4}  {:<24} {:<10} {:<28} {:>10}", "step", "element", "phase", "operators", "seconds");
    for e in &result.entries {
        let ops = e.operators.iter().map(|o| o.code.as_str()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{:>4}  {:<24} {:<10} {:<28} {:>10}", e.step_index + 1, e.element_id, e.phase.to_string(), ops, e.phase_time);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "per element:");
    for (id, t) in &result.per_element_time {
        let _ = writeln!(out, "  {id:<24} {t:>10}");
    }
    let _ = writeln!(out, "total: {} s", result.total_time);
    if explain {
        let _ = writeln!(out);
        let _ = writeln!(out, "explanation:");
        for r in explain_trace(result) {
            let _ = writeln!(
                out,
                "  [{} {} {}] {:<2} {:>10}  {}: {}",
                r.step_index + 1,
                r.element_id,
                r.phase,
                r.code.as_str(),
                r.duration,
                r.detail,
                r.rationale
            );
        }
    }
    out
}

/// One row per operator, then a `total` row.
fn render_csv(result: &ModelResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["step", "element", "phase", "code", "seconds", "detail", "rationale"]);
    for e in &result.entries {
        for o in &e.operators {
            let _ = w.write_record([
                (e.step_index + 1).to_string(),
                e.element_id.clone(),
                e.phase.to_string(),
                o.code.to_string(),
                o.duration.to_string(),
                o.detail.clone(),
                o.rationale.clone(),
            ]);
        }
    }
    let _ = w.write_record(["total", "", "", "", &result.total_time.to_string(), "", ""]);
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

pub fn render_comparison(report: &ComparisonReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let _ = w.write_record(["label", "seconds", "winner"]);
            for r in &report.results {
                let _ = w.write_record([r.label.as_str(), &r.result.total_time.to_string(), if r.label == report.winner { "yes" } else { "" }]);
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let mut ranked: Vec<_> = report.results.iter().enumerate().collect();
            ranked.sort_by_key(|(i, r)| (r.result.total_time, *i));
            for (rank, (_, r)) in ranked.iter().enumerate() {
                let _ = writeln!(out, "{:>2}. {:<20} {:>10} s", rank + 1, r.label, r.result.total_time);
            }
            let _ = writeln!(out);
            for d in &report.deltas {
                let _ = writeln!(out, "{} -> {}: {} s", d.from, d.to, format_signed_micros(d.delta_us));
            }
            let _ = writeln!(out, "winner: {}", report.winner);
            out
        }
    }
}

/// Total seconds as printed by every format.
pub fn total_string(total: Micros) -> String {
    total.to_string()
}
