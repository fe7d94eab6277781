use serde::Serialize;
use srp_core::criterion::{limit_check, run_log, run_omega, LimitView, ReportView};

use super::{certificate_text, status_text, verdict_text};
use crate::args::{CheckArgs, CheckMode, Format};
use crate::error::CliError;
use crate::input::read_poly;
use crate::output::{csv_string, decimal, json_envelope, table, Output};

#[derive(Serialize)]
struct Payload {
    reports: Vec<ReportView>,
    /// `t → 1⁺` limits of the ω-mode R against the log-mode R, in `both` mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    limits: Option<Vec<LimitView>>,
}

pub fn run(args: &CheckArgs, format: Format) -> Result<Output, CliError> {
    let p = read_poly(&args.input)?;
    let mut reports = Vec::new();
    if matches!(args.mode, CheckMode::Log | CheckMode::Both) {
        reports.push(ReportView::from(&run_log(&p)));
    }
    if matches!(args.mode, CheckMode::Omega | CheckMode::Both) {
        reports.push(ReportView::from(&run_omega(&p)));
    }
    // the limits need a complete log-mode R-sequence
    let limits = (args.mode == CheckMode::Both)
        .then(|| limit_check(&p).ok())
        .flatten()
        .map(|rows| rows.iter().map(LimitView::from).collect());
    let payload = Payload { reports, limits };
    let text = match format {
        Format::Json => json_envelope("check", &payload)?,
        Format::Csv => render_csv(&payload)?,
        Format::Table => render_table(&payload),
    };
    Ok(Output::ok(text))
}

const STEP_HEADER: [&str; 6] = ["n", "index", "m", "decimal", "status", "certificate"];

fn step_rows(r: &ReportView) -> Vec<Vec<String>> {
    r.steps
        .iter()
        .map(|s| {
            vec![
                s.n.to_string(),
                s.index.to_string(),
                s.m.as_ref()
                    .map(|m| m.exact.clone())
                    .unwrap_or_else(|| "undefined".into()),
                decimal(s.m.as_ref().and_then(|m| m.decimal)),
                status_text(s.status),
                s.certificate
                    .as_ref()
                    .map(certificate_text)
                    .unwrap_or_default(),
            ]
        })
        .collect()
}

fn render_table(payload: &Payload) -> String {
    let mut out = String::new();
    for (i, r) in payload.reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!(
            "mode {:?}  g = {}  c = [{}]\nm_top = {}\n\n",
            r.mode,
            r.g,
            r.coeffs.join(", "),
            r.m_top.exact
        ));
        out.push_str(&table(&STEP_HEADER, &step_rows(r)));
        match &r.r_sequence {
            Some(rs) => {
                let values: Vec<&str> = rs.iter().map(|v| v.exact.as_str()).collect();
                out.push_str(&format!("\nR_0..R_{} = {}\n", 2 * r.g, values.join(", ")));
            }
            None => out.push_str("\nR-sequence not available\n"),
        }
        out.push_str(&format!("verdict: {}\n", verdict_text(&r.verdict)));
    }
    if let Some(limits) = &payload.limits {
        out.push_str("\nlimits t -> 1+\n");
        let rows: Vec<Vec<String>> = limits
            .iter()
            .map(|l| {
                vec![
                    l.n.to_string(),
                    l.omega_limit.clone(),
                    l.log_value.exact.clone(),
                    l.equal.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["n", "omega_limit", "log_value", "equal"], &rows));
    }
    out
}

fn render_csv(payload: &Payload) -> Result<String, CliError> {
    let mut header = vec!["mode"];
    header.extend(STEP_HEADER);
    header.push("verdict");
    let mut rows = Vec::new();
    for r in &payload.reports {
        for mut row in step_rows(r) {
            row.insert(0, format!("{:?}", r.mode));
            row.push(verdict_text(&r.verdict));
            rows.push(row);
        }
    }
    csv_string(&header, &rows)
}
