use std::fs;

use srp_core::canonical::{
    verify, Battery, CanonicalError, CanonicalSystem, CheckStatus, VerificationReport, VerifyConfig,
};
use srp_core::exact::format_rational;

use super::verdict_text;
use crate::args::{BatteryArg, Format, VerifyArgs};
use crate::error::CliError;
use crate::input::read_poly;
use crate::output::{csv_string, json_envelope, scientific, table, Output};

pub fn run(args: &VerifyArgs, format: Format) -> Result<Output, CliError> {
    let p = read_poly(&args.input)?;
    let config = VerifyConfig {
        battery: match args.battery {
            BatteryArg::Canonical => Battery::Canonical,
            BatteryArg::Factorization => Battery::Factorization,
            BatteryArg::Kernel => Battery::Kernel,
            BatteryArg::All => Battery::All,
        },
        q: args.q,
        omega: args.omega,
        seed: args.seed,
    };
    let report = verify(&p, &config).map_err(canonical_error)?;
    if let Some(path) = &args.hamiltonian_csv {
        let sys = match config.omega {
            Some(w) => CanonicalSystem::omega(&p, config.q, w),
            None => CanonicalSystem::log(&p, config.q),
        }
        .map_err(canonical_error)?;
        fs::write(path, sys.hamiltonian().to_csv())
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Json => json_envelope("verify", &report)?,
        Format::Csv => csv_string(&HEADER, &rows(&report))?,
        Format::Table => render_table(&report),
    };
    Ok(Output {
        text,
        exit: if report.any_failed() { 1 } else { 0 },
    })
}

fn canonical_error(e: CanonicalError) -> CliError {
    match e {
        CanonicalError::InvalidParameter(_) => CliError::Usage(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

const HEADER: [&str; 6] = [
    "check",
    "status",
    "residual",
    "tolerance",
    "inputs",
    "reason",
];

fn rows(report: &VerificationReport) -> Vec<Vec<String>> {
    report
        .checks
        .iter()
        .map(|c| {
            let (status, reason) = match &c.status {
                CheckStatus::Pass => ("pass", ""),
                CheckStatus::Fail => ("FAIL", ""),
                CheckStatus::Skipped { reason } => ("skipped", reason.as_str()),
            };
            vec![
                c.name.clone(),
                status.into(),
                scientific(c.residual),
                format!("{:e}", c.tolerance),
                c.inputs.clone(),
                reason.into(),
            ]
        })
        .collect()
}

fn render_table(report: &VerificationReport) -> String {
    let coeffs: Vec<String> = report.poly.coeffs().iter().map(format_rational).collect();
    let mut out = format!(
        "c = [{}]  battery {}  q = {}  {}seed {}\n",
        coeffs.join(", "),
        report.battery,
        report.q,
        report
            .omega
            .map(|w| format!("omega = {w}  "))
            .unwrap_or_default(),
        report.seed
    );
    let o = &report.oracle;
    let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into());
    out.push_str(&format!(
        "oracle: on circle {}  simple {}  max residual {}  square-free {}  log verdict {}\n\n",
        opt(o.all_on_circle),
        opt(o.all_simple),
        o.max_residual
            .map(|r| format!("{r:.3e}"))
            .unwrap_or_else(|| "n/a".into()),
        o.square_free,
        verdict_text(&o.log_verdict)
    ));
    out.push_str(&table(&HEADER, &rows(report)));
    let failed = report.checks.iter().filter(|c| c.failed()).count();
    out.push_str(&format!(
        "\n{} checks, {} failed\n",
        report.checks.len(),
        failed
    ));
    out
}
