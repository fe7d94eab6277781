use std::time::Instant;

use serde::Serialize;
use srp_core::criterion::{run_log, run_omega_with, OmegaDecision, Verdict};
use srp_core::exact::format_rational;
use srp_core::oracle::{chebyshev_witness, generate, square_free, InstanceMode};

use super::verdict_text;
use crate::args::{ExperimentArgs, Format, OmegaArg};
use crate::error::CliError;
use crate::output::{csv_string, json_envelope, table, Output};

#[derive(Serialize)]
struct Config {
    modes: Vec<InstanceMode>,
    g_min: usize,
    g_max: usize,
    count: usize,
    seed: u64,
    omega: &'static str,
}

#[derive(Serialize)]
struct Row {
    mode: InstanceMode,
    resolved: InstanceMode,
    g: usize,
    index: usize,
    seed: u64,
    coeffs: Vec<String>,
    factors: String,
    log_verdict: Verdict,
    omega_verdict: Option<Verdict>,
    oracle_on_circle: bool,
    oracle_square_free: bool,
    log_agree: bool,
    omega_agree: Option<bool>,
    /// The generator's intended configuration matches the exact oracle.
    generator_agree: bool,
    flagged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<f64>,
}

#[derive(Serialize)]
struct Cell {
    mode: InstanceMode,
    g: usize,
    count: usize,
    log_pass: usize,
    log_agree: usize,
    omega_pass: usize,
    omega_inconclusive: usize,
    omega_agree: usize,
    oracle_on_circle: usize,
    oracle_square_free: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<f64>,
}

#[derive(Serialize)]
struct Summary {
    instances: usize,
    disagreements: usize,
    agreement: f64,
}

#[derive(Serialize)]
struct Payload {
    config: Config,
    summary: Summary,
    matrix: Vec<Cell>,
    instances: Vec<Row>,
}

/// Seed of instance `index` in the `(mode, g)` cell, so cells do not share draws.
fn instance_seed(seed: u64, mode: InstanceMode, g: usize, index: usize) -> u64 {
    let m = InstanceMode::ALL
        .iter()
        .position(|&x| x == mode)
        .unwrap_or(0) as u64;
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (m << 56) ^ ((g as u64) << 48) ^ index as u64
}

pub fn run(args: &ExperimentArgs, format: Format) -> Result<Output, CliError> {
    let (g_min, g_max) = args.g_range;
    let decision = match args.omega {
        OmegaArg::Exact => Some(OmegaDecision::Exact),
        OmegaArg::Sampled => Some(OmegaDecision::default_samples()),
        OmegaArg::Off => None,
    };
    let mut rows = Vec::new();
    let mut matrix = Vec::new();
    for &mode in &args.modes {
        for g in g_min..=g_max {
            let cell_start = Instant::now();
            let first = rows.len();
            for index in 0..args.count {
                rows.push(run_instance(mode, g, index, args, decision.as_ref()));
            }
            let cell = &rows[first..];
            if cell.is_empty() {
                continue;
            }
            let count_if = |f: &dyn Fn(&Row) -> bool| cell.iter().filter(|r| f(r)).count();
            matrix.push(Cell {
                mode,
                g,
                count: cell.len(),
                log_pass: count_if(&|r| r.log_verdict.is_pass()),
                log_agree: count_if(&|r| r.log_agree),
                omega_pass: count_if(&|r| r.omega_verdict.is_some_and(|v| v.is_pass())),
                omega_inconclusive: count_if(&|r| r.omega_verdict == Some(Verdict::Inconclusive)),
                omega_agree: count_if(&|r| r.omega_agree == Some(true)),
                oracle_on_circle: count_if(&|r| r.oracle_on_circle),
                oracle_square_free: count_if(&|r| r.oracle_square_free),
                seconds: args.timing.then(|| cell_start.elapsed().as_secs_f64()),
            });
        }
    }
    let disagreements = rows.iter().filter(|r| r.flagged).count();
    let summary = Summary {
        instances: rows.len(),
        disagreements,
        agreement: if rows.is_empty() {
            1.0
        } else {
            (rows.len() - disagreements) as f64 / rows.len() as f64
        },
    };
    let payload = Payload {
        config: Config {
            modes: args.modes.clone(),
            g_min,
            g_max,
            count: args.count,
            seed: args.seed,
            omega: match args.omega {
                OmegaArg::Exact => "exact",
                OmegaArg::Sampled => "sampled",
                OmegaArg::Off => "off",
            },
        },
        summary,
        matrix,
        instances: rows,
    };
    let text = match format {
        Format::Json => json_envelope("experiment", &payload)?,
        Format::Csv => render_csv(&payload)?,
        Format::Table => render_table(&payload),
    };
    Ok(Output::ok(text))
}

fn run_instance(
    mode: InstanceMode,
    g: usize,
    index: usize,
    args: &ExperimentArgs,
    decision: Option<&OmegaDecision>,
) -> Row {
    let start = Instant::now();
    let seed = instance_seed(args.seed, mode, g, index);
    let inst = generate(mode, g, seed);
    let p = &inst.poly;
    let on_circle = chebyshev_witness(p);
    let sf = square_free(p);
    let log_verdict = run_log(p).verdict;
    let omega_verdict = decision.map(|d| run_omega_with(p, d).verdict);
    let log_agree = log_verdict.is_pass() == (on_circle && sf);
    let omega_agree = omega_verdict.map(|v| match v {
        Verdict::AllOnCircle => on_circle,
        Verdict::Fails { .. } => !on_circle,
        // sampling can only refute, so silence is never a contradiction
        Verdict::Inconclusive => true,
        Verdict::AllOnCircleSimple => false,
    });
    let generator_agree = inst.expected_on_circle() == on_circle && (!inst.expected_simple() || sf);
    Row {
        mode,
        resolved: inst.resolved,
        g,
        index,
        seed,
        coeffs: p.coeffs().iter().map(format_rational).collect(),
        factors: inst.describe(),
        log_verdict,
        omega_verdict,
        oracle_on_circle: on_circle,
        oracle_square_free: sf,
        log_agree,
        omega_agree,
        generator_agree,
        flagged: !log_agree || omega_agree == Some(false) || !generator_agree,
        seconds: args.timing.then(|| start.elapsed().as_secs_f64()),
    }
}

fn render_table(payload: &Payload) -> String {
    let timing = payload.matrix.iter().any(|c| c.seconds.is_some());
    let mut header = vec![
        "mode",
        "g",
        "count",
        "log_pass",
        "log_agree",
        "omega_pass",
        "omega_agree",
        "on_circle",
        "square_free",
    ];
    if timing {
        header.push("seconds");
    }
    let rows: Vec<Vec<String>> = payload
        .matrix
        .iter()
        .map(|c| {
            let mut row = vec![
                c.mode.to_string(),
                c.g.to_string(),
                c.count.to_string(),
                c.log_pass.to_string(),
                format!("{}/{}", c.log_agree, c.count),
                c.omega_pass.to_string(),
                format!("{}/{}", c.omega_agree, c.count),
                c.oracle_on_circle.to_string(),
                c.oracle_square_free.to_string(),
            ];
            if let Some(s) = c.seconds {
                row.push(format!("{s:.3}"));
            }
            row
        })
        .collect();
    let s = &payload.summary;
    let mut out = table(&header, &rows);
    out.push_str(&format!(
        "\n{} instances, {} disagreements, agreement {:.1}%\n",
        s.instances,
        s.disagreements,
        100.0 * s.agreement
    ));
    for r in payload.instances.iter().filter(|r| r.flagged) {
        out.push_str(&format!(
            "\nDISAGREEMENT mode {} (resolved {}) g {} index {} seed {}\n  c = [{}]\n  {}\n  log {}  omega {}  oracle on_circle {} square_free {}  generator_agree {}\n",
            r.mode,
            r.resolved,
            r.g,
            r.index,
            r.seed,
            r.coeffs.join(", "),
            r.factors,
            verdict_text(&r.log_verdict),
            r.omega_verdict.as_ref().map(verdict_text).unwrap_or_else(|| "off".into()),
            r.oracle_on_circle,
            r.oracle_square_free,
            r.generator_agree,
        ));
    }
    out
}

fn render_csv(payload: &Payload) -> Result<String, CliError> {
    let timing = payload.instances.iter().any(|r| r.seconds.is_some());
    let mut header = vec![
        "mode",
        "resolved",
        "g",
        "index",
        "seed",
        "coeffs",
        "factors",
        "log_verdict",
        "omega_verdict",
        "oracle_on_circle",
        "oracle_square_free",
        "log_agree",
        "omega_agree",
        "generator_agree",
        "flagged",
    ];
    if timing {
        header.push("seconds");
    }
    let rows: Vec<Vec<String>> = payload
        .instances
        .iter()
        .map(|r| {
            let mut row = vec![
                r.mode.to_string(),
                r.resolved.to_string(),
                r.g.to_string(),
                r.index.to_string(),
                r.seed.to_string(),
                r.coeffs.join(" "),
                r.factors.clone(),
                verdict_text(&r.log_verdict),
                r.omega_verdict
                    .as_ref()
                    .map(verdict_text)
                    .unwrap_or_default(),
                r.oracle_on_circle.to_string(),
                r.oracle_square_free.to_string(),
                r.log_agree.to_string(),
                r.omega_agree.map(|a| a.to_string()).unwrap_or_default(),
                r.generator_agree.to_string(),
                r.flagged.to_string(),
            ];
            if let Some(s) = r.seconds {
                row.push(format!("{s:.6}"));
            }
            row
        })
        .collect();
    csv_string(&header, &rows)
}
