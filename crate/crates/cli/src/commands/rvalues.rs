use serde::Serialize;
use srp_core::criterion::{r_prefix, run_log, Render, ScalarView, SelfReciprocalPoly};
use srp_core::exact::{format_rational, parse_rational, BigRational};
use srp_core::oracle::{from_lambdas, lambda_r_values, LambdaSpec};

use super::status_text;
use crate::args::{Format, RvaluesArgs};
use crate::error::CliError;
use crate::input::{read_poly, read_rationals};
use crate::output::{csv_string, decimal, json_envelope, table, Output};

#[derive(Serialize)]
struct Row {
    n: usize,
    r: Option<ScalarView>,
    /// Why `R_n` is missing: the first step whose `m` is undefined or zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    undefined: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_formula: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

#[derive(Serialize)]
struct Payload {
    g: usize,
    coeffs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambdas: Option<Vec<String>>,
    rows: Vec<Row>,
}

pub fn run(args: &RvaluesArgs, format: Format) -> Result<Output, CliError> {
    let (p, lambdas) = if args.lambdas {
        if args.input.file.is_some() {
            return Err(CliError::Usage("--lambdas takes the values inline".into()));
        }
        let lambdas = read_rationals(&args.input.coeffs)?;
        let c0 = parse_rational(&args.c0).map_err(|e| CliError::Usage(e.to_string()))?;
        let spec = LambdaSpec::new(lambdas.clone(), c0)
            .ok_or_else(|| CliError::Usage("need at least one λ and c_0 != 0".into()))?;
        (from_lambdas(&spec), Some(lambdas))
    } else {
        (read_poly(&args.input)?, None)
    };
    let payload = build(&p, lambdas.as_deref());
    let text = match format {
        Format::Json => json_envelope("rvalues", &payload)?,
        Format::Csv => {
            let (header, rows) = cells(&payload);
            csv_string(&header, &rows)?
        }
        Format::Table => {
            let (header, rows) = cells(&payload);
            let mut out = format!("g = {}  c = [{}]\n", payload.g, payload.coeffs.join(", "));
            if let Some(l) = &payload.lambdas {
                out.push_str(&format!("lambda = [{}]\n", l.join(", ")));
                if payload.g > 3 {
                    out.push_str("closed forms in lambda exist only for g <= 3\n");
                }
            }
            out.push('\n');
            out.push_str(&table(&header, &rows));
            out
        }
    };
    Ok(Output::ok(text))
}

fn build(p: &SelfReciprocalPoly, lambdas: Option<&[BigRational]>) -> Payload {
    let report = run_log(p);
    let prefix = r_prefix(&report);
    let reason = report
        .first_failure()
        .map(|f| format!("step {} {}", f.n, status_text(f.status)));
    let closed = lambdas.and_then(lambda_r_values);
    let rows = (1..prefix.len())
        .map(|n| {
            let r = prefix[n].as_ref();
            let formula = closed.as_ref().map(|c| c[n].as_ref());
            Row {
                n,
                r: r.map(Render::render),
                undefined: if r.is_none() { reason.clone() } else { None },
                lambda_formula: formula.map(|f| f.map(format_rational)),
                agree: formula.map(|f| f == r),
            }
        })
        .collect();
    Payload {
        g: p.g(),
        coeffs: p.coeffs().iter().map(format_rational).collect(),
        lambdas: lambdas.map(|l| l.iter().map(format_rational).collect()),
        rows,
    }
}

fn cells(payload: &Payload) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let with_lambda = payload.rows.iter().any(|r| r.agree.is_some());
    let mut header = vec!["n", "R_n", "decimal", "note"];
    if with_lambda {
        header.extend(["lambda_formula", "agree"]);
    }
    let rows = payload
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![
                r.n.to_string(),
                r.r.as_ref()
                    .map(|v| v.exact.clone())
                    .unwrap_or_else(|| "undefined".into()),
                decimal(r.r.as_ref().and_then(|v| v.decimal)),
                r.undefined.clone().unwrap_or_default(),
            ];
            if with_lambda {
                row.push(match &r.lambda_formula {
                    Some(Some(v)) => v.clone(),
                    Some(None) => "undefined".into(),
                    None => String::new(),
                });
                row.push(r.agree.map(|a| a.to_string()).unwrap_or_default());
            }
            row
        })
        .collect();
    (header, rows)
}
