use std::fs;

use srp_core::criterion::SelfReciprocalPoly;
use srp_core::exact::{parse_rational, to_f64, BigRational};

use crate::args::PolyInput;
use crate::error::CliError;

/// The polynomial from `--file` or the positional half-list.
pub fn read_poly(input: &PolyInput) -> Result<SelfReciprocalPoly, CliError> {
    match &input.file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None if input.coeffs.is_empty() => Err(CliError::Usage(
            "no coefficients: pass c_0 … c_g or --file".into(),
        )),
        None => {
            SelfReciprocalPoly::parse(&input.coeffs).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

pub fn read_rationals(values: &[String]) -> Result<Vec<BigRational>, CliError> {
    values
        .iter()
        .map(|s| parse_rational(s).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

/// A float, or an exact `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    if let Ok(x) = s.trim().parse::<f64>() {
        return Ok(x);
    }
    parse_rational(s)
        .map(|r| to_f64(&r))
        .map_err(|_| format!("{s:?} is neither a number nor p/q"))
}

/// `a..b` (inclusive) or a single `g`.
pub fn parse_g_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("{t:?} is not a nonnegative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let g = num(s)?;
            (g, g)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("g-range {s:?} must satisfy 1 <= a <= b"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_g_range("1..6"), Ok((1, 6)));
        assert_eq!(parse_g_range("2..=3"), Ok((2, 3)));
        assert_eq!(parse_g_range("4"), Ok((4, 4)));
        assert!(parse_g_range("0..2").is_err());
        assert!(parse_g_range("3..2").is_err());
    }

    #[test]
    fn reals() {
        assert_eq!(parse_real("0.5"), Ok(0.5));
        assert_eq!(parse_real("1/2"), Ok(0.5));
        assert!(parse_real("x").is_err());
    }
}
