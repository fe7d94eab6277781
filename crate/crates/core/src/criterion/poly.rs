use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CriterionError;
use crate::exact::{format_rational, parse_rational, UniPoly};

/// `P(x) = Σ_{k<g} c_k (x^{2g-k} + x^k) + c_g x^g` with `c_0 ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyFile", into = "PolyFile")]
pub struct SelfReciprocalPoly {
    coeffs: Vec<BigRational>,
}

/// On-disk form: `{"g": 2, "coeffs": ["1", "-1", "2"]}`.
#[derive(Serialize, Deserialize)]
struct PolyFile {
    g: usize,
    coeffs: Vec<String>,
}

impl TryFrom<PolyFile> for SelfReciprocalPoly {
    type Error = CriterionError;

    fn try_from(f: PolyFile) -> Result<Self, Self::Error> {
        if f.g > 0 && f.coeffs.len() == 2 * f.g + 1 {
            return Err(CriterionError::InvalidPolynomial(format!(
                "got {} coefficients for g = {}: give the half-list c_0..c_g, not the full palindrome",
                f.coeffs.len(),
                f.g
            )));
        }
        if f.coeffs.len() != f.g + 1 {
            return Err(CriterionError::InvalidPolynomial(format!(
                "g = {} needs {} coefficients, got {}",
                f.g,
                f.g + 1,
                f.coeffs.len()
            )));
        }
        let strs: Vec<&str> = f.coeffs.iter().map(String::as_str).collect();
        Self::parse(&strs)
    }
}

impl From<SelfReciprocalPoly> for PolyFile {
    fn from(p: SelfReciprocalPoly) -> Self {
        Self {
            g: p.g(),
            coeffs: p.coeffs.iter().map(format_rational).collect(),
        }
    }
}

impl SelfReciprocalPoly {
    /// Takes the half-list `c_0, …, c_g`.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self, CriterionError> {
        if coeffs.len() < 2 {
            return Err(CriterionError::InvalidPolynomial(
                "need at least c_0 and c_1 (g >= 1)".into(),
            ));
        }
        if coeffs[0].is_zero() {
            return Err(CriterionError::InvalidPolynomial(
                "c_0 must be nonzero".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, CriterionError> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn parse<S: AsRef<str>>(coeffs: &[S]) -> Result<Self, CriterionError> {
        let parsed = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CriterionError::InvalidPolynomial(e.to_string()))?;
        Self::new(parsed)
    }

    pub fn g(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^j` for `0 ≤ j ≤ 2g`.
    pub fn full_coeff(&self, j: usize) -> &BigRational {
        let g2 = 2 * self.g();
        &self.coeffs[j.min(g2 - j)]
    }

    /// All `2g + 1` coefficients, ascending.
    pub fn to_unipoly(&self) -> UniPoly {
        UniPoly::new(
            (0..=2 * self.g())
                .map(|j| self.full_coeff(j).clone())
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for j in (0..=2 * self.g()).rev() {
            acc = acc * x + self.full_coeff(j);
        }
        acc
    }

    /// `P(1) = 2 Σ_{k<g} c_k + c_g`.
    pub fn value_at_one(&self) -> BigRational {
        self.eval(&BigRational::one())
    }

    pub fn scaled(&self, alpha: &BigRational) -> Result<Self, CriterionError> {
        Self::new(self.coeffs.iter().map(|c| c * alpha).collect())
    }
}

impl fmt::Display for SelfReciprocalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
