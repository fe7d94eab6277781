//! Serializable renderings of reports: exact values as `"p/q"` strings with a
//! decimal alongside.

use num_rational::BigRational;
use serde::Serialize;

use super::report::{
    r_sequence, Certificate, CriterionReport, LimitRow, Mode, StepStatus, Verdict,
};
use crate::exact::{format_rational, to_f64, Limit, RationalFunction, Scalar, Sign};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarView {
    pub exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<f64>,
}

pub trait Render {
    fn render(&self) -> ScalarView;
}

impl Render for BigRational {
    fn render(&self) -> ScalarView {
        ScalarView {
            exact: format_rational(self),
            decimal: Some(to_f64(self)),
        }
    }
}

impl Render for RationalFunction {
    fn render(&self) -> ScalarView {
        ScalarView {
            exact: self.to_string(),
            decimal: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepView {
    pub n: usize,
    /// Index of the produced value, `2g - n`.
    pub index: usize,
    pub m: Option<ScalarView>,
    pub status: StepStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportView {
    pub mode: Mode,
    pub g: usize,
    pub coeffs: Vec<String>,
    pub m_top: ScalarView,
    pub steps: Vec<StepView>,
    /// `R_0, …, R_{2g}` when every step succeeded.
    pub r_sequence: Option<Vec<ScalarView>>,
    pub verdict: Verdict,
}

impl<S: Scalar + Render> From<&CriterionReport<S>> for ReportView {
    fn from(r: &CriterionReport<S>) -> Self {
        let g = r.g();
        Self {
            mode: r.mode,
            g,
            coeffs: r.poly.coeffs().iter().map(format_rational).collect(),
            m_top: r.m_top.render(),
            steps: r
                .steps
                .iter()
                .map(|s| StepView {
                    n: s.n,
                    index: 2 * g - s.n,
                    m: s.m.as_ref().map(Render::render),
                    status: s.status,
                    certificate: s.certificate.clone(),
                })
                .collect(),
            r_sequence: r_sequence(r)
                .ok()
                .map(|rs| rs.values.iter().map(Render::render).collect()),
            verdict: r.verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitView {
    pub n: usize,
    pub omega_limit: String,
    pub log_value: ScalarView,
    pub equal: bool,
}

impl From<&LimitRow> for LimitView {
    fn from(row: &LimitRow) -> Self {
        let omega_limit = match &row.omega_limit {
            Limit::Finite(v) => format_rational(v),
            Limit::Infinite(Sign::Positive) => "+inf".into(),
            Limit::Infinite(Sign::Negative) => "-inf".into(),
        };
        Self {
            n: row.n,
            omega_limit,
            log_value: row.log_value.render(),
            equal: row.equal,
        }
    }
}
