//! The unit-circle criteria.
//!
//! [`run_log`] works with `log q = 1` over the rationals and decides "all zeros on
//! the unit circle and simple". [`run_omega`] works over `Q(t)` with `t = q^ω` and
//! decides "all zeros on the unit circle" with multiplicities allowed; positivity
//! for every `t > 1` is settled by exact root counts on `(1, ∞)`.

mod poly;
mod projective;
mod recursion;
mod report;
mod view;

pub use poly::SelfReciprocalPoly;
pub use recursion::{
    initial_vector_log, initial_vector_omega, recursion_step, step_parameter, StateVector,
    StepFailure,
};
pub use report::{
    all_r_positive, limit_check, omega_m_top, r_prefix, r_sequence, run_log, run_omega,
    run_omega_with, verdict_via_r, Certificate, CriterionReport, LimitRow, Mode, OmegaDecision,
    RSequence, StepRecord, StepStatus, Verdict,
};
pub use view::{LimitView, Render, ReportView, ScalarView, StepView};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("state vector for g = {g}, n = {n} cannot have length {len}")]
    Length { g: usize, n: usize, len: usize },
    #[error("R-sequence not available: m undefined or zero at step {0}")]
    RNotAvailable(usize),
    #[error("m = m_top R_(n-1) R_n fails at n = {0}")]
    RelationViolated(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
