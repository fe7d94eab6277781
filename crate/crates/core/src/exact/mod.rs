//! Exact scalar arithmetic.
//!
//! Everything the criterion needs to stay exact lives here: arbitrary-precision
//! rationals (re-exported from `num-rational`), Gaussian rationals, univariate
//! polynomials over Q, reduced rational functions in one variable `t`, and a
//! Sturm-chain root counter used to decide positivity on the ray `t > 1`.

mod gaussian;
mod modgcd;
mod poly;
mod ratfunc;
mod rational;
mod scalar;
mod sturm;

pub use gaussian::GaussianRational;
pub use modgcd::gcd_integer;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::UniPoly;
pub use ratfunc::{Limit, RationalFunction, Sign};
pub use rational::{format_rational, parse_rational, rat, rational_from_f64, to_f64};
pub use scalar::{Ring, Scalar};
pub use sturm::{
    count_roots_in, descartes_right_of_one, sturm_count, sturm_count_right_of_one, SturmChain,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at t = {0}")]
    PoleAtPoint(String),
    #[error("zero polynomial has no finite root count")]
    ZeroPolynomial,
    #[error("not positive: {0}")]
    NotPositive(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
