//! Ground truth independent of the recursion: floating-point roots with an exact
//! simplicity test, an exact Chebyshev-transform witness, and generators of
//! polynomials with a prescribed zero configuration.

mod generate;
mod lambda;
mod roots;

pub use generate::{
    from_lambdas, generate, random_instance, Factor, GeneratedInstance, InstanceMode, LambdaSpec,
};
pub use lambda::lambda_r_values;
pub use roots::{
    chebyshev_witness, find_roots, raw_roots, square_free, square_free_factors, Placement, Root,
    RootReport, ON_CIRCLE_TOL, RESIDUAL_TOL,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("root iteration did not converge")]
    NoConvergence,
    #[error("root residual {0:e} above tolerance")]
    Residual(f64),
}
