//! Floating-point canonical-system objects and their checks.
//!
//! From the exact state vectors of the recursion this module builds the
//! solution `(A(a, z), B(a, z))` on `[1, q^g)`, the Hamiltonian
//! `diag(1/m(a), m(a))`, the transfer-matrix representation and the
//! reproducing kernel, then verifies the identities tying them to `A_q`, `B_q`
//! and `E_q`. The product identity in [`factorization_identity`] is exact.

mod factorization;
mod functions;
mod system;
mod verify;

pub use factorization::{factorization_identity, factorization_product, FactorizationCheck};
pub use functions::{BoundaryFunctions, ExpPolyFunctions, OmegaFunctions};
pub use system::{
    det2, transfer_factor, CanonicalSystem, Hamiltonian, HamiltonianStep, KernelCheck, Matrix2,
    KERNEL_QUADRATURE_TOL,
};
pub use verify::{
    canonical_checks, factorization_check, kernel_checks, verify, Battery, CheckOutcome,
    CheckStatus, OracleSummary, VerificationReport, VerifyConfig, BOUNDARY_TOL, CONTINUITY_TOL,
    DET_TOL, END_LIMIT_TOL, KERNEL_SYMMETRY_TOL, KERNEL_TOL, ODE_STEP, ODE_TOL, TRANSFER_TOL,
};

pub use num_complex::Complex64;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CanonicalError {
    #[error("a = {a} is outside [1, q^g)")]
    OutOfDomain { a: f64 },
    #[error("step {n} lies past the first singular step of the recursion")]
    Undefined { n: usize },
    #[error("a = {a} with h = {h} straddles a breakpoint")]
    IntervalError { a: f64, h: f64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("z = conj(w): the confluent kernel is not supported")]
    ConfluentNotSupported,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
