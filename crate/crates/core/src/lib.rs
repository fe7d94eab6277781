//! Exact unit-circle zero criteria for self-reciprocal polynomials.
//!
//! A real self-reciprocal polynomial of degree `2g`,
//! `P(x) = Σ_{k<g} c_k (x^{2g-k} + x^k) + c_g x^g`, is fed into a structured
//! linear recursion that produces `2g` quantities `m_{2g-1}, …, m_0`. Their
//! joint positivity decides whether every zero lies on the unit circle and is
//! simple ([`criterion::run_log`]); a one-parameter deformation in `t = q^ω`
//! drops the simplicity requirement ([`criterion::run_omega`]).
//!
//! The [`canonical`] module builds the piecewise-constant Hamiltonian and the
//! solution of the associated canonical system in floating point and checks
//! it, while [`oracle`] supplies independent ground truth from root finding
//! and exact square-free tests.

pub mod canonical;
pub mod criterion;
pub mod exact;
pub mod linsys;
pub mod oracle;
