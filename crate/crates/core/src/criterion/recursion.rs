use num_rational::BigRational;
use serde::Serialize;

use super::{CriterionError, SelfReciprocalPoly};
use crate::exact::{RationalFunction, Scalar};
use crate::linsys::build_step;

/// `v_g(n)`, of length `4g - 2n + 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<S> {
    g: usize,
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> StateVector<S> {
    pub fn new(g: usize, n: usize, entries: Vec<S>) -> Result<Self, CriterionError> {
        if n > 2 * g || entries.len() != 4 * g - 2 * n + 2 {
            return Err(CriterionError::Length {
                g,
                n,
                len: entries.len(),
            });
        }
        Ok(Self { g, n, entries })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `k = 2g - n`; the vector has two halves of length `k + 1`.
    pub fn k(&self) -> usize {
        2 * self.g - self.n
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn first_half(&self) -> &[S] {
        &self.entries[..self.k() + 1]
    }

    pub fn second_half(&self) -> &[S] {
        &self.entries[self.k() + 1..]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StateVector<T> {
        StateVector {
            g: self.g,
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Why a recursion step cannot produce `v_g(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepFailure {
    NumeratorZero,
    DenominatorZero,
    /// `m ≠ v'[1] / v'[k+2]`; never expected, kept as a runtime check.
    Inconsistent,
}

/// Initial vector with `log q = 1`:
/// `(c_0, …, c_g, …, c_0 | g c_0, (g-1) c_1, …, 0, …, -g c_0)`.
pub fn initial_vector_log(p: &SelfReciprocalPoly) -> StateVector<BigRational> {
    let g = p.g();
    let first = (0..=2 * g).map(|j| p.full_coeff(j).clone());
    let second = (0..=2 * g).map(|j| {
        let w = BigRational::from_integer((g as i64 - j as i64).into());
        w * p.full_coeff(j)
    });
    StateVector {
        g,
        n: 0,
        entries: first.chain(second).collect(),
    }
}

/// Initial vector over `Q(t)`, `t = q^ω`: both halves are `(c_0 t^g, …, c_g, …, c_0 t^{-g})`.
pub fn initial_vector_omega(p: &SelfReciprocalPoly) -> StateVector<RationalFunction> {
    let g = p.g();
    let half: Vec<RationalFunction> = (0..=2 * g)
        .map(|j| RationalFunction::from_laurent(&[(g as i64 - j as i64, p.full_coeff(j).clone())]))
        .collect();
    let entries = half.iter().cloned().chain(half.iter().cloned()).collect();
    StateVector { g, n: 0, entries }
}

/// `m = (v[1] + v[k+2]) / (v[k+3] - v[2k+4])` on `v = v_g(n-1)`, where `k = 2g - n`.
pub fn step_parameter<S: Scalar>(v: &StateVector<S>) -> Result<S, StepFailure> {
    let e = &v.entries;
    let k = v.k() - 1;
    let num = e[0].clone() + e[k + 1].clone();
    let den = e[k + 2].clone() - e[2 * k + 3].clone();
    if den.is_zero() {
        return Err(StepFailure::DenominatorZero);
    }
    if num.is_zero() {
        return Err(StepFailure::NumeratorZero);
    }
    Ok(num.try_div(&den).expect("denominator checked nonzero"))
}

/// One step `v_g(n-1) ↦ (m_{2g-n}, v_g(n))`.
pub fn recursion_step<S: Scalar>(v: &StateVector<S>) -> Result<(S, StateVector<S>), StepFailure> {
    assert!(v.n < 2 * v.g, "v_g(2g) is the last state");
    let k = v.k() - 1;
    let m = step_parameter(v)?;
    let step = build_step(k, &m).map_err(|_| StepFailure::NumeratorZero)?;
    let entries = step
        .apply(&v.entries)
        .expect("step matrix matches the state length");
    if entries[0] != m.clone() * entries[k + 1].clone() {
        return Err(StepFailure::Inconsistent);
    }
    Ok((
        m,
        StateVector {
            g: v.g,
            n: v.n + 1,
            entries,
        },
    ))
}
