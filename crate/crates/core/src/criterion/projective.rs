//! Fast ω-mode recursion over `Q[t]`.
//!
//! `m` is a ratio of two linear forms in the state, so the state only matters up
//! to a nonzero scalar. We keep polynomial states, clear the step denominators
//! with `2·num·den`, and strip the common content after every step; no rational
//! function arithmetic is needed until `m` itself is formed.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::recursion::StepFailure;
use super::SelfReciprocalPoly;
use crate::exact::{gcd_integer, RationalFunction, UniPoly};
use crate::linsys::step_cleared;

/// Integer polynomial, ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct Entry(Vec<BigInt>);

impl Entry {
    fn trimmed(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Entry(v)
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn div_scalar(&self, d: &BigInt) -> Self {
        Entry(self.0.iter().map(|c| c / d).collect())
    }

    /// Exact quotient by a divisor with integer quotient.
    fn div_exact(&self, d: &Entry) -> Self {
        let dd = d.0.len() - 1;
        let lead = &d.0[dd];
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Entry(Vec::new());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        debug_assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        Entry::trimmed(q)
    }

    fn to_unipoly(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }
}

impl Add for Entry {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.0.len() >= rhs.0.len() {
            (self.0, rhs.0)
        } else {
            (rhs.0, self.0)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        Entry::trimmed(long)
    }
}

impl Sub for Entry {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Entry {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Entry(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Entry::trimmed(out)
    }
}

impl Neg for Entry {
    type Output = Self;
    fn neg(self) -> Self {
        Entry(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Zero for Entry {
    fn zero() -> Self {
        Entry(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for Entry {
    fn one() -> Self {
        Entry(vec![BigInt::one()])
    }
}

fn primitive_part(e: &Entry) -> Entry {
    let c = e.content();
    e.div_scalar(&c)
}

/// `m_{2g-1}(t), m_{2g-2}(t), …` up to and including the first failure.
pub(super) fn omega_parameters(
    p: &SelfReciprocalPoly,
) -> Vec<Result<RationalFunction, StepFailure>> {
    let g = p.g();
    // t^g times the Laurent initial vector, with denominators cleared.
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let half: Vec<Entry> = (0..=2 * g)
        .map(|j| {
            let c = p.full_coeff(j);
            let mut v = vec![BigInt::zero(); 2 * g - j + 1];
            v[2 * g - j] = c.numer() * (&lcm / c.denom());
            Entry::trimmed(v)
        })
        .collect();
    let mut w: Vec<Entry> = half.iter().chain(half.iter()).cloned().collect();
    let mut out = Vec::with_capacity(2 * g);
    for n in 1..=2 * g {
        let k = 2 * g - n;
        let a = w[0].clone() + w[k + 1].clone();
        let b = w[k + 2].clone() - w[2 * k + 3].clone();
        if b.is_zero() {
            out.push(Err(StepFailure::DenominatorZero));
            break;
        }
        if a.is_zero() {
            out.push(Err(StepFailure::NumeratorZero));
            break;
        }
        let (a, b) = (primitive_part(&a), primitive_part(&b));
        let common = Entry(gcd_integer(&a.0, &b.0));
        let (num, den) = if common.0.len() > 1 {
            (a.div_exact(&common), b.div_exact(&common))
        } else {
            (a, b)
        };
        let m = RationalFunction::from_coprime(num.to_unipoly(), den.to_unipoly());
        let next = step_cleared(k, &num, &den)
            .mul_vec(&w)
            .expect("lengths match");
        if next[0].clone() * den.clone() != next[k + 1].clone() * num.clone() {
            out.push(Err(StepFailure::Inconsistent));
            break;
        }
        w = strip_content(next);
        out.push(Ok(m));
    }
    out
}

/// Divides every entry by the common polynomial gcd and the common integer content.
fn strip_content(w: Vec<Entry>) -> Vec<Entry> {
    let mut common: Option<Entry> = None;
    for e in w.iter().filter(|e| !e.is_zero()) {
        let pe = primitive_part(e);
        let next = match common {
            None => pe,
            Some(c) => Entry(gcd_integer(&c.0, &pe.0)),
        };
        let done = next.0.len() == 1;
        common = Some(next);
        if done {
            break;
        }
    }
    let w: Vec<Entry> = match common {
        Some(c) if c.0.len() > 1 => w.iter().map(|e| e.div_exact(&c)).collect(),
        _ => w,
    };
    let content = w
        .iter()
        .fold(BigInt::zero(), |acc, e| acc.gcd(&e.content()));
    if content.is_zero() || content.is_one() {
        return w;
    }
    w.iter().map(|e| e.div_scalar(&content)).collect()
}
