use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring; enough for dense matrix products.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A commutative field the structured matrices and the recursion can run over.
///
/// Implemented for [`BigRational`] (numeric coefficients) and
/// [`RationalFunction`](super::RationalFunction) (the `t = q^ω` variant).
pub trait Scalar: Ring {
    fn from_rational(r: &BigRational) -> Self;

    /// `None` when `other` is zero.
    fn try_div(&self, other: &Self) -> Option<Self>;

    fn from_int(i: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(i.into()))
    }

    fn try_inv(&self) -> Option<Self> {
        Self::one().try_div(self)
    }

    fn scale(&self, r: &BigRational) -> Self {
        self.clone() * Self::from_rational(r)
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }

    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
}
