use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::UniPoly;
use super::rational::format_rational;
use super::scalar::Scalar;
use super::sturm::sturm_count_right_of_one;
use super::ExactError;

/// A reduced quotient `num / den` of polynomials in `t`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`.
/// Two rational functions are equal iff their canonical coefficient vectors are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Negative,
    Positive,
}

/// Value of a rational function as `t → 1⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(BigRational),
    Infinite(Sign),
}

impl RationalFunction {
    /// Brings `num / den` to canonical form.
    pub fn reduce(num: UniPoly, den: UniPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        Ok(Self::normalize_sign(num, den))
    }

    /// From a numerator and denominator already known to be coprime.
    pub fn from_coprime(num: UniPoly, den: UniPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalize_sign(num, den)
    }

    fn normalize_sign(num: UniPoly, den: UniPoly) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            Self { num, den }
        } else {
            let inv = lead.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Builds `Σ c·t^e` for possibly negative exponents `e`, normalised to a single
    /// polynomial over a power of `t`.
    pub fn from_laurent(terms: &[(i64, BigRational)]) -> Self {
        let shift = terms.iter().map(|(e, _)| -e).max().unwrap_or(0).max(0);
        let mut num = UniPoly::zero();
        for (e, c) in terms {
            num = num.add(&UniPoly::monomial(c.clone(), (e + shift) as usize));
        }
        let den = UniPoly::monomial(BigRational::one(), shift as usize);
        Self::reduce(num, den).expect("t^k is nonzero")
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(UniPoly::monomial(BigRational::one(), 1))
    }

    pub fn zero() -> Self {
        Self {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval_at(&self, t0: &BigRational) -> Result<BigRational, ExactError> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint(format_rational(t0)));
        }
        Ok(self.num.eval(t0) / d)
    }

    /// Floating-point evaluation; `None` at a pole.
    pub fn eval_f64(&self, t0: f64) -> Option<f64> {
        let t = BigRational::from_float(t0)?;
        self.eval_at(&t).ok().map(|v| super::rational::to_f64(&v))
    }

    /// One-sided limit `t → 1⁺`.
    pub fn limit_at_one(&self) -> Limit {
        let one = BigRational::one();
        let d1 = self.den.eval(&one);
        let n1 = self.num.eval(&one);
        if !d1.is_zero() {
            return Limit::Finite(n1 / d1);
        }
        // den = (t-1)^r·h with h(1) != 0; just right of 1 den has the sign of h(1).
        let factor = UniPoly::linear_root(&one);
        let mut h = self.den.clone();
        loop {
            let (q, r) = h.div_rem(&factor).expect("t - 1 is nonzero");
            if !r.is_zero() {
                break;
            }
            h = q;
        }
        let right_sign = h.eval(&one).is_positive();
        let positive = n1.is_positive() == right_sign;
        Limit::Infinite(if positive {
            Sign::Positive
        } else {
            Sign::Negative
        })
    }

    /// Whether `f(t)` is finite and strictly positive for every `t > 1`, decided exactly:
    /// neither numerator nor denominator has a root in `(1, ∞)` and `f(2) > 0`.
    pub fn positive_on_right_ray(&self) -> Result<bool, ExactError> {
        if self.is_zero() {
            return Err(ExactError::NotPositive("identically zero".into()));
        }
        if sturm_count_right_of_one(&self.num)? > 0 || sturm_count_right_of_one(&self.den)? > 0 {
            return Ok(false);
        }
        let two = BigRational::from_integer(2.into());
        Ok(self.eval_at(&two)?.is_positive())
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let inv = Self::normalize_sign(other.den.clone(), other.num.clone());
        Some(self.mul_ref(&inv))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // gcd(a, b) = gcd(c, d) = 1, so cancelling across is enough.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).unwrap();
        let d = other.den.exact_div(&g1).unwrap();
        let c = other.num.exact_div(&g2).unwrap();
        let b = self.den.exact_div(&g2).unwrap();
        Self::normalize_sign(a.mul(&c), b.mul(&d))
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        let h = self.den.gcd(&other.den);
        let b_h = self.den.exact_div(&h).unwrap();
        let d_h = other.den.exact_div(&h).unwrap();
        let num = self.num.mul(&d_h).add(&other.num.mul(&b_h));
        if num.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&d_h);
        let g = num.gcd(&h);
        if g.is_constant() {
            Self::normalize_sign(num, den)
        } else {
            Self::normalize_sign(num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        self.add_ref(&other)
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, other: &RationalFunction) -> RationalFunction {
        self.add_ref(other)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, other: &RationalFunction) -> RationalFunction {
        self.add_ref(&other.neg_ref())
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, other: &RationalFunction) -> RationalFunction {
        self.mul_ref(other)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Scalar for RationalFunction {
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(r.clone())
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other)
    }
    fn scale(&self, r: &BigRational) -> Self {
        self.scale_rational(r)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
