//! Exact real-root counting with Sturm chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::ExactError;

/// Signed remainder sequence `p, p', -rem(p, p'), ...` of a square-free polynomial.
///
/// Every member is scaled by a positive constant only (primitive part with
/// sign preserved), which keeps coefficients small without touching signs.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self, ExactError> {
        if p.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        // Runs over Z: each remainder is a pseudo-remainder scaled by a positive
        // factor, then divided by its positive content.
        let mut chain = vec![positive_content_part(p.primitive_integer())];
        let d = positive_content_part(p.derivative().primitive_integer());
        if !d.is_empty() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = positive_pseudo_remainder(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(positive_content_part(r.into_iter().map(|c| -c).collect()));
        }
        let chain = chain
            .into_iter()
            .map(|c| UniPoly::new(c.into_iter().map(BigRational::from_integer).collect()))
            .collect();
        Ok(Self { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign changes at a finite point; zeros are skipped.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        count_changes(self.chain.iter().map(|p| sign_of(&p.eval(x))))
    }

    /// Sign changes at `+∞` (`toward_positive`) or `-∞`.
    pub fn variations_at_infinity(&self, toward_positive: bool) -> usize {
        count_changes(self.chain.iter().map(|p| {
            let lead = sign_of(p.leading().expect("chain members are nonzero"));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !toward_positive && odd {
                -lead
            } else {
                lead
            }
        }))
    }
}

/// `|lc(b)|^k · (a mod b)` for the number `k` of elimination steps taken.
fn positive_pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let (scale, flip) = (lb.abs(), lb.is_negative());
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let mut lr = r[dr].clone();
        if flip {
            lr = -lr;
        }
        for c in r.iter_mut() {
            *c *= &scale;
        }
        let off = dr - db;
        for (j, c) in b.iter().enumerate() {
            r[off + j] -= &lr * c;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Divides by the positive content; the zero polynomial stays empty.
fn positive_content_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    v
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`;
/// `None` stands for the corresponding infinity.
pub fn count_roots_in(
    p: &UniPoly,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut sf = p.square_free_part();
    // Endpoints are excluded; strip them so the chain is nonzero there.
    for end in [lo, hi].into_iter().flatten() {
        if !sf.is_constant() && sf.eval(end).is_zero() {
            sf = sf.exact_div(&UniPoly::linear_root(end))?;
        }
    }
    if sf.is_constant() {
        return Ok(0);
    }
    if let (Some(a), Some(b)) = (lo, hi) {
        if a >= b {
            return Ok(0);
        }
    }
    let chain = SturmChain::new(&sf)?;
    let v_lo = match lo {
        Some(a) => chain.variations_at(a),
        None => chain.variations_at_infinity(false),
    };
    let v_hi = match hi {
        Some(b) => chain.variations_at(b),
        None => chain.variations_at_infinity(true),
    };
    Ok(v_lo - v_hi)
}

/// Distinct real roots in `(1, ∞)`.
///
/// Descartes' rule on `p(1 + x)` settles the common cases of zero or one sign
/// variation outright. Otherwise the square-free part is isolated by Descartes
/// bisection over Z, which keeps coefficient sizes flat where a Sturm chain of
/// a degree-90 polynomial would not.
pub fn sturm_count_right_of_one(p: &UniPoly) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    match descartes_right_of_one(p) {
        v @ (0 | 1) => Ok(v),
        _ => Ok(bisection_right_of_one(p)),
    }
}

/// Sign variations of the coefficients of `p(1 + x)`: an upper bound on the
/// number of roots in `(1, ∞)` with multiplicity, exact when it is 0 or 1.
pub fn descartes_right_of_one(p: &UniPoly) -> usize {
    let mut c = p.primitive_integer();
    taylor_shift(&mut c);
    variations(&c)
}

/// `c(x) ↦ c(x + 1)` in place.
fn taylor_shift(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = c[j + 1].clone();
            c[j] += next;
        }
    }
}

fn variations(c: &[BigInt]) -> usize {
    count_changes(c.iter().map(|x| match x.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }))
}

fn bisection_right_of_one(p: &UniPoly) -> usize {
    let ints = p.primitive_integer();
    let deriv = p.derivative().primitive_integer();
    let mut f = if deriv.is_empty() {
        ints
    } else {
        let g = super::modgcd::gcd_integer(&ints, &deriv);
        exact_quotient(&ints, &g)
    };
    taylor_shift(&mut f);
    // A root at t = 1 is now a root at 0, outside the open ray.
    if f[0].is_zero() {
        f.remove(0);
    }
    // Every root is below 2 max_i |c_i / c_d|^{1/(d-i)} (Fujiwara), hence below
    // 2^k, so x ↦ 2^k x moves the positive ones into (0, 1).
    let d = f.len() - 1;
    let lead_bits = f[d].bits() as i64;
    let k = f[..d]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let gap = (d - i) as i64;
            let excess = c.bits() as i64 - lead_bits + 1;
            1 + (excess.max(0) + gap - 1) / gap
        })
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    for (i, c) in f.iter_mut().enumerate() {
        *c <<= k * i;
    }
    count_unit_interval(positive_content_part(f))
}

/// Roots in `(0, 1)` of a square-free integer polynomial.
fn count_unit_interval(f: Vec<BigInt>) -> usize {
    let d = f.len() - 1;
    let mut image: Vec<BigInt> = f.iter().rev().cloned().collect();
    taylor_shift(&mut image);
    match variations(&image) {
        v @ (0 | 1) => v,
        _ => {
            // left(x) = 2^d f(x/2) covers (0, 1/2); right(x) = left(x + 1) covers (1/2, 1).
            let left: Vec<BigInt> = f.iter().enumerate().map(|(i, c)| c << (d - i)).collect();
            let at_half = left.iter().fold(BigInt::zero(), |acc, c| acc + c).is_zero();
            let mut right = left.clone();
            taylor_shift(&mut right);
            usize::from(at_half)
                + count_unit_interval(positive_content_part(left))
                + count_unit_interval(positive_content_part(right))
        }
    }
}

fn exact_quotient(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let c = &r[i + dd] / &d[dd];
        for (j, dc) in d.iter().enumerate() {
            r[i + j] -= &c * dc;
        }
        q[i] = c;
    }
    q
}

/// Alias used by the public surface: counts distinct roots of `p` in `(1, +∞)`.
pub fn sturm_count(p: &UniPoly) -> Result<usize, ExactError> {
    sturm_count_right_of_one(p)
}
