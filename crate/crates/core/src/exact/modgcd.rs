//! Multi-modular gcd of integer polynomials.
//!
//! Euclid runs in `Z_p[t]` for word-sized primes; images of the expected degree
//! are combined by CRT until the symmetric lift stops changing, and the lift is
//! accepted once it divides both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes just below `2^31`, so products fit in `u64`.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Self {
            next: (1 << 31) - 1,
        }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    trim(&mut out);
    out
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd in `Z_p[t]`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let f = a[da] * inv % p;
            let off = da - db;
            for (j, bc) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - f * bc % p) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let dd = d.len() - 1;
    let lead = &d[dd];
    let mut r = a.to_vec();
    while r.len() > dd {
        let dr = r.len() - 1;
        let (q, rem) = r[dr].div_rem(lead);
        if !rem.is_zero() {
            return false;
        }
        let off = dr - dd;
        for (j, c) in d.iter().enumerate() {
            r[off + j] -= &q * c;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if v.last().is_some_and(Signed::is_negative) {
        content = -content;
    }
    for c in v.iter_mut() {
        *c = &*c / &content;
    }
    v
}

/// gcd of two nonzero primitive integer polynomials (ascending coefficients,
/// no trailing zeros), returned primitive with positive leading coefficient.
pub fn gcd_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let la = a.last().unwrap();
    let lb = b.last().unwrap();
    let gamma = la.gcd(lb);
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_lift: Option<Vec<BigInt>> = None;
    for p in Primes::new() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > best_deg {
            continue;
        }
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = g.iter().map(|c| c * gm % p).collect();
        if d < best_deg {
            best_deg = d;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pb;
            last_lift = None;
            continue;
        }
        let m_inv = inv_mod(modulus.mod_floor(&pb).to_u64().unwrap(), p);
        for (h, &c) in acc.iter_mut().zip(&image) {
            let h_mod = h.mod_floor(&pb).to_u64().unwrap();
            let delta = (c + p - h_mod) % p * m_inv % p;
            *h += &modulus * delta;
        }
        modulus *= &pb;
        let lift: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus)).collect();
        if last_lift.as_ref() == Some(&lift) {
            let cand = primitive(lift.clone());
            if divides(&cand, a) && divides(&cand, b) {
                return cand;
            }
        }
        last_lift = Some(lift);
    }
    unreachable!("ran out of word-sized primes")
}
