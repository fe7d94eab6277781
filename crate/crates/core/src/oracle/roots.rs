use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::OracleError;
use crate::criterion::SelfReciprocalPoly;
use crate::exact::{count_roots_in, rat, UniPoly};

/// Distance from the unit circle below which a root counts as on it.
pub const ON_CIRCLE_TOL: f64 = 1e-9;
/// Bound on the normalised residual `|P(ρ)| / Σ|p_j||ρ|^j` of every reported root.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Placement {
    OnCircle,
    OffCircle,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    /// `|ρ| - 1`.
    pub distance: f64,
    pub placement: Placement,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    /// Distinct roots with their multiplicities.
    pub roots: Vec<Root>,
    pub all_on_circle: bool,
    /// Decided exactly by [`square_free`].
    pub all_simple: bool,
    pub max_residual: f64,
}

impl RootReport {
    /// Roots repeated according to multiplicity; `2g` of them.
    pub fn all_roots(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value(), r.multiplicity))
            .collect()
    }
}

/// `gcd(P, P')` is constant.
pub fn square_free(p: &SelfReciprocalPoly) -> bool {
    let f = p.to_unipoly();
    f.gcd(&f.derivative()).is_constant()
}

/// Yun's square-free factorisation: `f = lc · Π a_i^i`, returned as `(a_i, i)`
/// for the non-constant `a_i`.
pub fn square_free_factors(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let mut c = d.exact_div(&a0).expect("gcd divides f'");
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&dd);
        let nb = b.exact_div(&a).expect("gcd divides");
        c = dd.exact_div(&a).expect("gcd divides");
        if !a.is_constant() {
            out.push((a, i));
        }
        b = nb;
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// All `2g` roots, classified against the unit circle.
pub fn find_roots(p: &SelfReciprocalPoly) -> Result<RootReport, OracleError> {
    let full = p.to_unipoly();
    let full_f64 = full.to_f64_coeffs();
    let mut roots = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (factor, mult) in square_free_factors(&full) {
        let coeffs = factor.monic().to_f64_coeffs();
        let found = aberth_with_retries(&coeffs)?;
        for z in found {
            let res = normalized_residual(&coeffs, z);
            max_residual = max_residual.max(res);
            let distance = z.norm() - 1.0;
            let placement = if distance.abs() <= ON_CIRCLE_TOL {
                Placement::OnCircle
            } else {
                Placement::OffCircle
            };
            roots.push(Root {
                re: z.re,
                im: z.im,
                multiplicity: mult,
                distance,
                placement,
            });
        }
    }
    if max_residual > RESIDUAL_TOL {
        return Err(OracleError::Residual(max_residual));
    }
    let count: usize = roots.iter().map(|r| r.multiplicity).sum();
    debug_assert_eq!(count, full_f64.len() - 1);
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite roots")
    });
    Ok(RootReport {
        all_on_circle: roots.iter().all(|r| r.placement == Placement::OnCircle),
        all_simple: square_free(p),
        roots,
        max_residual,
    })
}

/// Roots of the full polynomial without square-free splitting: multiple roots
/// come back as tight clusters.
pub fn raw_roots(p: &SelfReciprocalPoly) -> Result<Vec<Complex64>, OracleError> {
    aberth_with_retries(&p.to_unipoly().monic().to_f64_coeffs())
}

/// Exact witness for "all roots on the unit circle": with `y = x + 1/x`,
/// `x^{-g} P(x) = Q(y)`, and the claim holds iff every root of `Q` is real and
/// lies in `[-2, 2]`.
pub fn chebyshev_witness(p: &SelfReciprocalPoly) -> bool {
    let g = p.g();
    // D_0 = 2, D_1 = y, D_{j+1} = y D_j - D_{j-1}, so that x^j + x^{-j} = D_j(y)
    let y = UniPoly::from_ints(&[0, 1]);
    let mut d = vec![UniPoly::from_ints(&[2]), y.clone()];
    for j in 1..g {
        let next = y.mul(&d[j]).sub(&d[j - 1]);
        d.push(next);
    }
    let mut q = UniPoly::constant(p.coeffs()[g].clone());
    for (k, c) in p.coeffs().iter().enumerate().take(g) {
        q = q.add(&d[g - k].scale(c));
    }
    let sf = q.square_free_part();
    let distinct = sf.degree().unwrap_or(0);
    let (lo, hi) = (rat(-2, 1), rat(2, 1));
    let inside = count_roots_in(&sf, Some(&lo), Some(&hi)).expect("nonzero");
    let ends = [&lo, &hi].iter().filter(|e| sf.eval(e).is_zero()).count();
    inside + ends == distinct
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn normalized_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let r = z.norm();
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    p.norm() / scale
}

fn aberth_with_retries(coeffs: &[f64]) -> Result<Vec<Complex64>, OracleError> {
    for attempt in 0..6 {
        if let Some(z) = aberth(coeffs, 0.4 + 0.37 * attempt as f64) {
            return Ok(z);
        }
    }
    Err(OracleError::NoConvergence)
}

/// Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
fn aberth(coeffs: &[f64], phase: f64) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Start on a circle whose radius is the geometric mean of the root moduli.
    let radius = a[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = phase + std::f64::consts::TAU * k as f64 / n as f64;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    // A root is frozen once its correction is at round-off level.
    let mut done = vec![false; n];
    for _ in 0..2000 {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&a, z[k]);
            let r = z[k].norm();
            let scale: f64 = a.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
            if p.norm() <= 8.0 * f64::EPSILON * scale {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.is_finite() {
                return None;
            }
            z[k] -= step;
            done[k] = step.norm() <= 1e-13 * z[k].norm().max(1e-300);
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    if !done.iter().all(|&d| d) {
        return None;
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&a, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    Some(z)
}
