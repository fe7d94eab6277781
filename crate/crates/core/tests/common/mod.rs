//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's algorithms: matrices are rebuilt from
//! their displayed row patterns, determinants and inverses come from textbook
//! Gaussian elimination, and the R tables are typed in from the printed formulas.

// elimination reads best with explicit indices
#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn r(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nonzero rational with small numerator and denominator.
pub fn random_nonzero(rng: &mut ChaCha8Rng, height: i64) -> Q {
    loop {
        let n = rng.gen_range(-height..=height);
        if n != 0 {
            return r(n, rng.gen_range(1..=height));
        }
    }
}

/// `c_0, …, c_g` with `c_0 ≠ 0`.
pub fn random_coeffs(rng: &mut ChaCha8Rng, g: usize, height: i64) -> Vec<Q> {
    let mut c = vec![random_nonzero(rng, height)];
    for _ in 0..g {
        c.push(r(
            rng.gen_range(-height..=height),
            rng.gen_range(1..=height),
        ));
    }
    c
}

// ---------------------------------------------------------------------------
// Dense linear algebra over Q

pub type Dense = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Dense {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(n, m);
    for i in 0..n {
        assert_eq!(a[i].len(), k);
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Determinant by elimination with row swaps.
pub fn det(a: &Dense) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col].clone();
        d *= &p;
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

/// `A⁻¹ B` by Gauss–Jordan; `None` when `A` is singular.
pub fn solve(a: &Dense, b: &Dense) -> Option<Dense> {
    let n = a.len();
    let w = b[0].len();
    let mut m: Dense = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n + w {
                    let t = &f * &m[col][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// The structured matrices, rebuilt from their row patterns

/// Row `i` (1-based) of `V^±` / `W^±`: `e_i ± e_{k+3-i}`, with a single 1 where
/// the two positions coincide; `V` drops the pair partner for `i = 1`.
fn pattern_rows(k: usize, rows: usize, cols: usize, sign: i64, appended: bool) -> Dense {
    let mut out = zeros(rows, cols);
    for i in 1..=rows {
        out[i - 1][i - 1] = Q::one();
        let partner = k + 3 - i;
        if (i >= 2 || appended) && partner != i && partner <= cols {
            out[i - 1][partner - 1] = int(sign);
        }
    }
    out
}

pub fn reference_p(k: usize, m: &Q) -> Dense {
    let n = 2 * k + 2;
    let mut p = zeros(n, n);
    let plus = if k % 2 == 1 { (k + 3) / 2 } else { (k + 2) / 2 };
    let minus = k + 2 - plus;
    let vp = pattern_rows(k, plus, k + 1, 1, false);
    let vm = pattern_rows(k, minus, k + 1, -1, false);
    for (i, row) in vp.iter().enumerate() {
        p[i][..k + 1].clone_from_slice(row);
    }
    for (i, row) in vm.iter().enumerate() {
        p[plus + i][k + 1..].clone_from_slice(row);
    }
    for j in 0..k {
        p[k + 2 + j][1 + j] = Q::one();
        p[k + 2 + j][k + 2 + j] = -m.clone();
    }
    p
}

pub fn reference_q(k: usize) -> Dense {
    let mut q = zeros(2 * k + 2, 2 * k + 4);
    let plus = if k % 2 == 1 { (k + 3) / 2 } else { (k + 2) / 2 };
    let minus = k + 2 - plus;
    let wp = pattern_rows(k, plus, k + 2, 1, true);
    let wm = pattern_rows(k, minus, k + 2, -1, true);
    for (i, row) in wp.iter().enumerate() {
        q[i][..k + 2].clone_from_slice(row);
    }
    for (i, row) in wm.iter().enumerate() {
        q[plus + i][k + 2..].clone_from_slice(row);
    }
    q
}

/// The determinant formula for `k ≥ 1`, typed in from its statement.
pub fn det_formula(k: usize, m: &Q) -> Q {
    let j = k / 2;
    let (eps, power) = if k % 2 == 1 {
        (if j % 4 == 2 || j % 4 == 3 { 1 } else { -1 }, j + 1)
    } else {
        (
            if j.is_multiple_of(4) || j % 4 == 1 {
                1
            } else {
                -1
            },
            j,
        )
    };
    let two_j = Q::from_integer(BigInt::from(2).pow(j as u32));
    int(eps) * two_j * m.pow(power as i32)
}

// ---------------------------------------------------------------------------
// R_n tables for g = 1, 2, 3

fn ratio(n: Q, d: Q) -> Option<Q> {
    (!d.is_zero()).then(|| n / d)
}

/// `R_0, …, R_{2g}` from the printed tables, `None` where a denominator vanishes.
pub fn table_r(c: &[Q]) -> Vec<Option<Q>> {
    let one = Some(Q::one());
    match c.len() - 1 {
        1 => {
            let (c0, c1) = (&c[0], &c[1]);
            vec![one.clone(), one, ratio(int(2) * c0 + c1, int(2) * c0 - c1)]
        }
        2 => {
            let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
            vec![
                one.clone(),
                one,
                ratio(int(4) * c0 + c1, int(4) * c0 - c1),
                ratio(
                    int(8) * c0 * c0 - int(2) * c1 * c1 + int(4) * c0 * c2,
                    int(8) * c0 * c0 + c1 * c1 - int(4) * c0 * c2,
                ),
                ratio(
                    int(2) * c0 + int(2) * c1 + c2,
                    int(2) * c0 - int(2) * c1 + c2,
                ),
            ]
        }
        3 => {
            let (a, b, c2, d) = (&c[0], &c[1], &c[2], &c[3]);
            let r2 = ratio(int(6) * a + b, int(6) * a - b);
            let r3 = ratio(
                int(18) * a * a - int(3) * b * b + int(6) * a * c2,
                int(18) * a * a + int(2) * b * b - int(6) * a * c2,
            );
            let r4 = ratio(
                int(36) * a * a * a + int(6) * a * a * b - a * b * b + int(4) * b * b * b
                    - int(14) * a * b * c2
                    + b * b * c2
                    - int(4) * a * c2 * c2
                    + int(18) * a * a * d
                    + int(3) * a * b * d,
                int(36) * a * a * a - int(6) * a * a * b - a * b * b - int(4) * b * b * b
                    + int(14) * a * b * c2
                    + b * b * c2
                    - int(4) * a * c2 * c2
                    - int(18) * a * a * d
                    + int(3) * a * b * d,
            );
            let r5 = ratio(
                int(108) * a.pow(4) - int(21) * a * a * b * b - int(12) * b.pow(4)
                    + int(108) * a.pow(3) * c2
                    + int(42) * a * b * b * c2
                    - int(12) * a * a * c2 * c2
                    + int(3) * b * b * c2 * c2
                    - int(12) * a * c2.pow(3)
                    - int(54) * a * a * b * d
                    - int(6) * b.pow(3) * d
                    + int(30) * a * b * c2 * d
                    - int(27) * a * a * d * d,
                int(108) * a.pow(4) + int(9) * a * a * b * b + int(8) * b.pow(4)
                    - int(108) * a.pow(3) * c2
                    - int(42) * a * b * b * c2
                    + int(36) * a * a * c2 * c2
                    + b * b * c2 * c2
                    - int(4) * a * c2.pow(3)
                    + int(54) * a * a * b * d
                    - int(4) * b.pow(3) * d
                    + int(18) * a * b * c2 * d
                    - int(27) * a * a * d * d,
            );
            let r6 = ratio(
                int(2) * a + int(2) * b + int(2) * c2 + d,
                int(2) * a - int(2) * b + int(2) * c2 - d,
            );
            vec![one.clone(), one, r2, r3, r4, r5, r6]
        }
        g => panic!("no table for g = {g}"),
    }
}

// ---------------------------------------------------------------------------
// The λ-parametrisation

/// Coefficients `c_0..c_g` of `c_0 Π (x² - 2λ_j x + 1)`, by direct expansion.
pub fn expand_lambdas(lambdas: &[Q], c0: &Q) -> Vec<Q> {
    let mut p = vec![c0.clone()];
    for l in lambdas {
        let factor = [Q::one(), -(int(2) * l), Q::one()];
        let mut next = vec![Q::zero(); p.len() + 2];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        p = next;
    }
    // palindromic: ascending and descending coefficients agree; keep the first half
    p.truncate(lambdas.len() + 1);
    p
}

/// `R_0, …, R_{2g}` in terms of the `λ_j`, typed in from the printed formulas.
pub fn lambda_table_r(l: &[Q]) -> Vec<Option<Q>> {
    let one = || Q::one();
    let om = |x: &Q| one() - x;
    let op = |x: &Q| one() + x;
    let sq = |x: Q| &x * &x;
    let mut out = vec![Some(one()), Some(one())];
    match l.len() {
        1 => out.push(ratio(om(&l[0]), op(&l[0]))),
        2 => {
            out.push(ratio(om(&l[0]) + om(&l[1]), op(&l[0]) + op(&l[1])));
            out.push(ratio(
                int(2) * ((one() - &l[0] * &l[0]) + (one() - &l[1] * &l[1])),
                sq(&l[0] - &l[1]),
            ));
            out.push(ratio(om(&l[0]) * om(&l[1]), op(&l[0]) * op(&l[1])));
        }
        3 => {
            let pairs = [(0, 1), (0, 2), (1, 2)];
            out.push(ratio(
                om(&l[0]) + om(&l[1]) + om(&l[2]),
                op(&l[0]) + op(&l[1]) + op(&l[2]),
            ));
            let s: Q = l.iter().map(|x| one() - x * x).sum();
            let d: Q = pairs.iter().map(|&(i, j)| sq(&l[i] - &l[j])).sum();
            out.push(ratio(int(3) * s, d));
            let n4: Q = pairs
                .iter()
                .map(|&(i, j)| om(&l[i]) * om(&l[j]) * sq(&l[i] - &l[j]))
                .sum();
            let d4: Q = pairs
                .iter()
                .map(|&(i, j)| op(&l[i]) * op(&l[j]) * sq(&l[i] - &l[j]))
                .sum();
            out.push(ratio(n4, d4));
            let n5: Q = pairs
                .iter()
                .map(|&(i, j)| {
                    (one() - &l[i] * &l[i]) * (one() - &l[j] * &l[j]) * sq(&l[i] - &l[j])
                })
                .sum();
            let d5: Q = pairs.iter().map(|&(i, j)| sq(&l[i] - &l[j])).product();
            out.push(ratio(int(3) * n5, d5));
            out.push(ratio(
                om(&l[0]) * om(&l[1]) * om(&l[2]),
                op(&l[0]) * op(&l[1]) * op(&l[2]),
            ));
        }
        g => panic!("no λ table for g = {g}"),
    }
    out
}

/// Distinct rationals in `(-1, 1)`, pairwise at least `1/20` apart.
pub fn random_lambdas(rng: &mut ChaCha8Rng, g: usize) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    while out.len() < g {
        let l = r(rng.gen_range(-19..=19), 20) + r(rng.gen_range(-3..=3), 400);
        if l.abs() < Q::one() && out.iter().all(|x| (x - &l).abs() >= r(1, 20)) {
            out.push(l);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Floating-point helpers

/// Horner evaluation of the full palindromic polynomial.
pub fn eval_full(c: &[f64], x: num_complex::Complex64) -> num_complex::Complex64 {
    let g = c.len() - 1;
    let full: Vec<f64> = (0..=2 * g).map(|j| c[j.min(2 * g - j)]).collect();
    full.iter()
        .rev()
        .fold(num_complex::Complex64::from(0.0), |acc, &a| acc * x + a)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}
