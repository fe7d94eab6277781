//! The acceptance criteria, one function each, at their stated tolerances.
//!
//! `acceptance_criteria` prints one pass/fail line per criterion. Criterion 6
//! asks for a linear rate that the functions involved do not have (they are
//! even in `log t`, so the deviation is quadratic); it is measured and reported
//! here, and `criterion_6_strict` asserts it on its own.

mod common;

use std::time::Instant;

use common::{
    det, det_formula, eval_full, expand_lambdas, int, lambda_table_r, log_log_slope, r,
    random_coeffs, random_lambdas, reference_p, reference_q, rng, table_r, Dense, Q,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use srp_core::canonical::{det2, factorization_identity, transfer_factor, CanonicalSystem};
use srp_core::criterion::{
    limit_check, r_sequence, run_log, run_omega, run_omega_with, OmegaDecision, SelfReciprocalPoly,
    StepStatus, Verdict,
};
use srp_core::exact::{to_f64, Limit};
use srp_core::linsys::{build_p, build_step, Matrix};
use srp_core::oracle::{find_roots, from_lambdas, generate, square_free, InstanceMode, LambdaSpec};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

const Q_BASE: f64 = 2.0;

fn recursion_r(p: &SelfReciprocalPoly) -> Option<Vec<Q>> {
    r_sequence(&run_log(p)).ok().map(|s| s.values)
}

fn on_circle_simple(count: usize, max_g: usize, seed0: u64) -> Vec<SelfReciprocalPoly> {
    (0..count)
        .map(|i| {
            generate(
                InstanceMode::OnCircleSimple,
                1 + i % max_g,
                seed0 + i as u64,
            )
            .poly
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Exact layer

fn criterion_1() -> Outcome {
    let mut rng = rng(101);
    let mut mismatches = 0;
    let mut compared = 0;
    for g in 1..=3 {
        let mut done = 0;
        while done < 100 {
            let c = random_coeffs(&mut rng, g, 12);
            let p = SelfReciprocalPoly::new(c.clone()).unwrap();
            let Some(values) = recursion_r(&p) else {
                continue;
            };
            let table = table_r(&c);
            for (x, y) in values.iter().zip(&table) {
                compared += 1;
                if y.as_ref() != Some(x) {
                    mismatches += 1;
                }
            }
            done += 1;
        }
    }
    Outcome::new(
        mismatches == 0,
        format!("300 vectors, {compared} values, {mismatches} mismatches"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = rng(102);
    let mut mismatches = 0;
    for g in 1..=3 {
        for _ in 0..100 {
            let lambdas = random_lambdas(&mut rng, g);
            let c0 = common::random_nonzero(&mut rng, 9);
            let p = from_lambdas(&LambdaSpec {
                lambdas: lambdas.clone(),
                c0: c0.clone(),
            });
            let expanded_ok = p.coeffs() == &expand_lambdas(&lambdas, &c0)[..];
            let expected: Option<Vec<Q>> = lambda_table_r(&lambdas).into_iter().collect();
            if !expanded_ok || recursion_r(&p) != expected || expected.is_none() {
                mismatches += 1;
            }
        }
    }
    Outcome::new(
        mismatches == 0,
        format!("300 λ-tuples, {mismatches} mismatches"),
    )
}

fn criterion_3() -> Outcome {
    let p = SelfReciprocalPoly::from_ints(&[4, -16, 23]).unwrap();
    let report = run_log(&p);
    let m3 = report.m_at(1) == Some(&r(1, 2));
    let fails = report.verdict
        == Verdict::Fails {
            step: 2,
            reason: StepStatus::NumeratorZero,
        };
    let roots = find_roots(&p).unwrap();
    let all = roots.all_roots();
    let has = |x: f64| all.iter().any(|z| (z - Complex64::from(x)).norm() < 1e-10);
    let oracle = !roots.all_on_circle && roots.all_simple && has(2.0) && has(0.5);
    Outcome::new(
        m3 && fails && oracle,
        format!("m_3 = 1/2: {m3}, NumeratorZero at step 2: {fails}, roots 2 and 1/2 off T, simple: {oracle}"),
    )
}

fn criterion_4() -> Outcome {
    let mut disagreements = Vec::new();
    let mut passes = 0;
    for i in 0..500u64 {
        let mode = InstanceMode::ALL[(i % 4) as usize];
        let g = 1 + ((i / 4) % 6) as usize;
        let inst = generate(mode, g, 4000 + i);
        let oracle = find_roots(&inst.poly).unwrap().all_on_circle && square_free(&inst.poly);
        let verdict = run_log(&inst.poly).verdict == Verdict::AllOnCircleSimple;
        passes += usize::from(verdict);
        if verdict != oracle {
            disagreements.push(inst.describe());
        }
    }
    Outcome::new(
        disagreements.is_empty(),
        format!(
            "500 instances, {passes} pass, {} disagreements {:?}",
            disagreements.len(),
            disagreements
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut disagreements = Vec::new();
    let mut separated = 0;
    for i in 0..300u64 {
        let mode = InstanceMode::ALL[(i % 4) as usize];
        let g = 1 + ((i / 4) % 4) as usize;
        let inst = generate(mode, g, 5000 + i);
        let oracle = find_roots(&inst.poly).unwrap().all_on_circle;
        let verdict = run_omega(&inst.poly).verdict == Verdict::AllOnCircle;
        if verdict != oracle {
            disagreements.push(inst.describe());
        }
        if verdict && !square_free(&inst.poly) && !run_log(&inst.poly).verdict.is_pass() {
            separated += 1;
        }
    }
    Outcome::new(
        disagreements.is_empty() && separated > 0,
        format!(
            "300 instances (g = 1..4), {separated} multiple-zero passes that fail in log mode, {} disagreements {:?}",
            disagreements.len(),
            disagreements
        ),
    )
}

struct RateReport {
    limits_equal: bool,
    bounded: bool,
    min_slope: f64,
    max_slope: f64,
}

fn theorem_5_rates() -> RateReport {
    let powers = [3u32, 4, 5];
    let eps: Vec<f64> = powers.iter().map(|&k| 10f64.powi(-(k as i32))).collect();
    let mut limits_equal = true;
    let mut bounded = true;
    let (mut min_slope, mut max_slope) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in on_circle_simple(50, 4, 600) {
        let rows = limit_check(&p).unwrap();
        limits_equal &= rows.iter().all(|row| row.equal);
        let log_r = recursion_r(&p).unwrap();
        let omega_r = r_sequence(&run_omega_with(&p, &OmegaDecision::Sampled(Vec::new()))).unwrap();
        for (n, rt) in omega_r.values.iter().enumerate() {
            let diffs: Vec<f64> = powers
                .iter()
                .map(|&k| {
                    let t0 = int(1) + Q::new(1.into(), BigInt::from(10).pow(k));
                    let v = rt.eval_at(&t0).unwrap();
                    (v - &log_r[n]).abs().to_f64().unwrap()
                })
                .collect();
            if diffs.iter().all(|d| *d == 0.0) {
                // R_0 and R_1 are identically 1
                continue;
            }
            // C·ε with C fixed by the largest ε
            let c = diffs[0] / eps[0];
            bounded &= diffs
                .iter()
                .zip(&eps)
                .all(|(d, e)| *d <= c * e * (1.0 + 1e-9));
            let slope = log_log_slope(&eps, &diffs);
            min_slope = min_slope.min(slope);
            max_slope = max_slope.max(slope);
        }
        limits_equal &= rows
            .iter()
            .all(|row| row.omega_limit == Limit::Finite(row.log_value.clone()));
    }
    RateReport {
        limits_equal,
        bounded,
        min_slope,
        max_slope,
    }
}

fn criterion_6() -> Outcome {
    let rep = theorem_5_rates();
    let slope_ok = rep.min_slope >= 0.8 && rep.max_slope <= 1.2;
    Outcome::new(
        rep.limits_equal && rep.bounded && slope_ok,
        format!(
            "50 instances: limits exact {}, |ΔR| ≤ Cε {}, fitted slopes in [{:.3}, {:.3}] (required [0.8, 1.2])",
            rep.limits_equal, rep.bounded, rep.min_slope, rep.max_slope
        ),
    )
}

fn dense(m: &Matrix<Q>) -> Dense {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = rng(107);
    let mut bad_det = 0;
    let mut bad_step = 0;
    for k in 1..=12 {
        for _ in 0..20 {
            let m = common::random_nonzero(&mut rng, 50);
            let p = build_p(k, &m);
            let pd = dense(&p.matrix);
            if pd != reference_p(k, &m) || det(&pd) != det_formula(k, &m) {
                bad_det += 1;
            }
            let step = build_step(k, &m).unwrap();
            if dense(&p.matrix.mul(&step.matrix).unwrap()) != reference_q(k) {
                bad_step += 1;
            }
        }
    }
    Outcome::new(
        bad_det == 0 && bad_step == 0,
        format!("k = 1..12, 20 m each: {bad_det} determinant mismatches, {bad_step} P·step ≠ Q"),
    )
}

// ---------------------------------------------------------------------------
// Floating-point layer

/// `(A, B)` from the polynomial directly: `A = x^{-g} P(x)` and `B = -dA/dz`
/// with `x = q^{iz}`.
fn reference_ab(c: &[f64], q: f64, z: Complex64) -> (Complex64, Complex64) {
    let g = c.len() - 1;
    let l = q.ln();
    let i = Complex64::i();
    let x = (i * z * l).exp();
    let full: Vec<f64> = (0..=2 * g).map(|j| c[j.min(2 * g - j)]).collect();
    let dp = full
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::from(0.0), |acc, (j, &a)| acc * x + a * j as f64);
    let p = eval_full(c, x);
    let xg = x.powi(-(g as i32));
    let a = xg * p;
    let b = -i * l * xg * (x * dp - g as f64 * p);
    (a, b)
}

/// The same for the ω-family: `A = (A_q(z+iω) + A_q(z-iω))/2`, `B = i(A_q(z+iω) - A_q(z-iω))/2`.
fn reference_ab_omega(c: &[f64], q: f64, omega: f64, z: Complex64) -> (Complex64, Complex64) {
    let w = Complex64::new(0.0, omega);
    let (e, _) = reference_ab(c, q, z + w);
    let (es, _) = reference_ab(c, q, z - w);
    (0.5 * (e + es), 0.5 * Complex64::i() * (e - es))
}

fn pair_rel(x: (Complex64, Complex64), y: (Complex64, Complex64)) -> f64 {
    let d = ((x.0 - y.0).norm_sqr() + (x.1 - y.1).norm_sqr()).sqrt();
    let s = (y.0.norm_sqr() + y.1.norm_sqr()).sqrt();
    if s == 0.0 {
        d
    } else {
        d / s
    }
}

fn random_z(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0))
}

fn point_in_step(sys: &CanonicalSystem, n: usize, rng: &mut ChaCha8Rng) -> f64 {
    let h = sys.hamiltonian();
    let (lo, hi) = (h.breakpoint(n - 1).ln(), h.breakpoint(n).ln());
    (lo + (hi - lo) * rng.gen_range(0.1..0.9)).exp()
}

fn random_a(sys: &CanonicalSystem, rng: &mut ChaCha8Rng) -> f64 {
    let n = rng.gen_range(1..=2 * sys.g());
    point_in_step(sys, n, rng)
}

fn coeffs_f64(p: &SelfReciprocalPoly) -> Vec<f64> {
    p.coeffs().iter().map(to_f64).collect()
}

/// Worst boundary, continuity and end-limit residuals over 20 random `z`.
fn boundary_battery(
    sys: &CanonicalSystem,
    reference: impl Fn(Complex64) -> (Complex64, Complex64),
    rng: &mut ChaCha8Rng,
) -> (f64, f64, f64) {
    let (mut boundary, mut continuity, mut end): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let a0 = reference(Complex64::from(0.0)).0;
    for _ in 0..20 {
        let z = random_z(rng);
        boundary = boundary.max(pair_rel(sys.eval_ab(1.0, z).unwrap(), reference(z)));
        for n in 1..2 * sys.g() {
            let a = sys.hamiltonian().breakpoint(n);
            let left = sys.left_limit(n, z).unwrap();
            let right = sys.eval_on_interval(n + 1, a, z).unwrap();
            continuity = continuity.max(pair_rel(left, right));
        }
        end = end.max(pair_rel(
            sys.end_limit(z).unwrap(),
            (a0, Complex64::from(0.0)),
        ));
    }
    (boundary, continuity, end)
}

fn criterion_8() -> Outcome {
    let mut rng = rng(108);
    let (mut b, mut c, mut e): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for p in on_circle_simple(20, 5, 800) {
        let sys = CanonicalSystem::log(&p, Q_BASE).unwrap();
        let coeffs = coeffs_f64(&p);
        let (x, y, w) = boundary_battery(&sys, |z| reference_ab(&coeffs, Q_BASE, z), &mut rng);
        b = b.max(x);
        c = c.max(y);
        e = e.max(w);
    }
    Outcome::new(
        b <= 1e-10 && c <= 1e-9 && e <= 1e-9,
        format!("20 instances: boundary {b:.2e} (≤ 1e-10), continuity {c:.2e} (≤ 1e-9), end limit {e:.2e} (≤ 1e-9)"),
    )
}

/// Worst ODE residual at `h = 1e-4` and the range of `r(h) / r(h/2)`.
fn ode_battery(sys: &CanonicalSystem, rng: &mut ChaCha8Rng, samples: usize) -> (f64, f64, f64) {
    let h = 1e-4;
    let (mut worst, mut lo, mut hi): (f64, f64, f64) = (0.0, f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let a = random_a(sys, rng);
        let z = Complex64::new(rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5));
        let r1 = sys.ode_residual(a, z, h).unwrap();
        let r2 = sys.ode_residual(a, z, h / 2.0).unwrap();
        worst = worst.max(r1);
        lo = lo.min(r1 / r2);
        hi = hi.max(r1 / r2);
    }
    (worst, lo, hi)
}

fn criterion_9() -> Outcome {
    let mut rng = rng(109);
    let (mut worst, mut lo, mut hi): (f64, f64, f64) = (0.0, f64::INFINITY, f64::NEG_INFINITY);
    for p in on_circle_simple(20, 5, 900) {
        let sys = CanonicalSystem::log(&p, Q_BASE).unwrap();
        let (w, l, h) = ode_battery(&sys, &mut rng, 5);
        worst = worst.max(w);
        lo = lo.min(l);
        hi = hi.max(h);
    }
    Outcome::new(
        worst <= 1e-6 && lo >= 3.5 && hi <= 4.5,
        format!("20 instances × 5 points: residual {worst:.2e} (≤ 1e-6), ratio in [{lo:.3}, {hi:.3}] (⊂ [3.5, 4.5])"),
    )
}

/// Worst transfer-product mismatch at 10 random `(a, z)` and worst factor determinant error.
fn transfer_battery(sys: &CanonicalSystem, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let mut worst: f64 = 0.0;
    let mut det_err: f64 = 0.0;
    let lq = sys.q().ln();
    for _ in 0..10 {
        let (a, z) = (random_a(sys, rng), random_z(rng));
        worst = worst.max(pair_rel(
            sys.transfer_product(a, z).unwrap(),
            sys.eval_ab(a, z).unwrap(),
        ));
        let h = sys.hamiltonian();
        let n = h.interval_of(a).unwrap();
        let partial = z * (h.breakpoint(n) / a).ln();
        det_err = det_err.max((det2(&transfer_factor(h.m_values()[n - 1], partial)) - 1.0).norm());
        for &m in h.m_values() {
            det_err = det_err.max((det2(&transfer_factor(m, z * (0.5 * lq))) - 1.0).norm());
        }
    }
    (worst, det_err)
}

fn criterion_10() -> Outcome {
    let mut rng = rng(110);
    let (mut worst, mut det_err): (f64, f64) = (0.0, 0.0);
    for p in on_circle_simple(20, 5, 1000) {
        let sys = CanonicalSystem::log(&p, Q_BASE).unwrap();
        let (w, d) = transfer_battery(&sys, &mut rng);
        worst = worst.max(w);
        det_err = det_err.max(d);
    }
    Outcome::new(
        worst <= 1e-9 && det_err <= 1e-12,
        format!(
            "20 instances × 10 points: product {worst:.2e} (≤ 1e-9), det {det_err:.2e} (≤ 1e-12)"
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut rng = rng(111);
    let mut mismatches = 0;
    let mut instances = 0;
    let mut i = 0u64;
    while instances < 20 {
        let mode = InstanceMode::ALL[(i % 4) as usize];
        let p = generate(mode, 1 + (i % 5) as usize, 1100 + i).poly;
        i += 1;
        if !run_log(&p).complete() {
            continue;
        }
        instances += 1;
        for _ in 0..20 {
            let x = r(rng.gen_range(-60..=60), rng.gen_range(1..=19));
            if !factorization_identity(&p, &x).unwrap().equal {
                mismatches += 1;
            }
        }
    }
    Outcome::new(
        mismatches == 0,
        format!("20 instances × 20 rational x, {mismatches} mismatches"),
    )
}

fn upper_z(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..1.5))
}

fn criterion_12() -> Outcome {
    let mut rng = rng(112);
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    let mut sampled = 0;
    for p in on_circle_simple(10, 3, 1200) {
        let sys = CanonicalSystem::log(&p, Q_BASE).unwrap();
        for _ in 0..10 {
            let (a1, a2) = (random_a(&sys, &mut rng), random_a(&sys, &mut rng));
            let (z, w) = (upper_z(&mut rng), upper_z(&mut rng));
            worst = worst.max(sys.kernel_identity_check(a1, a2, z, w).unwrap().residual);
        }
        // K(a; z, z) decreases along a sorted grid
        let z = upper_z(&mut rng);
        let mut grid: Vec<f64> = (0..12).map(|_| random_a(&sys, &mut rng)).collect();
        grid.sort_by(f64::total_cmp);
        let k: Vec<f64> = grid
            .iter()
            .map(|&a| sys.kernel_k(a, z, z).unwrap().re)
            .collect();
        for pair in k.windows(2) {
            sampled += 1;
            if pair[1] > pair[0] {
                violations += 1;
            }
        }
        violations += k.iter().filter(|x| **x <= 0.0).count();
    }
    Outcome::new(
        worst <= 1e-6 && violations == 0,
        format!("10 instances × 10 quadratures: residual {worst:.2e} (≤ 1e-6); monotonicity {violations} violations in {sampled} pairs"),
    )
}

fn criterion_13() -> Outcome {
    let mut rng = rng(113);
    let mut instances: Vec<SelfReciprocalPoly> = on_circle_simple(4, 3, 1300);
    instances.extend(
        (0..4).map(|i| generate(InstanceMode::OnCircleMultiple, 2 + i % 2, 1310 + i as u64).poly),
    );
    // (x + 1)^2 (x^2 + 1)
    let double = SelfReciprocalPoly::from_ints(&[1, 2, 2]).unwrap();
    instances.push(double.clone());
    let (mut b, mut c, mut e, mut ode, mut lo, mut hi, mut tp, mut dt) = (
        0.0f64,
        0.0f64,
        0.0f64,
        0.0f64,
        f64::INFINITY,
        f64::NEG_INFINITY,
        0.0f64,
        0.0f64,
    );
    let mut positive = true;
    for omega in [0.25, 1.0, 3.0] {
        for p in &instances {
            let sys = CanonicalSystem::omega(p, Q_BASE, omega).unwrap();
            positive &= sys.hamiltonian().is_positive();
            let coeffs = coeffs_f64(p);
            let (x, y, w) = boundary_battery(
                &sys,
                |z| reference_ab_omega(&coeffs, Q_BASE, omega, z),
                &mut rng,
            );
            b = b.max(x);
            c = c.max(y);
            e = e.max(w);
            let (r, l, h) = ode_battery(&sys, &mut rng, 5);
            ode = ode.max(r);
            lo = lo.min(l);
            hi = hi.max(h);
            let (t, d) = transfer_battery(&sys, &mut rng);
            tp = tp.max(t);
            dt = dt.max(d);
        }
    }
    let log_undefined = matches!(
        run_log(&double).verdict,
        Verdict::Fails {
            reason: StepStatus::NumeratorZero | StepStatus::DenominatorZero,
            ..
        }
    ) && !CanonicalSystem::log(&double, Q_BASE)
        .unwrap()
        .hamiltonian()
        .complete();
    let pass = positive
        && log_undefined
        && b <= 1e-10
        && c <= 1e-9
        && e <= 1e-9
        && ode <= 1e-6
        && lo >= 3.5
        && hi <= 4.5
        && tp <= 1e-9
        && dt <= 1e-12;
    Outcome::new(
        pass,
        format!(
            "ω ∈ {{1/4, 1, 3}}, 9 instances: ω-H positive {positive}, log-mode m undefined for (x+1)²(x²+1) {log_undefined}; \
             boundary {b:.2e}, continuity {c:.2e}, end {e:.2e}, ODE {ode:.2e} ratio [{lo:.3}, {hi:.3}], product {tp:.2e}, det {dt:.2e}"
        ),
    )
}

/// Criteria whose statement cannot be met; reported, not asserted, by the harness.
const UNATTAINABLE: [usize; 1] = [6];

type Criterion = (usize, &'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 13] = [
        (1, "closed-form R tables", criterion_1),
        (2, "λ-formula cross-check", criterion_2),
        (3, "counterexample (4, -16, 23)", criterion_3),
        (4, "log mode vs oracle", criterion_4),
        (5, "ω mode vs oracle", criterion_5),
        (6, "limit t → 1 and linear rate", criterion_6),
        (7, "matrix layer", criterion_7),
        (8, "boundary, continuity, end limit", criterion_8),
        (9, "ODE residual and order", criterion_9),
        (10, "transfer product", criterion_10),
        (11, "factorization identity", criterion_11),
        (12, "kernel identity and monotonicity", criterion_12),
        (13, "ω battery", criterion_13),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} [{status}] {name}: {} ({:.1}s)",
            out.detail,
            start.elapsed().as_secs_f64()
        );
        if !out.pass && !UNATTAINABLE.contains(&id) {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// Criterion 6 as stated, including the slope window.
#[test]
#[ignore = "the deviation is quadratic in ε; see the decisions ledger"]
fn criterion_6_strict() {
    let out = criterion_6();
    assert!(out.pass, "{}", out.detail);
}

/// The part of criterion 6 that holds: exact limits and the `C·ε` bound.
#[test]
fn criterion_6_limits_and_bound() {
    let rep = theorem_5_rates();
    assert!(rep.limits_equal && rep.bounded);
    // the measured rate is quadratic, consistently
    assert!(
        rep.min_slope > 1.8 && rep.max_slope < 2.2,
        "{} {}",
        rep.min_slope,
        rep.max_slope
    );
}
