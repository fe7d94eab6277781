use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::factorization::factorization_identity;
use super::system::{det2, norm2, relative, transfer_factor, CanonicalSystem};
use super::CanonicalError;
use crate::criterion::{run_log, SelfReciprocalPoly, Verdict};
use crate::exact::rat;
use crate::oracle::{find_roots, square_free};

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Battery {
    Canonical,
    Factorization,
    Kernel,
    All,
}

impl Battery {
    fn includes(self, other: Battery) -> bool {
        self == Battery::All || self == other
    }
}

impl FromStr for Battery {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "canonical" => Ok(Self::Canonical),
            "factorization" => Ok(Self::Factorization),
            "kernel" => Ok(Self::Kernel),
            "all" => Ok(Self::All),
            _ => Err(format!(
                "unknown battery {s:?} (expected canonical, factorization, kernel or all)"
            )),
        }
    }
}

impl fmt::Display for Battery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Canonical => "canonical",
            Self::Factorization => "factorization",
            Self::Kernel => "kernel",
            Self::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub battery: Battery,
    pub q: f64,
    /// Check the ω-system at this ω instead of the log-mode system.
    pub omega: Option<f64>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            battery: Battery::All,
            q: 2.0,
            omega: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub inputs: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    #[serde(flatten)]
    pub status: CheckStatus,
}

impl CheckOutcome {
    fn measured(name: &str, inputs: String, residual: f64, tolerance: f64) -> Self {
        let pass = residual <= tolerance;
        Self::with_status(name, inputs, residual, tolerance, pass)
    }

    fn with_status(name: &str, inputs: String, residual: f64, tolerance: f64, pass: bool) -> Self {
        Self {
            name: name.into(),
            inputs,
            residual: Some(residual),
            tolerance,
            status: if pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        }
    }

    fn skipped(name: &str, tolerance: f64, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            inputs: String::new(),
            residual: None,
            tolerance,
            status: CheckStatus::Skipped {
                reason: reason.into(),
            },
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// What the root oracle and the exact square-free test say, reported alongside.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleSummary {
    pub all_on_circle: Option<bool>,
    pub all_simple: Option<bool>,
    pub max_residual: Option<f64>,
    pub square_free: bool,
    pub log_verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub poly: SelfReciprocalPoly,
    pub battery: Battery,
    pub q: f64,
    pub omega: Option<f64>,
    pub seed: u64,
    pub oracle: OracleSummary,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    /// True iff some check ran and exceeded its tolerance.
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(CheckOutcome::failed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const BOUNDARY_TOL: f64 = 1e-10;
pub const CONTINUITY_TOL: f64 = 1e-9;
pub const END_LIMIT_TOL: f64 = 1e-9;
pub const ODE_TOL: f64 = 1e-6;
pub const ODE_STEP: f64 = 1e-4;
pub const TRANSFER_TOL: f64 = 1e-9;
pub const DET_TOL: f64 = 1e-12;
pub const KERNEL_TOL: f64 = 1e-6;
pub const KERNEL_SYMMETRY_TOL: f64 = 1e-10;

/// Runs the selected battery on the log-mode system (or the ω-system when
/// `config.omega` is set). Checks whose hypotheses fail are skipped with a reason.
pub fn verify(
    p: &SelfReciprocalPoly,
    config: &VerifyConfig,
) -> Result<VerificationReport, CanonicalError> {
    let sys = match config.omega {
        Some(w) => CanonicalSystem::omega(p, config.q, w)?,
        None => CanonicalSystem::log(p, config.q)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    if config.battery.includes(Battery::Canonical) {
        checks.extend(canonical_checks(&sys, &mut rng));
    }
    if config.battery.includes(Battery::Kernel) {
        checks.extend(kernel_checks(&sys, &mut rng));
    }
    if config.battery.includes(Battery::Factorization) {
        checks.push(factorization_check(p, &mut rng));
    }
    Ok(VerificationReport {
        poly: p.clone(),
        battery: config.battery,
        q: config.q,
        omega: config.omega,
        seed: config.seed,
        oracle: oracle_summary(p),
        checks,
    })
}

fn oracle_summary(p: &SelfReciprocalPoly) -> OracleSummary {
    let roots = find_roots(p).ok();
    OracleSummary {
        all_on_circle: roots.as_ref().map(|r| r.all_on_circle),
        all_simple: roots.as_ref().map(|r| r.all_simple),
        max_residual: roots.as_ref().map(|r| r.max_residual),
        square_free: square_free(p),
        log_verdict: run_log(p).verdict,
    }
}

fn random_z(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0))
}

fn upper_z(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..1.5))
}

/// A point in step `n`, away from both ends.
fn point_in_step(sys: &CanonicalSystem, n: usize, rng: &mut ChaCha8Rng) -> f64 {
    let h = sys.hamiltonian();
    let (lo, hi) = (h.breakpoint(n - 1).ln(), h.breakpoint(n).ln());
    (lo + (hi - lo) * rng.gen_range(0.1..0.9)).exp()
}

fn random_a(sys: &CanonicalSystem, rng: &mut ChaCha8Rng) -> f64 {
    let n = rng.gen_range(1..=sys.defined_steps());
    point_in_step(sys, n, rng)
}

fn pair_residual(x: (Complex64, Complex64), y: (Complex64, Complex64)) -> f64 {
    let scale = norm2(y.0, y.1).max(norm2(x.0, x.1));
    if scale == 0.0 {
        0.0
    } else {
        norm2(x.0 - y.0, x.1 - y.1) / scale
    }
}

/// Boundary values, parity, continuity, end limit, ODE, transfer product and
/// the sampled Hermite–Biehler inequality.
pub fn canonical_checks(sys: &CanonicalSystem, rng: &mut ChaCha8Rng) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let r = sys.reference();
    let g = sys.g();
    let zs: Vec<Complex64> = (0..20).map(|_| random_z(rng)).collect();

    let boundary = zs
        .iter()
        .map(|&z| {
            let at_one = sys
                .eval_ab(1.0, z)
                .expect("the first step is always defined");
            pair_residual(at_one, (r.a(z), r.b(z)))
        })
        .fold(0.0, f64::max);
    out.push(CheckOutcome::measured(
        "boundary",
        "a = 1, 20 random z".into(),
        boundary,
        BOUNDARY_TOL,
    ));

    let parity = zs
        .iter()
        .map(|&z| relative(r.a(-z), r.a(z)).max(relative(r.b(-z), -r.b(z))))
        .fold(0.0, f64::max);
    out.push(CheckOutcome::measured(
        "parity",
        "A(-z) = A(z), B(-z) = -B(z), 20 random z".into(),
        parity,
        BOUNDARY_TOL,
    ));

    let real_axis = zs
        .iter()
        .map(|z| {
            let x = Complex64::from(z.re);
            let (a, b) = (r.a(x), r.b(x));
            (a.im.abs() / a.norm().max(f64::MIN_POSITIVE))
                .max(b.im.abs() / b.norm().max(f64::MIN_POSITIVE))
        })
        .fold(0.0, f64::max);
    out.push(CheckOutcome::measured(
        "real_on_axis",
        "20 random real z".into(),
        real_axis,
        BOUNDARY_TOL,
    ));

    if let super::functions::BoundaryFunctions::Omega(f) = r {
        let sums = zs
            .iter()
            .map(|&z| relative(f.a(z), f.a_sum(z)).max(relative(f.b(z), f.b_sum(z))))
            .fold(0.0, f64::max);
        out.push(CheckOutcome::measured(
            "omega_sums",
            "explicit sums against E(z) = A(z + iω), 20 random z".into(),
            sums,
            BOUNDARY_TOL,
        ));
    }

    let defined = sys.defined_steps();
    let undefined_reason =
        format!("the recursion stops after step {defined}; nothing is defined past it");
    if defined >= 2 {
        let mut worst: f64 = 0.0;
        for n in 1..defined {
            let a = sys.hamiltonian().breakpoint(n);
            for &z in zs.iter().take(5) {
                let left = sys.left_limit(n, z).expect("defined");
                let right = sys.eval_on_interval(n + 1, a, z).expect("defined");
                worst = worst.max(pair_residual(left, right));
            }
        }
        out.push(CheckOutcome::measured(
            "continuity",
            format!("breakpoints q^(n/2), n = 1..{}, 5 random z", defined - 1),
            worst,
            CONTINUITY_TOL,
        ));
    } else {
        out.push(CheckOutcome::skipped(
            "continuity",
            CONTINUITY_TOL,
            undefined_reason.clone(),
        ));
    }

    if defined == 2 * g {
        let e0 = r.e_at_zero();
        let worst = zs
            .iter()
            .take(5)
            .map(|&z| {
                let lim = sys.end_limit(z).expect("defined");
                pair_residual(lim, (Complex64::from(e0), Complex64::from(0.0)))
            })
            .fold(0.0, f64::max);
        out.push(CheckOutcome::measured(
            "end_limit",
            "a -> q^g, 5 random z, against (E(0), 0)".into(),
            worst,
            END_LIMIT_TOL,
        ));
    } else {
        out.push(CheckOutcome::skipped(
            "end_limit",
            END_LIMIT_TOL,
            undefined_reason.clone(),
        ));
    }

    let (ode, order) = ode_checks(sys, rng);
    out.push(ode);
    out.push(order);

    if sys.hamiltonian().is_positive() {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let (a, z) = (random_a(sys, rng), random_z(rng));
            let x = sys.transfer_product(a, z).expect("positive Hamiltonian");
            let y = sys.eval_ab(a, z).expect("complete Hamiltonian");
            worst = worst.max(pair_residual(x, y));
        }
        out.push(CheckOutcome::measured(
            "transfer_product",
            "10 random (a, z)".into(),
            worst,
            TRANSFER_TOL,
        ));
        let lq = sys.q().ln();
        let det = sys
            .hamiltonian()
            .m_values()
            .iter()
            .zip(&zs)
            .map(|(&m, &z)| (det2(&transfer_factor(m, z * (0.5 * lq))) - 1.0).norm())
            .fold(0.0, f64::max);
        out.push(CheckOutcome::measured(
            "transfer_det",
            "every full-step factor".into(),
            det,
            DET_TOL,
        ));
        // Sampling evidence only: |E^♯(z)| < |E(z)| at random Im z > 0.
        let hb = (0..20)
            .map(|_| {
                let z = upper_z(rng);
                r.e_sharp(z).norm() / r.e(z).norm()
            })
            .fold(0.0, f64::max);
        out.push(CheckOutcome::with_status(
            "hb_sampled",
            "max |E#(z)| / |E(z)| over 20 random z with Im z > 0 (evidence, not proof)".into(),
            hb,
            1.0,
            hb < 1.0,
        ));
    } else {
        let reason = "some m is undefined or not positive";
        out.push(CheckOutcome::skipped(
            "transfer_product",
            TRANSFER_TOL,
            reason,
        ));
        out.push(CheckOutcome::skipped("transfer_det", DET_TOL, reason));
        out.push(CheckOutcome::skipped("hb_sampled", 1.0, reason));
    }
    out
}

/// The ODE residual at `h` and the ratio of residuals at `h` and `h/2`.
fn ode_checks(sys: &CanonicalSystem, rng: &mut ChaCha8Rng) -> (CheckOutcome, CheckOutcome) {
    let mut worst: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..5 {
        let a = random_a(sys, rng);
        let z = Complex64::new(rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5));
        match (
            sys.ode_residual(a, z, ODE_STEP),
            sys.ode_residual(a, z, ODE_STEP / 2.0),
        ) {
            (Ok(r1), Ok(r2)) => {
                worst = worst.max(r1);
                worst_ratio = worst_ratio.max((r1 / r2 - 4.0).abs());
            }
            (Err(e), _) | (_, Err(e)) => {
                let reason = e.to_string();
                return (
                    CheckOutcome::skipped("ode_residual", ODE_TOL, reason.clone()),
                    CheckOutcome::skipped("ode_order", 0.5, reason),
                );
            }
        }
    }
    (
        CheckOutcome::measured(
            "ode_residual",
            format!("h = {ODE_STEP}, 5 random (a, z)"),
            worst,
            ODE_TOL,
        ),
        CheckOutcome::measured(
            "ode_order",
            "|r(h) / r(h/2) - 4|, 5 random (a, z)".into(),
            worst_ratio,
            0.5,
        ),
    )
}

/// Hermitian symmetry, the E-form of the kernel, the integral identity and
/// monotonicity of `K(a; z, z)` in `a`.
pub fn kernel_checks(sys: &CanonicalSystem, rng: &mut ChaCha8Rng) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut symmetry: f64 = 0.0;
    let mut e_form: f64 = 0.0;
    let mut identity: f64 = 0.0;
    for _ in 0..10 {
        let (z, w) = (upper_z(rng), upper_z(rng));
        let (a1, a2) = (random_a(sys, rng), random_a(sys, rng));
        let k = sys
            .kernel_k(a1, z, w)
            .expect("z, w in the upper half-plane");
        symmetry = symmetry.max(relative(k, sys.kernel_k(a1, w, z).expect("defined").conj()));
        e_form = e_form.max(relative(k, sys.kernel_k_e_form(a1, z, w).expect("defined")));
        match sys.kernel_identity_check(a1, a2, z, w) {
            Ok(c) => identity = identity.max(c.residual),
            Err(e) => {
                out.push(CheckOutcome::skipped(
                    "kernel_identity",
                    KERNEL_TOL,
                    e.to_string(),
                ));
                return out;
            }
        }
    }
    out.push(CheckOutcome::measured(
        "kernel_hermitian",
        "K(a; z, w) = conj K(a; w, z), 10 random (a, z, w)".into(),
        symmetry,
        KERNEL_SYMMETRY_TOL,
    ));
    out.push(CheckOutcome::measured(
        "kernel_e_form",
        "A/B form against E/E# form, 10 random (a, z, w)".into(),
        e_form,
        KERNEL_SYMMETRY_TOL,
    ));
    out.push(CheckOutcome::measured(
        "kernel_identity",
        "10 random (a1, a2, z, w)".into(),
        identity,
        KERNEL_TOL,
    ));
    if sys.hamiltonian().is_positive() {
        let mut violations = 0usize;
        for _ in 0..10 {
            let z = upper_z(rng);
            let (x, y) = (random_a(sys, rng), random_a(sys, rng));
            let (a1, a0) = if x < y { (x, y) } else { (y, x) };
            if a1 == a0 {
                continue;
            }
            let k1 = sys.kernel_k(a1, z, z).expect("Im z > 0").re;
            let k0 = sys.kernel_k(a0, z, z).expect("Im z > 0").re;
            if !(k1 > k0 && k0 > 0.0) {
                violations += 1;
            }
        }
        out.push(CheckOutcome::measured(
            "kernel_monotone",
            "K(a1; z, z) > K(a0; z, z) > 0 for a1 < a0, 10 random triples; violations".into(),
            violations as f64,
            0.0,
        ));
    } else {
        out.push(CheckOutcome::skipped(
            "kernel_monotone",
            0.0,
            "some m is undefined or not positive",
        ));
    }
    out
}

/// The product identity at 20 random rationals, exactly; the residual counts mismatches.
pub fn factorization_check(p: &SelfReciprocalPoly, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let mut mismatches = 0usize;
    for _ in 0..20 {
        let x = rat(rng.gen_range(-50..=50), rng.gen_range(1..=17));
        match factorization_identity(p, &x) {
            Ok(c) if c.equal => {}
            Ok(_) => mismatches += 1,
            Err(e) => return CheckOutcome::skipped("factorization", 0.0, e.to_string()),
        }
    }
    CheckOutcome::measured(
        "factorization",
        "20 random rational x, exact; mismatches".into(),
        mismatches as f64,
        0.0,
    )
}
