use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::functions::{check_q, BoundaryFunctions, ExpPolyFunctions, OmegaFunctions};
use super::CanonicalError;
use crate::criterion::{initial_vector_omega, recursion_step, run_log, SelfReciprocalPoly};
use crate::exact::{rational_from_f64, to_f64};

/// A 2×2 complex matrix, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

/// Piecewise-constant `H(a) = diag(1/m(a), m(a))` with `m = m_n` on
/// `[q^{(n-1)/2}, q^{n/2})`.
///
/// Only the steps the recursion reached are present; a Hamiltonian is complete
/// when it covers `[1, q^g)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hamiltonian {
    g: usize,
    q: f64,
    m: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HamiltonianStep {
    pub n: usize,
    pub a_start: f64,
    pub a_end: f64,
    pub m: f64,
}

impl Hamiltonian {
    pub fn new(g: usize, q: f64, m: Vec<f64>) -> Result<Self, CanonicalError> {
        check_q(q)?;
        if m.len() > 2 * g {
            return Err(CanonicalError::InvalidParameter(format!(
                "{} steps for g = {g}",
                m.len()
            )));
        }
        Ok(Self { g, q, m })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `m_n` for the defined steps `n = 1, 2, …`.
    pub fn m_values(&self) -> &[f64] {
        &self.m
    }

    pub fn complete(&self) -> bool {
        self.m.len() == 2 * self.g
    }

    /// Positive semidefinite on every step of `[1, q^g)`.
    pub fn is_positive(&self) -> bool {
        self.complete() && self.m.iter().all(|&m| m > 0.0)
    }

    pub fn breakpoint(&self, n: usize) -> f64 {
        self.q.powf(n as f64 / 2.0)
    }

    pub fn steps(&self) -> Vec<HamiltonianStep> {
        (1..=self.m.len())
            .map(|n| HamiltonianStep {
                n,
                a_start: self.breakpoint(n - 1),
                a_end: self.breakpoint(n),
                m: self.m[n - 1],
            })
            .collect()
    }

    /// The step `n` with `a ∈ [q^{(n-1)/2}, q^{n/2})`, defined or not.
    pub fn interval_of(&self, a: f64) -> Result<usize, CanonicalError> {
        if !(a >= 1.0 && a < self.breakpoint(2 * self.g)) {
            return Err(CanonicalError::OutOfDomain { a });
        }
        let n = (2.0 * a.ln() / self.q.ln()).floor() as usize + 1;
        Ok(n.min(2 * self.g))
    }

    pub fn m_at(&self, a: f64) -> Result<f64, CanonicalError> {
        let n = self.interval_of(a)?;
        self.m
            .get(n - 1)
            .copied()
            .ok_or(CanonicalError::Undefined { n })
    }

    pub fn matrix(&self, a: f64) -> Result<[[f64; 2]; 2], CanonicalError> {
        let m = self.m_at(a)?;
        Ok([[1.0 / m, 0.0], [0.0, m]])
    }

    /// `a_start,a_end,m` per step, for external plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_start,a_end,m\n");
        for s in self.steps() {
            out.push_str(&format!("{},{},{},{}\n", s.n, s.a_start, s.a_end, s.m));
        }
        out
    }
}

/// The solution `(A(a, z), B(a, z))` of the canonical system on `[1, q^g)`,
/// built from the state vectors of the recursion, together with its Hamiltonian.
#[derive(Clone, Debug)]
pub struct CanonicalSystem {
    hamiltonian: Hamiltonian,
    /// `vectors[n - 1] = v_g(n)` in floating point.
    vectors: Vec<Vec<f64>>,
    reference: BoundaryFunctions,
}

impl CanonicalSystem {
    /// The log-mode system. The recursion runs exactly at `log q = 1`; second-half
    /// entries of `v_g(n)` then scale by `log q` and `m` by `1 / log q`.
    pub fn log(p: &SelfReciprocalPoly, q: f64) -> Result<Self, CanonicalError> {
        let reference = BoundaryFunctions::Log(ExpPolyFunctions::new(p, q)?);
        let report = run_log(p);
        let lq = q.ln();
        let m: Vec<f64> = report
            .steps
            .iter()
            .map_while(|s| s.m.as_ref().map(|m| to_f64(m) / lq))
            .collect();
        let vectors = report.vectors[1..=m.len()]
            .iter()
            .map(|v| {
                let k = v.k();
                v.entries()
                    .iter()
                    .enumerate()
                    .map(|(j, x)| if j <= k { to_f64(x) } else { to_f64(x) * lq })
                    .collect()
            })
            .collect();
        Ok(Self {
            hamiltonian: Hamiltonian::new(p.g(), q, m)?,
            vectors,
            reference,
        })
    }

    /// The ω-mode system at `t = q^ω`. `t` is rounded to the nearest double and
    /// the recursion is run exactly at that rational point.
    pub fn omega(p: &SelfReciprocalPoly, q: f64, omega: f64) -> Result<Self, CanonicalError> {
        let funcs = OmegaFunctions::new(ExpPolyFunctions::new(p, q)?, omega)?;
        let t0 = rational_from_f64(q.powf(omega)).ok_or_else(|| {
            CanonicalError::InvalidParameter(format!("q^omega is not finite for omega = {omega}"))
        })?;
        let (m, vectors) = omega_state(p, &t0);
        Ok(Self {
            hamiltonian: Hamiltonian::new(p.g(), q, m)?,
            vectors,
            reference: BoundaryFunctions::Omega(funcs),
        })
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn reference(&self) -> &BoundaryFunctions {
        &self.reference
    }

    pub fn g(&self) -> usize {
        self.hamiltonian.g
    }

    pub fn q(&self) -> f64 {
        self.hamiltonian.q
    }

    /// Number of steps on which `(A, B)` is defined.
    pub fn defined_steps(&self) -> usize {
        self.vectors.len()
    }

    /// `(A(a, z), B(a, z))` for `a ∈ [1, q^g)`; refused past the first singular step.
    pub fn eval_ab(&self, a: f64, z: Complex64) -> Result<(Complex64, Complex64), CanonicalError> {
        let n = self.hamiltonian.interval_of(a)?;
        self.eval_on_interval(n, a, z)
    }

    /// The step-`n` formula `½ diag(1, -i) T_n(a, z) v_g(n)`, valid on the closure
    /// of the step, so it also gives the left limit at `q^{n/2}`.
    pub fn eval_on_interval(
        &self,
        n: usize,
        a: f64,
        z: Complex64,
    ) -> Result<(Complex64, Complex64), CanonicalError> {
        let v = self
            .vectors
            .get(n.wrapping_sub(1))
            .ok_or(CanonicalError::Undefined { n })?;
        let g = self.g() as f64;
        let lq = self.q().ln();
        let la = a.ln();
        let half = v.len() / 2;
        let (mut big_a, mut big_b) = (Complex64::from(0.0), Complex64::from(0.0));
        for j in 0..half {
            // c_k(a, z) = 2 cos(z log(q^k / a)), s_k(a, z) = 2i sin(z log(q^k / a)), k = g - j
            let theta = z * ((g - j as f64) * lq - la);
            big_a += v[j] * theta.cos();
            big_b += v[half + j] * theta.sin();
        }
        Ok((big_a, big_b))
    }

    /// `lim_{a → q^{n/2}-} (A, B)`.
    pub fn left_limit(
        &self,
        n: usize,
        z: Complex64,
    ) -> Result<(Complex64, Complex64), CanonicalError> {
        self.eval_on_interval(n, self.hamiltonian.breakpoint(n), z)
    }

    /// `lim_{a → q^g-} (A, B)`, expected to be `(E(0), 0)`.
    pub fn end_limit(&self, z: Complex64) -> Result<(Complex64, Complex64), CanonicalError> {
        self.left_limit(2 * self.g(), z)
    }

    /// Relative residual of `-a ∂_a (A, B) = z [[0, -1], [1, 0]] H(a) (A, B)` with
    /// a central difference of step `h`.
    pub fn ode_residual(&self, a: f64, z: Complex64, h: f64) -> Result<f64, CanonicalError> {
        let n = self.hamiltonian.interval_of(a)?;
        let (lo, hi) = (
            self.hamiltonian.breakpoint(n - 1),
            self.hamiltonian.breakpoint(n),
        );
        if !(h > 0.0 && a - h > lo && a + h < hi) {
            return Err(CanonicalError::IntervalError { a, h });
        }
        let m = self.hamiltonian.m_at(a)?;
        let (a0, b0) = self.eval_on_interval(n, a, z)?;
        let (da, db) = self.central_difference(n, a, z, h)?;
        let lhs = (-a * da / (2.0 * h), -a * db / (2.0 * h));
        let rhs = (-z * m * b0, z * a0 / m);
        let diff = norm2(lhs.0 - rhs.0, lhs.1 - rhs.1);
        let scale = norm2(rhs.0, rhs.1);
        Ok(if scale > 0.0 { diff / scale } else { diff })
    }

    /// `(A, B)(a + h) - (A, B)(a - h)` on step `n`, summed term by term as
    /// `cos X - cos Y = -2 sin((X+Y)/2) sin((X-Y)/2)` so that the difference does
    /// not cancel; subtracting two evaluations loses about `ε/h` relative.
    fn central_difference(
        &self,
        n: usize,
        a: f64,
        z: Complex64,
        h: f64,
    ) -> Result<(Complex64, Complex64), CanonicalError> {
        let v = self
            .vectors
            .get(n.wrapping_sub(1))
            .ok_or(CanonicalError::Undefined { n })?;
        let g = self.g() as f64;
        let lq = self.q().ln();
        let x = h / a;
        // midpoint of log(a ± h) and half their gap
        let mid = a.ln() + 0.5 * (-x * x).ln_1p();
        let half_gap = z * x.atanh();
        let s = half_gap.sin();
        let half = v.len() / 2;
        let (mut da, mut db) = (Complex64::from(0.0), Complex64::from(0.0));
        for j in 0..half {
            let theta = z * ((g - j as f64) * lq - mid);
            da += v[j] * 2.0 * theta.sin() * s;
            db -= v[half + j] * 2.0 * theta.cos() * s;
        }
        Ok((da, db))
    }

    /// Every step must have `m > 0` for the transfer representation.
    fn require_positive(&self) -> Result<(), CanonicalError> {
        if self.hamiltonian.is_positive() {
            Ok(())
        } else {
            Err(CanonicalError::NotApplicable(
                "the transfer representation needs every m > 0".into(),
            ))
        }
    }

    /// `(A, B)` as `E(0) · M_n(partial) · Π_{k>n} M_k(full) · (1, 0)ᵀ`.
    pub fn transfer_product(
        &self,
        a: f64,
        z: Complex64,
    ) -> Result<(Complex64, Complex64), CanonicalError> {
        self.require_positive()?;
        let h = &self.hamiltonian;
        let n = h.interval_of(a)?;
        let full = z * (0.5 * h.q.ln());
        // Build the vector from the right end: (1, 0), then full steps 2g down to n+1.
        let mut v = [Complex64::from(1.0), Complex64::from(0.0)];
        for k in (n + 1..=2 * h.g).rev() {
            v = apply(&transfer_factor(h.m[k - 1], full), v);
        }
        let partial = z * (h.breakpoint(n) / a).ln();
        v = apply(&transfer_factor(h.m[n - 1], partial), v);
        let e0 = self.reference.e_at_zero();
        Ok((v[0] * e0, v[1] * e0))
    }

    /// `K(a; z, w) = (conj A(a,w) B(a,z) - conj B(a,w) A(a,z)) / (π (z - w̄))`.
    pub fn kernel_k(
        &self,
        a: f64,
        z: Complex64,
        w: Complex64,
    ) -> Result<Complex64, CanonicalError> {
        let den = z - w.conj();
        if den.norm() <= 1e-14 * (1.0 + z.norm()) {
            return Err(CanonicalError::ConfluentNotSupported);
        }
        let (az, bz) = self.eval_ab(a, z)?;
        let (aw, bw) = self.eval_ab(a, w)?;
        Ok((aw.conj() * bz - bw.conj() * az) / (std::f64::consts::PI * den))
    }

    /// The same kernel written with `E = A - iB` and `E^♯ = A + iB`.
    pub fn kernel_k_e_form(
        &self,
        a: f64,
        z: Complex64,
        w: Complex64,
    ) -> Result<Complex64, CanonicalError> {
        let den = w.conj() - z;
        if den.norm() <= 1e-14 * (1.0 + z.norm()) {
            return Err(CanonicalError::ConfluentNotSupported);
        }
        let i = Complex64::i();
        let (az, bz) = self.eval_ab(a, z)?;
        let (aw, bw) = self.eval_ab(a, w)?;
        let (ez, es_z) = (az - i * bz, az + i * bz);
        let (ew, es_w) = (aw - i * bw, aw + i * bw);
        Ok((ew.conj() * ez - es_w.conj() * es_z) / (2.0 * std::f64::consts::PI * i * den))
    }

    /// `K(a1) - K(a2)` against `(1/π) ∫_{a1}^{a2} (conj A_w A_z / m + conj B_w B_z m) da / a`,
    /// integrated by adaptive Simpson on each step in `u = log a`.
    pub fn kernel_identity_check(
        &self,
        a1: f64,
        a2: f64,
        z: Complex64,
        w: Complex64,
    ) -> Result<KernelCheck, CanonicalError> {
        let (a1, a2) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let lhs = self.kernel_k(a1, z, w)? - self.kernel_k(a2, z, w)?;
        let h = &self.hamiltonian;
        let (n1, n2) = (h.interval_of(a1)?, h.interval_of(a2)?);
        let mut integral = Complex64::from(0.0);
        for n in n1..=n2 {
            let lo = a1.max(h.breakpoint(n - 1)).ln();
            let hi = a2.min(h.breakpoint(n)).ln();
            if hi <= lo {
                continue;
            }
            let m = *h.m.get(n - 1).ok_or(CanonicalError::Undefined { n })?;
            let mut err = None;
            let f = |u: f64| {
                let a = u.exp();
                match (
                    self.eval_on_interval(n, a, z),
                    self.eval_on_interval(n, a, w),
                ) {
                    (Ok((az, bz)), Ok((aw, bw))) => aw.conj() * az / m + bw.conj() * bz * m,
                    (Err(e), _) | (_, Err(e)) => {
                        err = Some(e);
                        Complex64::from(0.0)
                    }
                }
            };
            integral += adaptive_simpson(f, lo, hi, KERNEL_QUADRATURE_TOL);
            if let Some(e) = err {
                return Err(e);
            }
        }
        let rhs = integral / std::f64::consts::PI;
        Ok(KernelCheck {
            lhs,
            rhs,
            residual: relative(lhs, rhs),
        })
    }
}

/// Absolute tolerance of the kernel quadrature on each step.
pub const KERNEL_QUADRATURE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// `[[cos θ, -m sin θ], [sin θ / m, cos θ]]`, determinant 1.
pub fn transfer_factor(m: f64, theta: Complex64) -> Matrix2 {
    let (c, s) = (theta.cos(), theta.sin());
    [[c, -s * m], [s / m, c]]
}

pub fn det2(m: &Matrix2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn apply(m: &Matrix2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

pub(super) fn norm2(x: Complex64, y: Complex64) -> f64 {
    (x.norm_sqr() + y.norm_sqr()).sqrt()
}

/// `|x - y| / max(|x|, |y|)`, and 0 when both vanish.
pub(super) fn relative(x: Complex64, y: Complex64) -> f64 {
    let scale = x.norm().max(y.norm());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).norm() / scale
    }
}

fn omega_state(p: &SelfReciprocalPoly, t0: &BigRational) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut v = initial_vector_omega(p).map(|f| f.eval_at(t0).expect("t0 > 0 is not a pole"));
    let (mut m, mut vectors) = (Vec::new(), Vec::new());
    for _ in 0..2 * p.g() {
        match recursion_step(&v) {
            Ok((mi, next)) => {
                m.push(to_f64(&mi));
                vectors.push(next.entries().iter().map(to_f64).collect());
                v = next;
            }
            Err(_) => break,
        }
    }
    (m, vectors)
}

fn adaptive_simpson(mut f: impl FnMut(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let fa = f(a);
    let fb = f(b);
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&mut f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &mut impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
