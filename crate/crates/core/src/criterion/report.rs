use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::projective::omega_parameters;
use super::recursion::{
    initial_vector_log, initial_vector_omega, recursion_step, StateVector, StepFailure,
};
use super::{CriterionError, SelfReciprocalPoly};
use crate::exact::{rat, Limit, RationalFunction, Scalar, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    LogQ,
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepStatus {
    Ok,
    NumeratorZero,
    DenominatorZero,
    NonPositive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    /// All zeros on the unit circle and simple.
    AllOnCircleSimple,
    /// All zeros on the unit circle, multiplicities allowed.
    AllOnCircle,
    Fails {
        step: usize,
        reason: StepStatus,
    },
    /// Sampled ω-mode saw no violation; that proves nothing.
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::AllOnCircleSimple | Verdict::AllOnCircle)
    }
}

/// Exact evidence behind an ω-mode step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Distinct roots of the numerator and the denominator of `m(t)` in `(1, ∞)`,
    /// and the sign of `m(2)`.
    Sturm {
        numerator_roots: usize,
        denominator_roots: usize,
        positive_at_two: bool,
    },
    /// A point `t > 1` where `m(t) ≤ 0` or `m` has a pole.
    Witness { t: String },
}

impl Certificate {
    pub fn positive(&self) -> bool {
        match self {
            Self::Sturm {
                numerator_roots,
                denominator_roots,
                positive_at_two,
            } => *numerator_roots == 0 && *denominator_roots == 0 && *positive_at_two,
            Self::Witness { .. } => false,
        }
    }
}

/// One recursion step `n`, producing `m_{2g-n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord<S> {
    pub n: usize,
    /// `m_{2g-n}`; `None` when the step could not be taken.
    pub m: Option<S>,
    pub status: StepStatus,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport<S> {
    pub mode: Mode,
    pub poly: SelfReciprocalPoly,
    /// The convention value `m_{2g}`.
    pub m_top: S,
    pub steps: Vec<StepRecord<S>>,
    /// `v_g(0), …, v_g(n)` up to the last state reached. ω-mode runs track their
    /// states only up to a scalar factor and keep just `v_g(0)` here.
    pub vectors: Vec<StateVector<S>>,
    pub verdict: Verdict,
}

impl<S: Scalar> CriterionReport<S> {
    pub fn g(&self) -> usize {
        self.poly.g()
    }

    /// `m_{2g-1}, …, m_0` when every step succeeded.
    pub fn m_values(&self) -> Option<Vec<&S>> {
        if self.steps.len() != 2 * self.g() {
            return None;
        }
        self.steps.iter().map(|s| s.m.as_ref()).collect()
    }

    /// `m_{2g-n}` for `n = 0..=2g`, `n = 0` being the convention value.
    pub fn m_at(&self, n: usize) -> Option<&S> {
        if n == 0 {
            Some(&self.m_top)
        } else {
            self.steps.get(n - 1).and_then(|s| s.m.as_ref())
        }
    }

    pub fn first_failure(&self) -> Option<&StepRecord<S>> {
        self.steps.iter().find(|s| s.status != StepStatus::Ok)
    }

    /// Whether every `m_{2g-n}` was produced.
    pub fn complete(&self) -> bool {
        self.steps.len() == 2 * self.g() && self.steps.iter().all(|s| s.m.is_some())
    }
}

/// `R_0, …, R_{2g}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSequence<S> {
    pub values: Vec<S>,
}

/// How ω-mode decides positivity for all `t = q^ω > 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum OmegaDecision {
    /// Sturm counts on `(1, ∞)`: a proof either way.
    Exact,
    /// Evaluation at the given points `t > 1`: can only refute.
    Sampled(Vec<BigRational>),
}

impl OmegaDecision {
    pub fn default_samples() -> Self {
        Self::Sampled(vec![rat(3, 2), rat(2, 1), rat(3, 1), rat(5, 1)])
    }
}

fn failure_status(f: StepFailure) -> StepStatus {
    match f {
        StepFailure::NumeratorZero => StepStatus::NumeratorZero,
        StepFailure::DenominatorZero | StepFailure::Inconsistent => StepStatus::DenominatorZero,
    }
}

/// Runs every step, classifying each `m` with `classify`; halts only when a step
/// cannot be taken.
fn run<S: Scalar>(
    g: usize,
    v0: StateVector<S>,
    mut classify: impl FnMut(&S) -> (StepStatus, Option<Certificate>),
) -> (Vec<StepRecord<S>>, Vec<StateVector<S>>) {
    let mut steps = Vec::with_capacity(2 * g);
    let mut vectors = vec![v0];
    for n in 1..=2 * g {
        let v = vectors.last().expect("nonempty");
        match recursion_step(v) {
            Ok((m, next)) => {
                let (status, certificate) = classify(&m);
                steps.push(StepRecord {
                    n,
                    m: Some(m),
                    status,
                    certificate,
                });
                vectors.push(next);
            }
            Err(StepFailure::Inconsistent) => panic!("step identity violated at n = {n}"),
            Err(f) => {
                steps.push(StepRecord {
                    n,
                    m: None,
                    status: failure_status(f),
                    certificate: None,
                });
                break;
            }
        }
    }
    (steps, vectors)
}

fn verdict_from_steps<S>(steps: &[StepRecord<S>], all_pass: Verdict) -> Verdict {
    match steps.iter().find(|s| s.status != StepStatus::Ok) {
        Some(s) => Verdict::Fails {
            step: s.n,
            reason: s.status,
        },
        None => all_pass,
    }
}

/// Log-mode criterion (`log q = 1`): all zeros on the circle and simple iff every
/// `m_{2g-n}` exists and is positive.
pub fn run_log(p: &SelfReciprocalPoly) -> CriterionReport<BigRational> {
    let m_top = BigRational::new(1.into(), (p.g() as i64).into());
    let (steps, vectors) = run(p.g(), initial_vector_log(p), |m| {
        let status = if m.is_positive() {
            StepStatus::Ok
        } else {
            StepStatus::NonPositive
        };
        (status, None)
    });
    let verdict = verdict_from_steps(&steps, Verdict::AllOnCircleSimple);
    CriterionReport {
        mode: Mode::LogQ,
        poly: p.clone(),
        m_top,
        steps,
        vectors,
        verdict,
    }
}

/// `m_{2g}(t) = (t^{2g} + 1) / (t^{2g} - 1)`.
pub fn omega_m_top(g: usize) -> RationalFunction {
    let one = BigRational::one();
    let t2g = UniPoly::monomial(one.clone(), 2 * g);
    let c = UniPoly::constant(one);
    RationalFunction::reduce(t2g.add(&c), t2g.sub(&c)).expect("t^{2g} - 1 is nonzero")
}

fn classify_exact(m: &RationalFunction) -> (StepStatus, Option<Certificate>) {
    // A cheap refutation first: root counts on the failing steps are the
    // expensive ones, and one bad point settles them.
    let probes = [
        rat(11, 10),
        rat(3, 2),
        rat(2, 1),
        rat(3, 1),
        rat(5, 1),
        rat(10, 1),
    ];
    if let Some(t0) = probes.iter().find(|t0| !positive_at(m, t0)) {
        let cert = Certificate::Witness { t: t0.to_string() };
        return (StepStatus::NonPositive, Some(cert));
    }
    let cert = Certificate::Sturm {
        numerator_roots: crate::exact::sturm_count(m.num()).unwrap_or(0),
        denominator_roots: crate::exact::sturm_count(m.den()).expect("denominator is nonzero"),
        positive_at_two: positive_at(m, &rat(2, 1)),
    };
    // m and 1/m share the same Sturm data, so positivity of one covers both.
    let status = if cert.positive() {
        StepStatus::Ok
    } else {
        StepStatus::NonPositive
    };
    (status, Some(cert))
}

fn positive_at(m: &RationalFunction, t0: &BigRational) -> bool {
    m.eval_at(t0).map(|x| x.is_positive()).unwrap_or(false)
}

fn classify_sampled(m: &RationalFunction, samples: &[BigRational]) -> StepStatus {
    let refuted = samples.iter().any(|t0| !positive_at(m, t0));
    if refuted {
        StepStatus::NonPositive
    } else {
        StepStatus::Ok
    }
}

/// ω-mode criterion over `Q(t)`, `t = q^ω`, decided exactly.
pub fn run_omega(p: &SelfReciprocalPoly) -> CriterionReport<RationalFunction> {
    run_omega_with(p, &OmegaDecision::Exact)
}

pub fn run_omega_with(
    p: &SelfReciprocalPoly,
    decision: &OmegaDecision,
) -> CriterionReport<RationalFunction> {
    let m_top = omega_m_top(p.g());
    let mut steps = Vec::with_capacity(2 * p.g());
    for (i, m) in omega_parameters(p).into_iter().enumerate() {
        let n = i + 1;
        match m {
            Ok(m) => {
                let (status, certificate) = match decision {
                    OmegaDecision::Exact => classify_exact(&m),
                    OmegaDecision::Sampled(samples) => (classify_sampled(&m, samples), None),
                };
                steps.push(StepRecord {
                    n,
                    m: Some(m),
                    status,
                    certificate,
                });
            }
            Err(StepFailure::Inconsistent) => panic!("step identity violated at n = {n}"),
            Err(f) => steps.push(StepRecord {
                n,
                m: None,
                status: failure_status(f),
                certificate: None,
            }),
        }
    }
    let vectors = vec![initial_vector_omega(p)];
    let pass = match decision {
        OmegaDecision::Exact => Verdict::AllOnCircle,
        OmegaDecision::Sampled(_) => Verdict::Inconclusive,
    };
    let verdict = verdict_from_steps(&steps, pass);
    CriterionReport {
        mode: Mode::Omega,
        poly: p.clone(),
        m_top,
        steps,
        vectors,
        verdict,
    }
}

/// Alternating products `R_{2J+1} = Π_{j≤J} m_{2g-2j-1}/m_{2g-2j}`,
/// `R_{2J+2} = Π_{j≤J} m_{2g-2j-2}/m_{2g-2j-1}`, checked against
/// `m_{2g-n} = m_{2g} R_{n-1} R_n`.
pub fn r_sequence<S: Scalar>(report: &CriterionReport<S>) -> Result<RSequence<S>, CriterionError> {
    let g2 = 2 * report.g();
    let mut mm = Vec::with_capacity(g2 + 1);
    for n in 0..=g2 {
        match report.m_at(n) {
            Some(m) if !m.is_zero() => mm.push(m.clone()),
            _ => return Err(CriterionError::RNotAvailable(n)),
        }
    }
    let mut values = vec![S::one()];
    for n in 1..=g2 {
        let ratio = mm[n].try_div(&mm[n - 1]).expect("m values are nonzero");
        let prev = if n >= 2 {
            values[n - 2].clone()
        } else {
            S::one()
        };
        values.push(prev * ratio);
    }
    for n in 1..=g2 {
        let rhs = mm[0].clone() * values[n - 1].clone() * values[n].clone();
        if rhs != mm[n] {
            return Err(CriterionError::RelationViolated(n));
        }
    }
    Ok(RSequence { values })
}

/// `R_0, …, R_{2g}` as far as the run got: `R_n` needs `m_{2g}, …, m_{2g-n}`
/// defined and nonzero, later entries are `None`.
pub fn r_prefix<S: Scalar>(report: &CriterionReport<S>) -> Vec<Option<S>> {
    let g2 = 2 * report.g();
    let mut values: Vec<Option<S>> = vec![Some(S::one())];
    for n in 1..=g2 {
        let next = match (report.m_at(n), report.m_at(n - 1)) {
            (Some(m), Some(prev)) => {
                let before = if n >= 2 {
                    values[n - 2].clone()
                } else {
                    Some(S::one())
                };
                before.and_then(|b| m.try_div(prev).map(|q| b * q))
            }
            _ => None,
        };
        values.push(next);
    }
    values
}

/// The R-side verdict: every `R_n` finite and positive.
pub fn all_r_positive(r: &RSequence<BigRational>) -> bool {
    r.values.iter().all(Signed::is_positive)
}

/// Log-mode verdict recomputed from the R-sequence alone.
pub fn verdict_via_r(p: &SelfReciprocalPoly) -> bool {
    let report = run_log(p);
    match r_sequence(&report) {
        Ok(r) => report.m_top.is_positive() && all_r_positive(&r),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitRow {
    pub n: usize,
    pub omega_limit: Limit,
    pub log_value: BigRational,
    pub equal: bool,
}

/// `lim_{t→1⁺} R_n(c; t)` against `R_n(c)` for every `n`.
pub fn limit_check(p: &SelfReciprocalPoly) -> Result<Vec<LimitRow>, CriterionError> {
    let log_r = r_sequence(&run_log(p))?;
    // An empty sample set classifies nothing; only the m-values are needed here.
    let omega_r = r_sequence(&run_omega_with(p, &OmegaDecision::Sampled(Vec::new())))?;
    Ok(log_r
        .values
        .into_iter()
        .zip(omega_r.values.iter())
        .enumerate()
        .map(|(n, (log_value, rt))| {
            let omega_limit = rt.limit_at_one();
            let equal = omega_limit == Limit::Finite(log_value.clone());
            LimitRow {
                n,
                omega_limit,
                log_value,
                equal,
            }
        })
        .collect())
}

impl RSequence<RationalFunction> {
    /// Exact values at `t = t0`.
    pub fn eval_at(&self, t0: &BigRational) -> Result<Vec<BigRational>, CriterionError> {
        self.values
            .iter()
            .map(|r| r.eval_at(t0).map_err(CriterionError::Exact))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> SelfReciprocalPoly {
        SelfReciprocalPoly::from_ints(c).unwrap()
    }

    #[test]
    fn r_prefix_stops_at_the_failed_step() {
        let r = r_prefix(&run_log(&poly(&[4, -16, 23])));
        assert_eq!(r, vec![Some(rat(1, 1)), Some(rat(1, 1)), None, None, None]);
        let full = run_log(&poly(&[1, -1, 2]));
        let expected: Vec<_> = r_sequence(&full)
            .unwrap()
            .values
            .into_iter()
            .map(Some)
            .collect();
        assert_eq!(r_prefix(&full), expected);
    }

    #[test]
    fn simple_circle_instance() {
        let r = run_log(&poly(&[1, 0]));
        assert_eq!(r.verdict, Verdict::AllOnCircleSimple);
        assert_eq!(r.m_values().unwrap(), vec![&rat(1, 1), &rat(1, 1)]);
    }

    #[test]
    fn counterexample_stops_at_step_two() {
        let r = run_log(&poly(&[4, -16, 23]));
        assert_eq!(
            r.verdict,
            Verdict::Fails {
                step: 2,
                reason: StepStatus::NumeratorZero
            }
        );
        assert_eq!(r.steps[0].m, Some(rat(1, 2)));
        assert_eq!(r.steps.len(), 2);
        assert!(matches!(
            r_sequence(&r),
            Err(CriterionError::RNotAvailable(_))
        ));
    }

    #[test]
    fn off_circle_quadratic_fails() {
        let r = run_log(&poly(&[2, 5]));
        assert!(matches!(
            r.verdict,
            Verdict::Fails {
                reason: StepStatus::NonPositive,
                ..
            }
        ));
        let rs = r_sequence(&r).unwrap();
        assert_eq!(rs.values[2], rat(-9, 1));
    }

    #[test]
    fn r_values_g2() {
        let rs = r_sequence(&run_log(&poly(&[1, -1, 2]))).unwrap();
        assert_eq!(
            rs.values,
            vec![rat(1, 1), rat(1, 1), rat(3, 5), rat(14, 1), rat(1, 3)]
        );
        let rs = r_sequence(&run_log(&poly(&[1, 1]))).unwrap();
        assert_eq!(rs.values[2], rat(3, 1));
    }

    #[test]
    fn omega_distinguishes_double_root() {
        let p = poly(&[1, 2]);
        assert!(matches!(run_log(&p).verdict, Verdict::Fails { .. }));
        assert_eq!(run_omega(&p).verdict, Verdict::AllOnCircle);
        assert_eq!(run_omega(&poly(&[1, 1])).verdict, Verdict::AllOnCircle);
        assert!(matches!(
            run_omega(&poly(&[2, 5])).verdict,
            Verdict::Fails { .. }
        ));
    }

    #[test]
    fn sampled_mode_is_rejection_only() {
        let d = OmegaDecision::default_samples();
        assert_eq!(
            run_omega_with(&poly(&[1, 1]), &d).verdict,
            Verdict::Inconclusive
        );
        assert!(matches!(
            run_omega_with(&poly(&[2, 5]), &d).verdict,
            Verdict::Fails { .. }
        ));
    }

    #[test]
    fn limits_agree() {
        for c in [&[1, 1][..], &[1, 0], &[1, -1, 2]] {
            let rows = limit_check(&poly(c)).unwrap();
            assert!(rows.iter().all(|r| r.equal), "{c:?}: {rows:?}");
        }
        let rows = limit_check(&poly(&[1, 1])).unwrap();
        assert_eq!(rows[2].omega_limit, Limit::Finite(rat(3, 1)));
    }

    #[test]
    fn omega_r1_is_one() {
        let rs = r_sequence(&run_omega(&poly(&[3, -1, 2]))).unwrap();
        assert_eq!(rs.values[1], RationalFunction::one());
    }
}
