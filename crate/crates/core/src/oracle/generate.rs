use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::criterion::SelfReciprocalPoly;
use crate::exact::{format_rational, rat, UniPoly};

/// `c_0 · Π (x² - 2λ_j x + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSpec {
    pub lambdas: Vec<BigRational>,
    pub c0: BigRational,
}

/// Expands a [`LambdaSpec`]. Panics if `c0 = 0` or no λ is given.
pub fn from_lambdas(spec: &LambdaSpec) -> SelfReciprocalPoly {
    let factors: Vec<Factor> = spec.lambdas.iter().cloned().map(Factor::Real).collect();
    expand(&factors, &spec.c0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InstanceMode {
    OnCircleSimple,
    OnCircleMultiple,
    OffCircle,
    Mixed,
}

impl InstanceMode {
    pub const ALL: [InstanceMode; 4] = [
        InstanceMode::OnCircleSimple,
        InstanceMode::OnCircleMultiple,
        InstanceMode::OffCircle,
        InstanceMode::Mixed,
    ];
}

impl std::str::FromStr for InstanceMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "OnCircleSimple" => Ok(Self::OnCircleSimple),
            "OnCircleMultiple" => Ok(Self::OnCircleMultiple),
            "OffCircle" => Ok(Self::OffCircle),
            "Mixed" => Ok(Self::Mixed),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

impl std::fmt::Display for InstanceMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One factor of a generated polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `x² - 2λx + 1`.
    Real(BigRational),
    /// `(x² - 2λx + 1)(x² - 2λ̄x + 1)` with `λ = α + iβ`, stored as `(α, β²)`.
    ConjugatePair(BigRational, BigRational),
}

impl Factor {
    fn degree_slots(&self) -> usize {
        match self {
            Factor::Real(_) => 1,
            Factor::ConjugatePair(..) => 2,
        }
    }

    fn poly(&self) -> UniPoly {
        let one = BigRational::one();
        match self {
            Factor::Real(l) => UniPoly::new(vec![one.clone(), -(l * rat(2, 1)), one]),
            Factor::ConjugatePair(a, b2) => {
                // x⁴ - 2(λ+λ̄)x³ + (2 + 4|λ|²)x² - 2(λ+λ̄)x + 1
                let trace = a * rat(4, 1);
                let norm = a * a + b2;
                UniPoly::new(vec![
                    one.clone(),
                    -trace.clone(),
                    rat(2, 1) + norm * rat(4, 1),
                    -trace,
                    one,
                ])
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Factor::Real(l) => format!("lambda={}", format_rational(l)),
            Factor::ConjugatePair(a, b2) => {
                format!(
                    "lambda={}+-i*sqrt({})",
                    format_rational(a),
                    format_rational(b2)
                )
            }
        }
    }
}

fn expand(factors: &[Factor], c0: &BigRational) -> SelfReciprocalPoly {
    let full = factors
        .iter()
        .fold(UniPoly::constant(c0.clone()), |acc, f| acc.mul(&f.poly()));
    let g = factors.iter().map(Factor::degree_slots).sum::<usize>();
    let coeffs = (0..=g).map(|j| full.coeffs()[j].clone()).collect();
    SelfReciprocalPoly::new(coeffs).expect("c0 != 0 and g >= 1")
}

/// A generated polynomial together with the configuration it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedInstance {
    pub mode: InstanceMode,
    /// The concrete mode a `Mixed` draw resolved to.
    pub resolved: InstanceMode,
    pub seed: u64,
    pub poly: SelfReciprocalPoly,
    pub factors: Vec<Factor>,
    pub c0: BigRational,
}

impl GeneratedInstance {
    pub fn expected_on_circle(&self) -> bool {
        self.resolved != InstanceMode::OffCircle
    }

    pub fn expected_simple(&self) -> bool {
        self.resolved == InstanceMode::OnCircleSimple
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(Factor::describe).collect();
        format!("c0={} {}", format_rational(&self.c0), parts.join(" "))
    }
}

pub fn random_instance(mode: InstanceMode, g: usize, seed: u64) -> SelfReciprocalPoly {
    generate(mode, g, seed).poly
}

/// Deterministic instance of degree `2g` with the zero configuration `mode` asks for.
pub fn generate(mode: InstanceMode, g: usize, seed: u64) -> GeneratedInstance {
    assert!(g >= 1, "g must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let resolved = match mode {
        InstanceMode::Mixed => *[
            InstanceMode::OnCircleSimple,
            InstanceMode::OnCircleMultiple,
            InstanceMode::OffCircle,
        ]
        .choose(&mut rng)
        .expect("nonempty"),
        m => m,
    };
    let mut factors = match resolved {
        InstanceMode::OnCircleSimple => simple_lambdas(&mut rng, g, &[])
            .into_iter()
            .map(Factor::Real)
            .collect(),
        InstanceMode::OnCircleMultiple => multiple(&mut rng, g),
        InstanceMode::OffCircle => off_circle(&mut rng, g),
        InstanceMode::Mixed => unreachable!(),
    };
    factors.shuffle(&mut rng);
    let c0 = random_scale(&mut rng);
    GeneratedInstance {
        mode,
        resolved,
        seed,
        poly: expand(&factors, &c0),
        factors,
        c0,
    }
}

fn random_scale(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=5))
}

/// A rational in `[-99/100, 99/100]` with a small denominator.
fn inner_lambda(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let den = rng.gen_range(2..=40i64);
        let num = rng.gen_range(-den..=den);
        let l = rat(num, den);
        if l.abs() <= rat(99, 100) {
            return l;
        }
    }
}

/// `count` values in `[-99/100, 99/100]`, pairwise at least `1/100` apart and
/// from every value in `avoid`.
fn simple_lambdas(rng: &mut ChaCha8Rng, count: usize, avoid: &[BigRational]) -> Vec<BigRational> {
    let sep = rat(1, 100);
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    while out.len() < count {
        let l = inner_lambda(rng);
        if out.iter().chain(avoid).all(|x| (x - &l).abs() >= sep) {
            out.push(l);
        }
    }
    out
}

fn multiple(rng: &mut ChaCha8Rng, g: usize) -> Vec<Factor> {
    // Either a repeated interior λ (needs g ≥ 2) or λ = ±1.
    let repeated = if g >= 2 && rng.gen_bool(0.5) {
        let l = inner_lambda(rng);
        vec![l.clone(), l]
    } else {
        vec![if rng.gen_bool(0.5) {
            BigRational::one()
        } else {
            -BigRational::one()
        }]
    };
    let rest = simple_lambdas(rng, g - repeated.len(), &repeated);
    repeated.into_iter().chain(rest).map(Factor::Real).collect()
}

fn off_circle(rng: &mut ChaCha8Rng, g: usize) -> Vec<Factor> {
    let mut out = Vec::new();
    if g >= 2 && rng.gen_bool(0.5) {
        let alpha = rat(rng.gen_range(-30..=30), rng.gen_range(1..=10));
        let beta = rat(rng.gen_range(1..=30), 10);
        out.push(Factor::ConjugatePair(alpha, &beta * &beta));
    } else {
        // |λ| in [11/10, 3]
        let mag = rat(rng.gen_range(11..=30), 10);
        out.push(Factor::Real(if rng.gen_bool(0.5) { mag } else { -mag }));
    }
    let used = out.iter().map(Factor::degree_slots).sum::<usize>();
    // The remaining slots may be anything; off-circle roots are already present.
    let extra: Vec<BigRational> = (0..g - used)
        .map(|_| {
            if rng.gen_bool(0.3) {
                rat(rng.gen_range(-30..=30), 10)
            } else {
                inner_lambda(rng)
            }
        })
        .collect();
    out.extend(extra.into_iter().map(Factor::Real));
    out
}

impl LambdaSpec {
    /// Rejects `c0 = 0` and the empty product.
    pub fn new(lambdas: Vec<BigRational>, c0: BigRational) -> Option<Self> {
        (!c0.is_zero() && !lambdas.is_empty()).then_some(Self { lambdas, c0 })
    }
}
