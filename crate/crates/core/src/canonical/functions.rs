use num_complex::Complex64;

use super::CanonicalError;
use crate::criterion::SelfReciprocalPoly;
use crate::exact::to_f64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The entire functions `A_q`, `B_q`, `E_q`, `E_q^♯` of a self-reciprocal polynomial.
///
/// `A_q(z) = q^{-giz} P(q^{iz}) = Σ_{k<g} 2 c_k cos((g-k) z log q) + c_g` and
/// `B_q = -A_q'`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolyFunctions {
    g: usize,
    c: Vec<f64>,
    q: f64,
    log_q: f64,
}

impl ExpPolyFunctions {
    pub fn new(p: &SelfReciprocalPoly, q: f64) -> Result<Self, CanonicalError> {
        check_q(q)?;
        Ok(Self {
            g: p.g(),
            c: p.coeffs().iter().map(to_f64).collect(),
            q,
            log_q: q.ln(),
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn a(&self, z: Complex64) -> Complex64 {
        let g = self.g;
        let mut s = Complex64::from(self.c[g]);
        for k in 0..g {
            let freq = (g - k) as f64 * self.log_q;
            s += 2.0 * self.c[k] * (z * freq).cos();
        }
        s
    }

    pub fn b(&self, z: Complex64) -> Complex64 {
        let g = self.g;
        let mut s = Complex64::from(0.0);
        for k in 0..g {
            let freq = (g - k) as f64 * self.log_q;
            s += 2.0 * freq * self.c[k] * (z * freq).sin();
        }
        s
    }

    pub fn e(&self, z: Complex64) -> Complex64 {
        self.a(z) - I * self.b(z)
    }

    pub fn e_sharp(&self, z: Complex64) -> Complex64 {
        self.a(z) + I * self.b(z)
    }
}

/// The shifted family `E_{q,ω}(z) = A_q(z + iω)` and its real parts.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaFunctions {
    base: ExpPolyFunctions,
    omega: f64,
}

impl OmegaFunctions {
    pub fn new(base: ExpPolyFunctions, omega: f64) -> Result<Self, CanonicalError> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(CanonicalError::InvalidParameter(format!(
                "omega must be positive, got {omega}"
            )));
        }
        Ok(Self { base, omega })
    }

    pub fn base(&self) -> &ExpPolyFunctions {
        &self.base
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn e(&self, z: Complex64) -> Complex64 {
        self.base.a(z + I * self.omega)
    }

    pub fn e_sharp(&self, z: Complex64) -> Complex64 {
        self.base.a(z - I * self.omega)
    }

    pub fn a(&self, z: Complex64) -> Complex64 {
        0.5 * (self.e(z) + self.e_sharp(z))
    }

    pub fn b(&self, z: Complex64) -> Complex64 {
        0.5 * I * (self.e(z) - self.e_sharp(z))
    }

    /// `A_{q,ω}` from the cosh-weighted sum.
    pub fn a_sum(&self, z: Complex64) -> Complex64 {
        let (g, c, lq) = (self.base.g, &self.base.c, self.base.log_q);
        let mut s = Complex64::from(c[g]);
        for k in 1..=g {
            let kf = k as f64;
            let weight = 2.0 * (kf * self.omega * lq).cosh();
            s += c[g - k] * weight * (z * (kf * lq)).cos();
        }
        s
    }

    /// `B_{q,ω}` from the sinh-weighted sum.
    pub fn b_sum(&self, z: Complex64) -> Complex64 {
        let (g, c, lq) = (self.base.g, &self.base.c, self.base.log_q);
        let mut s = Complex64::from(0.0);
        for k in 1..=g {
            let kf = k as f64;
            let weight = 2.0 * (kf * self.omega * lq).sinh();
            s += c[g - k] * weight * (z * (kf * lq)).sin();
        }
        s
    }
}

/// The reference functions a canonical system is checked against.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryFunctions {
    Log(ExpPolyFunctions),
    Omega(OmegaFunctions),
}

impl BoundaryFunctions {
    pub fn a(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Log(f) => f.a(z),
            Self::Omega(f) => f.a(z),
        }
    }

    pub fn b(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Log(f) => f.b(z),
            Self::Omega(f) => f.b(z),
        }
    }

    pub fn e(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Log(f) => f.e(z),
            Self::Omega(f) => f.e(z),
        }
    }

    pub fn e_sharp(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Log(f) => f.e_sharp(z),
            Self::Omega(f) => f.e_sharp(z),
        }
    }

    /// `E(0)`, the scale of the transfer-product representation.
    pub fn e_at_zero(&self) -> f64 {
        self.e(Complex64::from(0.0)).re
    }
}

pub(super) fn check_q(q: f64) -> Result<(), CanonicalError> {
    if q.is_finite() && q > 1.0 {
        Ok(())
    } else {
        Err(CanonicalError::InvalidParameter(format!(
            "q must exceed 1, got {q}"
        )))
    }
}
