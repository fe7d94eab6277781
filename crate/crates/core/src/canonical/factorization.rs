use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::CanonicalError;
use crate::criterion::{run_log, SelfReciprocalPoly};
use crate::exact::{format_rational, GaussianRational};

/// Outcome of the exact product identity at one point `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub x: String,
    pub product: String,
    pub value: String,
    pub equal: bool,
}

/// `(P(1) / 2^{2g}) [1 0] Π_{n=1}^{2g} [[x+1, i m_n (x-1)], [-i m_n⁻¹ (x-1), x+1]] [1 0]ᵀ`
/// in Gaussian rationals, with `m_n = m_{2g-n}` the exact log-mode values.
///
/// Any common scale of the `m` cancels in the contraction, so the `log q = 1`
/// values are used as they are.
pub fn factorization_product(
    p: &SelfReciprocalPoly,
    m: &[BigRational],
    x: &BigRational,
) -> Result<GaussianRational, CanonicalError> {
    if m.len() != 2 * p.g() || m.iter().any(Zero::is_zero) {
        return Err(CanonicalError::NotApplicable(
            "every m must be defined and nonzero".into(),
        ));
    }
    let one = BigRational::one();
    let diag = GaussianRational::real(x + &one);
    let d = x - &one;
    let i = GaussianRational::i();
    // Row vector [1 0] times the factors, left to right.
    let mut row = [GaussianRational::one(), GaussianRational::zero()];
    for mn in m {
        let upper = &i * &GaussianRational::real(mn * &d);
        let lower = -&(&i * &GaussianRational::real(&d / mn));
        row = [
            &(&row[0] * &diag) + &(&row[1] * &lower),
            &(&row[0] * &upper) + &(&row[1] * &diag),
        ];
    }
    let scale = p.value_at_one() / BigRational::from_integer(BigInt::one() << (2 * p.g()));
    Ok(row[0].scale(&scale))
}

/// Checks the product identity against `P(x)` exactly, using the log-mode `m`.
pub fn factorization_identity(
    p: &SelfReciprocalPoly,
    x: &BigRational,
) -> Result<FactorizationCheck, CanonicalError> {
    let report = run_log(p);
    let m: Vec<BigRational> = report
        .m_values()
        .ok_or_else(|| {
            CanonicalError::NotApplicable("the m-sequence has an undefined step".into())
        })?
        .into_iter()
        .cloned()
        .collect();
    let product = factorization_product(p, &m, x)?;
    let value = p.eval(x);
    let equal = product == GaussianRational::real(value.clone());
    Ok(FactorizationCheck {
        x: format_rational(x),
        product: product.to_string(),
        value: format_rational(&value),
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64]) -> SelfReciprocalPoly {
        SelfReciprocalPoly::from_ints(c).unwrap()
    }

    #[test]
    fn x2_plus_1_at_two() {
        let check = factorization_identity(&poly(&[1, 0]), &rat(2, 1)).unwrap();
        assert!(check.equal);
        assert_eq!(check.value, "5");
    }

    #[test]
    fn at_one_gives_p_of_one() {
        let p = poly(&[1, -1, 2]);
        let check = factorization_identity(&p, &rat(1, 1)).unwrap();
        assert!(check.equal);
        assert_eq!(check.value, "2");
    }

    #[test]
    fn holds_for_a_non_positive_sequence() {
        // all m defined but not all positive: the identity is algebraic
        let p = poly(&[1, 3, 1]);
        let report = run_log(&p);
        assert!(report.m_values().is_some());
        for x in [rat(-3, 7), rat(5, 2), rat(11, 3)] {
            assert!(factorization_identity(&p, &x).unwrap().equal);
        }
    }

    #[test]
    fn undefined_sequence_is_not_applicable() {
        let r = factorization_identity(&poly(&[4, -16, 23]), &rat(2, 1));
        assert!(matches!(r, Err(CanonicalError::NotApplicable(_))));
    }
}
