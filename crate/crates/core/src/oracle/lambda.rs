//! `R_n` written in the parameters `λ_j` of `P = c_0 Π (x² - 2λ_j x + 1)`, for `g ≤ 3`.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `R_0, …, R_{2g}` for `g = λ.len() ∈ {1, 2, 3}`; an entry is `None` where the
/// formula's denominator vanishes. Returns `None` for other `g`.
pub fn lambda_r_values(lambdas: &[BigRational]) -> Option<Vec<Option<BigRational>>> {
    let one = BigRational::one();
    let two = &one + &one;
    let three = &two + &one;
    let ratio = |n: BigRational, d: BigRational| (!d.is_zero()).then(|| n / d);
    let minus = |l: &BigRational| &one - l;
    let plus = |l: &BigRational| &one + l;
    let sq = |x: BigRational| &x * &x;
    let sum_minus: BigRational = lambdas.iter().map(minus).sum();
    let sum_plus: BigRational = lambdas.iter().map(plus).sum();
    let prod_minus: BigRational = lambdas.iter().map(minus).product();
    let prod_plus: BigRational = lambdas.iter().map(plus).product();
    let pairs: Vec<(usize, usize)> = (0..lambdas.len())
        .flat_map(|i| (i + 1..lambdas.len()).map(move |j| (i, j)))
        .collect();
    let l = lambdas;
    let mut out = vec![Some(one.clone()), Some(one.clone())];
    match l.len() {
        1 => out.push(ratio(minus(&l[0]), plus(&l[0]))),
        2 => {
            out.push(ratio(sum_minus, sum_plus));
            let num: BigRational = l.iter().map(|x| &one - x * x).sum();
            out.push(ratio(&two * num, sq(&l[0] - &l[1])));
            out.push(ratio(prod_minus, prod_plus));
        }
        3 => {
            out.push(ratio(sum_minus, sum_plus));
            let num: BigRational = l.iter().map(|x| &one - x * x).sum();
            let den: BigRational = pairs.iter().map(|&(i, j)| sq(&l[i] - &l[j])).sum();
            out.push(ratio(&three * num, den));
            let n4: BigRational = pairs
                .iter()
                .map(|&(i, j)| minus(&l[i]) * minus(&l[j]) * sq(&l[i] - &l[j]))
                .sum();
            let d4: BigRational = pairs
                .iter()
                .map(|&(i, j)| plus(&l[i]) * plus(&l[j]) * sq(&l[i] - &l[j]))
                .sum();
            out.push(ratio(n4, d4));
            let n5: BigRational = pairs
                .iter()
                .map(|&(i, j)| (&one - &l[i] * &l[i]) * (&one - &l[j] * &l[j]) * sq(&l[i] - &l[j]))
                .sum();
            let d5: BigRational = pairs.iter().map(|&(i, j)| sq(&l[i] - &l[j])).product();
            out.push(ratio(&three * n5, d5));
            out.push(ratio(prod_minus, prod_plus));
        }
        _ => return None,
    }
    Some(out)
}
