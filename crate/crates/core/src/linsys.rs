//! The structured matrices `P_k(m)`, `Q_k` and the step matrix `P_k(m)⁻¹ Q_k`.
//!
//! Indices in code are 0-based; doc comments use the 1-based row/column
//! numbering of the displayed matrices.
//!
//! For `k ≥ 0` the step matrix has four `(k+1) × (k+2)` blocks
//! `[[M1, M2], [M3, M4]]`. Row 1 of each block is special; every other row `r`
//! touches only the mirrored column pair `(s, k+3-s)` where
//! `s = r` for `r ≤ ⌊(k+3)/2⌋` and `s = k+3-r` afterwards. That single rule
//! reproduces the explicit `k = 0` and `k = 1` displays as well.

use num_rational::BigRational;
use thiserror::Error;

use crate::exact::{Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinsysError {
    #[error("P_{k}(m) is singular for m = 0")]
    SingularStep { k: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense row-major matrix over a scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinsysError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinsysError::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    fn add_to(&mut self, i: usize, j: usize, v: S) {
        let idx = i * self.cols + j;
        let cur = std::mem::replace(&mut self.data[idx], S::zero());
        self.data[idx] = cur + v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinsysError> {
        if self.cols != other.rows {
            return Err(LinsysError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.add_to(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; zero entries are skipped.
    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinsysError> {
        if v.len() != self.cols {
            return Err(LinsysError::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Sub-matrix `[r0, r0+nr) × [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut out = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// `P_k(m)`, `(2k+2) × (2k+2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredMatrixP<S> {
    pub k: usize,
    pub m: S,
    pub matrix: Matrix<S>,
}

/// `Q_k`, `(2k+2) × (2k+4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredMatrixQ<S> {
    pub k: usize,
    pub matrix: Matrix<S>,
}

/// `P_k(m)⁻¹ Q_k`, assembled from its closed-form blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct StepMatrix<S> {
    pub k: usize,
    pub m: S,
    pub matrix: Matrix<S>,
}

impl<S: Ring> StepMatrix<S> {
    /// Block `j ∈ 1..=4` of `[[M1, M2], [M3, M4]]`, each `(k+1) × (k+2)`.
    pub fn block(&self, j: usize) -> Matrix<S> {
        let (h, w) = (self.k + 1, self.k + 2);
        match j {
            1 => self.matrix.block(0, 0, h, w),
            2 => self.matrix.block(0, w, h, w),
            3 => self.matrix.block(h, 0, h, w),
            4 => self.matrix.block(h, w, h, w),
            _ => panic!("block index {j} out of range 1..=4"),
        }
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>, LinsysError> {
        self.matrix.mul_vec(v)
    }
}

/// Number of rows of `V_k^+` (and `W_k^+`): `(k+3)/2` for odd `k`, `(k+2)/2` for even.
fn plus_rows(k: usize) -> usize {
    (k + 3) / 2
}

/// 0-based column pair `(s, k+3-s) - 1` touched by 1-based row `r ≥ 2` of a step block,
/// together with the sign that flips past the middle.
fn mirrored_pair(k: usize, r: usize) -> (usize, usize, bool) {
    let first_half = r <= (k + 3) / 2;
    let s = if first_half { r } else { k + 3 - r };
    (s - 1, k + 2 - s, first_half)
}

pub fn build_p<S: Scalar>(k: usize, m: &S) -> StructuredMatrixP<S> {
    let n = 2 * k + 2;
    let y0 = k + 1;
    let mut p = Matrix::zeros(n, n);
    let rp = plus_rows(k);
    let rm = k + 2 - rp;
    // V_k^+ : row 1 = e_1, row i = e_i + e_{k+3-i}
    for i in 1..=rp {
        p.set(i - 1, i - 1, S::one());
        if i >= 2 {
            p.set(i - 1, k + 2 - i, S::one());
        }
    }
    // V_k^- : row 1 = e_1, row i = e_i - e_{k+3-i}
    for i in 1..=rm {
        let row = rp + i - 1;
        p.set(row, y0 + i - 1, S::one());
        if i >= 2 {
            p.set(row, y0 + k + 2 - i, -S::one());
        }
    }
    // [0 I_k | -m·0 I_k]
    for j in 1..=k {
        let row = k + 2 + j - 1;
        p.set(row, j, S::one());
        p.set(row, y0 + j, -m.clone());
    }
    StructuredMatrixP {
        k,
        m: m.clone(),
        matrix: p,
    }
}

pub fn build_q<S: Scalar>(k: usize) -> StructuredMatrixQ<S> {
    let rows = 2 * k + 2;
    let w = k + 2;
    let mut q = Matrix::zeros(rows, 2 * w);
    let rp = plus_rows(k);
    let rm = k + 2 - rp;
    for i in 1..=rp {
        q.set(i - 1, i - 1, S::one());
        if i >= 2 {
            q.set(i - 1, k + 2 - i, S::one());
        }
    }
    q.set(0, w - 1, S::one());
    for i in 1..=rm {
        let row = rp + i - 1;
        q.set(row, w + i - 1, S::one());
        if i >= 2 {
            q.set(row, w + k + 2 - i, -S::one());
        }
    }
    // W_k^- carries -1 in the appended column (cf. the Q_0 and Q_1 displays).
    q.set(rp, 2 * w - 1, -S::one());
    StructuredMatrixQ { k, matrix: q }
}

/// `P_k(m)⁻¹ Q_k` from the closed-form blocks (`M1`: factor 1/2, `M2`: m/2,
/// `M3`: 1/(2m), `M4`: 1/2).
pub fn build_step<S: Scalar>(k: usize, m: &S) -> Result<StepMatrix<S>, LinsysError> {
    let half = S::from_rational(&BigRational::new(1.into(), 2.into()));
    let m_half = m.clone() * half.clone();
    let inv_two_m = if k == 0 {
        S::zero()
    } else {
        let inv = m.try_inv().ok_or(LinsysError::SingularStep { k })?;
        inv * half.clone()
    };
    let matrix = assemble_step(k, S::one(), half, m_half, inv_two_m);
    Ok(StepMatrix {
        k,
        m: m.clone(),
        matrix,
    })
}

/// `2·num·den · P_k(num/den)⁻¹ Q_k`, which has entries in the ring itself.
///
/// The recursion only needs its state up to a scalar factor, so this lets it run
/// over a polynomial ring without any division.
pub fn step_cleared<R: Ring>(k: usize, num: &R, den: &R) -> Matrix<R> {
    let nd = num.clone() * den.clone();
    assemble_step(
        k,
        nd.clone() + nd.clone(),
        nd,
        num.clone() * num.clone(),
        den.clone() * den.clone(),
    )
}

/// Places the four scalar kinds of the step matrix: `one` (row 1 of each
/// block), `half`, `m_half` and `inv_two_m`.
fn assemble_step<R: Ring>(k: usize, one: R, half: R, m_half: R, inv_two_m: R) -> Matrix<R> {
    let h = k + 1;
    let w = k + 2;
    let mut out = Matrix::zeros(2 * h, 2 * w);

    out.set(0, 0, one.clone());
    out.set(0, w - 1, one.clone());
    out.set(h, w, one.clone());
    out.set(h, 2 * w - 1, -one);

    for r in 2..=h {
        let (a, b, first_half) = mirrored_pair(k, r);
        let (mh, hf) = if first_half {
            (m_half.clone(), half.clone())
        } else {
            (-m_half.clone(), -half.clone())
        };
        let (top, bottom) = (r - 1, h + r - 1);
        out.add_to(top, a, half.clone());
        out.add_to(top, b, half.clone());
        out.add_to(top, w + a, mh.clone());
        out.add_to(top, w + b, -mh);
        out.add_to(bottom, a, inv_two_m.clone());
        out.add_to(bottom, b, inv_two_m.clone());
        out.add_to(bottom, w + a, hf.clone());
        out.add_to(bottom, w + b, -hf);
    }
    out
}

/// Closed-form `det P_k(m)` for `k ≥ 1`:
/// `ε·2^j·m^{j+1}` for `k = 2j+1` and `ε·2^j·m^j` for `k = 2j`.
pub fn det_p_closed_form<S: Scalar>(k: usize, m: &S) -> S {
    assert!(k >= 1, "closed form is stated for k >= 1");
    let j = k / 2;
    let (positive, exponent) = if k % 2 == 1 {
        (matches!(j % 4, 2 | 3), j + 1)
    } else {
        (matches!(j % 4, 0 | 1), j)
    };
    let mut value = S::from_rational(&BigRational::from_integer(
        num_bigint::BigInt::from(1u8) << j,
    ));
    for _ in 0..exponent {
        value = value * m.clone();
    }
    if positive {
        value
    } else {
        -value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ints(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn p0_is_identity() {
        assert_eq!(build_p(0, &rat(7, 1)).matrix, Matrix::identity(2));
    }

    #[test]
    fn p1_display() {
        let p = build_p(1, &rat(5, 1)).matrix;
        assert_eq!(
            p,
            ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, -5]])
        );
    }

    #[test]
    fn q0_and_q1_displays() {
        assert_eq!(
            build_q::<BigRational>(0).matrix,
            ints(&[&[1, 1, 0, 0], &[0, 0, 1, -1]])
        );
        assert_eq!(
            build_q::<BigRational>(1).matrix,
            ints(&[
                &[1, 0, 1, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 0, 1, 0, -1],
                &[0, 0, 0, 0, 0, 0],
            ])
        );
    }

    #[test]
    fn q_bottom_rows_vanish() {
        let q = build_q::<BigRational>(4).matrix;
        for i in 6..10 {
            assert!(q.row(i).iter().all(|x| *x == rat(0, 1)));
        }
    }

    #[test]
    fn step_k0_is_q0() {
        let s = build_step(0, &rat(3, 1)).unwrap();
        assert_eq!(s.matrix, build_q::<BigRational>(0).matrix);
    }

    #[test]
    fn step_k1_display() {
        let s = build_step(1, &rat(2, 1)).unwrap();
        let last: Vec<_> = s.matrix.row(3).to_vec();
        let expected = [0, 0, 0, 0, 0, 0].map(|x| rat(x, 1));
        let mut expected = expected.to_vec();
        expected[1] = rat(1, 2);
        assert_eq!(last, expected);
        assert_eq!(s.matrix.row(0), &[1, 0, 1, 0, 0, 0].map(|x| rat(x, 1))[..]);
        assert_eq!(s.matrix.row(2), &[0, 0, 0, 1, 0, -1].map(|x| rat(x, 1))[..]);
    }

    #[test]
    fn step_rejects_zero_parameter() {
        assert_eq!(
            build_step(3, &rat(0, 1)),
            Err(LinsysError::SingularStep { k: 3 })
        );
        assert!(build_step(0, &rat(0, 1)).is_ok());
    }

    #[test]
    fn closed_form_determinants() {
        let m = rat(3, 1);
        assert_eq!(det_p_closed_form(1, &m), rat(-3, 1));
        assert_eq!(det_p_closed_form(2, &m), rat(6, 1));
        assert_eq!(det_p_closed_form(3, &m), rat(-18, 1));
        assert_eq!(det_p_closed_form(4, &m), rat(-36, 1));
    }

    #[test]
    fn p_times_step_is_q_small() {
        for k in 0..=6 {
            let m = rat(3, 7);
            let p = build_p(k, &m).matrix;
            let s = build_step(k, &m).unwrap().matrix;
            assert_eq!(p.mul(&s).unwrap(), build_q(k).matrix, "k = {k}");
        }
    }

    #[test]
    fn blocks_have_expected_shape() {
        let s = build_step(5, &rat(2, 1)).unwrap();
        for j in 1..=4 {
            let b = s.block(j);
            assert_eq!((b.rows(), b.cols()), (6, 7));
        }
        // M2 = (m/2)·(sign pattern), row 1 zero
        assert!(s.block(2).row(0).iter().all(|x| *x == rat(0, 1)));
        assert!(s.block(3).row(0).iter().all(|x| *x == rat(0, 1)));
    }
}
