use std::ops::{Add, Deref, Sub};

use super::matrix::{Complex, Matrix};
use crate::error::{Error, Result};

/// Square complex matrix with exact Hermitian symmetry.
///
/// Construction from a general matrix replaces it by its Hermitian part
/// `(M + M*)/2` and keeps the discarded half-norm `‖M − M*‖_F / 2` as the
/// symmetrization defect. Entry `(i, j)` is always the exact conjugate of
/// entry `(j, i)` and the diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: Matrix,
    defect: f64,
}

impl HermitianMatrix {
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (m.rows(), m.rows()),
                found: m.shape(),
            });
        }
        if !m.is_finite() {
            // from_vec already rejects these; a matrix built by arithmetic may not.
            let k = m
                .as_slice()
                .iter()
                .position(|z| !(z.re.is_finite() && z.im.is_finite()));
            let k = k.unwrap_or(0);
            return Err(Error::NonFinite {
                row: k / m.cols(),
                col: k % m.cols(),
            });
        }
        let defect = m.hermitian_defect();
        Ok(Self {
            inner: symmetrize(m),
            defect,
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_matrix(Matrix::from_real_rows(rows)?)
    }

    pub fn from_diag(values: &[f64]) -> Self {
        Self::trusted(Matrix::from_diag(values))
    }

    pub fn identity(n: usize) -> Self {
        Self::trusted(Matrix::identity(n))
    }

    /// `c·I` of dimension `n`.
    pub fn scalar(n: usize, c: f64) -> Self {
        Self::from_diag(&vec![c; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::trusted(Matrix::zeros(n, n))
    }

    /// Wraps a matrix that is Hermitian by construction.
    pub(crate) fn trusted(inner: Matrix) -> Self {
        debug_assert!(inner.is_square());
        Self { inner, defect: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix {
        self.inner
    }

    /// `‖M − M*‖_F / 2` of the matrix this value was built from.
    pub fn symmetrization_defect(&self) -> f64 {
        self.defect
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::trusted(self.inner.scale(s))
    }

    /// Diagonal entries (real by invariant).
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.inner[(i, i)].re).collect()
    }

    /// `‖AB − BA‖_F`.
    pub fn commutator_norm(&self, other: &HermitianMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        let ab = &self.inner * &other.inner;
        let ba = &other.inner * &self.inner;
        Ok((&ab - &ba).frobenius_norm())
    }

    pub fn check_same_dim(&self, other: &HermitianMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: (self.dim(), self.dim()),
                found: (other.dim(), other.dim()),
            });
        }
        Ok(())
    }

    /// `(1 − s)·self + s·other`, the plain affine combination.
    pub fn lerp(&self, other: &HermitianMatrix, s: f64) -> Self {
        Self::trusted(&self.inner.scale(1.0 - s) + &other.inner.scale(s))
    }
}

fn symmetrize(mut m: Matrix) -> Matrix {
    let n = m.rows();
    for i in 0..n {
        let d = m[(i, i)];
        m[(i, i)] = Complex::new(d.re, 0.0);
        for j in (i + 1)..n {
            let upper = m[(i, j)];
            let lower = m[(j, i)].conj();
            // Keep exactly Hermitian inputs bit-identical.
            let avg = if upper == lower {
                upper
            } else {
                (upper + lower) * 0.5
            };
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    m
}

impl Deref for HermitianMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.inner
    }
}

// Sums and differences of Hermitian matrices stay exactly Hermitian: IEEE
// addition commutes with negation of the imaginary part.
impl Add<&HermitianMatrix> for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::trusted(&self.inner + &rhs.inner)
    }
}

impl Sub<&HermitianMatrix> for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::trusted(&self.inner - &rhs.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizes_and_records_defect() {
        let m = Matrix::from_vec(
            2,
            2,
            vec![
                Complex::new(1.0, 0.5),
                Complex::new(2.0, 1.0),
                Complex::new(2.0, 0.0),
                Complex::new(3.0, 0.0),
            ],
        )
        .unwrap();
        let h = HermitianMatrix::from_matrix(m).unwrap();
        assert_eq!(h[(0, 0)], Complex::new(1.0, 0.0));
        assert_eq!(h[(0, 1)], Complex::new(2.0, 0.5));
        assert_eq!(h[(1, 0)], Complex::new(2.0, -0.5));
        assert!(h.symmetrization_defect() > 0.0);
        assert_eq!(h.hermitian_defect(), 0.0);
    }

    #[test]
    fn exact_hermitian_input_is_untouched() {
        let m = Matrix::from_vec(
            2,
            2,
            vec![
                Complex::new(0.1, 0.0),
                Complex::new(0.3, -0.7),
                Complex::new(0.3, 0.7),
                Complex::new(0.2, 0.0),
            ],
        )
        .unwrap();
        let h = HermitianMatrix::from_matrix(m.clone()).unwrap();
        assert_eq!(h.as_matrix(), &m);
        assert_eq!(h.symmetrization_defect(), 0.0);
    }

    #[test]
    fn rejects_rectangular() {
        let m = Matrix::zeros(2, 3);
        assert!(matches!(
            HermitianMatrix::from_matrix(m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutator_of_diagonals_vanishes() {
        let a = HermitianMatrix::from_diag(&[0.1, 0.2]);
        let b = HermitianMatrix::from_diag(&[0.3, 0.4]);
        assert_eq!(a.commutator_norm(&b).unwrap(), 0.0);
        let c = HermitianMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(a.commutator_norm(&c).unwrap() > 0.1);
        assert!(a.commutator_norm(&HermitianMatrix::identity(3)).is_err());
    }
}
