use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar field of every matrix in this crate.
pub type Complex = Complex64;

/// Dense row-major complex matrix with finite entries.
///
/// Arithmetic operators panic on shape mismatch, like most dense matrix
/// types; use [`Matrix::checked_mul`] where the shapes come from input.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (data.len(), 1),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                expected: (n_rows, n_cols),
                found: (n_rows, bad.len()),
            });
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex::new(x, 0.0)))
            .collect();
        Self::from_vec(n_rows, n_cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.cols, rhs.cols),
                found: rhs.shape(),
            });
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(Complex, Complex) -> Complex) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        // Scaled accumulation keeps tiny and huge entries from under/overflowing.
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let sum: f64 = self.data.iter().map(|z| (z / scale).norm_sqr()).sum();
        scale * sum.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm of `self − self*`, halved: the distance to the
    /// Hermitian part.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self - &self.adjoint()).frobenius_norm() * 0.5
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &Matrix {
    type Output = Matrix;

    fn mul(self, s: f64) -> Matrix {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = Matrix::from_vec(
            2,
            2,
            vec![c(1.0, 1.0), c(0.0, 2.0), c(3.0, 0.0), c(-1.0, 0.0)],
        )
        .unwrap();
        let b = Matrix::from_vec(2, 1, vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let p = &a * &b;
        assert_eq!(p.shape(), (2, 1));
        // (1+i)·1 + 2i·i = -1 + i ; 3·1 + (-1)·i = 3 - i
        assert_eq!(p[(0, 0)], c(-1.0, 1.0));
        assert_eq!(p[(1, 0)], c(3.0, -1.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = Matrix::from_vec(1, 2, vec![c(1.0, 2.0), c(3.0, -4.0)]).unwrap();
        let h = a.adjoint();
        assert_eq!(h.shape(), (2, 1));
        assert_eq!(h[(0, 0)], c(1.0, -2.0));
        assert_eq!(h[(1, 0)], c(3.0, 4.0));
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        let err = Matrix::from_vec(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
        assert!(Matrix::from_vec(2, 2, vec![c(1.0, 0.0)]).is_err());
        assert_eq!(
            Matrix::from_vec(0, 2, vec![]).unwrap_err(),
            Error::EmptyMatrix
        );
        assert!(Matrix::from_real_rows(&[&[1.0, 2.0], &[3.0]]).is_err());
        let a = Matrix::identity(2);
        let b = Matrix::identity(3);
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn frobenius_norm_is_scale_safe() {
        let m = Matrix::from_real_rows(&[&[3e200, 4e200]]).unwrap();
        assert!((m.frobenius_norm() / 5e200 - 1.0).abs() < 1e-15);
        let m = Matrix::from_real_rows(&[&[3e-200, 4e-200]]).unwrap();
        assert!((m.frobenius_norm() / 5e-200 - 1.0).abs() < 1e-15);
        assert_eq!(Matrix::zeros(2, 2).frobenius_norm(), 0.0);
    }

    #[test]
    fn hermitian_defect_measures_asymmetry() {
        let m = Matrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert_eq!(m.hermitian_defect(), 0.0);
        let m = Matrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!((m.hermitian_defect() - 2f64.sqrt()).abs() < 1e-15);
    }
}
