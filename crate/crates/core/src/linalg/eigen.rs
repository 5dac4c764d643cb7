//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies a real Jacobi rotation to the resulting real
//! symmetric 2×2 block. A pivot is skipped once it is negligible relative to
//! its diagonal entries (`|a_pq| ≤ ε·sqrt(|a_pp·a_qq|)`); the solver stops
//! after the first sweep without rotations. For positive definite input this
//! criterion gives eigenvalues with small relative error even when the
//! spectrum spans many orders of magnitude.

use super::hermitian::HermitianMatrix;
use super::matrix::{Complex, Matrix};
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as the columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
    sweeps: usize,
    off_diagonal: f64,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `‖A‖₂ = max |λᵢ|`.
    pub fn spectral_norm(&self) -> f64 {
        self.min_eigenvalue().abs().max(self.max_eigenvalue().abs())
    }

    /// Number of sweeps performed.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Off-diagonal Frobenius norm left after the final sweep.
    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    /// `U diag(f(λᵢ)) U*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        spectral_synthesis(&self.eigenvectors, &values)
    }

    /// `U diag(λ) U*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        spectral_synthesis(&self.eigenvectors, &self.eigenvalues)
    }
}

/// `U diag(values) U*`, computed on the upper triangle and mirrored so the
/// result is exactly Hermitian.
pub fn spectral_synthesis(basis: &Matrix, values: &[f64]) -> HermitianMatrix {
    let n = basis.rows();
    assert!(
        basis.is_square() && values.len() == n,
        "basis/spectrum size mismatch"
    );
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex::new(0.0, 0.0);
            for (k, &v) in values.iter().enumerate() {
                acc += basis[(i, k)] * basis[(j, k)].conj() * v;
            }
            if i == j {
                out[(i, i)] = Complex::new(acc.re, 0.0);
            } else {
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
    }
    HermitianMatrix::trusted(out)
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                scale = scale.max(a[(i, j)].norm());
            }
        }
    }
    if scale == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += (a[(i, j)] / scale).norm_sqr();
            }
        }
    }
    scale * sum.sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Fails with [`Error::NonConvergence`] if `cfg.eigen_sweep_limit` sweeps
/// leave an off-diagonal Frobenius norm above `cfg.rel_residual_tol·‖A‖_F`.
pub fn eigen_hermitian(a: &HermitianMatrix, cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    cfg.validate()?;
    let n = a.dim();
    let norm = a.frobenius_norm();
    let mut w = a.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let tiny = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * norm);

    let mut sweeps = 0;
    let mut converged = n == 1 || norm == 0.0;
    while !converged && sweeps < cfg.eigen_sweep_limit {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let b = w[(p, q)];
                let r = b.norm();
                let app = w[(p, p)].re;
                let aqq = w[(q, q)].re;
                if r <= tiny || r <= f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
                    w[(p, q)] = Complex::new(0.0, 0.0);
                    w[(q, p)] = Complex::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                rotate(&mut w, &mut v, p, q, b, r);
            }
        }
        converged = !rotated;
    }

    let off = off_diagonal_norm(&w);
    if !converged && off > cfg.rel_residual_tol * norm {
        return Err(Error::NonConvergence {
            sweeps,
            residual: off / norm,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| w[(i, i)].re).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, dst)] = v[(row, src)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        sweeps,
        off_diagonal: off,
    })
}

/// Annihilates `w[p][q]` with `w ← G* w G`, `v ← v G`, where
/// `G = diag(1, e^{−iφ}) · [[c, s], [−s, c]]` on the `(p, q)` plane and
/// `b = r·e^{iφ}` is the pivot.
fn rotate(w: &mut Matrix, v: &mut Matrix, p: usize, q: usize, b: Complex, r: f64) {
    let n = w.rows();
    let phase = b.conj() / r;
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = w[(k, p)];
        let akq = w[(k, q)] * phase;
        let new_kp = akp * c - akq * s;
        let new_kq = akp * s + akq * c;
        w[(k, p)] = new_kp;
        w[(p, k)] = new_kp.conj();
        w[(k, q)] = new_kq;
        w[(q, k)] = new_kq.conj();
    }
    w[(p, p)] = Complex::new(app - t * r, 0.0);
    w[(q, q)] = Complex::new(aqq + t * r, 0.0);
    w[(p, q)] = Complex::new(0.0, 0.0);
    w[(q, p)] = Complex::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)] * phase;
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
}
