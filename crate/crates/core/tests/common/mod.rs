#![allow(dead_code)]

use opmeans_core::gen::{random_spd, random_unitary, RngState, SpectrumSpec};
use opmeans_core::linalg::{spectral_synthesis, Complex, HermitianMatrix, Matrix};

pub fn rel_diff(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).frobenius_norm() / a.frobenius_norm().max(1.0)
}

/// Random Hermitian (indefinite) matrix with Gaussian entries of the given scale.
pub fn random_hermitian(dim: usize, scale: f64, rng: &mut RngState) -> HermitianMatrix {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = Complex::new(rng.normal(), rng.normal()) * scale;
        }
    }
    HermitianMatrix::from_matrix(m).unwrap()
}

pub fn random_matrix(dim: usize, rng: &mut RngState) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = Complex::new(rng.normal(), rng.normal());
        }
    }
    m
}

pub fn random_psd_rank_deficient(dim: usize, rng: &mut RngState) -> HermitianMatrix {
    let mut values: Vec<f64> = (0..dim).map(|_| rng.uniform(0.0, 1.0)).collect();
    values[0] = 0.0;
    spectral_synthesis(&random_unitary(dim, rng), &values)
}

pub fn spd(dim: usize, lo: f64, hi: f64, rng: &mut RngState) -> HermitianMatrix {
    random_spd(dim, &SpectrumSpec::log_uniform(lo, hi).unwrap(), rng)
}

/// `U* M U`, the representation of `M` in the basis `U`.
pub fn in_basis(basis: &Matrix, m: &Matrix) -> Matrix {
    &(&basis.adjoint() * m) * basis
}

pub fn lambda_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}
