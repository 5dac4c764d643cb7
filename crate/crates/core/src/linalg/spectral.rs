use super::eigen::{eigen_hermitian, EigenDecomposition};
use super::hermitian::HermitianMatrix;
use super::matrix::Matrix;
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};

/// Real function applied to a Hermitian matrix through its spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralFn {
    Identity,
    Inverse,
    Sqrt,
    /// `A^{-1/2}`.
    InvSqrt,
    /// `A^t`. Exponent 0 yields `I` and exponent 1 yields `A` without a
    /// decomposition.
    Power(f64),
    Log,
    Exp,
}

enum Domain {
    Any,
    StrictlyPositive,
    Nonnegative,
}

impl SpectralFn {
    fn domain(self) -> Domain {
        match self {
            SpectralFn::Identity | SpectralFn::Exp => Domain::Any,
            SpectralFn::Inverse | SpectralFn::Sqrt | SpectralFn::InvSqrt | SpectralFn::Log => {
                Domain::StrictlyPositive
            }
            SpectralFn::Power(0.0) => Domain::Any,
            SpectralFn::Power(t) if t < 1.0 => Domain::StrictlyPositive,
            SpectralFn::Power(t) if t.fract() == 0.0 => Domain::Any,
            SpectralFn::Power(_) => Domain::Nonnegative,
        }
    }

    fn eval(self, x: f64) -> f64 {
        match self {
            SpectralFn::Identity => x,
            SpectralFn::Inverse => 1.0 / x,
            SpectralFn::Sqrt => x.sqrt(),
            SpectralFn::InvSqrt => 1.0 / x.sqrt(),
            SpectralFn::Power(t) if t.fract() == 0.0 && t.abs() <= i32::MAX as f64 => {
                x.powi(t as i32)
            }
            SpectralFn::Power(t) => x.max(0.0).powf(t),
            SpectralFn::Log => x.ln(),
            SpectralFn::Exp => x.exp(),
        }
    }
}

/// `f(A) = U diag(f(λᵢ)) U*`.
///
/// Inversion, logarithms, square roots and powers below 1 require
/// `λ_min ≥ strict_pos_floor·max(1, ‖A‖₂)`.
pub fn spectral_function(
    a: &HermitianMatrix,
    f: SpectralFn,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    match f {
        SpectralFn::Identity | SpectralFn::Power(1.0) => return Ok(a.clone()),
        SpectralFn::Power(0.0) => return Ok(HermitianMatrix::identity(a.dim())),
        _ => {}
    }
    let eig = eigen_hermitian(a, cfg)?;
    spectral_function_of(&eig, f, cfg)
}

/// [`spectral_function`] on an existing decomposition.
pub fn spectral_function_of(
    eig: &EigenDecomposition,
    f: SpectralFn,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    if let SpectralFn::Power(t) = f {
        if !t.is_finite() {
            return Err(Error::DomainViolation(format!(
                "exponent {t} is not finite"
            )));
        }
        if t == 0.0 {
            return Ok(HermitianMatrix::identity(eig.dim()));
        }
    }
    let norm2 = eig.spectral_norm();
    match f.domain() {
        Domain::Any => {}
        Domain::StrictlyPositive => {
            let floor = cfg.scaled_floor(norm2);
            if eig.min_eigenvalue() < floor {
                return Err(Error::NotStrictlyPositive {
                    eigenvalue: eig.min_eigenvalue(),
                    floor,
                });
            }
        }
        Domain::Nonnegative => {
            let slack = cfg.scaled_slack(norm2);
            if eig.min_eigenvalue() < -slack {
                return Err(Error::DomainViolation(format!(
                    "fractional power of an operator with negative eigenvalue {:e}",
                    eig.min_eigenvalue()
                )));
            }
        }
    }
    let out = eig.map_spectrum(|x| f.eval(x));
    if !out.is_finite() {
        return Err(Error::DomainViolation(format!(
            "{f:?} overflowed on spectrum [{:e}, {:e}]",
            eig.min_eigenvalue(),
            eig.max_eigenvalue()
        )));
    }
    Ok(out)
}

/// `X* A X`, symmetrized; the symmetrization defect is kept on the result.
pub fn congruence(x: &Matrix, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    if x.rows() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: (a.dim(), x.cols()),
            found: x.shape(),
        });
    }
    let ax = a.as_matrix() * x;
    HermitianMatrix::from_matrix(&x.adjoint() * &ax)
}
