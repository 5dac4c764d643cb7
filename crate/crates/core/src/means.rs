//! Weighted operator means and the complement map.
//!
//! For strictly positive `A`, `B` and `λ ∈ [0, 1]`:
//!
//! * arithmetic `A ∇_λ B = (1−λ)A + λB`
//! * geometric `A ♯_λ B = A^{1/2} (A^{−1/2} B A^{−1/2})^λ A^{1/2}`
//! * harmonic `A !_λ B = ((1−λ)A^{−1} + λB^{−1})^{−1}`
//!
//! At `λ = 0` every mean returns `A` exactly and at `λ = 1` it returns `B`;
//! the geometric mean of two bitwise equal operands is that operand.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    congruence, eigen_hermitian, spectral_function, HermitianMatrix, Matrix, SpectralFn,
    ToleranceConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
}

impl MeanKind {
    pub const ALL: [MeanKind; 3] = [
        MeanKind::Arithmetic,
        MeanKind::Geometric,
        MeanKind::Harmonic,
    ];
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
        })
    }
}

impl std::str::FromStr for MeanKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "arithmetic" | "a" => Ok(MeanKind::Arithmetic),
            "geometric" | "g" => Ok(MeanKind::Geometric),
            "harmonic" | "h" => Ok(MeanKind::Harmonic),
            other => Err(format!("unknown mean kind `{other}`")),
        }
    }
}

/// Mean weight `λ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    pub const HALF: Weight = Weight(0.5);

    pub fn new(lambda: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(Weight(lambda))
        } else {
            Err(Error::InvalidWeight(lambda))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 − λ`.
    pub fn complement(self) -> Weight {
        Weight(1.0 - self.0)
    }

    /// `λ(1 − λ)`.
    pub fn spread(self) -> f64 {
        self.0 * (1.0 - self.0)
    }
}

impl TryFrom<f64> for Weight {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Weight::new(v)
    }
}

pub fn weighted_mean(
    kind: MeanKind,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    match kind {
        MeanKind::Arithmetic => arithmetic_mean(a, b, w),
        MeanKind::Geometric => geometric_mean(a, b, w, cfg),
        MeanKind::Harmonic => harmonic_mean(a, b, w, cfg),
    }
}

pub fn arithmetic_mean(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    Ok(match w.value() {
        0.0 => a.clone(),
        1.0 => b.clone(),
        l => a.lerp(b, l),
    })
}

/// Evaluated in the eigenbasis of `A = Q Λ Q*` as
/// `Q Λ^{1/2} (Λ^{−1/2} Q*BQ Λ^{−1/2})^λ Λ^{1/2} Q*`. The diagonal scalings
/// are applied entrywise, which keeps the small eigenvalues of `A` from
/// amplifying roundoff the way a dense `A^{−1/2}` factor would.
pub fn geometric_mean(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    let eig_a = eigen_hermitian(a, cfg)?;
    let floor = cfg.scaled_floor(eig_a.spectral_norm());
    if eig_a.min_eigenvalue() < floor {
        return Err(Error::NotStrictlyPositive {
            eigenvalue: eig_a.min_eigenvalue(),
            floor,
        });
    }
    require_strictly_positive(b, cfg)?;
    if w.value() == 0.0 || a == b {
        return Ok(a.clone());
    }
    if w.value() == 1.0 {
        return Ok(b.clone());
    }
    let q = eig_a.eigenvectors();
    let root: Vec<f64> = eig_a.eigenvalues().iter().map(|l| l.sqrt()).collect();
    let inv_root: Vec<f64> = root.iter().map(|r| 1.0 / r).collect();
    let b_rotated = congruence(q, b)?;
    let inner = HermitianMatrix::from_matrix(diagonal_sandwich(&b_rotated, &inv_root))?;
    let inner_pow = spectral_function(&inner, SpectralFn::Power(w.value()), cfg)?;
    let outer = HermitianMatrix::from_matrix(diagonal_sandwich(&inner_pow, &root))?;
    congruence(&q.adjoint(), &outer)
}

/// `D M D` for `D = diag(d)`.
fn diagonal_sandwich(m: &Matrix, d: &[f64]) -> Matrix {
    let mut out = m.clone();
    for (i, di) in d.iter().enumerate() {
        for (j, dj) in d.iter().enumerate() {
            out[(i, j)] = m[(i, j)] * (di * dj);
        }
    }
    out
}

pub fn harmonic_mean(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    let a_inv = spectral_function(a, SpectralFn::Inverse, cfg)?;
    let b_inv = spectral_function(b, SpectralFn::Inverse, cfg)?;
    match w.value() {
        0.0 => return Ok(a.clone()),
        1.0 => return Ok(b.clone()),
        _ => {}
    }
    spectral_function(&a_inv.lerp(&b_inv, w.value()), SpectralFn::Inverse, cfg)
}

fn require_strictly_positive(a: &HermitianMatrix, cfg: &ToleranceConfig) -> Result<()> {
    let eig = eigen_hermitian(a, cfg)?;
    let floor = cfg.scaled_floor(eig.spectral_norm());
    if eig.min_eigenvalue() < floor {
        return Err(Error::NotStrictlyPositive {
            eigenvalue: eig.min_eigenvalue(),
            floor,
        });
    }
    Ok(())
}

/// `A' = I − A`, defined for `0 < A ≤ ½I` (upper bound within the scaled
/// Loewner slack).
pub fn complement(a: &HermitianMatrix, cfg: &ToleranceConfig) -> Result<HermitianMatrix> {
    check_half_domain(a, cfg)?;
    Ok(&HermitianMatrix::identity(a.dim()) - a)
}

/// Checks `0 < A ≤ ½I`.
pub fn check_half_domain(a: &HermitianMatrix, cfg: &ToleranceConfig) -> Result<()> {
    let eig = eigen_hermitian(a, cfg)?;
    let norm2 = eig.spectral_norm();
    let (lo, hi) = (eig.min_eigenvalue(), eig.max_eigenvalue());
    if lo < cfg.scaled_floor(norm2) {
        return Err(Error::DomainViolation(format!(
            "operator must be strictly positive: min eigenvalue {lo:e}"
        )));
    }
    if hi > 0.5 + cfg.scaled_slack(norm2) {
        return Err(Error::DomainViolation(format!(
            "operator must satisfy A <= I/2: max eigenvalue {hi} exceeds 1/2"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn close(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> bool {
        (a - b).frobenius_norm() <= tol
    }

    #[test]
    fn weight_bounds() {
        assert!(Weight::new(-0.1).is_err());
        assert!(Weight::new(1.1).is_err());
        assert!(Weight::new(f64::NAN).is_err());
        assert_eq!(Weight::new(0.3).unwrap().complement().value(), 0.7);
        assert!((Weight::new(0.3).unwrap().spread() - 0.21).abs() < 1e-16);
    }

    #[test]
    fn arithmetic_endpoint() {
        let a = HermitianMatrix::from_diag(&[0.2, 0.4]);
        let b = HermitianMatrix::from_diag(&[0.7, 0.1]);
        let m = weighted_mean(
            MeanKind::Arithmetic,
            &a,
            &b,
            Weight::new(0.0).unwrap(),
            &cfg(),
        );
        assert_eq!(m.unwrap(), a);
    }

    #[test]
    fn geometric_of_scalars() {
        let a = HermitianMatrix::scalar(2, 0.25);
        let b = HermitianMatrix::scalar(2, 0.16);
        let m = weighted_mean(MeanKind::Geometric, &a, &b, Weight::HALF, &cfg()).unwrap();
        assert!(close(&m, &HermitianMatrix::scalar(2, 0.2), 1e-15));
    }

    #[test]
    fn harmonic_of_scalars() {
        let a = HermitianMatrix::scalar(1, 0.2);
        let b = HermitianMatrix::scalar(1, 0.4);
        let m = weighted_mean(MeanKind::Harmonic, &a, &b, Weight::HALF, &cfg()).unwrap();
        assert!((m[(0, 0)].re - 0.2666667).abs() < 1e-6);
    }

    #[test]
    fn geometric_with_scalar_partner() {
        // B = βI commutes with A, so A ♯ B = √β·A^{1/2}.
        let a = HermitianMatrix::from_real_rows(&[&[0.3, 0.1], &[0.1, 0.3]]).unwrap();
        let b = HermitianMatrix::scalar(2, 0.25);
        let m = weighted_mean(MeanKind::Geometric, &a, &b, Weight::HALF, &cfg()).unwrap();
        assert!((m[(0, 0)].re - 0.269918).abs() < 1e-5);
        assert!((m[(1, 1)].re - 0.269918).abs() < 1e-5);
        assert!((m[(0, 1)].re - 0.046312).abs() < 1e-5);
        assert!((m[(1, 0)].re - 0.046312).abs() < 1e-5);
    }

    #[test]
    fn means_reject_nonpositive_operands() {
        let good = HermitianMatrix::from_diag(&[0.2, 0.4]);
        let bad = HermitianMatrix::from_diag(&[0.2, -0.4]);
        for kind in [MeanKind::Geometric, MeanKind::Harmonic] {
            for (x, y) in [(&good, &bad), (&bad, &good)] {
                let r = weighted_mean(kind, x, y, Weight::HALF, &cfg());
                assert!(
                    matches!(r, Err(Error::NotStrictlyPositive { .. })),
                    "{kind} {r:?}"
                );
            }
        }
        // The arithmetic mean only needs Hermitian operands.
        assert!(weighted_mean(MeanKind::Arithmetic, &good, &bad, Weight::HALF, &cfg()).is_ok());
        let other = HermitianMatrix::identity(3);
        for kind in MeanKind::ALL {
            assert!(matches!(
                weighted_mean(kind, &good, &other, Weight::HALF, &cfg()),
                Err(Error::DimensionMismatch { .. })
            ));
        }
    }

    #[test]
    fn harmonic_endpoint() {
        let a = HermitianMatrix::from_real_rows(&[&[0.3, 0.1], &[0.1, 0.3]]).unwrap();
        let b = HermitianMatrix::from_diag(&[0.7, 0.1]);
        let m = weighted_mean(
            MeanKind::Harmonic,
            &a,
            &b,
            Weight::new(1.0).unwrap(),
            &cfg(),
        );
        assert_eq!(m.unwrap(), b);
    }

    #[test]
    fn complement_examples() {
        let half = HermitianMatrix::scalar(2, 0.5);
        assert_eq!(complement(&half, &cfg()).unwrap(), half);
        let a = HermitianMatrix::from_diag(&[0.2, 0.4]);
        let c = complement(&a, &cfg()).unwrap();
        assert!(close(&c, &HermitianMatrix::from_diag(&[0.8, 0.6]), 1e-16));
        match complement(&HermitianMatrix::from_diag(&[0.2, 0.6]), &cfg()) {
            Err(Error::DomainViolation(msg)) => assert!(msg.contains("0.6"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            complement(&HermitianMatrix::from_diag(&[0.0, 0.3]), &cfg()),
            Err(Error::DomainViolation(_))
        ));
        // Boundary within slack.
        assert!(complement(&HermitianMatrix::from_diag(&[0.2, 0.5 + 1e-12]), &cfg()).is_ok());
    }

    #[test]
    fn kind_parses() {
        assert_eq!(
            "Geometric".parse::<MeanKind>().unwrap(),
            MeanKind::Geometric
        );
        assert!("median".parse::<MeanKind>().is_err());
        assert_eq!(MeanKind::Harmonic.to_string(), "harmonic");
    }
}
