use super::eigen::eigen_hermitian;
use super::hermitian::HermitianMatrix;
use super::tolerance::ToleranceConfig;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoewnerKind {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NegativeSemidefinite,
    NegativeDefinite,
    Zero,
}

/// Position of a Hermitian matrix relative to zero in the Loewner order,
/// with the extreme eigenvalues that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerClass {
    pub kind: LoewnerKind,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// `psd_slack·max(1, ‖A‖₂)`.
    pub slack: f64,
}

impl LoewnerClass {
    /// `A ≥ 0` within slack.
    pub fn is_psd(&self) -> bool {
        matches!(
            self.kind,
            LoewnerKind::PositiveDefinite | LoewnerKind::PositiveSemidefinite | LoewnerKind::Zero
        )
    }
}

pub fn loewner_classify(a: &HermitianMatrix, cfg: &ToleranceConfig) -> Result<LoewnerClass> {
    let eig = eigen_hermitian(a, cfg)?;
    let (lo, hi) = (eig.min_eigenvalue(), eig.max_eigenvalue());
    let slack = cfg.scaled_slack(eig.spectral_norm());
    let kind = if a.frobenius_norm() <= slack {
        LoewnerKind::Zero
    } else if lo >= slack {
        LoewnerKind::PositiveDefinite
    } else if lo >= -slack {
        LoewnerKind::PositiveSemidefinite
    } else if hi <= -slack {
        LoewnerKind::NegativeDefinite
    } else if hi <= slack {
        LoewnerKind::NegativeSemidefinite
    } else {
        LoewnerKind::Indefinite
    };
    Ok(LoewnerClass {
        kind,
        min_eigenvalue: lo,
        max_eigenvalue: hi,
        slack,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerComparison {
    pub holds: bool,
    /// Smallest eigenvalue of `B − A`.
    pub min_eigenvalue: f64,
}

/// `A ≤ B` iff `B − A ≥ 0` within slack.
pub fn loewner_leq(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    cfg: &ToleranceConfig,
) -> Result<LoewnerComparison> {
    a.check_same_dim(b)?;
    let class = loewner_classify(&(b - a), cfg)?;
    Ok(LoewnerComparison {
        holds: class.is_psd(),
        min_eigenvalue: class.min_eigenvalue,
    })
}
