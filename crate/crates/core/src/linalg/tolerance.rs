use crate::error::{Error, Result};

/// Tolerances threaded through every verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative residual accepted for identity checks and for the
    /// eigensolver's off-diagonal criterion.
    pub rel_residual_tol: f64,
    /// Loewner slack; scaled by `max(1, ‖A‖₂)` before use.
    pub psd_slack: f64,
    /// Smallest admissible eigenvalue, relative to `max(1, ‖A‖₂)`, before
    /// inversion or a fractional power.
    pub strict_pos_floor: f64,
    pub eigen_sweep_limit: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rel_residual_tol: 1e-10,
            psd_slack: 1e-10,
            strict_pos_floor: 1e-12,
            eigen_sweep_limit: 50,
        }
    }
}

impl ToleranceConfig {
    pub fn with_rel_residual_tol(mut self, tol: f64) -> Self {
        self.rel_residual_tol = tol;
        self
    }

    pub fn with_psd_slack(mut self, slack: f64) -> Self {
        self.psd_slack = slack;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("rel_residual_tol", self.rel_residual_tol)?;
        positive("psd_slack", self.psd_slack)?;
        positive("strict_pos_floor", self.strict_pos_floor)?;
        if self.eigen_sweep_limit == 0 {
            return Err(Error::InvalidConfig(
                "eigen_sweep_limit must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Loewner slack for an operator of spectral norm `norm2`.
    pub fn scaled_slack(&self, norm2: f64) -> f64 {
        self.psd_slack * norm2.max(1.0)
    }

    /// Strict-positivity floor for an operator of spectral norm `norm2`.
    pub fn scaled_floor(&self, norm2: f64) -> f64 {
        self.strict_pos_floor * norm2.max(1.0)
    }
}
