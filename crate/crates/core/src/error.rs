use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix dimensions must be positive")]
    EmptyMatrix,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// The Jacobi sweep cap was reached before the off-diagonal criterion.
    /// `residual` is the achieved off-diagonal Frobenius norm relative to
    /// the Frobenius norm of the input.
    #[error("eigensolver did not converge after {sweeps} sweeps (relative off-diagonal residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error(
        "operator is not strictly positive: eigenvalue {eigenvalue:e} is below the floor {floor:e}"
    )]
    NotStrictlyPositive { eigenvalue: f64, floor: f64 },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("operators do not commute: ||AB - BA||_F = {commutator:e} exceeds {bound:e}")]
    NotCommuting { commutator: f64, bound: f64 },

    #[error("primed means unavailable: x_{index} = {value} exceeds 1/2")]
    PrimedUnavailable { index: usize, value: f64 },

    #[error("weight {0} must lie in [0, 1]")]
    InvalidWeight(f64),

    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid spectrum specification: {0}")]
    InvalidSpectrum(String),
}
