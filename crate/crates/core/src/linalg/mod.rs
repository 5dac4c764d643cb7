//! Dense complex linear algebra: the numerical substrate for the operator
//! means and the identity checks.

mod eigen;
mod hermitian;
mod loewner;
mod matrix;
mod spectral;
mod tolerance;

pub use eigen::{eigen_hermitian, spectral_synthesis, EigenDecomposition};
pub use hermitian::HermitianMatrix;
pub use loewner::{loewner_classify, loewner_leq, LoewnerClass, LoewnerComparison, LoewnerKind};
pub use matrix::{Complex, Matrix};
pub use spectral::{congruence, spectral_function, spectral_function_of, SpectralFn};
pub use tolerance::ToleranceConfig;
