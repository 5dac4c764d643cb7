//! Weighted operator means on finite-dimensional complex Hilbert spaces and
//! numerical checks of operator Ky Fan type identities and inequalities.
//!
//! Operators are modelled as dense Hermitian matrices. Every matrix function
//! goes through a single cyclic Jacobi eigensolver, and every Loewner-order
//! comparison reduces to the smallest eigenvalue of a gap matrix.
//!
//! * [`linalg`]: complex matrices, the eigensolver, spectral functions and
//!   Loewner predicates.
//! * [`means`]: weighted arithmetic, geometric and harmonic operator means
//!   and the complement map `A ↦ I − A`.
//! * [`identities`]: both sides of every operator identity, and the gap
//!   matrices of every operator inequality, as checkable records.
//! * [`scalar`]: the n-variable scalar means and Ky Fan type inequalities,
//!   used as an independent oracle.
//! * [`gen`]: seeded, bit-reproducible instance generation.

#![forbid(unsafe_code)]

pub mod error;
pub mod gen;
pub mod identities;
pub mod linalg;
pub mod means;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{
    congruence, eigen_hermitian, loewner_classify, loewner_leq, spectral_function, Complex,
    EigenDecomposition, HermitianMatrix, LoewnerClass, LoewnerKind, Matrix, SpectralFn,
    ToleranceConfig,
};
pub use means::{complement, weighted_mean, MeanKind, Weight};
