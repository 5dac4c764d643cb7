//! Seeded generation of test instances.

mod rng;

pub use rng::{RngState, STREAM_VERSION};

use crate::error::{Error, Result};
use crate::linalg::{spectral_synthesis, Complex, HermitianMatrix, Matrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumDistribution {
    Uniform,
    LogUniform,
    /// Eigenvalues drawn around `k` centres sampled uniformly in the range;
    /// each eigenvalue equals one of the centres.
    Clustered(usize),
}

/// Range and distribution of sampled eigenvalues, `0 < lo ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSpec {
    lo: f64,
    hi: f64,
    distribution: SpectrumDistribution,
}

impl SpectrumSpec {
    pub fn new(lo: f64, hi: f64, distribution: SpectrumDistribution) -> Result<Self> {
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidSpectrum(format!(
                "need 0 < lo <= hi, got [{lo}, {hi}]"
            )));
        }
        if distribution == SpectrumDistribution::Clustered(0) {
            return Err(Error::InvalidSpectrum(
                "clustered spectrum needs k >= 1".into(),
            ));
        }
        Ok(Self {
            lo,
            hi,
            distribution,
        })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, SpectrumDistribution::Uniform)
    }

    pub fn log_uniform(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, SpectrumDistribution::LogUniform)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn distribution(&self) -> SpectrumDistribution {
        self.distribution
    }

    /// Samples `dim` eigenvalues in `[lo, hi]`.
    pub fn sample(&self, dim: usize, rng: &mut RngState) -> Vec<f64> {
        let (lo, hi) = (self.lo, self.hi);
        match self.distribution {
            SpectrumDistribution::Uniform => (0..dim).map(|_| rng.uniform(lo, hi)).collect(),
            SpectrumDistribution::LogUniform => {
                let (llo, lhi) = (libm::log(lo), libm::log(hi));
                (0..dim)
                    .map(|_| libm::exp(rng.uniform(llo, lhi)).clamp(lo, hi))
                    .collect()
            }
            SpectrumDistribution::Clustered(k) => {
                let centres: Vec<f64> = (0..k).map(|_| rng.uniform(lo, hi)).collect();
                (0..dim).map(|_| centres[rng.below(k)]).collect()
            }
        }
    }
}

/// Unitary matrix from the QR factorization of a complex Gaussian matrix,
/// with the diagonal of R made real positive.
pub fn random_unitary(dim: usize, rng: &mut RngState) -> Matrix {
    assert!(dim > 0, "dimension must be positive");
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols: Vec<Vec<Complex>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Complex::new(rng.normal(), rng.normal()) * sqrt_half)
                .collect()
        })
        .collect();
    // Modified Gram–Schmidt, applied twice for orthogonality at roundoff level.
    // The normalizing divisor is the real positive column norm, which fixes
    // the phase convention of R.
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let q = &done[i];
                let proj: Complex = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (x, qi) in rest[0].iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut u = Matrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// A generated operator with the spectrum and basis it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledOperator {
    pub matrix: HermitianMatrix,
    pub eigenvalues: Vec<f64>,
    pub basis: Matrix,
}

/// `U diag(λ) U*`; a constant spectrum yields the exact scalar matrix.
fn synthesize(basis: &Matrix, eigenvalues: &[f64]) -> HermitianMatrix {
    match eigenvalues.split_first() {
        Some((&first, rest)) if rest.iter().all(|&l| l == first) => {
            HermitianMatrix::scalar(eigenvalues.len(), first)
        }
        _ => spectral_synthesis(basis, eigenvalues),
    }
}

pub fn random_spd_sampled(dim: usize, spec: &SpectrumSpec, rng: &mut RngState) -> SampledOperator {
    let eigenvalues = spec.sample(dim, rng);
    let basis = random_unitary(dim, rng);
    SampledOperator {
        matrix: synthesize(&basis, &eigenvalues),
        eigenvalues,
        basis,
    }
}

/// Random positive definite matrix with eigenvalues drawn from `spec` in a
/// random eigenbasis.
pub fn random_spd(dim: usize, spec: &SpectrumSpec, rng: &mut RngState) -> HermitianMatrix {
    random_spd_sampled(dim, spec, rng).matrix
}

/// Two operators diagonal in one shared random basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutingPair {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub basis: Matrix,
    pub eigenvalues_a: Vec<f64>,
    pub eigenvalues_b: Vec<f64>,
}

impl CommutingPair {
    pub fn into_pair(self) -> (HermitianMatrix, HermitianMatrix) {
        (self.a, self.b)
    }
}

pub fn random_commuting_pair(
    dim: usize,
    spec_a: &SpectrumSpec,
    spec_b: &SpectrumSpec,
    rng: &mut RngState,
) -> CommutingPair {
    let eigenvalues_a = spec_a.sample(dim, rng);
    let eigenvalues_b = spec_b.sample(dim, rng);
    let basis = random_unitary(dim, rng);
    CommutingPair {
        a: synthesize(&basis, &eigenvalues_a),
        b: synthesize(&basis, &eigenvalues_b),
        basis,
        eigenvalues_a,
        eigenvalues_b,
    }
}

/// Labelled adversarial pair; every member satisfies `0 < A, B ≤ ½I`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCase {
    pub label: &'static str,
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
}

/// Seed of the fixed stream behind [`edge_case_suite`].
pub const EDGE_CASE_SEED: u64 = 0x0ED6_E5EE_D000_0001;

/// Fixed adversarial pairs for dimension `dim`: equal operands, nearly
/// equal operands, spectra touching ½, spectra reaching down to 1e-6 and,
/// for `dim ≥ 2`, strongly noncommuting rotations.
pub fn edge_case_suite(dim: usize) -> Vec<EdgeCase> {
    assert!(dim > 0, "dimension must be positive");
    let mut rng = RngState::new(EDGE_CASE_SEED).substream(dim as u64);
    let inner = SpectrumSpec::uniform(0.05, 0.4).expect("valid spectrum");
    let unit = SpectrumSpec::uniform(1e-3, 1.0).expect("valid spectrum");
    let half = HermitianMatrix::scalar(dim, 0.5);
    let mut cases = vec![EdgeCase {
        label: "half_identity_pair",
        a: half.clone(),
        b: half.clone(),
    }];

    let a = random_spd(dim, &inner, &mut rng);
    cases.push(EdgeCase {
        label: "equal_operands",
        a: a.clone(),
        b: a.clone(),
    });

    let p = random_spd(dim, &unit, &mut rng);
    cases.push(EdgeCase {
        label: "near_equal_operands",
        b: &a + &p.scale(1e-8),
        a,
    });

    let touching = |rng: &mut RngState, low: f64| {
        let mut values = SpectrumSpec::uniform(low, 0.5)
            .expect("valid spectrum")
            .sample(dim, rng);
        values[0] = 0.5;
        if dim > 1 {
            values[dim - 1] = low;
        }
        synthesize(&random_unitary(dim, rng), &values)
    };
    cases.push(EdgeCase {
        label: "half_boundary_spectra",
        a: touching(&mut rng, 0.1),
        b: touching(&mut rng, 0.2),
    });
    cases.push(EdgeCase {
        label: "half_boundary_vs_half_identity",
        a: touching(&mut rng, 0.05),
        b: half.clone(),
    });
    cases.push(EdgeCase {
        label: "tiny_min_eigenvalue",
        a: touching(&mut rng, 1e-6),
        b: touching(&mut rng, 1e-6),
    });
    cases.push(EdgeCase {
        label: "tiny_scalar_vs_half",
        a: HermitianMatrix::scalar(dim, 1e-6),
        b: half,
    });

    if dim >= 2 {
        // diag(0.05, 0.5, 0.05, …) against its rotation by π/4 in each
        // coordinate plane (0,1), (2,3), …
        let values: Vec<f64> = (0..dim)
            .map(|i| if i % 2 == 0 { 0.05 } else { 0.5 })
            .collect();
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let mut rot = Matrix::identity(dim);
        for k in (0..dim - 1).step_by(2) {
            rot[(k, k)] = Complex::new(c, 0.0);
            rot[(k, k + 1)] = Complex::new(-c, 0.0);
            rot[(k + 1, k)] = Complex::new(c, 0.0);
            rot[(k + 1, k + 1)] = Complex::new(c, 0.0);
        }
        cases.push(EdgeCase {
            label: "rotated_noncommuting",
            a: HermitianMatrix::from_diag(&values),
            b: spectral_synthesis(&rot, &values),
        });
        let u = random_unitary(dim, &mut rng);
        let mut spread = vec![0.5; dim];
        spread[0] = 1e-3;
        let mut rev = spread.clone();
        rev.reverse();
        cases.push(EdgeCase {
            label: "random_basis_noncommuting",
            a: HermitianMatrix::from_diag(&spread),
            b: spectral_synthesis(&u, &rev),
        });
    }
    cases
}
