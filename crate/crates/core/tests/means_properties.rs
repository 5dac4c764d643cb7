mod common;

use common::{lambda_grid, random_matrix, rel_diff, spd};
use opmeans_core::gen::RngState;
use opmeans_core::linalg::{congruence, loewner_leq, HermitianMatrix, ToleranceConfig};
use opmeans_core::means::{weighted_mean, MeanKind, Weight};
use opmeans_core::scalar::{scalar_means, ScalarSample};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn endpoints_return_operands() {
    let mut rng = RngState::new(1);
    for trial in 0..200 {
        let dim = 1 + trial % 8;
        let a = spd(dim, 1e-2, 1e2, &mut rng);
        let b = spd(dim, 1e-2, 1e2, &mut rng);
        for kind in MeanKind::ALL {
            let m0 = weighted_mean(kind, &a, &b, Weight::new(0.0).unwrap(), &cfg()).unwrap();
            let m1 = weighted_mean(kind, &a, &b, Weight::new(1.0).unwrap(), &cfg()).unwrap();
            assert!(rel_diff(&a, &m0) <= 1e-10, "{kind} trial {trial}");
            assert!(rel_diff(&b, &m1) <= 1e-10, "{kind} trial {trial}");
        }
    }
}

#[test]
fn weight_reversal() {
    let mut rng = RngState::new(2);
    for trial in 0..60 {
        let dim = 1 + trial % 6;
        let a = spd(dim, 1e-1, 1e1, &mut rng);
        let b = spd(dim, 1e-1, 1e1, &mut rng);
        for kind in MeanKind::ALL {
            for l in lambda_grid() {
                let w = Weight::new(l).unwrap();
                let ab = weighted_mean(kind, &a, &b, w, &cfg()).unwrap();
                let ba = weighted_mean(kind, &b, &a, w.complement(), &cfg()).unwrap();
                assert!(rel_diff(&ab, &ba) <= 1e-9, "{kind} λ={l} trial {trial}");
            }
        }
    }
}

#[test]
fn harmonic_geometric_arithmetic_ordering() {
    let mut rng = RngState::new(3);
    for trial in 0..150 {
        let dim = 1 + trial % 8;
        let a = spd(dim, 1e-2, 1e1, &mut rng);
        let b = spd(dim, 1e-2, 1e1, &mut rng);
        for l in [0.1, 0.3, 0.5, 0.9] {
            let w = Weight::new(l).unwrap();
            let h = weighted_mean(MeanKind::Harmonic, &a, &b, w, &cfg()).unwrap();
            let g = weighted_mean(MeanKind::Geometric, &a, &b, w, &cfg()).unwrap();
            let m = weighted_mean(MeanKind::Arithmetic, &a, &b, w, &cfg()).unwrap();
            assert!(
                loewner_leq(&h, &g, &cfg()).unwrap().holds,
                "H ≤ G, trial {trial}"
            );
            assert!(
                loewner_leq(&g, &m, &cfg()).unwrap().holds,
                "G ≤ A, trial {trial}"
            );
        }
    }
}

#[test]
fn congruence_invariance() {
    let mut rng = RngState::new(4);
    for trial in 0..100 {
        let dim = 1 + trial % 6;
        let a = spd(dim, 1e-1, 1e1, &mut rng);
        let b = spd(dim, 1e-1, 1e1, &mut rng);
        let x = random_matrix(dim, &mut rng);
        let xa = congruence(&x, &a).unwrap();
        let xb = congruence(&x, &b).unwrap();
        // Skip badly conditioned X: the invariance is exact but roundoff is not.
        let cond = {
            let g = congruence(&x, &HermitianMatrix::identity(dim)).unwrap();
            let e = opmeans_core::eigen_hermitian(&g, &cfg()).unwrap();
            (e.max_eigenvalue() / e.min_eigenvalue()).sqrt()
        };
        if cond > 1e3 {
            continue;
        }
        for kind in MeanKind::ALL {
            let w = Weight::new(0.3).unwrap();
            let lhs = congruence(&x, &weighted_mean(kind, &a, &b, w, &cfg()).unwrap()).unwrap();
            let rhs = weighted_mean(kind, &xa, &xb, w, &cfg()).unwrap();
            assert!(rel_diff(&lhs, &rhs) <= 1e-8, "{kind} trial {trial}");
        }
    }
}

#[test]
fn scalar_reduction() {
    let mut rng = RngState::new(5);
    for _ in 0..200 {
        let x1 = rng.uniform(1e-3, 1.0);
        let x2 = rng.uniform(1e-3, 1.0);
        let dim = 1 + rng.below(4);
        for l in lambda_grid() {
            let means = scalar_means(&ScalarSample::pair(x1, x2, l).unwrap()).plain;
            let a = HermitianMatrix::scalar(dim, x1);
            let b = HermitianMatrix::scalar(dim, x2);
            let w = Weight::new(l).unwrap();
            for (kind, expected) in [
                (MeanKind::Arithmetic, means.arithmetic),
                (MeanKind::Geometric, means.geometric),
                (MeanKind::Harmonic, means.harmonic),
            ] {
                let m = weighted_mean(kind, &a, &b, w, &cfg()).unwrap();
                let target = HermitianMatrix::scalar(dim, expected);
                assert!((&m - &target).frobenius_norm() <= 1e-12, "{kind} λ={l}");
            }
        }
    }
}
