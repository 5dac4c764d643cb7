use opmeans_core::gen::{
    edge_case_suite, random_commuting_pair, random_spd_sampled, random_unitary, RngState,
    SpectrumDistribution, SpectrumSpec,
};
use opmeans_core::linalg::{eigen_hermitian, Matrix, ToleranceConfig};
use opmeans_core::means::check_half_domain;

#[test]
fn generation_is_deterministic() {
    let spec = SpectrumSpec::log_uniform(1e-3, 0.5).unwrap();
    for seed in [0, 1, 42, u64::MAX] {
        let a = random_spd_sampled(5, &spec, &mut RngState::new(seed));
        let b = random_spd_sampled(5, &spec, &mut RngState::new(seed));
        assert_eq!(a, b);
        let root = RngState::new(seed);
        assert_eq!(
            random_commuting_pair(3, &spec, &spec, &mut root.substream(7)),
            random_commuting_pair(3, &spec, &spec, &mut root.substream(7))
        );
    }
    assert_eq!(edge_case_suite(4), edge_case_suite(4));
}

#[test]
fn sampled_spectrum_is_recovered() {
    let cfg = ToleranceConfig::default();
    let mut rng = RngState::new(21);
    let specs = [
        SpectrumSpec::uniform(1e-2, 0.5).unwrap(),
        SpectrumSpec::log_uniform(1e-3, 1e2).unwrap(),
        SpectrumSpec::new(1e-2, 0.5, SpectrumDistribution::Clustered(2)).unwrap(),
    ];
    for trial in 0..600 {
        let spec = &specs[trial % specs.len()];
        let dim = 1 + trial % 8;
        let op = random_spd_sampled(dim, spec, &mut rng);
        let mut expected = op.eigenvalues.clone();
        expected.sort_by(f64::total_cmp);
        assert!(expected.iter().all(|&l| l >= spec.lo() && l <= spec.hi()));
        let eig = eigen_hermitian(&op.matrix, &cfg).unwrap();
        for (got, want) in eig.eigenvalues().iter().zip(&expected) {
            assert!(
                (got - want).abs() <= 1e-10 * want.abs().max(1.0),
                "trial {trial}"
            );
        }
    }
}

#[test]
fn unitaries_are_unitary_and_haar_like() {
    let mut rng = RngState::new(31);
    let mut acc = 0.0;
    let n = 10_000;
    for _ in 0..n {
        let u = random_unitary(2, &mut rng);
        let err = (&(&u.adjoint() * &u) - &Matrix::identity(2)).frobenius_norm();
        assert!(err <= 1e-14);
        acc += u[(0, 0)].norm_sqr();
    }
    let mean = acc / n as f64;
    assert!((mean - 0.5).abs() <= 0.02, "mean |U11|² = {mean}");
}

#[test]
fn edge_cases_stay_in_half_domain() {
    let cfg = ToleranceConfig::default();
    for dim in 1..=8 {
        let cases = edge_case_suite(dim);
        assert!(cases.len() >= if dim >= 2 { 9 } else { 7 });
        for c in &cases {
            check_half_domain(&c.a, &cfg).unwrap_or_else(|e| panic!("{} a: {e}", c.label));
            check_half_domain(&c.b, &cfg).unwrap_or_else(|e| panic!("{} b: {e}", c.label));
        }
    }
}
