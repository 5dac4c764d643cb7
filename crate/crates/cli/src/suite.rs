//! Seeded verification sweeps and the noncommutative fuzzer.

use std::time::Instant;

use opmeans_core::gen::{
    edge_case_suite, random_commuting_pair, random_spd, random_spd_sampled, RngState, SpectrumSpec,
};
use opmeans_core::identities::{
    chain_identity, commutative_identity, commutative_kyfan_gap, kyfan_gap, lemma_identity,
    noncommutative_gap_surrogate, require_commuting, theorem_identity, ChainPart,
    CommutativeGapPart, CommutativePart, GapCheck, IdentityCheck, Part,
};
use opmeans_core::linalg::{HermitianMatrix, Matrix, ToleranceConfig};
use opmeans_core::means::{complement, weighted_mean, MeanKind, Weight};
use opmeans_core::scalar::{scalar_means, Means, ScalarSample};
use rayon::prelude::*;

use crate::matrix_file::{print_matrices, NamedMatrix};
use crate::report::{CheckKind, Finding, Outcome, ReportBuilder, RunReport};

/// Tolerance of operator results against the eigenvalue-wise scalar oracle.
pub const CROSS_PATH_TOL: f64 = 1e-10;

/// Spectrum of `T` in the single-operator identities.
pub fn lemma_spectrum() -> SpectrumSpec {
    SpectrumSpec::log_uniform(1e-2, 1e2).expect("valid range")
}

/// Spectrum of the unrestricted pairs in the two-operator identities.
pub fn general_spectrum() -> SpectrumSpec {
    SpectrumSpec::log_uniform(1e-2, 1e2).expect("valid range")
}

/// Spectrum of pairs with `0 < A, B ≤ ½I`.
pub fn half_spectrum() -> SpectrumSpec {
    SpectrumSpec::log_uniform(1e-3, 0.5).expect("valid range")
}

pub fn default_lambda_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

pub const DEFAULT_DIMS: [usize; 5] = [1, 2, 3, 4, 8];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub lambda_grid: Vec<f64>,
    /// Relative residual tolerance of the identity checks.
    pub tol: f64,
    pub max_findings: usize,
    pub timing: bool,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            dims: DEFAULT_DIMS.to_vec(),
            trials: 100,
            lambda_grid: default_lambda_grid(),
            tol: 1e-9,
            max_findings: 20,
            timing: false,
        }
    }

    fn tolerances(&self) -> ToleranceConfig {
        ToleranceConfig::default().with_rel_residual_tol(self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Trial(usize),
    Edge(&'static str),
}

/// Shared eigenbasis `U` with `A = U diag(a) U*` and `B = U diag(b) U*`.
#[derive(Debug, Clone)]
struct Spectra {
    basis: Matrix,
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Debug, Clone)]
struct HalfPair {
    a: HermitianMatrix,
    b: HermitianMatrix,
    commuting: bool,
    spectra: Option<Spectra>,
}

#[derive(Debug, Clone)]
struct Instance {
    dim: usize,
    origin: Origin,
    t: HermitianMatrix,
    general: (HermitianMatrix, HermitianMatrix),
    half: Vec<HalfPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Operands {
    Single,
    General,
    Half(usize),
}

fn instance_stream(seed: u64, dim: usize, trial: usize) -> RngState {
    RngState::new(seed).substream(((dim as u64) << 32) | trial as u64)
}

fn scalar_spectra(a: &HermitianMatrix, b: &HermitianMatrix) -> Spectra {
    Spectra {
        basis: Matrix::identity(1),
        a: vec![a[(0, 0)].re],
        b: vec![b[(0, 0)].re],
    }
}

fn random_instance(seed: u64, dim: usize, trial: usize) -> Instance {
    let mut rng = instance_stream(seed, dim, trial);
    let t = random_spd(dim, &lemma_spectrum(), &mut rng);
    let general = (
        random_spd(dim, &general_spectrum(), &mut rng),
        random_spd(dim, &general_spectrum(), &mut rng),
    );
    let a = random_spd_sampled(dim, &half_spectrum(), &mut rng).matrix;
    let b = random_spd_sampled(dim, &half_spectrum(), &mut rng).matrix;
    let spectra = (dim == 1).then(|| scalar_spectra(&a, &b));
    let plain = HalfPair {
        a,
        b,
        commuting: dim == 1,
        spectra,
    };
    let pair = random_commuting_pair(dim, &half_spectrum(), &half_spectrum(), &mut rng);
    let commuting = HalfPair {
        spectra: Some(Spectra {
            basis: pair.basis,
            a: pair.eigenvalues_a,
            b: pair.eigenvalues_b,
        }),
        a: pair.a,
        b: pair.b,
        commuting: true,
    };
    Instance {
        dim,
        origin: Origin::Trial(trial),
        t,
        general,
        half: vec![plain, commuting],
    }
}

fn edge_instances(dim: usize) -> Vec<Instance> {
    edge_case_suite(dim)
        .into_iter()
        .map(|c| {
            let spectra = (dim == 1).then(|| scalar_spectra(&c.a, &c.b));
            Instance {
                dim,
                origin: Origin::Edge(c.label),
                t: c.a.clone(),
                general: (c.a.clone(), c.b.clone()),
                half: vec![HalfPair {
                    commuting: require_commuting(&c.a, &c.b).is_ok(),
                    spectra,
                    a: c.a,
                    b: c.b,
                }],
            }
        })
        .collect()
}

fn identity_outcome(check: &'static str, r: opmeans_core::Result<IdentityCheck>) -> Outcome {
    match r {
        Ok(c) => Outcome {
            check,
            kind: CheckKind::Identity,
            value: Some(c.rel_residual),
            pass: c.pass,
            error: None,
        },
        Err(e) => failed(check, CheckKind::Identity, e),
    }
}

fn gap_outcome(check: &'static str, r: &opmeans_core::Result<GapCheck>) -> Outcome {
    match r {
        Ok(c) => Outcome {
            check,
            kind: CheckKind::Inequality,
            value: Some(c.margin),
            pass: c.pass,
            error: None,
        },
        Err(e) => failed(check, CheckKind::Inequality, e.clone()),
    }
}

fn failed(check: &'static str, kind: CheckKind, e: opmeans_core::Error) -> Outcome {
    Outcome {
        check,
        kind,
        value: None,
        pass: false,
        error: Some(e.to_string()),
    }
}

const LEMMA_CHECKS: [&str; 3] = ["lemma_i", "lemma_ii", "lemma_iii"];
const THEOREM_CHECKS: [&str; 3] = ["theorem_i", "theorem_ii", "theorem_iii"];
const KYFAN_CHECKS: [&str; 3] = ["kyfan_i", "kyfan_ii", "kyfan_iii"];

/// Eigenvalue-wise scalar values of everything the cross-path check compares.
struct ScalarTargets {
    means: [Vec<f64>; 3],
    kyfan: [Vec<f64>; 3],
    inv_gap: Vec<f64>,
    ratio_gap: Vec<f64>,
}

fn scalar_targets(s: &Spectra, lambda: f64) -> opmeans_core::Result<ScalarTargets> {
    let mut t = ScalarTargets {
        means: Default::default(),
        kyfan: Default::default(),
        inv_gap: Vec::new(),
        ratio_gap: Vec::new(),
    };
    for (&a, &b) in s.a.iter().zip(&s.b) {
        let bundle = scalar_means(&ScalarSample::pair(a, b, lambda)?);
        let (m, p): (Means, Means) = (bundle.plain, *bundle.primed()?);
        let (ac, bc) = (1.0 - a, 1.0 - b);
        t.means[0].push(m.arithmetic);
        t.means[1].push(m.geometric);
        t.means[2].push(m.harmonic);
        t.kyfan[0].push((m.arithmetic - m.harmonic) - (p.arithmetic - p.harmonic));
        t.kyfan[1].push(
            a * b * (1.0 / m.harmonic - 1.0 / m.arithmetic)
                - ac * bc * (1.0 / p.harmonic - 1.0 / p.arithmetic),
        );
        t.kyfan[2]
            .push((a * m.arithmetic / m.harmonic - a) - (ac * p.arithmetic / p.harmonic - ac));
        t.inv_gap.push(
            (1.0 / m.harmonic - 1.0 / m.arithmetic) - (1.0 / p.harmonic - 1.0 / p.arithmetic),
        );
        t.ratio_gap
            .push(m.arithmetic / m.harmonic - p.arithmetic / p.harmonic);
    }
    Ok(t)
}

/// `‖U* M U − diag(values)‖_F / max(1, ‖M‖_F)`.
fn eigenwise_error(basis: &Matrix, m: &HermitianMatrix, values: &[f64]) -> f64 {
    let d = &(&basis.adjoint() * m.as_matrix()) * basis;
    (&d - &Matrix::from_diag(values)).frobenius_norm() / m.frobenius_norm().max(1.0)
}

fn cross_path(
    pair: &HalfPair,
    s: &Spectra,
    w: Weight,
    kyfan: &[opmeans_core::Result<GapCheck>],
    comm_gaps: &[opmeans_core::Result<GapCheck>],
    cfg: &ToleranceConfig,
) -> Outcome {
    let run = || -> opmeans_core::Result<f64> {
        let targets = scalar_targets(s, w.value())?;
        let mut worst = 0.0f64;
        for (kind, values) in MeanKind::ALL.iter().zip(&targets.means) {
            let m = weighted_mean(*kind, &pair.a, &pair.b, w, cfg)?;
            worst = worst.max(eigenwise_error(&s.basis, &m, values));
        }
        let gaps = kyfan
            .iter()
            .zip(&targets.kyfan)
            .chain(comm_gaps.iter().zip([&targets.inv_gap, &targets.ratio_gap]));
        for (gap, values) in gaps {
            let gap = gap.as_ref().map_err(Clone::clone)?;
            worst = worst.max(eigenwise_error(&s.basis, &gap.gap, values));
        }
        Ok(worst)
    };
    match run() {
        Ok(err) => Outcome {
            check: "cross_path",
            kind: CheckKind::CrossPath,
            value: Some(err),
            pass: err <= CROSS_PATH_TOL,
            error: None,
        },
        Err(e) => failed("cross_path", CheckKind::CrossPath, e),
    }
}

fn run_half_pair(pair: &HalfPair, w: Weight, cfg: &ToleranceConfig, out: &mut Vec<Outcome>) {
    let kyfan: Vec<_> = Part::ALL
        .iter()
        .map(|&p| kyfan_gap(p, &pair.a, &pair.b, w, cfg))
        .collect();
    for (name, r) in KYFAN_CHECKS.iter().zip(&kyfan) {
        out.push(gap_outcome(name, r));
    }
    if !pair.commuting {
        return;
    }
    for (part, name, primed_name) in [
        (
            CommutativePart::HarmonicGap,
            "commutative_harmonic_gap",
            "commutative_harmonic_gap_primed",
        ),
        (
            CommutativePart::Ratio,
            "commutative_ratio",
            "commutative_ratio_primed",
        ),
    ] {
        out.push(identity_outcome(
            name,
            commutative_identity(part, &pair.a, &pair.b, w, cfg),
        ));
        let primed = complement(&pair.a, cfg)
            .and_then(|ac| Ok((ac, complement(&pair.b, cfg)?)))
            .and_then(|(ac, bc)| commutative_identity(part, &ac, &bc, w, cfg));
        out.push(identity_outcome(primed_name, primed));
    }
    let comm_gaps: Vec<_> = [CommutativeGapPart::InvGap, CommutativeGapPart::RatioGap]
        .iter()
        .map(|&p| commutative_kyfan_gap(p, &pair.a, &pair.b, w, cfg))
        .collect();
    out.push(gap_outcome("inv_gap", &comm_gaps[0]));
    out.push(gap_outcome("ratio_gap", &comm_gaps[1]));
    if let Some(s) = &pair.spectra {
        out.push(cross_path(pair, s, w, &kyfan, &comm_gaps, cfg));
    }
}

/// All outcomes of one instance, tagged with the λ index and operand set.
fn run_instance(
    inst: &Instance,
    grid: &[f64],
    cfg: &ToleranceConfig,
) -> Vec<(usize, Operands, Outcome)> {
    let mut all = Vec::new();
    for (li, &lambda) in grid.iter().enumerate() {
        let w = Weight::new(lambda).expect("grid validated");
        for (part, name) in Part::ALL.iter().zip(LEMMA_CHECKS) {
            let o = identity_outcome(name, lemma_identity(*part, &inst.t, w, cfg));
            all.push((li, Operands::Single, o));
        }
        let (a, b) = &inst.general;
        for (part, name) in Part::ALL.iter().zip(THEOREM_CHECKS) {
            let o = identity_outcome(name, theorem_identity(*part, a, b, w, cfg));
            all.push((li, Operands::General, o));
        }
        for (part, name) in [(ChainPart::Eq1, "chain_eq1"), (ChainPart::Eq2, "chain_eq2")] {
            let o = match chain_identity(part, a, b, w, cfg) {
                Ok(c) => Outcome {
                    check: name,
                    kind: CheckKind::Identity,
                    value: Some(c.max_pairwise_rel_residual),
                    pass: c.pass,
                    error: None,
                },
                Err(e) => failed(name, CheckKind::Identity, e),
            };
            all.push((li, Operands::General, o));
        }
        for (k, pair) in inst.half.iter().enumerate() {
            let mut out = Vec::new();
            run_half_pair(pair, w, cfg, &mut out);
            all.extend(out.into_iter().map(|o| (li, Operands::Half(k), o)));
        }
    }
    all
}

fn operands_text(inst: &Instance, which: Operands) -> String {
    let named = |name: &str, m: &HermitianMatrix| NamedMatrix::new(name, m.as_matrix().clone());
    let list = match which {
        Operands::Single => vec![named("T", &inst.t)],
        Operands::General => vec![named("A", &inst.general.0), named("B", &inst.general.1)],
        Operands::Half(k) => vec![named("A", &inst.half[k].a), named("B", &inst.half[k].b)],
    };
    print_matrices(&list)
}

pub fn validate_verify(cfg: &VerifyConfig) -> Result<(), String> {
    if cfg.dims.is_empty() || cfg.dims.contains(&0) {
        return Err("dims must be a nonempty list of positive integers".into());
    }
    if cfg.lambda_grid.is_empty() {
        return Err("lambda grid must not be empty".into());
    }
    if let Some(l) = cfg.lambda_grid.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(format!("lambda {l} lies outside [0, 1]"));
    }
    cfg.tolerances().validate().map_err(|e| e.to_string())
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<RunReport, String> {
    validate_verify(cfg)?;
    let start = Instant::now();
    let tol = cfg.tolerances();
    let mut instances = Vec::new();
    for &dim in &cfg.dims {
        instances.extend(edge_instances(dim));
        instances.extend(
            (0..cfg.trials)
                .map(|t| (dim, t))
                .map(|(d, t)| random_instance(cfg.seed, d, t)),
        );
    }
    let results: Vec<_> = instances
        .par_iter()
        .map(|inst| run_instance(inst, &cfg.lambda_grid, &tol))
        .collect();

    let mut report = RunReport::empty("verify", cfg.seed);
    report.dims = cfg.dims.clone();
    report.lambda_grid = cfg.lambda_grid.clone();
    report.trials = cfg.trials;
    report.rel_residual_tol = tol.rel_residual_tol;
    report.psd_slack = tol.psd_slack;
    let mut builder = ReportBuilder::new(report, cfg.max_findings);
    for (inst, outcomes) in instances.iter().zip(&results) {
        for (li, which, o) in outcomes {
            builder.record(o, || Finding {
                check: o.check.to_string(),
                seed: cfg.seed,
                dim: inst.dim,
                trial: match inst.origin {
                    Origin::Trial(t) => Some(t),
                    Origin::Edge(_) => None,
                },
                edge_case: match inst.origin {
                    Origin::Edge(l) => Some(l.to_string()),
                    Origin::Trial(_) => None,
                },
                lambda: cfg.lambda_grid[*li],
                value: o.value,
                error: o.error.clone(),
                operands: operands_text(inst, *which),
            });
        }
    }
    let mut report = builder.finish();
    if cfg.timing {
        report.wall_time_secs = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzTarget {
    InvGapNoncomm,
    RatioGapNoncomm,
}

impl FuzzTarget {
    pub fn name(self) -> &'static str {
        match self {
            FuzzTarget::InvGapNoncomm => "inv_gap_noncomm",
            FuzzTarget::RatioGapNoncomm => "ratio_gap_noncomm",
        }
    }

    fn control_name(self) -> &'static str {
        match self {
            FuzzTarget::InvGapNoncomm => "inv_gap_commuting_control",
            FuzzTarget::RatioGapNoncomm => "ratio_gap_commuting_control",
        }
    }

    fn part(self) -> CommutativeGapPart {
        match self {
            FuzzTarget::InvGapNoncomm => CommutativeGapPart::InvGap,
            FuzzTarget::RatioGapNoncomm => CommutativeGapPart::RatioGap,
        }
    }
}

pub const FUZZ_SCOPE: &str = "exploratory: these inequalities are established only for commuting \
operators; noncommuting samples lie outside the proven scope and negative margins are findings, \
not defects. For ratio_gap_noncomm the Hermitian part of the non-Hermitian product is compared.";

/// Dimensions sampled by the fuzzer.
pub const FUZZ_DIMS: std::ops::RangeInclusive<usize> = 2..=8;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub target: FuzzTarget,
    pub seed: u64,
    pub budget: usize,
    /// Every `control_every`-th sample is a commuting control.
    pub control_every: usize,
    pub max_findings: usize,
    pub timing: bool,
}

impl FuzzConfig {
    pub fn new(target: FuzzTarget, seed: u64, budget: usize) -> Self {
        Self {
            target,
            seed,
            budget,
            control_every: 10,
            max_findings: 20,
            timing: false,
        }
    }
}

struct FuzzSample {
    dim: usize,
    lambda: f64,
    control: bool,
    a: HermitianMatrix,
    b: HermitianMatrix,
}

fn fuzz_sample(cfg: &FuzzConfig, index: usize) -> FuzzSample {
    let mut rng = RngState::new(cfg.seed).substream(index as u64);
    let dim = FUZZ_DIMS.start() + rng.below(FUZZ_DIMS.end() - FUZZ_DIMS.start() + 1);
    let lambda = loop {
        let l = rng.next_f64();
        if l > 0.0 {
            break l;
        }
    };
    let control = cfg.control_every > 0 && (index + 1).is_multiple_of(cfg.control_every);
    let (a, b) = if control {
        random_commuting_pair(dim, &half_spectrum(), &half_spectrum(), &mut rng).into_pair()
    } else {
        (
            random_spd(dim, &half_spectrum(), &mut rng),
            random_spd(dim, &half_spectrum(), &mut rng),
        )
    };
    FuzzSample {
        dim,
        lambda,
        control,
        a,
        b,
    }
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<RunReport, String> {
    if cfg.budget == 0 {
        return Err("budget must be at least 1".into());
    }
    let start = Instant::now();
    let tol = ToleranceConfig::default();
    let outcomes: Vec<(FuzzSample, Outcome)> = (0..cfg.budget)
        .into_par_iter()
        .map(|i| {
            let s = fuzz_sample(cfg, i);
            let w = Weight::new(s.lambda).expect("lambda in (0, 1)");
            let name = if s.control {
                cfg.target.control_name()
            } else {
                cfg.target.name()
            };
            let o = gap_outcome(
                name,
                &noncommutative_gap_surrogate(cfg.target.part(), &s.a, &s.b, w, &tol),
            );
            (s, o)
        })
        .collect();

    let mut report = RunReport::empty(format!("fuzz:{}", cfg.target.name()), cfg.seed);
    report.scope = Some(FUZZ_SCOPE.to_string());
    report.dims = FUZZ_DIMS.collect();
    report.trials = cfg.budget;
    report.rel_residual_tol = tol.rel_residual_tol;
    report.psd_slack = tol.psd_slack;
    let mut builder = ReportBuilder::new(report, cfg.max_findings);
    for (i, (s, o)) in outcomes.iter().enumerate() {
        let locate = || Finding {
            check: o.check.to_string(),
            seed: cfg.seed,
            dim: s.dim,
            trial: Some(i),
            edge_case: None,
            lambda: s.lambda,
            value: o.value,
            error: o.error.clone(),
            operands: print_matrices(&[
                NamedMatrix::new("A", s.a.as_matrix().clone()),
                NamedMatrix::new("B", s.b.as_matrix().clone()),
            ]),
        };
        if s.control {
            builder.record_untracked(o, locate);
        } else {
            builder.record(o, locate);
        }
    }
    let mut report = builder.finish();
    if cfg.timing {
        report.wall_time_secs = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}
