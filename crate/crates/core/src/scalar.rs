//! Weighted scalar means of `x₁, …, xₙ > 0` and the Ky Fan type
//! inequalities comparing them with the means of `x'ᵢ = 1 − xᵢ`.
//!
//! This is the oracle for every commuting operator check: for
//! `A = U diag(a) U*` and `B = U diag(b) U*` an operator expression equals
//! `U diag(f(aᵢ, bᵢ)) U*` where `f` is the scalar expression evaluated on the
//! two-point sample `(aᵢ, bᵢ)` with weights `(1 − λ, λ)`.

use std::fmt;

use crate::error::{Error, Result};

/// Tolerated deviation of the weight sum from 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-14;

/// Relative threshold used when comparing the two sides of an inequality.
pub const EQUALITY_TOL: f64 = 1e-12;

/// Points `xᵢ > 0` with nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSample {
    xs: Vec<f64>,
    weights: Vec<f64>,
}

impl ScalarSample {
    pub fn new(xs: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::DomainViolation(
                "sample must contain at least one point".into(),
            ));
        }
        if xs.len() != weights.len() {
            return Err(Error::DomainViolation(format!(
                "{} points but {} weights",
                xs.len(),
                weights.len()
            )));
        }
        if let Some((i, x)) = xs
            .iter()
            .enumerate()
            .find(|(_, &x)| !(x > 0.0 && x.is_finite()))
        {
            return Err(Error::DomainViolation(format!(
                "x_{} = {x} must be positive",
                i + 1
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, &w)| !(w >= 0.0 && w.is_finite()))
        {
            return Err(Error::DomainViolation(format!(
                "weight {} = {w} must be nonnegative",
                i + 1
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::DomainViolation(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self { xs, weights })
    }

    /// Equal weights `1/n`.
    pub fn uniform(xs: Vec<f64>) -> Result<Self> {
        let n = xs.len().max(1);
        Self::new(xs, vec![1.0 / n as f64; n])
    }

    /// Two-point sample `(x₁, x₂)` with weights `(1 − λ, λ)`.
    pub fn pair(x1: f64, x2: f64, lambda: f64) -> Result<Self> {
        Self::new(vec![x1, x2], vec![1.0 - lambda, lambda])
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// True when every point carrying positive weight has the same value.
    pub fn all_equal(&self) -> bool {
        let mut active = self.xs.iter().zip(&self.weights).filter(|(_, &w)| w > 0.0);
        match active.next() {
            Some((&first, _)) => active.all(|(&x, _)| x == first),
            None => true,
        }
    }

    /// Rejects samples outside `(0, ½]`.
    pub fn require_half_domain(&self) -> Result<()> {
        match self.xs.iter().position(|&x| x > 0.5) {
            Some(i) => Err(Error::DomainViolation(format!(
                "x_i must lie in (0, 1/2]: x_{} = {}",
                i + 1,
                self.xs[i]
            ))),
            None => Ok(()),
        }
    }

    fn complemented(&self) -> Vec<f64> {
        self.xs.iter().map(|x| 1.0 - x).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Means {
    pub arithmetic: f64,
    pub geometric: f64,
    pub harmonic: f64,
}

impl Means {
    fn of(xs: &[f64], weights: &[f64]) -> Self {
        let arithmetic = xs.iter().zip(weights).map(|(x, w)| w * x).sum();
        let log_g: f64 = xs.iter().zip(weights).map(|(x, w)| w * x.ln()).sum();
        let recip: f64 = xs.iter().zip(weights).map(|(x, w)| w / x).sum();
        Self {
            arithmetic,
            geometric: log_g.exp(),
            harmonic: 1.0 / recip,
        }
    }
}

/// Means of a sample and, when every `xᵢ ≤ ½`, of its complements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeansBundle {
    pub plain: Means,
    primed: Option<Means>,
    first_over_half: Option<(usize, f64)>,
}

impl MeansBundle {
    pub fn primed(&self) -> Result<&Means> {
        match (&self.primed, self.first_over_half) {
            (Some(m), _) => Ok(m),
            (None, Some((index, value))) => Err(Error::PrimedUnavailable { index, value }),
            (None, None) => unreachable!("primed means missing without an offending point"),
        }
    }

    pub fn has_primed(&self) -> bool {
        self.primed.is_some()
    }
}

pub fn scalar_means(s: &ScalarSample) -> MeansBundle {
    let plain = Means::of(&s.xs, &s.weights);
    let first_over_half = s.xs.iter().position(|&x| x > 0.5).map(|i| (i + 1, s.xs[i]));
    let primed = first_over_half
        .is_none()
        .then(|| Means::of(&s.complemented(), &s.weights));
    MeansBundle {
        plain,
        primed,
        first_over_half,
    }
}

/// Ky Fan type inequalities `lhs(x') ≤ rhs(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KyFanInequality {
    /// `A'/G' ≤ A/G`
    RatioAg,
    /// `A' − G' ≤ A − G`
    DiffAg,
    /// `A' − H' ≤ A − H`
    DiffAh,
    /// `1/H' − 1/A' ≤ 1/H − 1/A`
    DiffRecip,
    /// `A'/H' ≤ A/H`
    RatioAh,
}

impl KyFanInequality {
    pub const ALL: [KyFanInequality; 5] = [
        KyFanInequality::RatioAg,
        KyFanInequality::DiffAg,
        KyFanInequality::DiffAh,
        KyFanInequality::DiffRecip,
        KyFanInequality::RatioAh,
    ];

    /// Value of the compared expression on one triple of means.
    pub fn side(self, m: &Means) -> f64 {
        match self {
            KyFanInequality::RatioAg => m.arithmetic / m.geometric,
            KyFanInequality::DiffAg => m.arithmetic - m.geometric,
            KyFanInequality::DiffAh => m.arithmetic - m.harmonic,
            KyFanInequality::DiffRecip => 1.0 / m.harmonic - 1.0 / m.arithmetic,
            KyFanInequality::RatioAh => m.arithmetic / m.harmonic,
        }
    }
}

impl fmt::Display for KyFanInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KyFanInequality::RatioAg => "ratio_ag",
            KyFanInequality::DiffAg => "diff_ag",
            KyFanInequality::DiffAh => "diff_ah",
            KyFanInequality::DiffRecip => "diff_recip",
            KyFanInequality::RatioAh => "ratio_ah",
        })
    }
}

impl std::str::FromStr for KyFanInequality {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        KyFanInequality::ALL
            .into_iter()
            .find(|i| i.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown inequality `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCheck {
    /// Primed side.
    pub lhs: f64,
    /// Unprimed side.
    pub rhs: f64,
    /// `lhs ≤ rhs + EQUALITY_TOL·max(1, |rhs|)`.
    pub holds: bool,
    /// All points with positive weight coincide, the analytic equality case.
    pub equality: bool,
    /// `|lhs − rhs| ≤ EQUALITY_TOL·max(1, |rhs|)`. Also true for samples that
    /// are merely close to equal, since the gap is second order in the
    /// spread of the points.
    pub numerically_equal: bool,
}

pub fn kyfan_scalar_check(ineq: KyFanInequality, s: &ScalarSample) -> Result<ScalarCheck> {
    s.require_half_domain()?;
    let bundle = scalar_means(s);
    let lhs = ineq.side(bundle.primed()?);
    let rhs = ineq.side(&bundle.plain);
    let scale = EQUALITY_TOL * rhs.abs().max(1.0);
    Ok(ScalarCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + scale,
        equality: s.all_equal(),
        numerically_equal: (lhs - rhs).abs() <= scale,
    })
}

/// The comparisons `A'H' ≥ AH` and `H' ≥ H` with their witness values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryFacts {
    pub primed_product: f64,
    pub product: f64,
    pub ah_primed_ge: bool,
    pub primed_harmonic: f64,
    pub harmonic: f64,
    pub h_primed_ge: bool,
}

pub fn auxiliary_facts(s: &ScalarSample) -> Result<AuxiliaryFacts> {
    s.require_half_domain()?;
    let bundle = scalar_means(s);
    let plain = bundle.plain;
    let primed = *bundle.primed()?;
    let primed_product = primed.arithmetic * primed.harmonic;
    let product = plain.arithmetic * plain.harmonic;
    let ge = |big: f64, small: f64| big >= small - EQUALITY_TOL * small.abs().max(1.0);
    Ok(AuxiliaryFacts {
        primed_product,
        product,
        ah_primed_ge: ge(primed_product, product),
        primed_harmonic: primed.harmonic,
        harmonic: plain.harmonic,
        h_primed_ge: ge(primed.harmonic, plain.harmonic),
    })
}
