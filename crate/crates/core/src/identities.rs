//! Operator identities and Ky Fan type operator inequalities as checkable
//! records.
//!
//! Identity checks evaluate the two sides along structurally independent
//! paths: the left side through [`crate::means`], the right side through raw
//! affine combinations, inversions and products. Inequality checks form the
//! gap matrix (majorant minus minorant, both evaluated in full) and test it
//! for positive semidefiniteness.
//!
//! Throughout, `∇`, `!` and `♯` without a subscript are the means at weight
//! ½, and `A' = I − A`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    congruence, eigen_hermitian, spectral_function, HermitianMatrix, Matrix, SpectralFn,
    ToleranceConfig,
};
use crate::means::{arithmetic_mean, complement, geometric_mean, harmonic_mean, Weight};

/// Relative bound on `‖AB − BA‖_F / (‖A‖_F‖B‖_F)` below which a pair is
/// treated as commuting.
pub const COMMUTATION_TOL: f64 = 1e-10;

/// Part selector for the three-part lemma, theorem and inequality families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    I,
    II,
    III,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::I, Part::II, Part::III];
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::I => "i",
            Part::II => "ii",
            Part::III => "iii",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainPart {
    /// `(A♯B)D(A♯B) = ADB = BDA = λ(1−λ)(B−A)(A∇_λB)^{-1}(B−A)` with
    /// `D = (A!_λB)^{-1} − (A∇_λB)^{-1}`.
    Eq1,
    /// `A·G·(A∇_λB)·G·A = A(A!_λB)^{-1}(A∇_λB) = (A∇_λB)(A!_λB)^{-1}A
    /// = λ(1−λ)(A−B)B^{-1}(A−B) + A` with `G = A^{-1} ♯ (A!_λB)^{-1}`.
    Eq2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommutativePart {
    /// `(A!_λB)^{-1} − (A∇_λB)^{-1} = λ(1−λ)(B−A)(A♯B)^{-2}(A∇_λB)^{-1}(B−A)`.
    HarmonicGap,
    /// `(A!_λB)^{-1}(A∇_λB) − I = λ(1−λ)(A−B)A^{-1}B^{-1}(A−B)`.
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommutativeGapPart {
    /// `(A'!_λB')^{-1} − (A'∇_λB')^{-1} ≤ (A!_λB)^{-1} − (A∇_λB)^{-1}`.
    InvGap,
    /// `(A'!_λB')^{-1}(A'∇_λB') ≤ (A!_λB)^{-1}(A∇_λB)`.
    RatioGap,
}

/// Both sides of an operator identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub lhs: HermitianMatrix,
    pub rhs: HermitianMatrix,
    /// `‖lhs − rhs‖_F`.
    pub residual: f64,
    /// `residual / max(1, ‖lhs‖_F)`.
    pub rel_residual: f64,
    /// Largest symmetrization defect of either side.
    pub symmetrization_defect: f64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(lhs: HermitianMatrix, rhs: HermitianMatrix, cfg: &ToleranceConfig) -> Self {
        let residual = (&lhs - &rhs).frobenius_norm();
        let rel_residual = residual / lhs.frobenius_norm().max(1.0);
        let symmetrization_defect = lhs.symmetrization_defect().max(rhs.symmetrization_defect());
        Self {
            lhs,
            rhs,
            residual,
            rel_residual,
            symmetrization_defect,
            pass: rel_residual <= cfg.rel_residual_tol,
        }
    }
}

/// Gap matrix of a Loewner inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCheck {
    /// Majorant minus minorant.
    pub gap: HermitianMatrix,
    pub min_eigenvalue: f64,
    /// `min_eigenvalue / max(1, ‖gap‖₂)`.
    pub margin: f64,
    /// Largest symmetrization defect met while forming the two sides.
    pub symmetrization_defect: f64,
    pub pass: bool,
}

impl GapCheck {
    pub fn new(
        majorant: &HermitianMatrix,
        minorant: &HermitianMatrix,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        majorant.check_same_dim(minorant)?;
        let gap = majorant - minorant;
        let eig = eigen_hermitian(&gap, cfg)?;
        let scale = eig.spectral_norm().max(1.0);
        let min_eigenvalue = eig.min_eigenvalue();
        Ok(Self {
            symmetrization_defect: majorant
                .symmetrization_defect()
                .max(minorant.symmetrization_defect()),
            pass: min_eigenvalue >= -cfg.psd_slack * scale,
            margin: min_eigenvalue / scale,
            min_eigenvalue,
            gap,
        })
    }
}

/// Members of an identity chain, compared pairwise as general matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCheck {
    pub members: Vec<Matrix>,
    /// Largest `‖Mᵢ − Mⱼ‖_F / max(1, ‖Mᵢ‖_F)` over `i < j`.
    pub max_pairwise_rel_residual: f64,
    pub pass: bool,
}

impl ChainCheck {
    pub fn new(members: Vec<Matrix>, cfg: &ToleranceConfig) -> Self {
        let mut worst = 0.0f64;
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let rel = (a - b).frobenius_norm() / a.frobenius_norm().max(1.0);
                worst = worst.max(rel);
            }
        }
        Self {
            members,
            max_pairwise_rel_residual: worst,
            pass: worst <= cfg.rel_residual_tol,
        }
    }
}

fn inv(a: &HermitianMatrix, cfg: &ToleranceConfig) -> Result<HermitianMatrix> {
    spectral_function(a, SpectralFn::Inverse, cfg)
}

fn herm(m: Matrix) -> Result<HermitianMatrix> {
    HermitianMatrix::from_matrix(m)
}

/// `(A!_λB)^{-1}` straight from its definition `(1−λ)A^{-1} + λB^{-1}`.
/// Inverting the computed harmonic mean instead would spread the roundoff of
/// each inverse's large eigenvalues into directions no longer annihilated by
/// the neighbouring factor `A` or `B`.
fn harmonic_inverse(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    let (a_inv, b_inv) = (inv(a, cfg)?, inv(b, cfg)?);
    Ok(match w.value() {
        0.0 => a_inv,
        1.0 => b_inv,
        l => a_inv.lerp(&b_inv, l),
    })
}

/// `λ(1−λ)·X M X` for Hermitian `X`, `M`.
fn spread_sandwich(w: Weight, x: &HermitianMatrix, m: &HermitianMatrix) -> Result<HermitianMatrix> {
    Ok(congruence(x.as_matrix(), m)?.scale(w.spread()))
}

/// Lemma identities for a single strictly positive `T`:
///
/// * I: `I∇_λT − I!_λT = λ(1−λ)(I−T)(T∇_λI)^{-1}(I−T)`
/// * II: `T^{1/2}(I∇_λT^{-1} − I!_λT^{-1})T^{1/2} = λ(1−λ)(T−I)(I∇_λT)^{-1}(T−I)`
/// * III: `(I!_λT)^{-1/2}(I∇_λT)(I!_λT)^{-1/2} − I = λ(1−λ)(I−T)T^{-1}(I−T)`
pub fn lemma_identity(
    part: Part,
    t: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<IdentityCheck> {
    let id = HermitianMatrix::identity(t.dim());
    let l = w.value();
    let (lhs, rhs) = match part {
        Part::I => {
            let lhs = &arithmetic_mean(&id, t, w)? - &harmonic_mean(&id, t, w, cfg)?;
            let rhs = spread_sandwich(w, &(&id - t), &inv(&t.lerp(&id, l), cfg)?)?;
            (lhs, rhs)
        }
        Part::II => {
            let t_inv = inv(t, cfg)?;
            let t_sqrt = spectral_function(t, SpectralFn::Sqrt, cfg)?;
            let inner = &arithmetic_mean(&id, &t_inv, w)? - &harmonic_mean(&id, &t_inv, w, cfg)?;
            let lhs = congruence(t_sqrt.as_matrix(), &inner)?;
            let rhs = spread_sandwich(w, &(t - &id), &inv(&id.lerp(t, l), cfg)?)?;
            (lhs, rhs)
        }
        Part::III => {
            let h = harmonic_mean(&id, t, w, cfg)?;
            let h_inv_sqrt = spectral_function(&h, SpectralFn::InvSqrt, cfg)?;
            let lhs = &congruence(h_inv_sqrt.as_matrix(), &arithmetic_mean(&id, t, w)?)? - &id;
            let rhs = spread_sandwich(w, &(&id - t), &inv(t, cfg)?)?;
            (lhs, rhs)
        }
    };
    Ok(IdentityCheck::new(lhs, rhs, cfg))
}

/// Left side of the theorem identities, which is also the quantity compared
/// by the corresponding Ky Fan type inequality:
///
/// * I: `A∇_λB − A!_λB`
/// * II: `(A♯B)[(A!_λB)^{-1} − (A∇_λB)^{-1}](A♯B)`
/// * III: `A(A^{-1}♯(A!_λB)^{-1})(A∇_λB)(A^{-1}♯(A!_λB)^{-1})A − A`
pub fn theorem_lhs(
    part: Part,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    let arith = arithmetic_mean(a, b, w)?;
    match part {
        Part::I => Ok(&arith - &harmonic_mean(a, b, w, cfg)?),
        Part::II => {
            let g = geometric_mean(a, b, Weight::HALF, cfg)?;
            let d = &harmonic_inverse(a, b, w, cfg)? - &inv(&arith, cfg)?;
            congruence(g.as_matrix(), &d)
        }
        Part::III => {
            let harm_inv = harmonic_inverse(a, b, w, cfg)?;
            let g = geometric_mean(&inv(a, cfg)?, &harm_inv, Weight::HALF, cfg)?;
            // (G·A)* (A∇B) (G·A) = A G (A∇B) G A
            let ga = g.as_matrix() * a.as_matrix();
            Ok(&congruence(&ga, &arith)? - a)
        }
    }
}

/// Theorem identities for strictly positive `A`, `B`:
///
/// * I: `A∇_λB − A!_λB = λ(1−λ)(A−B)(B∇_λA)^{-1}(A−B)`
/// * II: `(A♯B)[(A!_λB)^{-1} − (A∇_λB)^{-1}](A♯B) = λ(1−λ)(B−A)(A∇_λB)^{-1}(B−A)`
/// * III: `A(A^{-1}♯(A!_λB)^{-1})(A∇_λB)(A^{-1}♯(A!_λB)^{-1})A − A
///   = λ(1−λ)(A−B)B^{-1}(A−B)`
pub fn theorem_identity(
    part: Part,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<IdentityCheck> {
    a.check_same_dim(b)?;
    let lhs = theorem_lhs(part, a, b, w, cfg)?;
    let rhs = theorem_rhs(part, a, b, w, cfg)?;
    Ok(IdentityCheck::new(lhs, rhs, cfg))
}

fn theorem_rhs(
    part: Part,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    let l = w.value();
    match part {
        Part::I => spread_sandwich(w, &(a - b), &inv(&b.lerp(a, l), cfg)?),
        Part::II => spread_sandwich(w, &(b - a), &inv(&a.lerp(b, l), cfg)?),
        Part::III => spread_sandwich(w, &(a - b), &inv(b, cfg)?),
    }
}

/// Chains of equal expressions, including the non-Hermitian members
/// `A D B` and `A (A!_λB)^{-1} (A∇_λB)`.
pub fn chain_identity(
    part: ChainPart,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<ChainCheck> {
    a.check_same_dim(b)?;
    let (am, bm) = (a.as_matrix(), b.as_matrix());
    let arith = arithmetic_mean(a, b, w)?;
    let harm_inv = harmonic_inverse(a, b, w, cfg)?;
    let members = match part {
        ChainPart::Eq1 => {
            let d = &harm_inv - &inv(&arith, cfg)?;
            let g = geometric_mean(a, b, Weight::HALF, cfg)?;
            let g = g.as_matrix();
            let dm = d.as_matrix();
            let raw_arith = a.lerp(b, w.value());
            let diff = (b - a).into_matrix();
            vec![
                &(g * dm) * g,
                &(am * dm) * bm,
                &(bm * dm) * am,
                (&(&diff * inv(&raw_arith, cfg)?.as_matrix()) * &diff).scale(w.spread()),
            ]
        }
        ChainPart::Eq2 => {
            let g = geometric_mean(&inv(a, cfg)?, &harm_inv, Weight::HALF, cfg)?;
            let g = g.as_matrix();
            let hm = harm_inv.as_matrix();
            let nm = arith.as_matrix();
            let diff = (a - b).into_matrix();
            let closed = &(&(&diff * inv(b, cfg)?.as_matrix()) * &diff).scale(w.spread()) + am;
            vec![
                &(&(&(am * g) * nm) * g) * am,
                &(am * hm) * nm,
                &(nm * hm) * am,
                closed,
            ]
        }
    };
    Ok(ChainCheck::new(members, cfg))
}

/// Fails with [`Error::NotCommuting`] unless
/// `‖AB − BA‖_F ≤ COMMUTATION_TOL·‖A‖_F‖B‖_F`.
pub fn require_commuting(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    let commutator = a.commutator_norm(b)?;
    let bound = COMMUTATION_TOL * a.frobenius_norm() * b.frobenius_norm();
    if commutator > bound {
        return Err(Error::NotCommuting { commutator, bound });
    }
    Ok(())
}

/// Identities that hold for commuting strictly positive `A`, `B`. The primed
/// forms are obtained by passing `(I − A, I − B)`.
pub fn commutative_identity(
    part: CommutativePart,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<IdentityCheck> {
    require_commuting(a, b)?;
    let arith = arithmetic_mean(a, b, w)?;
    let harm_inv = harmonic_inverse(a, b, w, cfg)?;
    let raw_arith_inv = inv(&a.lerp(b, w.value()), cfg)?;
    let (lhs, rhs) = match part {
        CommutativePart::HarmonicGap => {
            let lhs = &harm_inv - &inv(&arith, cfg)?;
            let g = geometric_mean(a, b, Weight::HALF, cfg)?;
            let g_inv_sq = spectral_function(&g, SpectralFn::Power(-2.0), cfg)?;
            let diff = (b - a).into_matrix();
            let rhs = &(&(&diff * g_inv_sq.as_matrix()) * raw_arith_inv.as_matrix()) * &diff;
            (lhs, herm(rhs.scale(w.spread()))?)
        }
        CommutativePart::Ratio => {
            let ratio = harm_inv.as_matrix() * arith.as_matrix();
            let lhs = herm(&ratio - &Matrix::identity(a.dim()))?;
            let diff = (a - b).into_matrix();
            let rhs = &(&(&diff * inv(a, cfg)?.as_matrix()) * inv(b, cfg)?.as_matrix()) * &diff;
            (lhs, herm(rhs.scale(w.spread()))?)
        }
    };
    Ok(IdentityCheck::new(lhs, rhs, cfg))
}

/// Operator Ky Fan type inequalities for `0 < A, B ≤ ½I`:
/// `X(A', B') ≤ X(A, B)` where `X` is the [`theorem_lhs`] expression of the
/// given part. The gap is `X(A, B) − X(A', B')`.
pub fn kyfan_gap(
    part: Part,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<GapCheck> {
    a.check_same_dim(b)?;
    let a_c = complement(a, cfg)?;
    let b_c = complement(b, cfg)?;
    let unprimed = theorem_lhs(part, a, b, w, cfg)?;
    let primed = theorem_lhs(part, &a_c, &b_c, w, cfg)?;
    GapCheck::new(&unprimed, &primed, cfg)
}

/// Quantity compared by [`commutative_kyfan_gap`]: `(A!_λB)^{-1} − (A∇_λB)^{-1}`
/// or the Hermitian part of `(A!_λB)^{-1}(A∇_λB)`.
pub fn commutative_gap_side(
    part: CommutativeGapPart,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    let arith = arithmetic_mean(a, b, w)?;
    let harm_inv = harmonic_inverse(a, b, w, cfg)?;
    match part {
        CommutativeGapPart::InvGap => Ok(&harm_inv - &inv(&arith, cfg)?),
        CommutativeGapPart::RatioGap => herm(harm_inv.as_matrix() * arith.as_matrix()),
    }
}

/// Commutative Ky Fan type inequalities for commuting `0 < A, B ≤ ½I`.
pub fn commutative_kyfan_gap(
    part: CommutativeGapPart,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<GapCheck> {
    require_commuting(a, b)?;
    noncommutative_gap_surrogate(part, a, b, w, cfg)
}

/// The commutative inequalities evaluated without the commutation
/// requirement. They are not established for noncommuting pairs; for
/// `RatioGap` the product `(A!_λB)^{-1}(A∇_λB)` is then not Hermitian and
/// only its Hermitian part is compared. Violations are findings, not bugs.
pub fn noncommutative_gap_surrogate(
    part: CommutativeGapPart,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    w: Weight,
    cfg: &ToleranceConfig,
) -> Result<GapCheck> {
    a.check_same_dim(b)?;
    let a_c = complement(a, cfg)?;
    let b_c = complement(b, cfg)?;
    let unprimed = commutative_gap_side(part, a, b, w, cfg)?;
    let primed = commutative_gap_side(part, &a_c, &b_c, w, cfg)?;
    GapCheck::new(&unprimed, &primed, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn s(x: f64) -> HermitianMatrix {
        HermitianMatrix::scalar(1, x)
    }

    fn w(l: f64) -> Weight {
        Weight::new(l).unwrap()
    }

    fn val(m: &HermitianMatrix) -> f64 {
        m[(0, 0)].re
    }

    #[test]
    fn lemma_at_identity_vanishes() {
        let t = HermitianMatrix::identity(3);
        for part in Part::ALL {
            for l in [0.0, 0.3, 1.0] {
                let c = lemma_identity(part, &t, w(l), &cfg()).unwrap();
                assert!(c.pass);
                assert!(c.lhs.frobenius_norm() < 1e-15, "{part} {l}");
                assert!(c.rhs.frobenius_norm() < 1e-15);
            }
        }
    }

    #[test]
    fn lemma_scalar_values() {
        let c = lemma_identity(Part::I, &s(2.0), Weight::HALF, &cfg()).unwrap();
        assert!(c.pass);
        assert!((val(&c.lhs) - 0.1666667).abs() < 1e-6);
        assert!((val(&c.rhs) - 0.1666667).abs() < 1e-6);
        let c = lemma_identity(Part::III, &s(2.0), Weight::HALF, &cfg()).unwrap();
        assert!(c.pass);
        assert!((val(&c.lhs) - 0.125).abs() < 1e-6);
        assert!((val(&c.rhs) - 0.125).abs() < 1e-6);
    }

    #[test]
    fn lemma_rejects_nonpositive() {
        let t = HermitianMatrix::from_diag(&[1.0, -1.0]);
        for part in Part::ALL {
            assert!(matches!(
                lemma_identity(part, &t, Weight::HALF, &cfg()),
                Err(Error::NotStrictlyPositive { .. })
            ));
        }
    }

    #[test]
    fn theorem_equal_operands_vanish() {
        let a = HermitianMatrix::from_diag(&[0.2, 0.4]);
        let c = theorem_identity(Part::I, &a, &a, w(0.3), &cfg()).unwrap();
        assert!(c.pass);
        assert!(c.lhs.frobenius_norm() < 1e-15);
        assert_eq!(c.rhs.frobenius_norm(), 0.0);
    }

    #[test]
    fn theorem_scalar_values() {
        let c = theorem_identity(Part::I, &s(0.2), &s(0.4), Weight::HALF, &cfg()).unwrap();
        assert!(c.pass);
        assert!((val(&c.lhs) - 0.0333333).abs() < 1e-6);
        assert!((val(&c.rhs) - 0.0333333).abs() < 1e-6);
        let c = theorem_identity(Part::III, &s(0.2), &s(0.4), Weight::HALF, &cfg()).unwrap();
        assert!(c.pass);
        assert!((val(&c.lhs) - 0.025).abs() < 1e-6);
        assert!((val(&c.rhs) - 0.025).abs() < 1e-6);
    }

    #[test]
    fn theorem_dimension_mismatch() {
        let a = HermitianMatrix::identity(2);
        let b = HermitianMatrix::identity(3);
        assert!(matches!(
            theorem_identity(Part::II, &a, &b, Weight::HALF, &cfg()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn chain_scalar_values() {
        let c = chain_identity(ChainPart::Eq1, &s(0.2), &s(0.4), Weight::HALF, &cfg()).unwrap();
        assert!(c.pass);
        assert_eq!(c.members.len(), 4);
        for m in &c.members {
            assert!((m[(0, 0)].re - 0.0333333).abs() < 1e-6);
        }
        let c = chain_identity(ChainPart::Eq2, &s(0.2), &s(0.4), Weight::HALF, &cfg()).unwrap();
        assert!(c.pass);
        for m in &c.members {
            assert!((m[(0, 0)].re - 0.225).abs() < 1e-6);
        }
    }

    #[test]
    fn chain_equal_operands_vanish() {
        let a = HermitianMatrix::from_real_rows(&[&[0.3, 0.1], &[0.1, 0.3]]).unwrap();
        let c = chain_identity(ChainPart::Eq1, &a, &a, w(0.8), &cfg()).unwrap();
        assert!(c.pass);
        for m in &c.members {
            assert!(m.frobenius_norm() < 1e-14);
        }
    }

    #[test]
    fn commutative_scalar_values() {
        let c = commutative_identity(
            CommutativePart::HarmonicGap,
            &s(0.2),
            &s(0.4),
            Weight::HALF,
            &cfg(),
        )
        .unwrap();
        assert!(c.pass);
        assert!((val(&c.lhs) - 0.4166667).abs() < 1e-6);
        assert!((val(&c.rhs) - 0.4166667).abs() < 1e-6);
        let c = commutative_identity(
            CommutativePart::Ratio,
            &s(0.2),
            &s(0.4),
            Weight::HALF,
            &cfg(),
        )
        .unwrap();
        assert!(c.pass);
        assert!((val(&c.lhs) - 0.125).abs() < 1e-6);
        assert!((val(&c.rhs) - 0.125).abs() < 1e-6);
    }

    #[test]
    fn commutative_ratio_equal_scalars() {
        let a = HermitianMatrix::scalar(2, 0.3);
        let c = commutative_identity(CommutativePart::Ratio, &a, &a, w(0.7), &cfg()).unwrap();
        assert!(c.pass);
        assert!(c.lhs.frobenius_norm() < 1e-15);
        assert_eq!(c.rhs.frobenius_norm(), 0.0);
    }

    #[test]
    fn commutative_rejects_noncommuting() {
        let a = HermitianMatrix::from_diag(&[0.1, 0.5]);
        let b = HermitianMatrix::from_real_rows(&[&[0.3, 0.2], &[0.2, 0.3]]).unwrap();
        for part in [CommutativePart::HarmonicGap, CommutativePart::Ratio] {
            match commutative_identity(part, &a, &b, Weight::HALF, &cfg()) {
                Err(Error::NotCommuting { commutator, .. }) => assert!(commutator > 0.05),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(matches!(
            commutative_kyfan_gap(CommutativeGapPart::InvGap, &a, &b, Weight::HALF, &cfg()),
            Err(Error::NotCommuting { .. })
        ));
        // The surrogate accepts the same pair.
        assert!(noncommutative_gap_surrogate(
            CommutativeGapPart::RatioGap,
            &a,
            &b,
            Weight::HALF,
            &cfg()
        )
        .is_ok());
    }

    #[test]
    fn kyfan_gap_scalar_values() {
        let g = kyfan_gap(Part::I, &s(0.2), &s(0.4), Weight::HALF, &cfg()).unwrap();
        assert!(g.pass);
        assert!((val(&g.gap) - 0.0190476).abs() < 1e-6);
        let g = kyfan_gap(Part::III, &s(0.2), &s(0.4), Weight::HALF, &cfg()).unwrap();
        assert!(g.pass);
        assert!((val(&g.gap) - 0.0083333).abs() < 1e-6);
        let g = commutative_kyfan_gap(
            CommutativeGapPart::InvGap,
            &s(0.2),
            &s(0.4),
            Weight::HALF,
            &cfg(),
        )
        .unwrap();
        assert!(g.pass);
        assert!((val(&g.gap) - 0.3869048).abs() < 1e-6);
        let g = commutative_kyfan_gap(
            CommutativeGapPart::RatioGap,
            &s(0.2),
            &s(0.4),
            Weight::HALF,
            &cfg(),
        )
        .unwrap();
        assert!(g.pass);
        assert!((val(&g.gap) - 0.1041667).abs() < 1e-6);
    }

    #[test]
    fn kyfan_gap_equal_operands() {
        let a = HermitianMatrix::from_diag(&[0.1, 0.3]);
        let g = kyfan_gap(Part::I, &a, &a, w(0.4), &cfg()).unwrap();
        assert!(g.pass);
        assert!(g.gap.frobenius_norm() < 1e-15);
        let g = commutative_kyfan_gap(CommutativeGapPart::InvGap, &a, &a, w(0.4), &cfg()).unwrap();
        assert!(g.pass);
        assert!(g.gap.frobenius_norm() < 1e-13);
    }

    #[test]
    fn kyfan_gap_domain() {
        let a = HermitianMatrix::from_diag(&[0.1, 0.6]);
        let b = HermitianMatrix::from_diag(&[0.1, 0.3]);
        for part in Part::ALL {
            assert!(matches!(
                kyfan_gap(part, &a, &b, Weight::HALF, &cfg()),
                Err(Error::DomainViolation(_))
            ));
        }
        assert!(matches!(
            commutative_kyfan_gap(CommutativeGapPart::RatioGap, &a, &b, Weight::HALF, &cfg()),
            Err(Error::DomainViolation(_))
        ));
    }
}
