//! J-self-adjoint extensions `A_U` and their classification.
//!
//! An extension is fixed by the unitary
//! `U = e^{iφ}[[q e^{iγ}, r e^{iξ}], [−r e^{−iξ}, q e^{−iγ}]]`, `q² + r² = 1`,
//! whose boundary subspace is `span{d₁, d₂}` with
//! `d₁ = e₊₊ + q e^{i(φ+γ)}e₊₋ + r e^{i(φ+ξ)}e₋₊` and
//! `d₂ = e₋₋ − r e^{i(φ−ξ)}e₊₋ + q e^{i(φ−γ)}e₋₊`.
//!
//! Classification runs in the frame where `s₊ = s₋`. If the data satisfy
//! `s₊ = e^{iα}s₋`, that frame rescales `e₋₋` by `e^{−iα}`, which acts on the
//! parameters as `(φ, γ, ξ) ↦ (φ − α/2, γ + α/2, ξ + α/2)`.

use std::f64::consts::{PI, TAU};

use nalgebra::Matrix2;

use crate::boundary_space::{BoundaryVector, SymmetryMatrix};
use crate::charfn::{approx_equal_test, default_samples, ApproxEqualResult, CharacteristicData, APPROX_TOL};
use crate::clifford::CSymmetryParams;
use crate::{Error, Result, C64, I};

/// Tolerance for comparisons of `q` and `r` against 0 and `|cos φ|`.
pub const PARAM_TOL: f64 = 1e-10;
/// Tolerance for matching unimodular phases.
pub const PHASE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParams {
    pub phi: f64,
    pub gamma: f64,
    pub xi: f64,
    pub q: f64,
    pub r: f64,
}

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if TAU - w < 1e-14 {
        0.0
    } else {
        w
    }
}

impl ExtensionParams {
    /// Validates `q, r ≥ 0` and `|q² + r² − 1| ≤ 1e−12`; angles are reduced to `[0, 2π)`.
    pub fn new(phi: f64, gamma: f64, xi: f64, q: f64, r: f64) -> Result<Self> {
        for (name, v) in [("phi", phi), ("gamma", gamma), ("xi", xi), ("q", q), ("r", r)] {
            if !v.is_finite() {
                return Err(Error::Invalid(format!("{name} must be finite")));
            }
        }
        if q < 0.0 || r < 0.0 {
            return Err(Error::Invalid(format!("q and r must be non-negative, got q = {q}, r = {r}")));
        }
        if (q * q + r * r - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("q^2 + r^2 must equal 1, got {}", q * q + r * r)));
        }
        Ok(Self { phi: wrap(phi), gamma: wrap(gamma), xi: wrap(xi), q, r })
    }

    /// `r = √(1 − q²)` for `q ∈ [0, 1]`.
    pub fn from_q(phi: f64, gamma: f64, xi: f64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Invalid(format!("q must lie in [0, 1], got {q}")));
        }
        Self::new(phi, gamma, xi, q, (1.0 - q * q).sqrt())
    }

    pub fn spanning_vectors(&self) -> (BoundaryVector, BoundaryVector) {
        let (p, g, x, q, r) = (self.phi, self.gamma, self.xi, self.q, self.r);
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let d1 = BoundaryVector([one, C64::from_polar(q, p + g), C64::from_polar(r, p + x), zero]);
        let d2 = BoundaryVector([zero, -C64::from_polar(r, p - x), C64::from_polar(q, p - g), one]);
        (d1, d2)
    }

    /// The 2×2 unitary `U`.
    pub fn matrix(&self) -> Matrix2<C64> {
        let e = C64::from_polar(1.0, self.phi);
        Matrix2::new(
            C64::from_polar(self.q, self.gamma),
            C64::from_polar(self.r, self.xi),
            -C64::from_polar(self.r, -self.xi),
            C64::from_polar(self.q, -self.gamma),
        ) * e
    }

    /// Same extension expressed in the frame where `s₋` carries an extra `e^{iα}`.
    pub fn regauged(&self, alpha: f64) -> Self {
        Self {
            phi: wrap(self.phi - alpha / 2.0),
            gamma: wrap(self.gamma + alpha / 2.0),
            xi: wrap(self.xi + alpha / 2.0),
            ..*self
        }
    }
}

/// Coordinate map into the frame where `s₋` carries an extra `e^{iα}`.
pub fn gauge_matrix(alpha: f64) -> SymmetryMatrix {
    let mut g = SymmetryMatrix::identity();
    g.0[(3, 3)] = C64::from_polar(1.0, alpha);
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionClass {
    /// `σ(A_U) = ℂ`.
    EmptyResolvent,
    /// Every C-symmetry of `S` commutes with `A_U`.
    UpsilonU,
    /// `A_U` commutes with `J` itself.
    UpsilonJ,
    /// A stable C-symmetry other than `J` exists.
    SigmaJstProper,
    Generic,
}

impl ExtensionClass {
    pub fn name(&self) -> &'static str {
        match self {
            ExtensionClass::EmptyResolvent => "EmptyResolvent",
            ExtensionClass::UpsilonU => "UpsilonU",
            ExtensionClass::UpsilonJ => "UpsilonJ",
            ExtensionClass::SigmaJstProper => "SigmaJstProper",
            ExtensionClass::Generic => "Generic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub class: ExtensionClass,
    /// C-symmetry in the gauged frame; present exactly for `UpsilonU`,
    /// `UpsilonJ` and `SigmaJstProper`.
    pub csym: Option<CSymmetryParams>,
    pub notes: Vec<String>,
    /// `α` with `s₊ = e^{iα}s₋`; zero when the data are not equivalent or vanish.
    pub gauge_phase: f64,
    /// The extension parameters in the gauged frame.
    pub gauged_params: ExtensionParams,
    /// True when a tolerance comparison decided the class.
    pub boundary: bool,
}

impl ClassificationResult {
    /// Boundary matrix of the C-symmetry in the caller's frame.
    pub fn csym_matrix(&self) -> Option<SymmetryMatrix> {
        let g = gauge_matrix(self.gauge_phase);
        let g_inv = gauge_matrix(-self.gauge_phase);
        self.csym.map(|p| g_inv * p.boundary_matrix() * g)
    }
}

/// `artanh q` computed as `ln((1 + q)/r)`, accurate as `q → 1`.
fn artanh_qr(q: f64, r: f64) -> f64 {
    ((1.0 + q) / r).ln()
}

/// Classifies many extensions against one characteristic function.
#[derive(Debug, Clone)]
pub struct Classifier {
    equivalence: ApproxEqualResult,
}

impl Classifier {
    /// Runs the `s₊ ≈ s₋` test with the default samples and tolerance.
    pub fn new(cd: &CharacteristicData) -> Result<Self> {
        Ok(Self { equivalence: approx_equal_test(cd, &default_samples(), APPROX_TOL)? })
    }

    /// Equivalence test with a custom residual tolerance.
    pub fn with_tol(cd: &CharacteristicData, tol: f64) -> Result<Self> {
        Ok(Self { equivalence: approx_equal_test(cd, &default_samples(), tol)? })
    }

    pub fn from_equivalence(equivalence: ApproxEqualResult) -> Self {
        Self { equivalence }
    }

    pub fn equivalence(&self) -> ApproxEqualResult {
        self.equivalence
    }

    pub fn classify(&self, u: &ExtensionParams) -> ClassificationResult {
        let mut res = ClassificationResult {
            class: ExtensionClass::Generic,
            csym: None,
            notes: Vec::new(),
            gauge_phase: 0.0,
            gauged_params: *u,
            boundary: false,
        };
        let (q, r) = (u.q, u.r);
        match self.equivalence {
            ApproxEqualResult::NotEquivalent(residual) => {
                res.notes.push(format!("s+ and s- are not equivalent (residual {residual:.3e})"));
                if q < PARAM_TOL {
                    res.class = ExtensionClass::UpsilonJ;
                    res.csym = Some(CSymmetryParams::j());
                    res.notes.push("stable C-symmetries reduce to Upsilon_J; the only C-symmetry of S is J if S is simple".into());
                    res.boundary = q > 0.0;
                }
            }
            ApproxEqualResult::IdenticallyZero => {
                res.notes.push("characteristic function vanishes identically; Upsilon_U is empty".into());
                if r < PARAM_TOL {
                    res.class = ExtensionClass::EmptyResolvent;
                    res.boundary = r > 0.0;
                } else if q < PARAM_TOL {
                    res.class = ExtensionClass::UpsilonJ;
                    res.csym = Some(CSymmetryParams::j());
                    res.boundary = q > 0.0;
                } else {
                    let chi = -artanh_qr(q, r);
                    res.class = ExtensionClass::SigmaJstProper;
                    res.csym = Some(CSymmetryParams::split(chi, u.gamma + u.phi, chi, u.gamma - u.phi));
                }
            }
            ApproxEqualResult::EquivalentWithPhase(alpha) => {
                let g = u.regauged(alpha);
                res.gauge_phase = alpha;
                res.gauged_params = g;
                if alpha != 0.0 {
                    res.notes.push(format!("regauged e-- by exp(-i*{alpha:.12}) so that s+ = s-"));
                }
                let e2 = C64::from_polar(1.0, 2.0 * g.phi);
                let cos_phi = g.phi.cos();
                if r < PARAM_TOL {
                    res.boundary = r > 0.0;
                    if (e2 - 1.0).norm() < PHASE_TOL {
                        res.class = ExtensionClass::EmptyResolvent;
                    } else {
                        res.boundary = true;
                        res.notes.push("r = 0 but exp(2i*phi) != 1: resolvent set is not empty".into());
                    }
                } else if q < PARAM_TOL {
                    res.boundary = q > 0.0;
                    res.csym = Some(CSymmetryParams::j());
                    res.class = if (e2 + 1.0).norm() < PHASE_TOL {
                        ExtensionClass::UpsilonU
                    } else {
                        ExtensionClass::UpsilonJ
                    };
                } else if (q - cos_phi.abs()).abs() <= PARAM_TOL {
                    res.boundary = true;
                    res.notes.push("q = |cos phi| within tolerance: no stable C-symmetry asserted".into());
                } else if q < cos_phi.abs() {
                    res.class = ExtensionClass::SigmaJstProper;
                    res.csym = Some(CSymmetryParams::uniform((-q / cos_phi).atanh(), g.gamma));
                } else {
                    res.notes.push("q > |cos phi|: no stable C-symmetry".into());
                }
            }
        }
        res
    }
}

/// One-shot classification; repeated calls should share a [`Classifier`].
pub fn classify(u: &ExtensionParams, cd: &CharacteristicData) -> Result<ClassificationResult> {
    Ok(Classifier::new(cd)?.classify(u))
}

/// Parameters of a C-symmetry commuting with `A_U` (gauged frame).
pub fn csymmetry_of(u: &ExtensionParams, cd: &CharacteristicData) -> Result<CSymmetryParams> {
    let res = classify(u, cd)?;
    res.csym.ok_or_else(|| {
        Error::Domain(format!("extension of class {} has no stable C-symmetry", res.class.name()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseSet {
    /// `φ ∈ {α/2, α/2 + π}`.
    Pair([f64; 2]),
    /// Every `φ ∈ [0, 2π)`.
    Free,
}

/// Extensions with empty resolvent set: `r = 0`, `γ` free, `φ` restricted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmptyResolventFamily {
    Empty,
    Family { phases: PhaseSet },
}

impl EmptyResolventFamily {
    pub fn from_equivalence(eq: ApproxEqualResult) -> Self {
        family_from(eq)
    }

    pub fn contains(&self, u: &ExtensionParams) -> bool {
        match self {
            EmptyResolventFamily::Empty => false,
            EmptyResolventFamily::Family { phases } => {
                u.r < PARAM_TOL
                    && match phases {
                        PhaseSet::Free => true,
                        PhaseSet::Pair([a, _]) => {
                            (C64::from_polar(1.0, 2.0 * u.phi) - C64::from_polar(1.0, 2.0 * a)).norm() < PHASE_TOL
                        }
                    }
            }
        }
    }
}

pub fn empty_resolvent_family(cd: &CharacteristicData) -> Result<EmptyResolventFamily> {
    Ok(family_from(approx_equal_test(cd, &default_samples(), APPROX_TOL)?))
}

pub(crate) fn family_from(eq: ApproxEqualResult) -> EmptyResolventFamily {
    match eq {
        ApproxEqualResult::NotEquivalent(_) => EmptyResolventFamily::Empty,
        ApproxEqualResult::IdenticallyZero => EmptyResolventFamily::Family { phases: PhaseSet::Free },
        ApproxEqualResult::EquivalentWithPhase(alpha) => EmptyResolventFamily::Family {
            phases: PhaseSet::Pair([alpha / 2.0, alpha / 2.0 + PI]),
        },
    }
}

/// Weyl function `M(μ) = i(I + V·Sh(μ))(I − V·Sh(μ))^{−1}` for a unitary `V`.
pub fn weyl_from_sh(cd: &CharacteristicData, v: &Matrix2<C64>, mu: C64) -> Result<Matrix2<C64>> {
    let unitarity = (v.adjoint() * v - Matrix2::identity()).camax();
    if unitarity > 1e-10 {
        return Err(Error::Invalid(format!("V is not unitary (deviation {unitarity:.3e})")));
    }
    let (sp, sm) = cd.eval(mu)?;
    let k = v * Matrix2::new(sp, C64::new(0.0, 0.0), C64::new(0.0, 0.0), sm);
    let a = Matrix2::identity() - k;
    let det = a.determinant();
    if det.norm() < 1e-13 {
        return Err(Error::Pole(mu));
    }
    let inv = Matrix2::new(a[(1, 1)], -a[(0, 1)], -a[(1, 0)], a[(0, 0)]) / det;
    Ok((Matrix2::identity() + k) * inv * I)
}

/// Extension in `Υ_𝔘` built from the polar factor of `Sh(μ)`:
/// its boundary subspace is `span{(I + V)e₊₊, (I + V)e₊₋}` with
/// `V = diag(s₊/|s₊|, s₋/|s₋|)`.
pub fn upsilon_u_member(cd: &CharacteristicData, mu: C64) -> Result<ExtensionParams> {
    let (sp, sm) = cd.eval(mu)?;
    if sp.norm() <= 1e-12 || sm.norm() <= 1e-12 {
        return Err(Error::Domain(format!("Sh({mu}) is not invertible")));
    }
    let a = sp.arg(); // φ + ξ
    let b = (-(sm / sm.norm()).conj()).arg(); // φ − ξ
    let mut phi = (a + b) / 2.0;
    let mut xi = (a - b) / 2.0;
    phi = phi.rem_euclid(TAU);
    if phi >= PI {
        phi -= PI;
        xi += PI;
    }
    ExtensionParams::new(phi, 0.0, xi, 0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary_space::{extension_subspace, intersection_dim};
    use crate::charfn::{degenerate_sl, zero_chardata};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn constraint_is_enforced() {
        assert!(ExtensionParams::new(0.0, 0.0, 0.0, 1.2, 0.0).is_err());
        assert!(ExtensionParams::new(0.0, 0.0, 0.0, -0.6, 0.8).is_err());
        assert!(ExtensionParams::new(f64::NAN, 0.0, 0.0, 0.6, 0.8).is_err());
        let u = ExtensionParams::new(-1.0, 7.0, 0.0, 0.6, 0.8).unwrap();
        assert!(u.phi >= 0.0 && u.phi < TAU && u.gamma < TAU);
    }

    #[test]
    fn matrix_is_unitary() {
        let u = ExtensionParams::new(0.3, 1.1, 2.5, 0.6, 0.8).unwrap().matrix();
        assert!((u.adjoint() * u - Matrix2::identity()).camax() < 1e-15);
    }

    #[test]
    fn regauging_matches_coordinate_change() {
        let u = ExtensionParams::new(0.3, 1.1, 2.5, 0.6, 0.8).unwrap();
        let alpha = 0.9;
        let m = extension_subspace(&u);
        let moved = gauge_matrix(alpha).image(&m).unwrap();
        assert_eq!(intersection_dim(&moved, &extension_subspace(&u.regauged(alpha))), 2);
    }

    #[test]
    fn upsilon_u_on_degenerate() {
        let u = ExtensionParams::new(FRAC_PI_2, 0.0, 0.0, 0.0, 1.0).unwrap();
        let res = classify(&u, &degenerate_sl()).unwrap();
        assert_eq!(res.class, ExtensionClass::UpsilonU);
        assert_eq!(res.csym, Some(CSymmetryParams::j()));
    }

    #[test]
    fn zero_data_sigma_example() {
        let u = ExtensionParams::new(0.4, 1.2, 0.0, 0.6, 0.8).unwrap();
        let res = classify(&u, &zero_chardata()).unwrap();
        assert_eq!(res.class, ExtensionClass::SigmaJstProper);
        let c = res.csym.unwrap();
        assert!((c.chi1 + 0.6f64.atanh()).abs() < 1e-14);
        assert!((c.chi1 + std::f64::consts::LN_2).abs() < 1e-12);
        assert!((c.omega1 - 1.6).abs() < 1e-14 && (c.omega2 - 0.8).abs() < 1e-14);
        let m = extension_subspace(&u);
        assert_eq!(intersection_dim(&c.boundary_matrix().image(&m).unwrap(), &m), 2);
    }

    #[test]
    fn zero_data_second_example() {
        let u = ExtensionParams::from_q(0.4, 1.2, 0.0, 0.5).unwrap();
        let c = csymmetry_of(&u, &zero_chardata()).unwrap();
        assert!((c.chi1 + 0.549_306_144_334_054_9).abs() < 1e-12);
    }

    #[test]
    fn degenerate_empty_resolvent_member() {
        let u = ExtensionParams::new(0.0, 2.2, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(classify(&u, &degenerate_sl()).unwrap().class, ExtensionClass::EmptyResolvent);
        let u = ExtensionParams::new(PI / 3.0, 2.2, 0.0, 1.0, 0.0).unwrap();
        let res = classify(&u, &degenerate_sl()).unwrap();
        assert_eq!(res.class, ExtensionClass::Generic);
        assert!(res.boundary);
    }

    #[test]
    fn sigma_inversion_with_cos_minus_one() {
        let u = ExtensionParams::from_q(PI, 1.0, 0.0, 0.3).unwrap();
        let c = csymmetry_of(&u, &degenerate_sl()).unwrap();
        assert!((c.chi1 - 0.309_519_604_203_111_6).abs() < 1e-12);
        assert!((c.omega1 - 1.0).abs() < 1e-14);
        assert!(c.is_uniform());
    }

    #[test]
    fn threshold_is_generic() {
        let u = ExtensionParams::from_q(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(classify(&u, &degenerate_sl()).unwrap().class, ExtensionClass::EmptyResolvent);
        let u = ExtensionParams::from_q(1.2, 1.0, 0.0, 0.8).unwrap();
        let res = classify(&u, &degenerate_sl()).unwrap();
        assert_eq!(res.class, ExtensionClass::Generic);
        assert!(csymmetry_of(&u, &degenerate_sl()).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(
            empty_resolvent_family(&degenerate_sl()).unwrap(),
            EmptyResolventFamily::Family { phases: PhaseSet::Pair([0.0, PI]) }
        );
        assert_eq!(
            empty_resolvent_family(&zero_chardata()).unwrap(),
            EmptyResolventFamily::Family { phases: PhaseSet::Free }
        );
    }

    #[test]
    fn weyl_examples() {
        let v = Matrix2::new(C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        let m = weyl_from_sh(&zero_chardata(), &v, C64::new(1.0, 1.0)).unwrap();
        assert_eq!(m, Matrix2::identity() * I);
        let m = weyl_from_sh(&degenerate_sl(), &v, I).unwrap();
        assert!((m - Matrix2::identity() * I).camax() < 1e-14);
        let half = CharacteristicData::mobius(C64::new(0.5, 0.0), C64::new(0.5, 0.0)).unwrap();
        // s(μ) = 0.5·(μ − i)/(μ + i) tends to 0.5 as μ → ∞ along the real direction
        let mu = C64::new(1e9, 1.0);
        let m = weyl_from_sh(&half, &Matrix2::identity(), mu).unwrap();
        assert!((m[(0, 0)] - C64::new(0.0, 3.0)).norm() < 1e-6);
        assert!(weyl_from_sh(&half, &(Matrix2::identity() * C64::new(2.0, 0.0)), mu).is_err());
    }

    #[test]
    fn upsilon_u_member_examples() {
        assert!(matches!(upsilon_u_member(&zero_chardata(), I * 2.0), Err(Error::Domain(_))));
        let u = upsilon_u_member(&degenerate_sl(), I * 2.0).unwrap();
        assert_eq!(u.q, 0.0);
        assert!((u.phi - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(classify(&u, &degenerate_sl()).unwrap().class, ExtensionClass::UpsilonU);
    }

    #[test]
    fn upsilon_u_member_spans_polar_graph() {
        let cd = CharacteristicData::mobius(C64::from_polar(0.7, 0.4), C64::from_polar(0.7, -2.0)).unwrap();
        let mu = C64::new(0.5, 2.0);
        let (sp, sm) = cd.eval(mu).unwrap();
        let (vp, vm) = (sp / sp.norm(), sm / sm.norm());
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let graph = crate::BoundarySubspace::new(vec![
            BoundaryVector([one, z, vp, z]),
            BoundaryVector([z, one, z, vm]),
        ])
        .unwrap();
        let u = upsilon_u_member(&cd, mu).unwrap();
        assert_eq!(intersection_dim(&graph, &extension_subspace(&u)), 2);
        assert_eq!(classify(&u, &cd).unwrap().class, ExtensionClass::UpsilonU);
    }
}
