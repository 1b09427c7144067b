//! Characteristic functions `Sh(μ) = diag(s₊(μ), s₋(μ))` for concrete operators.
//!
//! `Sh(μ)e₊₊ = s₊(μ)e₋₊` and `Sh(μ)e₊₋ = s₋(μ)e₋₋`. Every provider satisfies
//! `s±(i) = 0` and `|s±| ≤ 1` on the upper half-plane.

mod mfunction;

use std::f64::consts::TAU;
use std::sync::Arc;

pub use mfunction::{tw_mfunction, Potential, Side, Step, SturmLiouvilleModel};

use crate::error::require_upper;
use crate::sqrt::sqrt_upper;
use crate::{Error, Result, C64, I};

/// Default residual tolerance for [`approx_equal_test`].
pub const APPROX_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
enum Provider {
    DegenerateSl,
    IndefiniteSl(Arc<IndefiniteSl>),
    Zero,
    /// `s±(μ) = a±·(μ − i)/(μ + i)`.
    Mobius { plus: C64, minus: C64 },
}

#[derive(Debug)]
struct IndefiniteSl {
    model: SturmLiouvilleModel,
    m_plus: [C64; 2],
    m_minus: [C64; 2],
}

impl IndefiniteSl {
    fn s(&self, side: Side, mu: C64) -> Result<C64> {
        let [at_i, at_mi] = match side {
            Side::Plus => self.m_plus,
            Side::Minus => self.m_minus,
        };
        let m = tw_mfunction(&self.model, side, mu)?;
        Ok((m - at_i) / (m - at_mi))
    }
}

/// The pair `s₊, s₋` of a symmetric operator, optionally re-gauged.
///
/// A gauge phase `α` multiplies `s₋` by `e^{iα}`; it corresponds to replacing
/// the basis vector `e₋₋` by `e^{−iα}e₋₋`.
#[derive(Debug, Clone)]
pub struct CharacteristicData {
    provider: Provider,
    gauge: f64,
}

impl CharacteristicData {
    fn from_provider(provider: Provider) -> Self {
        Self { provider, gauge: 0.0 }
    }

    /// Synthetic data `s±(μ) = a±(μ − i)/(μ + i)` with `|a±| ≤ 1`.
    pub fn mobius(plus: C64, minus: C64) -> Result<Self> {
        if plus.norm() > 1.0 || minus.norm() > 1.0 {
            return Err(Error::Invalid("Mobius amplitudes must lie in the closed unit disk".into()));
        }
        Ok(Self::from_provider(Provider::Mobius { plus, minus }))
    }

    pub fn name(&self) -> &'static str {
        match self.provider {
            Provider::DegenerateSl => "degenerate_sl",
            Provider::IndefiniteSl(_) => "indefinite_sl",
            Provider::Zero => "zero",
            Provider::Mobius { .. } => "mobius",
        }
    }

    pub fn identically_zero(&self) -> bool {
        match self.provider {
            Provider::Zero => true,
            Provider::Mobius { plus, minus } => plus == C64::new(0.0, 0.0) && minus == C64::new(0.0, 0.0),
            _ => false,
        }
    }

    pub fn gauge_phase(&self) -> f64 {
        self.gauge
    }

    /// Same data with `s₋` multiplied by an extra `e^{iα}`.
    pub fn regauged(&self, alpha: f64) -> Self {
        Self { provider: self.provider.clone(), gauge: (self.gauge + alpha).rem_euclid(TAU) }
    }

    /// Re-gauge so that `s₊ = s₋` when the test found `e^{iα}s₋ = s₊`.
    pub fn gauged_by(&self, verdict: &ApproxEqualResult) -> Self {
        match verdict {
            ApproxEqualResult::EquivalentWithPhase(alpha) if *alpha != 0.0 => self.regauged(*alpha),
            _ => self.clone(),
        }
    }

    pub fn s_plus(&self, mu: C64) -> Result<C64> {
        require_upper(mu, "s_plus")?;
        self.raw(Side::Plus, mu)
    }

    pub fn s_minus(&self, mu: C64) -> Result<C64> {
        require_upper(mu, "s_minus")?;
        Ok(self.raw(Side::Minus, mu)? * C64::from_polar(1.0, self.gauge))
    }

    /// `(s₊(μ), s₋(μ))`.
    pub fn eval(&self, mu: C64) -> Result<(C64, C64)> {
        Ok((self.s_plus(mu)?, self.s_minus(mu)?))
    }

    fn raw(&self, side: Side, mu: C64) -> Result<C64> {
        match &self.provider {
            Provider::DegenerateSl => Ok(degenerate_s(mu)),
            Provider::IndefiniteSl(sl) => sl.s(side, mu),
            Provider::Zero => Ok(C64::new(0.0, 0.0)),
            Provider::Mobius { plus, minus } => {
                let a = if side == Side::Plus { plus } else { minus };
                Ok(a * (mu - I) / (mu + I))
            }
        }
    }
}

/// `s(μ) = (√i sin√μ cos√i − √μ cos√μ sin√i) / (√−i sin√μ cos√−i − √μ cos√μ sin√−i)`
/// with the square root cut along `[0, ∞)`.
fn degenerate_s(mu: C64) -> C64 {
    let (w, wp, wm) = (sqrt_upper(mu), sqrt_upper(I), sqrt_upper(-I));
    let (sin_w, cos_w) = (w.sin(), w.cos());
    let num = wp * sin_w * wp.cos() - w * cos_w * wp.sin();
    let den = wm * sin_w * wm.cos() - w * cos_w * wm.sin();
    num / den
}

/// `−y'' = λy` on `[−1, 1]` split at the origin with Dirichlet ends;
/// `s₊ = s₋`.
pub fn degenerate_sl() -> CharacteristicData {
    CharacteristicData::from_provider(Provider::DegenerateSl)
}

/// `(sgn x)(−y'' + q y)` on ℝ: `s±(μ) = (M±(μ) − M±(i)) / (M±(μ) − M±(−i))`.
pub fn indefinite_sl(model: SturmLiouvilleModel) -> Result<CharacteristicData> {
    model.validate()?;
    let m_plus = [
        tw_mfunction(&model, Side::Plus, I)?,
        tw_mfunction(&model, Side::Plus, -I)?,
    ];
    let m_minus = [
        tw_mfunction(&model, Side::Minus, I)?,
        tw_mfunction(&model, Side::Minus, -I)?,
    ];
    Ok(CharacteristicData::from_provider(Provider::IndefiniteSl(Arc::new(IndefiniteSl {
        model,
        m_plus,
        m_minus,
    }))))
}

/// The cached `[M₊(i), M₊(−i)]` and `[M₋(i), M₋(−i)]` of an indefinite
/// Sturm–Liouville provider.
pub fn indefinite_anchor_values(cd: &CharacteristicData) -> Option<([C64; 2], [C64; 2])> {
    match &cd.provider {
        Provider::IndefiniteSl(sl) => Some((sl.m_plus, sl.m_minus)),
        _ => None,
    }
}

/// `M₊(i)M₋(−i) / (M₊(−i)M₋(i))`: the only value of `e^{2iφ}` for which
/// `e^{2iφ}s₋ = s₊` could hold.
pub fn m_phase_candidate(model: &SturmLiouvilleModel) -> Result<C64> {
    let mp = [tw_mfunction(model, Side::Plus, I)?, tw_mfunction(model, Side::Plus, -I)?];
    let mm = [tw_mfunction(model, Side::Minus, I)?, tw_mfunction(model, Side::Minus, -I)?];
    Ok(mp[0] * mm[1] / (mp[1] * mm[0]))
}

/// `M₊M₋ sin(θ₊ − θ₋) − M₊|M₋(i)| sin θ₊ + M₋|M₊(i)| sin θ₋` at `μ`, where
/// `M±(i) = |M±(i)|e^{iθ±}`. It vanishes on all of `ℂ₊` iff `s₊ ≈ s₋`.
pub fn m_identity_residual(model: &SturmLiouvilleModel, mu: C64) -> Result<C64> {
    let (ap, am) = (tw_mfunction(model, Side::Plus, I)?, tw_mfunction(model, Side::Minus, I)?);
    let (tp, tm) = (ap.arg(), am.arg());
    let (mp, mm) = (tw_mfunction(model, Side::Plus, mu)?, tw_mfunction(model, Side::Minus, mu)?);
    Ok(mp * mm * (tp - tm).sin() - mp * am.norm() * tp.sin() + mm * ap.norm() * tm.sin())
}

pub fn zero_chardata() -> CharacteristicData {
    CharacteristicData::from_provider(Provider::Zero)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApproxEqualResult {
    /// `e^{iα}s₋ = s₊` on the samples, `α ∈ [0, 2π)`.
    EquivalentWithPhase(f64),
    /// Largest `|e^{iα}s₋ − s₊|` over the samples.
    NotEquivalent(f64),
    IdenticallyZero,
}

impl ApproxEqualResult {
    pub fn is_equivalent(&self) -> bool {
        !matches!(self, ApproxEqualResult::NotEquivalent(_))
    }
}

/// `{k/2 + (j/2)i : k, j = 1..4}`.
pub fn default_samples() -> Vec<C64> {
    (1..=4)
        .flat_map(|k| (1..=4).map(move |j| C64::new(k as f64 / 2.0, j as f64 / 2.0)))
        .collect()
}

/// Decide `s₊ ≈ s₋`, i.e. `s₊ = e^{iα}s₋` for a unimodular constant.
///
/// The phase is fitted at the first sample where `|s₋| > tol` and then
/// checked at every sample.
pub fn approx_equal_test(cd: &CharacteristicData, samples: &[C64], tol: f64) -> Result<ApproxEqualResult> {
    if cd.identically_zero() {
        return Ok(ApproxEqualResult::IdenticallyZero);
    }
    if samples.len() < 8 {
        return Err(Error::Invalid(format!("need at least 8 samples, got {}", samples.len())));
    }
    if samples.iter().all(|mu| (mu - I).norm() < 1e-3) {
        return Err(Error::Invalid("all samples sit at mu = i".into()));
    }
    let values = samples
        .iter()
        .map(|&mu| cd.eval(mu))
        .collect::<Result<Vec<_>>>()?;
    let (sp0, sm0) = values
        .iter()
        .find(|(_, sm)| sm.norm() > tol)
        .ok_or_else(|| Error::Indeterminate("s_minus is below tolerance at every sample".into()))?;
    let mut alpha = (sp0 / sm0).arg().rem_euclid(TAU);
    if TAU - alpha < 1e-12 {
        alpha = 0.0;
    }
    let phase = C64::from_polar(1.0, alpha);
    let residual = values
        .iter()
        .map(|(sp, sm)| (phase * sm - sp).norm())
        .fold(0.0_f64, f64::max);
    Ok(if residual < tol {
        ApproxEqualResult::EquivalentWithPhase(alpha)
    } else {
        ApproxEqualResult::NotEquivalent(residual)
    })
}
