use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Argument outside the domain of the operation (e.g. `Im μ ≤ 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input violates a type invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Truncated m-function did not settle between `X` and `2X`.
    #[error("m-function did not converge at mu = {mu}: |M_X - M_2X| = {delta:.3e} at X = {truncation}")]
    Accuracy { mu: C64, truncation: f64, delta: f64 },

    /// The sample set cannot decide `s₊ ≈ s₋`.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    /// `I - V·Sh(μ)` is singular.
    #[error("mu = {0} is a pole of the Weyl function")]
    Pole(C64),

    /// Integrator or root finder gave up.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Two routes that must agree did not.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub(crate) fn require_upper(mu: C64, what: &str) -> Result<()> {
    if !(mu.im > 0.0) || !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::Domain(format!("{what} requires Im mu > 0, got {mu}")));
    }
    Ok(())
}
