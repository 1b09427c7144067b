//! Numerical toolkit for J-self-adjoint extensions of a symmetric operator `S`
//! with deficiency indices `<2,2>` that commutes with a fundamental symmetry `J`.
//!
//! Everything operates on the 4-dimensional boundary model
//! `𝔐 = 𝔑_i ∔ 𝔑_{-i}` with the ordered basis `(e₊₊, e₊₋, e₋₊, e₋₋)`:
//!
//! - [`boundary_space`]: vectors, subspaces and the canonical symmetries `Z`, `J`, `R`.
//! - [`clifford`]: the algebra `span{I, J, R, JR}` and the `C_{χ,ω}` family.
//! - [`charfn`]: characteristic-function providers (closed-form degenerate
//!   Sturm–Liouville, indefinite Sturm–Liouville via Titchmarsh–Weyl coefficients,
//!   zero function) and the `s₊ ≈ s₋` test.
//! - [`extensions`]: the unitary parametrization of extensions and their classification.
//! - [`spectral`]: the determinant function, argument-principle root finding and
//!   an independent shooting oracle.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary_space;
pub mod charfn;
pub mod clifford;
mod error;
pub mod extensions;
pub mod ode;
pub mod spectral;
pub mod sqrt;

pub use boundary_space::{
    defect_curve, extension_subspace, inner, intersection_dim, is_hypermaximal_neutral,
    metric_jz, metric_z, BoundarySubspace, BoundaryVector, SymmetryMatrix,
};
pub use charfn::{
    approx_equal_test, default_samples, degenerate_sl, indefinite_sl, m_identity_residual,
    m_phase_candidate, tw_mfunction, zero_chardata, ApproxEqualResult, CharacteristicData, Potential, Side, Step, SturmLiouvilleModel,
};
pub use clifford::{
    anticommuting_partner, c_chi_omega, is_fundamental_symmetry, verify_c_axioms,
    CSymmetryParams, CliffordElement,
};
pub use error::{Error, Result};
pub use extensions::{
    classify, csymmetry_of, empty_resolvent_family, upsilon_u_member, weyl_from_sh,
    ClassificationResult, Classifier, EmptyResolventFamily, ExtensionClass, ExtensionParams,
    PhaseSet,
};
pub use spectral::{
    det_f, empty_resolvent_verdict, nonreal_eigenvalues, shooting_residual, Eigenvalue,
    ResolventProbe, SearchBox, ShootingOracle, SpectralReport, Verdict,
};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
