//! The boundary model `𝔐 = 𝔑_i ∔ 𝔑_{-i}`.
//!
//! Coordinates are taken with respect to the ordered basis
//! `(e₊₊, e₊₋, e₋₊, e₋₋)`: the first sign says which defect space (`±i`),
//! the second which half of the fundamental decomposition of `J`. All four
//! basis vectors are normalized to norm one; the common factor of the
//! boundary inner product drops out of every formula used here.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Matrix4};

use crate::charfn::CharacteristicData;
use crate::error::require_upper;
use crate::extensions::ExtensionParams;
use crate::{Error, Result, C64};

/// Default relative singular-value cutoff for rank decisions.
pub const RANK_TOL: f64 = 1e-10;

const NEUTRAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryVector(pub [C64; 4]);

impl BoundaryVector {
    pub const ZERO: Self = Self([C64::new(0.0, 0.0); 4]);

    pub fn new(coords: [C64; 4]) -> Result<Self> {
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Invalid(format!("non-finite boundary coordinates {coords:?}")));
        }
        Ok(Self(coords))
    }

    pub const fn basis(k: usize) -> Self {
        let mut c = [C64::new(0.0, 0.0); 4];
        c[k] = C64::new(1.0, 0.0);
        Self(c)
    }

    pub fn e_pp() -> Self {
        Self::basis(0)
    }
    pub fn e_pm() -> Self {
        Self::basis(1)
    }
    pub fn e_mp() -> Self {
        Self::basis(2)
    }
    pub fn e_mm() -> Self {
        Self::basis(3)
    }

    pub fn coords(&self) -> &[C64; 4] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        inner(self, self).re.sqrt()
    }
}

impl Add for BoundaryVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for BoundaryVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for BoundaryVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul<BoundaryVector> for C64 {
    type Output = BoundaryVector;
    fn mul(self, rhs: BoundaryVector) -> BoundaryVector {
        BoundaryVector(rhs.0.map(|c| self * c))
    }
}

impl Mul<BoundaryVector> for f64 {
    type Output = BoundaryVector;
    fn mul(self, rhs: BoundaryVector) -> BoundaryVector {
        BoundaryVector(rhs.0.map(|c| c * self))
    }
}

/// Hilbert inner product `Σ x_k conj(y_k)`.
pub fn inner(x: &BoundaryVector, y: &BoundaryVector) -> C64 {
    x.0.iter().zip(y.0.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// `[x, y]_{JZ} = (JZx, y)`; signature `(+, −, −, +)` on the basis.
pub fn metric_jz(x: &BoundaryVector, y: &BoundaryVector) -> C64 {
    inner(&SymmetryMatrix::jz().apply(x), y)
}

/// `[x, y]_Z = (Zx, y)`, the metric whose hypermaximal neutral subspaces give
/// the self-adjoint extensions.
pub fn metric_z(x: &BoundaryVector, y: &BoundaryVector) -> C64 {
    inner(&SymmetryMatrix::z().apply(x), y)
}

/// A 4×4 operator on boundary coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryMatrix(pub Matrix4<C64>);

fn real_diag(d: [f64; 4]) -> Matrix4<C64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::from(d.map(|v| C64::new(v, 0.0))))
}

impl SymmetryMatrix {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// `+1` on `𝔑_i`, `−1` on `𝔑_{-i}`.
    pub fn z() -> Self {
        Self(real_diag([1.0, 1.0, -1.0, -1.0]))
    }

    pub fn j() -> Self {
        Self(real_diag([1.0, -1.0, 1.0, -1.0]))
    }

    /// Swaps `e₊₊ ↔ e₊₋` and `e₋₊ ↔ e₋₋`.
    pub fn r() -> Self {
        let one = C64::new(1.0, 0.0);
        let mut m = Matrix4::zeros();
        m[(0, 1)] = one;
        m[(1, 0)] = one;
        m[(2, 3)] = one;
        m[(3, 2)] = one;
        Self(m)
    }

    pub fn jz() -> Self {
        Self::j() * Self::z()
    }

    /// Block-diagonal operator acting by `on_plus` on `𝔑_i = span{e₊₊, e₊₋}`
    /// and by `on_minus` on `𝔑_{-i} = span{e₋₊, e₋₋}`.
    pub fn from_blocks(on_plus: [[C64; 2]; 2], on_minus: [[C64; 2]; 2]) -> Self {
        let mut m = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = on_plus[i][j];
                m[(i + 2, j + 2)] = on_minus[i][j];
            }
        }
        Self(m)
    }

    pub fn apply(&self, x: &BoundaryVector) -> BoundaryVector {
        let v = self.0 * nalgebra::Vector4::from(x.0);
        BoundaryVector([v[0], v[1], v[2], v[3]])
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).iter().fold(0.0_f64, |m, v| m.max(v.norm()))
    }

    /// Image of a subspace; `None` if the image drops dimension.
    pub fn image(&self, m: &BoundarySubspace) -> Option<BoundarySubspace> {
        BoundarySubspace::new(m.vectors().iter().map(|v| self.apply(v)).collect()).ok()
    }
}

impl Mul for SymmetryMatrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Add for SymmetryMatrix {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for SymmetryMatrix {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul<SymmetryMatrix> for C64 {
    type Output = SymmetryMatrix;
    fn mul(self, rhs: SymmetryMatrix) -> SymmetryMatrix {
        SymmetryMatrix(rhs.0 * self)
    }
}

/// Span of 1–4 linearly independent boundary vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySubspace {
    vectors: Vec<BoundaryVector>,
}

impl BoundarySubspace {
    pub fn new(vectors: Vec<BoundaryVector>) -> Result<Self> {
        Self::with_tol(vectors, RANK_TOL)
    }

    pub fn with_tol(vectors: Vec<BoundaryVector>, rank_tol: f64) -> Result<Self> {
        if vectors.is_empty() || vectors.len() > 4 {
            return Err(Error::Invalid(format!(
                "a boundary subspace needs 1..=4 spanning vectors, got {}",
                vectors.len()
            )));
        }
        let m = columns(&vectors);
        if rank(&m, rank_tol) != vectors.len() {
            return Err(Error::Invalid("spanning vectors are linearly dependent".into()));
        }
        Ok(Self { vectors })
    }

    pub fn vectors(&self) -> &[BoundaryVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinate matrix with the spanning vectors as columns.
    pub fn matrix(&self) -> DMatrix<C64> {
        columns(&self.vectors)
    }

    /// `L_μ = (I − Sh(μ))𝔑_i` from the values `s₊(μ)`, `s₋(μ)`.
    pub fn defect_plane(s_plus: C64, s_minus: C64) -> Self {
        let c1 = BoundaryVector::e_pp() - s_plus * BoundaryVector::e_mp();
        let c2 = BoundaryVector::e_pm() - s_minus * BoundaryVector::e_mm();
        Self { vectors: vec![c1, c2] }
    }
}

fn columns(vectors: &[BoundaryVector]) -> DMatrix<C64> {
    DMatrix::from_fn(4, vectors.len(), |i, j| vectors[j].0[i])
}

/// Numerical rank: singular values above `rel_tol × σ_max`.
pub fn rank(m: &DMatrix<C64>, rel_tol: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0_f64, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// The subspace `M = span{d₁, d₂}` defining the extension `A_U`.
pub fn extension_subspace(u: &ExtensionParams) -> BoundarySubspace {
    let (d1, d2) = u.spanning_vectors();
    BoundarySubspace { vectors: vec![d1, d2] }
}

/// `L_μ = span{e₊₊ − s₊(μ)e₋₊, e₊₋ − s₋(μ)e₋₋}` for `μ ∈ ℂ₊`.
pub fn defect_curve(cd: &CharacteristicData, mu: C64) -> Result<BoundarySubspace> {
    require_upper(mu, "defect_curve")?;
    let (sp, sm) = cd.eval(mu)?;
    Ok(BoundarySubspace::defect_plane(sp, sm))
}

/// `dim(A ∩ B) = dim A + dim B − rank[A | B]`.
pub fn intersection_dim(a: &BoundarySubspace, b: &BoundarySubspace) -> usize {
    intersection_dim_with_tol(a, b, RANK_TOL)
}

pub fn intersection_dim_with_tol(a: &BoundarySubspace, b: &BoundarySubspace, rank_tol: f64) -> usize {
    let mut all = a.vectors.clone();
    all.extend_from_slice(&b.vectors);
    a.dim() + b.dim() - rank(&columns(&all), rank_tol)
}

/// Largest `|[x, y]_{JZ}|` over pairs of spanning vectors, relative to their norms.
pub fn neutrality_residual(m: &BoundarySubspace) -> f64 {
    let mut worst = 0.0_f64;
    for x in &m.vectors {
        for y in &m.vectors {
            worst = worst.max(metric_jz(x, y).norm() / (x.norm() * y.norm()));
        }
    }
    worst
}

/// In a 4-dimensional space of signature (2, 2) a 2-dimensional neutral
/// subspace is hypermaximal neutral.
pub fn is_hypermaximal_neutral(m: &BoundarySubspace) -> bool {
    m.dim() == 2 && neutrality_residual(m) < NEUTRAL_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::zero_chardata;
    use crate::I;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn span(v: &[BoundaryVector]) -> BoundarySubspace {
        BoundarySubspace::new(v.to_vec()).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let (pp, mm) = (BoundaryVector::e_pp(), BoundaryVector::e_mm());
        assert_eq!(inner(&pp, &pp), c(1.0, 0.0));
        assert_eq!(inner(&pp, &mm), c(0.0, 0.0));
        let v = BoundaryVector([c(1.0, 0.0), I, c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(inner(&v, &v), c(2.0, 0.0));
        // conjugate-linear in the second slot
        assert_eq!(inner(&(I * pp), &pp), I);
        assert_eq!(inner(&pp, &(I * pp)), -I);
    }

    #[test]
    fn jz_metric_examples() {
        let (pp, pm) = (BoundaryVector::e_pp(), BoundaryVector::e_pm());
        assert_eq!(metric_jz(&pp, &pp), c(1.0, 0.0));
        assert_eq!(metric_jz(&pm, &pm), c(-1.0, 0.0));
        assert_eq!(metric_jz(&(pp + pm), &(pp + pm)), c(0.0, 0.0));
        let signs: Vec<f64> = (0..4)
            .map(|k| metric_jz(&BoundaryVector::basis(k), &BoundaryVector::basis(k)).re)
            .collect();
        assert_eq!(signs, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn z_metric_signs() {
        let signs: Vec<f64> = (0..4)
            .map(|k| metric_z(&BoundaryVector::basis(k), &BoundaryVector::basis(k)).re)
            .collect();
        assert_eq!(signs, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn canonical_relations() {
        let (id, z, j, r) = (
            SymmetryMatrix::identity(),
            SymmetryMatrix::z(),
            SymmetryMatrix::j(),
            SymmetryMatrix::r(),
        );
        for m in [z, j, r] {
            assert_eq!((m * m).max_abs_diff(&id), 0.0);
            assert_eq!(m.adjoint().max_abs_diff(&m), 0.0);
        }
        assert_eq!((j * r + r * j).max_abs_diff(&SymmetryMatrix(Matrix4::zeros())), 0.0);
        assert_eq!((z * j).max_abs_diff(&(j * z)), 0.0);
        assert_eq!((z * r).max_abs_diff(&(r * z)), 0.0);
    }

    #[test]
    fn extension_subspace_substitutions() {
        let (pp, pm, mp, mm) = (
            BoundaryVector::e_pp(),
            BoundaryVector::e_pm(),
            BoundaryVector::e_mp(),
            BoundaryVector::e_mm(),
        );
        let a = extension_subspace(&ExtensionParams::new(0.0, 0.0, 0.0, 1.0, 0.0).unwrap());
        assert_eq!(a.vectors(), &[pp + pm, mm + mp]);
        let b = extension_subspace(&ExtensionParams::new(0.0, 0.0, 0.0, 0.0, 1.0).unwrap());
        assert_eq!(b.vectors(), &[pp + mp, mm - pm]);
        assert!(is_hypermaximal_neutral(&a));
        assert!(is_hypermaximal_neutral(&b));
    }

    #[test]
    fn hypermaximal_neutral_rejections() {
        let (pp, pm, mm) = (BoundaryVector::e_pp(), BoundaryVector::e_pm(), BoundaryVector::e_mm());
        assert!(!is_hypermaximal_neutral(&span(&[pp, mm])));
        assert!(!is_hypermaximal_neutral(&span(&[pp + pm])));
    }

    #[test]
    fn intersection_examples() {
        let (pp, pm) = (BoundaryVector::e_pp(), BoundaryVector::e_pm());
        let m = extension_subspace(&ExtensionParams::new(0.0, 0.0, 0.0, 1.0, 0.0).unwrap());
        assert_eq!(intersection_dim(&m, &m), 2);
        let ni = span(&[pp, pm]);
        assert_eq!(intersection_dim(&m, &ni), 1);
        assert_eq!(intersection_dim(&ni, &m), 1);
    }

    #[test]
    fn dependent_vectors_rejected() {
        let pp = BoundaryVector::e_pp();
        assert!(BoundarySubspace::new(vec![pp, c(2.0, 1.0) * pp]).is_err());
        assert!(BoundarySubspace::new(vec![]).is_err());
        assert!(BoundaryVector::new([c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn defect_curve_of_zero_data_is_n_i() {
        let cd = zero_chardata();
        let l = defect_curve(&cd, c(0.3, 2.0)).unwrap();
        let ni = span(&[BoundaryVector::e_pp(), BoundaryVector::e_pm()]);
        assert_eq!(intersection_dim(&l, &ni), 2);
        assert!(defect_curve(&cd, c(1.0, -1.0)).is_err());
        assert!(defect_curve(&cd, c(1.0, 0.0)).is_err());
    }
}
