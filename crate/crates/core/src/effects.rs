//! The effect algebra `E(H)`: Hermitian operators between `0` and `I`.

use crate::error::{check_dims, Error, Result};
use crate::numkern::{
    eig_hermitian, inner, numerical_rank, psd_leq, range_projector_from, vec_norm, EigenDecomp,
    Matrix, C64,
};
use crate::tolerance::ToleranceConfig;

/// A validated effect: Hermitian, spectrum inside `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    matrix: Matrix,
}

impl Effect {
    /// Validates `m` as an effect.
    ///
    /// Eigenvalues in `[−eps_psd, 0)` or `(1, 1 + eps_psd]` are clamped onto
    /// the interval; anything further out is rejected.
    pub fn new(m: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        let d = eig_hermitian(m, tol)?;
        Self::from_decomp(m, &d, tol)
    }

    pub(crate) fn from_decomp(m: &Matrix, d: &EigenDecomp, tol: &ToleranceConfig) -> Result<Self> {
        let (lo, hi) = (d.min_eigenvalue(), d.max_eigenvalue());
        if lo < -tol.eps_psd {
            return Err(Error::SpectrumOutOfRange { eigenvalue: lo });
        }
        if hi > 1.0 + tol.eps_psd {
            return Err(Error::SpectrumOutOfRange { eigenvalue: hi });
        }
        let matrix = if lo < 0.0 || hi > 1.0 {
            d.map_spectrum(|l| l.clamp(0.0, 1.0))
        } else {
            m.hermitian_part()
        };
        Ok(Self { matrix })
    }

    /// Wraps a matrix already known to be an effect (results of spectral
    /// maps that cannot leave `[0, 1]`).
    pub(crate) fn from_trusted(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_trusted(Matrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_trusted(Matrix::identity(n))
    }

    /// `λI`; `λ` must lie in `[0, 1]`.
    pub fn scalar(n: usize, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::DomainError {
                value: lambda,
                domain: "[0, 1]",
            });
        }
        Ok(Self::from_trusted(Matrix::scalar(n, lambda)))
    }

    pub fn from_diag(diag: &[f64], tol: &ToleranceConfig) -> Result<Self> {
        Self::new(&Matrix::from_diag(diag), tol)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn eig(&self, tol: &ToleranceConfig) -> Result<EigenDecomp> {
        eig_hermitian(&self.matrix, tol)
    }

    /// `λA` for `λ ∈ [0, 1]`.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::DomainError {
                value: lambda,
                domain: "[0, 1]",
            });
        }
        Ok(Self::from_trusted(self.matrix.scale(lambda)))
    }

    /// Löwner order `A ≤ B`.
    pub fn leq(&self, other: &Effect, tol: &ToleranceConfig) -> Result<bool> {
        psd_leq(&self.matrix, &other.matrix, tol)
    }

    /// Tolerance equality: `‖A − B‖_F ≤ eps_eq`.
    pub fn approx_eq(&self, other: &Effect, tol: &ToleranceConfig) -> Result<bool> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.distance(other) <= tol.eps_eq)
    }

    /// `‖A − B‖_F`. Panics on dimension mismatch.
    pub fn distance(&self, other: &Effect) -> f64 {
        (&self.matrix - &other.matrix).frobenius_norm()
    }

    /// `A′ = I − A`.
    pub fn orthocomplement(&self) -> Self {
        Self::from_trusted(&Matrix::identity(self.dim()) - &self.matrix)
    }

    /// `AB = 0`, tested as `‖AB‖_F ≤ eps_eq · max(1, ‖A‖_F ‖B‖_F)`.
    pub fn zero_product(&self, other: &Effect, tol: &ToleranceConfig) -> Result<bool> {
        let prod = self.matrix.try_mul(&other.matrix)?;
        let scale = (self.matrix.frobenius_norm() * other.matrix.frobenius_norm()).max(1.0);
        Ok(prod.frobenius_norm() <= tol.eps_eq * scale)
    }

    /// Every eigenvalue lies within `eps_psd` of `0` or `1`.
    pub fn is_projection(&self, tol: &ToleranceConfig) -> Result<bool> {
        let d = self.eig(tol)?;
        Ok(d.eigenvalues
            .iter()
            .all(|&l| l.abs() <= tol.eps_psd || (l - 1.0).abs() <= tol.eps_psd))
    }

    pub fn rank(&self, tol: &ToleranceConfig) -> Result<usize> {
        Ok(numerical_rank(&self.eig(tol)?, tol))
    }

    /// Projection onto the span of eigenvectors above the relative rank
    /// cutoff. The range projection of `0` is `0`.
    pub fn range_projection(&self, tol: &ToleranceConfig) -> Result<Effect> {
        let d = self.eig(tol)?;
        Ok(Self::from_trusted(range_projector_from(&d, tol)))
    }

    /// Returns `Some(λ)` when `‖A − λI‖_F ≤ eps_eq` with `λ = tr A / n`.
    pub fn is_scalar(&self, tol: &ToleranceConfig) -> Option<f64> {
        let n = self.dim();
        let lambda = self.matrix.trace().re / n as f64;
        let resid = (&self.matrix - &Matrix::scalar(n, lambda)).frobenius_norm();
        (resid <= tol.eps_eq).then_some(lambda)
    }

    /// For `self ≤ b` with `b` of rank one, the `t ∈ [0, 1]` with `self = t·b`.
    pub fn scalar_multiple_of_rank_one(&self, b: &Effect, tol: &ToleranceConfig) -> Result<f64> {
        check_dims(b.dim(), self.dim())?;
        let rank = b.rank(tol)?;
        if rank != 1 {
            return Err(Error::RankError { rank });
        }
        if !self.leq(b, tol)? {
            return Err(Error::OrderViolation);
        }
        // Frobenius projection of A onto the line spanned by B.
        let num: f64 = self
            .matrix
            .as_slice()
            .iter()
            .zip(b.matrix.as_slice())
            .map(|(x, y)| (y.conj() * x).re)
            .sum();
        let den = b.matrix.frobenius_norm().powi(2);
        let t = (num / den).clamp(0.0, 1.0);
        let resid = (&self.matrix - &b.matrix.scale(t)).frobenius_norm();
        if resid > tol.eps_eq.max(tol.eps_psd * 10.0) {
            return Err(Error::OrderViolation);
        }
        Ok(t)
    }

    /// `A + B` when it is again an effect.
    pub fn checked_add(&self, other: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
        Effect::new(&self.matrix.try_add(&other.matrix)?, tol)
    }

    /// `A − B` when it is again an effect (that is, when `B ≤ A`).
    pub fn checked_sub(&self, other: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
        Effect::new(&self.matrix.try_sub(&other.matrix)?, tol)
    }

    /// `U A U*` for a unitary `U`.
    pub fn conjugate_by(&self, u: &Matrix) -> Result<Effect> {
        Ok(Self::from_trusted(
            self.matrix.conjugate_by(u)?.hermitian_part(),
        ))
    }
}

/// A unit vector together with its rank-one projection `φφ*`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayProjection {
    vector: Vec<C64>,
    projection: Effect,
}

impl RayProjection {
    /// Normalizes `v`; rejects the zero vector.
    pub fn new(v: &[C64]) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::DimensionError {
                expected: 1,
                found: 0,
            });
        }
        let norm = vec_norm(v);
        if !(norm.is_finite() && norm > 1e-300) {
            return Err(Error::DomainError {
                value: norm,
                domain: "nonzero finite vector norm",
            });
        }
        let vector: Vec<C64> = v.iter().map(|z| z / norm).collect();
        let projection = Effect::from_trusted(Matrix::outer(&vector));
        Ok(Self { vector, projection })
    }

    pub fn from_real(v: &[f64]) -> Result<Self> {
        Self::new(&v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// The `k`-th standard basis ray in dimension `n`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::DimensionError {
                expected: n,
                found: k + 1,
            });
        }
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[k] = C64::new(1.0, 0.0);
        Self::new(&v)
    }

    /// Recovers a ray from a rank-one projection (its top eigenvector).
    pub fn from_projection(p: &Effect, tol: &ToleranceConfig) -> Result<Self> {
        let d = p.eig(tol)?;
        let rank = numerical_rank(&d, tol);
        if rank != 1 || (d.max_eigenvalue() - 1.0).abs() > tol.eps_psd.max(1e-8) {
            return Err(Error::RankError { rank });
        }
        Self::new(&d.eigenvector(d.dim() - 1))
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &[C64] {
        &self.vector
    }

    pub fn projection(&self) -> &Effect {
        &self.projection
    }

    /// Transition probability `tr PQ = |⟨φ, ψ⟩|²`.
    pub fn transition(&self, other: &RayProjection) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(inner(&self.vector, &other.vector).norm_sqr())
    }

    /// `t·P` as an effect.
    pub fn weighted(&self, t: f64) -> Result<Effect> {
        self.projection.scale(t)
    }
}

/// A weak atom `λP` with `P` a rank-one projection.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakAtom {
    weight: f64,
    ray: RayProjection,
}

impl WeakAtom {
    pub fn new(weight: f64, ray: RayProjection) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::DomainError {
                value: weight,
                domain: "[0, 1]",
            });
        }
        Ok(Self { weight, ray })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn ray(&self) -> &RayProjection {
        &self.ray
    }

    pub fn effect(&self) -> Effect {
        Effect::from_trusted(self.ray.projection.matrix.scale(self.weight))
    }
}
