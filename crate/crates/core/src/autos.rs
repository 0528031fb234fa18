//! Automorphisms `φ(A) = U f_p(K(A)) U*` of the effect algebra.
//!
//! `K` is entrywise complex conjugation in the standard basis when the
//! `conjugate` flag is set, so every antiunitary is encoded as "conjugate,
//! then a unitary". The composition order is: conjugation, then `f_p`, then
//! `U·U*`. Since `f_p` has real coefficients, `f_p(Ā) = conj(f_p(A))`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::effects::{Effect, RayProjection};
use crate::error::{check_dims, Error, Result};
use crate::fracfun::{fit_frac, fp_apply, lattice, FpParam, FracFit};
use crate::numkern::random::haar_unitary_with;
use crate::numkern::{Matrix, C64};
use crate::tolerance::ToleranceConfig;

/// Maximum deviation of the fitted exponent from `1` accepted by [`fit_p`].
pub const FAMILY_EXPONENT_EPS: f64 = 1e-4;

/// A bijection-candidate on `E(H)`, treated as a black box by the
/// verification suites.
pub trait EffectMap: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, a: &Effect, tol: &ToleranceConfig) -> Result<Effect>;
    fn name(&self) -> String;
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectAutomorphism {
    u: Matrix,
    conjugate: bool,
    p: FpParam,
}

impl EffectAutomorphism {
    /// Accepts `U` when `‖U*U − I‖_F ≤ 1e−10·n`.
    pub fn new(u: Matrix, conjugate: bool, p: FpParam) -> Result<Self> {
        let residual = u.unitarity_residual();
        if !u.is_finite() || u.dim() == 0 || residual > 1e-10 * u.dim() as f64 {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { u, conjugate, p })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            u: Matrix::identity(n),
            conjugate: false,
            p: FpParam::identity(),
        }
    }

    /// Haar-random `U` with the given flag and parameter.
    pub fn random<R: Rng + ?Sized>(n: usize, conjugate: bool, p: FpParam, rng: &mut R) -> Self {
        Self {
            u: haar_unitary_with(n, rng),
            conjugate,
            p,
        }
    }

    pub fn unitary(&self) -> &Matrix {
        &self.u
    }

    pub fn conjugate(&self) -> bool {
        self.conjugate
    }

    pub fn p(&self) -> FpParam {
        self.p
    }

    /// The inverse map, again in the family.
    ///
    /// `φ⁻¹(B) = K f_p⁻¹(U* B U)`; pushing `K` through gives the unitary
    /// `Uᵀ` when conjugating and `U*` otherwise.
    pub fn inverse(&self) -> Self {
        let u = if self.conjugate {
            self.u.transpose()
        } else {
            self.u.adjoint()
        };
        Self {
            u,
            conjugate: self.conjugate,
            p: self.p.inverse(),
        }
    }

    /// Image of a ray under the underlying (anti)unitary: `U K φ`.
    pub fn apply_ray(&self, ray: &RayProjection) -> Result<RayProjection> {
        check_dims(self.dim(), ray.dim())?;
        let v: Vec<C64> = if self.conjugate {
            ray.vector().iter().map(|z| z.conj()).collect()
        } else {
            ray.vector().to_vec()
        };
        RayProjection::new(&self.u.mul_vec(&v))
    }
}

impl EffectMap for EffectAutomorphism {
    fn dim(&self) -> usize {
        self.u.dim()
    }

    fn apply(&self, a: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
        check_dims(self.dim(), a.dim())?;
        let k = if self.conjugate {
            Effect::from_trusted(a.matrix().conj())
        } else {
            a.clone()
        };
        let f = fp_apply(self.p, &k, tol)?;
        let out = f.matrix().conjugate_by(&self.u)?;
        Effect::new(&out.hermitian_part(), tol)
    }

    fn name(&self) -> String {
        format!(
            "automorphism(n={}, conjugate={}, p={})",
            self.dim(),
            self.conjugate,
            self.p.value()
        )
    }
}

/// Negative control: `A ↦ I − A` reverses the order.
#[derive(Debug, Clone, Copy)]
pub struct OrthocomplementMap {
    pub n: usize,
}

impl EffectMap for OrthocomplementMap {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, a: &Effect, _tol: &ToleranceConfig) -> Result<Effect> {
        check_dims(self.n, a.dim())?;
        Ok(a.orthocomplement())
    }

    fn name(&self) -> String {
        "orthocomplement".into()
    }
}

/// Negative control: `A ↦ (A + I/2)/2` keeps the order but destroys zero
/// products (its image never touches `0`).
#[derive(Debug, Clone, Copy)]
pub struct ShrinkMap {
    pub n: usize,
}

impl EffectMap for ShrinkMap {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, a: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
        check_dims(self.n, a.dim())?;
        let m = (a.matrix() + &Matrix::scalar(self.n, 0.5)).scale(0.5);
        Effect::new(&m, tol)
    }

    fn name(&self) -> String {
        "shrink".into()
    }
}

/// Negative control: `A ↦ A²` is a bijection of `E(H)` that preserves zero
/// products but is not order preserving.
#[derive(Debug, Clone, Copy)]
pub struct SquareMap {
    pub n: usize,
}

impl EffectMap for SquareMap {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, a: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
        check_dims(self.n, a.dim())?;
        let d = a.eig(tol)?;
        Ok(Effect::from_trusted(d.map_spectrum(|l| l * l)))
    }

    fn name(&self) -> String {
        "square".into()
    }
}

/// The scalar `f` with `φ(tP) = f·φ(P)`, read off as `tr(φ(tP)φ(P))`.
///
/// Fails with `NotScalarAction` when `‖φ(tP) − f·φ(P)‖_F > eps_eq`.
pub fn extract_scalar_action(
    map: &dyn EffectMap,
    ray: &RayProjection,
    t: f64,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let tp = ray.weighted(t)?;
    let image = map.apply(&tp, tol)?;
    let image_p = map.apply(ray.projection(), tol)?;
    let f = image.matrix().try_mul(image_p.matrix())?.trace().re;
    let residual = (image.matrix() - &image_p.matrix().scale(f)).frobenius_norm();
    if residual > tol.eps_eq {
        return Err(Error::NotScalarAction { residual });
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PFit {
    pub p: f64,
    pub a: f64,
    pub c: f64,
    /// `|c − 1|`.
    pub c_deviation: f64,
    pub residual: f64,
}

/// Recovers `p` from the scalar action `λ ↦ μ`, `φ(λI) = μI`, on an interior
/// grid of `λ`.
pub fn fit_p(map: &dyn EffectMap, grid: usize, tol: &ToleranceConfig) -> Result<PFit> {
    if grid < 3 {
        return Err(Error::ParamError(format!(
            "grid = {grid} must be at least 3"
        )));
    }
    let n = map.dim();
    let mut samples = Vec::with_capacity(grid);
    for lambda in lattice(grid) {
        let image = map.apply(&Effect::scalar(n, lambda)?, tol)?;
        let mu = image.is_scalar(tol).ok_or_else(|| {
            Error::FitError(format!("image of {lambda}·I is not a scalar operator"))
        })?;
        samples.push((lambda, mu));
    }
    let FracFit { params, residual } = fit_frac(&samples)?;
    let c_deviation = (params.c - 1.0).abs();
    if c_deviation > FAMILY_EXPONENT_EPS {
        return Err(Error::NotInFamily { exponent: params.c });
    }
    Ok(PFit {
        p: 1.0 - params.a,
        a: params.a,
        c: params.c,
        c_deviation,
        residual,
    })
}
