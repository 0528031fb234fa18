//! Strength of an effect along a ray: the largest `λ` with `λP_φ ≤ A`.

use serde::{Deserialize, Serialize};

use crate::effects::{Effect, RayProjection};
use crate::error::{check_dims, Error, Result};
use crate::numkern::{inner, psd_leq, rank_cutoff};
use crate::tolerance::ToleranceConfig;

/// Number of halvings in [`strength_bisect`]: `⌈log2(1e8)⌉`.
pub const BISECTION_STEPS: usize = 27;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrengthValue {
    pub value: f64,
    /// Whether `φ ∈ rng(A^{1/2})`.
    pub in_range: bool,
    /// Set when range membership sits within a factor of ten of the cutoff,
    /// where the closed form is numerically ill-posed.
    pub near_threshold: bool,
}

/// Closed form `‖A^{−1/2}φ‖^{−2}` when `φ ∈ rng(A^{1/2})`, else `0`.
///
/// Works in the eigenbasis of `A`: with `c_i = ⟨v_i, φ⟩`, any coefficient
/// above `eps_rank` on an eigenvalue below the rank cutoff puts `φ` outside
/// the range.
pub fn strength_closed(
    a: &Effect,
    ray: &RayProjection,
    tol: &ToleranceConfig,
) -> Result<StrengthValue> {
    check_dims(a.dim(), ray.dim())?;
    let d = a.eig(tol)?;
    let cut = rank_cutoff(&d, tol);
    let mut near_threshold = false;
    let mut in_range = d.max_eigenvalue() > 0.0;
    let mut weighted = 0.0;
    for (k, &lambda) in d.eigenvalues.iter().enumerate() {
        let c = inner(&d.eigenvector(k), ray.vector()).norm();
        if lambda > cut {
            if lambda < 10.0 * cut && c > tol.eps_rank {
                near_threshold = true;
            }
            weighted += c * c / lambda;
        } else {
            if c > tol.eps_rank / 10.0 && c <= tol.eps_rank * 10.0 {
                near_threshold = true;
            }
            if c > tol.eps_rank {
                in_range = false;
            }
        }
    }
    let value = if in_range && weighted > 0.0 {
        (1.0 / weighted).min(1.0)
    } else {
        in_range = in_range && weighted > 0.0;
        0.0
    };
    Ok(StrengthValue {
        value,
        in_range,
        near_threshold,
    })
}

/// Bisection on `t ∈ [0, 1]` against `t·P_φ ≤ A`, independent of the
/// closed form. Runs exactly [`BISECTION_STEPS`] halvings and returns the
/// midpoint of the final bracket.
pub fn strength_bisect(a: &Effect, ray: &RayProjection, tol: &ToleranceConfig) -> Result<f64> {
    check_dims(a.dim(), ray.dim())?;
    let p = ray.projection().matrix();
    let below = |t: f64| psd_leq(&p.scale(t), a.matrix(), tol);
    if below(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if below(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == 0.0 && !below(0.0)? {
        return Ok(0.0);
    }
    Ok(0.5 * (lo + hi))
}

/// `λ(μP + Q, R) = μ / (μ + (1 − μ) tr PR)` for orthogonal rank-one `P`, `Q`
/// and a ray `R` in their span that is neither `P` nor orthogonal to it.
pub fn strength_two_block(
    mu: f64,
    p: &RayProjection,
    q: &RayProjection,
    r: &RayProjection,
    tol: &ToleranceConfig,
) -> Result<f64> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::DomainError {
            value: mu,
            domain: "]0, 1[",
        });
    }
    check_dims(p.dim(), q.dim())?;
    check_dims(p.dim(), r.dim())?;
    let pq = p.transition(q)?;
    if pq > tol.eps_eq {
        return Err(Error::OrthogonalityError { overlap: pq });
    }
    let pr = p.transition(r)?;
    let qr = q.transition(r)?;
    // R lies in span{φ, ψ} iff its overlaps with the two orthonormal vectors
    // exhaust its norm.
    let residual = (1.0 - pr - qr).abs();
    if residual > tol.eps_eq.max(1e-12) {
        return Err(Error::SpanError { residual });
    }
    if pr <= tol.eps_eq || pr >= 1.0 - tol.eps_eq {
        return Err(Error::DegenerateRanges(format!(
            "R must be neither equal nor orthogonal to P (tr PR = {pr})"
        )));
    }
    Ok(mu / (mu + (1.0 - mu) * pr))
}
