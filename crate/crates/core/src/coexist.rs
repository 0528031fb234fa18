//! Coexistence of effects in the cases with a closed characterization.
//!
//! General coexistence is not decided here. What is offered: the trivial
//! witness when `A + B ≤ I`, the scalar witness for `λI`, the sum criterion
//! for two rank-one effects with different ranges, and the weak-atom
//! criterion `t ≤ λ(A, Q) + λ(A′, Q)` for coexistence of `A` with `tQ`.

use rand::Rng;

use crate::effects::{Effect, RayProjection};
use crate::error::{check_dims, Error, Result};
use crate::numkern::random::{random_unit_vector_with, trial_rng};
use crate::numkern::{Matrix, C64};
use crate::strength::strength_closed;
use crate::tolerance::ToleranceConfig;

/// Effects `E, F, G` with `A = E + G`, `B = F + G` and `E + F + G ≤ I`.
#[derive(Debug, Clone)]
pub struct CoexistenceWitness {
    pub e: Effect,
    pub f: Effect,
    pub g: Effect,
}

impl CoexistenceWitness {
    /// Checks the witness invariants against the pair it claims to witness.
    pub fn validate(&self, a: &Effect, b: &Effect, tol: &ToleranceConfig) -> Result<()> {
        let eg = Effect::from_trusted(self.e.matrix() + self.g.matrix());
        let fg = Effect::from_trusted(self.f.matrix() + self.g.matrix());
        let scale = tol.eps_eq * (a.dim() as f64).sqrt().max(1.0);
        if eg.distance(a) > scale || fg.distance(b) > scale {
            return Err(Error::ParamError(
                "witness does not decompose the pair".into(),
            ));
        }
        let total = &(self.e.matrix() + self.f.matrix()) + self.g.matrix();
        Effect::new(&total, tol)?;
        Ok(())
    }
}

/// `(E, F, G) = (A, B, 0)` when `A + B` is an effect.
pub fn coexist_trivial_witness(
    a: &Effect,
    b: &Effect,
    tol: &ToleranceConfig,
) -> Result<Option<CoexistenceWitness>> {
    check_dims(a.dim(), b.dim())?;
    match a.checked_add(b, tol) {
        Ok(_) => Ok(Some(CoexistenceWitness {
            e: a.clone(),
            f: b.clone(),
            g: Effect::zero(a.dim()),
        })),
        Err(Error::SpectrumOutOfRange { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// For `A = λI`: `E = λ(I − B)`, `F = (1 − λ)B`, `G = λB`.
pub fn coexist_scalar_witness(
    lambda: f64,
    b: &Effect,
    tol: &ToleranceConfig,
) -> Result<CoexistenceWitness> {
    let n = b.dim();
    let a = Effect::scalar(n, lambda)?;
    let w = CoexistenceWitness {
        e: b.orthocomplement().scale(lambda)?,
        f: b.scale(1.0 - lambda)?,
        g: b.scale(lambda)?,
    };
    w.validate(&a, b, tol)?;
    Ok(w)
}

/// Rank-one effects `sP` and `tQ` with `P ≠ Q` coexist iff `sP + tQ ≤ I`.
pub fn coexist_rank_one(
    s: f64,
    p: &RayProjection,
    t: f64,
    q: &RayProjection,
    tol: &ToleranceConfig,
) -> Result<bool> {
    for w in [s, t] {
        if !(w > 0.0 && w <= 1.0) {
            return Err(Error::DomainError {
                value: w,
                domain: "]0, 1]",
            });
        }
    }
    check_dims(p.dim(), q.dim())?;
    let overlap = p.transition(q)?;
    if (1.0 - overlap).abs() <= tol.eps_eq {
        return Err(Error::DegenerateRanges(
            "rank-one criterion needs different ranges".into(),
        ));
    }
    let sum = &p.projection().matrix().scale(s) + &q.projection().matrix().scale(t);
    crate::numkern::psd_leq(&sum, &Matrix::identity(p.dim()), tol)
}

/// Decides whether `A` coexists with the weak atom `tQ`.
///
/// Any witness for a rank-one `B = tQ` has `F = t₂Q`, `G = t₁Q`, and then
/// `G ≤ A`, `A + F ≤ I` force `t₁ ≤ λ(A, Q)` and `t₂ ≤ λ(A′, Q)`. Conversely
/// those two strengths build a witness. Returns the witness when one exists.
pub fn coexist_weak_atom(
    a: &Effect,
    t: f64,
    q: &RayProjection,
    tol: &ToleranceConfig,
) -> Result<Option<CoexistenceWitness>> {
    check_dims(a.dim(), q.dim())?;
    let b = q.weighted(t)?;
    let below_a = strength_closed(a, q, tol)?.value;
    let below_comp = strength_closed(&a.orthocomplement(), q, tol)?.value;
    if t > below_a + below_comp + tol.eps_eq {
        return Ok(None);
    }
    let t1 = t.min(below_a);
    let t2 = (t - t1).clamp(0.0, below_comp);
    let g = q.weighted(t1)?;
    let f = q.weighted(t2)?;
    let e = match a.checked_sub(&g, tol) {
        Ok(e) => e,
        Err(Error::SpectrumOutOfRange { .. }) => return Ok(None),
        Err(err) => return Err(err),
    };
    let w = CoexistenceWitness { e, f, g };
    match w.validate(a, &b, tol) {
        Ok(()) => Ok(Some(w)),
        Err(Error::SpectrumOutOfRange { .. }) => Ok(None),
        Err(err) => Err(err),
    }
}

/// One-sided PROBE for "coexists with every effect".
///
/// Samples weak atoms `B = Q` (full weight, the hardest case along a ray)
/// and returns `false` at the first `B` that admits neither the trivial
/// witness nor the weak-atom criterion. Returning `true` only means no
/// counterexample turned up. Even trials draw Haar-random rays; odd trials
/// draw superpositions of the extreme eigenvectors of `A`, where a
/// non-scalar effect is most visibly non-coexistent.
pub fn coexists_with_all_probe(
    a: &Effect,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<bool> {
    if trials == 0 {
        return Err(Error::ParamError("trials must be at least 1".into()));
    }
    let n = a.dim();
    let d = a.eig(tol)?;
    let low = d.eigenvector(0);
    let high = d.eigenvector(n - 1);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let v: Vec<C64> = if trial % 2 == 0 || n == 1 {
            random_unit_vector_with(n, &mut rng)
        } else {
            let theta: f64 = rng.random_range(0.1..(std::f64::consts::FRAC_PI_2 - 0.1));
            let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
            low.iter()
                .zip(&high)
                .map(|(l, h)| l * theta.cos() + h * phase * theta.sin())
                .collect()
        };
        let q = RayProjection::new(&v)?;
        let b = q.projection().clone();
        if coexist_trivial_witness(a, &b, tol)?.is_some() {
            continue;
        }
        if coexist_weak_atom(a, 1.0, &q, tol)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
