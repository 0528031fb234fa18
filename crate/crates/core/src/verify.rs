//! Seeded randomized verification suites.
//!
//! Trial `i` of a suite draws from `trial_rng(seed, i)` only, so trials run
//! in parallel and the report is identical regardless of scheduling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autos::{EffectAutomorphism, EffectMap};
use crate::coexist::{coexist_rank_one, coexist_trivial_witness, coexist_weak_atom};
use crate::effects::{Effect, RayProjection};
use crate::error::{Error, Result};
use crate::fracfun::{
    f_eval, fit_frac, g_symmetry_check, lattice, verify_pexider, FpParam, FracParams,
    PexiderDecomposition,
};
use crate::numkern::random::{
    haar_unitary_with, random_effect_with, random_unit_vector_with, trial_rng, SeededRng,
};
use crate::numkern::{psd_leq, Matrix, C64};
use crate::sequential::seq_product;
use crate::strength::{strength_bisect, strength_closed, strength_two_block};
use crate::tolerance::ToleranceConfig;

/// Closed form vs bisection agreement required by the strength suite.
pub const STRENGTH_ORACLE_TOL: f64 = 1e-6;
/// Two-block formula vs closed form agreement.
pub const TWO_BLOCK_TOL: f64 = 1e-8;
/// Step above the strength that must break `λP ≤ A`.
pub const MAXIMALITY_STEP: f64 = 1e-5;
/// Transition-probability agreement.
pub const TRANSITION_TOL: f64 = 1e-9;
/// Functional-equation residual on the 20×20 lattice.
pub const PEXIDER_TOL: f64 = 1e-10;
/// Parameter recovery by `fit_frac`.
pub const FIT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Order,
    ZeroProduct,
    Ortho,
    Sequential,
    Transition,
    ScalarPair,
    Coexist,
    StrengthOracle,
    Pexider,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Order,
        Suite::ZeroProduct,
        Suite::Ortho,
        Suite::Sequential,
        Suite::Transition,
        Suite::ScalarPair,
        Suite::Coexist,
        Suite::StrengthOracle,
        Suite::Pexider,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Order => "order",
            Suite::ZeroProduct => "zero-product",
            Suite::Ortho => "ortho",
            Suite::Sequential => "sequential",
            Suite::Transition => "transition",
            Suite::ScalarPair => "scalar-pair",
            Suite::Coexist => "coexist",
            Suite::StrengthOracle => "strength-oracle",
            Suite::Pexider => "pexider",
        }
    }

    /// Suites whose outcome flips with `p`: they preserve only at `p = 0`.
    pub fn is_rigidity(self) -> bool {
        matches!(self, Suite::Ortho | Suite::Sequential)
    }

    /// Suites that exercise a map (as opposed to a dimension only).
    pub fn takes_map(self) -> bool {
        !matches!(
            self,
            Suite::Coexist | Suite::StrengthOracle | Suite::Pexider
        )
    }

    pub fn takes_dim(self) -> bool {
        !matches!(self, Suite::Pexider)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::ParamError(format!("unknown suite '{s}'")))
    }
}

/// What a suite is expected to observe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// Property holds on every trial.
    Preserve,
    /// At least one trial exhibits a counterexample.
    Counterexample,
}

impl Expectation {
    /// Rigidity suites expect a counterexample exactly when `p ≠ 0`.
    pub fn auto(suite: Suite, p: f64) -> Self {
        if suite.is_rigidity() && p != 0.0 {
            Expectation::Counterexample
        } else {
            Expectation::Preserve
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    /// Description of the map under test, if any.
    pub subject: Option<String>,
    pub trials: usize,
    pub failures: usize,
    pub worst_violation: f64,
    /// Input of the lowest-index failing trial.
    pub counterexample: Option<String>,
    pub seed: u64,
    pub expect: Expectation,
    /// `failures == 0` under `Preserve`, `failures > 0` under `Counterexample`.
    pub passed: bool,
}

impl VerificationReport {
    pub fn with_expectation(mut self, expect: Expectation) -> Self {
        self.expect = expect;
        self.passed = match expect {
            Expectation::Preserve => self.failures == 0,
            Expectation::Counterexample => self.failures > 0,
        };
        self
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub violation: f64,
    pub failure: Option<String>,
}

impl TrialOutcome {
    pub fn pass(violation: f64) -> Self {
        Self {
            violation,
            failure: None,
        }
    }

    pub fn fail(violation: f64, detail: impl Into<String>) -> Self {
        Self {
            violation,
            failure: Some(detail.into()),
        }
    }

    fn merge(self, other: TrialOutcome) -> TrialOutcome {
        TrialOutcome {
            violation: self.violation.max(other.violation),
            failure: self.failure.or(other.failure),
        }
    }
}

/// Runs `trials` independent trials in parallel and assembles a report.
/// Errors inside a trial count as failures.
pub fn run_trials<F>(suite: &str, trials: usize, seed: u64, body: F) -> VerificationReport
where
    F: Fn(usize, &mut SeededRng) -> Result<TrialOutcome> + Sync,
{
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            body(i, &mut rng).unwrap_or_else(|e| TrialOutcome::fail(1.0, format!("error: {e}")))
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.failure.is_some()).count();
    let worst_violation = outcomes.iter().map(|o| o.violation).fold(0.0, f64::max);
    let counterexample = outcomes
        .iter()
        .enumerate()
        .find_map(|(i, o)| o.failure.as_ref().map(|d| format!("trial {i}: {d}")));
    VerificationReport {
        suite: suite.to_string(),
        subject: None,
        trials,
        failures,
        worst_violation,
        counterexample,
        seed,
        expect: Expectation::Preserve,
        passed: failures == 0,
    }
}

/// Compact, deterministic text form of a matrix for counterexample logs.
pub fn format_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.dim())
        .map(|i| {
            let cells: Vec<String> = (0..m.dim())
                .map(|j| {
                    let z = m[(i, j)];
                    format!("[{:e},{:e}]", z.re, z.im)
                })
                .collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn pair_text(a: &Effect, b: &Effect) -> String {
    format!(
        "A={} B={}",
        format_matrix(a.matrix()),
        format_matrix(b.matrix())
    )
}

fn random_effect_of(n: usize, rng: &mut SeededRng, tol: &ToleranceConfig) -> Result<Effect> {
    Effect::new(&random_effect_with(n, rng), tol)
}

fn random_ray(n: usize, rng: &mut SeededRng) -> Result<RayProjection> {
    RayProjection::new(&random_unit_vector_with(n, rng))
}

/// `A ≤ B ⟺ φ(A) ≤ φ(B)` on one ordered pair `A = B∘C` and one generic pair
/// per trial, both directions each.
pub fn verify_order(
    map: &dyn EffectMap,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let n = map.dim();
    run_trials("order", trials, seed, |_, rng| {
        let b = random_effect_of(n, rng, tol)?;
        let c = random_effect_of(n, rng, tol)?;
        let a = seq_product(&b, &c, tol)?;
        let a2 = random_effect_of(n, rng, tol)?;
        let b2 = random_effect_of(n, rng, tol)?;
        for (x, y) in [(&a, &b), (&a2, &b2)] {
            let (fx, fy) = (map.apply(x, tol)?, map.apply(y, tol)?);
            for (lhs, rhs, u, v) in [(x, y, &fx, &fy), (y, x, &fy, &fx)] {
                if lhs.leq(rhs, tol)? != u.leq(v, tol)? {
                    return Ok(TrialOutcome::fail(1.0, pair_text(lhs, rhs)));
                }
            }
        }
        Ok(TrialOutcome::pass(0.0))
    })
    .with_subject(map.name())
}

/// Splits a Haar basis into two blocks and puts random positive weights on
/// each: the two effects have orthogonal supports.
pub fn orthogonal_pair(
    n: usize,
    rng: &mut SeededRng,
    tol: &ToleranceConfig,
) -> Result<(Effect, Effect)> {
    let q = haar_unitary_with(n, rng);
    let k = if n > 1 { rng.random_range(1..n) } else { 1 };
    let mut da = vec![0.0; n];
    let mut db = vec![0.0; n];
    for i in 0..n {
        let w = 1.0 - rng.random::<f64>();
        if i < k {
            da[i] = w;
        } else {
            db[i] = w;
        }
    }
    let a = Effect::new(&crate::numkern::random::spectral(&q, &da), tol)?;
    let b = Effect::new(&crate::numkern::random::spectral(&q, &db), tol)?;
    Ok((a, b))
}

/// `AB = 0 ⟺ φ(A)φ(B) = 0` on an orthogonal-support pair, a pair sharing
/// one direction, and a generic pair per trial.
pub fn verify_zero_product(
    map: &dyn EffectMap,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let n = map.dim();
    run_trials("zero-product", trials, seed, |_, rng| {
        let (a, b) = orthogonal_pair(n, rng, tol)?;
        let shared = random_ray(n, rng)?.weighted(0.5)?;
        let a_overlap = a.scale(0.5)?.checked_add(&shared, tol)?;
        let b_overlap = b.scale(0.5)?.checked_add(&shared, tol)?;
        let c = random_effect_of(n, rng, tol)?;
        let d = random_effect_of(n, rng, tol)?;
        for (x, y) in [(&a, &b), (&a_overlap, &b_overlap), (&c, &d)] {
            let (fx, fy) = (map.apply(x, tol)?, map.apply(y, tol)?);
            if x.zero_product(y, tol)? != fx.zero_product(&fy, tol)? {
                return Ok(TrialOutcome::fail(1.0, pair_text(x, y)));
            }
        }
        Ok(TrialOutcome::pass(0.0))
    })
    .with_subject(map.name())
}

/// `φ(A′) = φ(A)′` on random effects, plus `φ(½I) = ½I` in trial 0.
pub fn verify_ortho(
    map: &dyn EffectMap,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let n = map.dim();
    run_trials("ortho", trials, seed, |i, rng| {
        let mut outcome = TrialOutcome::pass(0.0);
        if i == 0 {
            let half = Effect::scalar(n, 0.5)?;
            let r = map.apply(&half, tol)?.distance(&half);
            outcome = if r > tol.eps_eq {
                TrialOutcome::fail(r, format!("phi(I/2) != I/2, residual {r:e}"))
            } else {
                TrialOutcome::pass(r)
            };
        }
        let a = random_effect_of(n, rng, tol)?;
        let lhs = map.apply(&a.orthocomplement(), tol)?;
        let rhs = map.apply(&a, tol)?.orthocomplement();
        let r = lhs.distance(&rhs);
        let here = if r > tol.eps_eq {
            TrialOutcome::fail(r, format!("A={} residual {r:e}", format_matrix(a.matrix())))
        } else {
            TrialOutcome::pass(r)
        };
        Ok(outcome.merge(here))
    })
    .with_subject(map.name())
}

/// `φ(A∘B) = φ(A)∘φ(B)` on random pairs, plus the scalar pair `(½I, ½I)` in
/// trial 0.
pub fn verify_sequential(
    map: &dyn EffectMap,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let n = map.dim();
    let check = |a: &Effect, b: &Effect| -> Result<TrialOutcome> {
        let lhs = map.apply(&seq_product(a, b, tol)?, tol)?;
        let rhs = seq_product(&map.apply(a, tol)?, &map.apply(b, tol)?, tol)?;
        let r = lhs.distance(&rhs);
        Ok(if r > tol.eps_eq {
            TrialOutcome::fail(r, format!("{} residual {r:e}", pair_text(a, b)))
        } else {
            TrialOutcome::pass(r)
        })
    };
    run_trials("sequential", trials, seed, |i, rng| {
        let mut outcome = TrialOutcome::pass(0.0);
        if i == 0 {
            let half = Effect::scalar(n, 0.5)?;
            outcome = check(&half, &half)?;
        }
        let a = random_effect_of(n, rng, tol)?;
        let b = random_effect_of(n, rng, tol)?;
        Ok(outcome.merge(check(&a, &b)?))
    })
    .with_subject(map.name())
}

/// `tr PQ = tr φ(P)φ(Q)` on random ray pairs; every fourth trial uses an
/// orthogonal pair.
pub fn verify_transition(
    map: &dyn EffectMap,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let n = map.dim();
    run_trials("transition", trials, seed, |i, rng| {
        let (p, q) = if i % 4 == 3 && n > 1 {
            let u = haar_unitary_with(n, rng);
            (
                RayProjection::new(&u.column(0))?,
                RayProjection::new(&u.column(1))?,
            )
        } else {
            (random_ray(n, rng)?, random_ray(n, rng)?)
        };
        let before = p.transition(&q)?;
        let fp = map.apply(p.projection(), tol)?;
        let fq = map.apply(q.projection(), tol)?;
        let after = fp.matrix().try_mul(fq.matrix())?.trace().re;
        let gap = (before - after).abs();
        Ok(if gap > TRANSITION_TOL {
            TrialOutcome::fail(gap, format!("tr PQ={before:e} tr phi(P)phi(Q)={after:e}"))
        } else {
            TrialOutcome::pass(gap)
        })
    })
    .with_subject(map.name())
}

/// Confirms `φ(λI)` is a scalar `μI`, then runs the zero-product suite.
pub fn verify_scalar_pair(
    map: &dyn EffectMap,
    lambda: f64,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let scalar = (|| -> Result<Option<f64>> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::DomainError {
                value: lambda,
                domain: "]0, 1[",
            });
        }
        Ok(map
            .apply(&Effect::scalar(map.dim(), lambda)?, tol)?
            .is_scalar(tol))
    })();
    let mut report = verify_zero_product(map, trials, seed, tol);
    report.suite = "scalar-pair".into();
    match scalar {
        Ok(Some(mu)) => {
            report.subject = Some(format!("{} lambda={lambda} mu={mu}", map.name()));
        }
        Ok(None) | Err(_) => {
            let why = match scalar {
                Err(e) => e.to_string(),
                _ => format!("phi({lambda} I) is not scalar"),
            };
            report.failures += 1;
            report.worst_violation = report.worst_violation.max(1.0);
            report.counterexample = Some(why);
        }
    }
    report.with_expectation(Expectation::Preserve)
}

/// Coexistence checks on rank-one pairs: `λP, (1−λ)Q` always coexist, the
/// criterion is symmetric, the weak-atom and sum criteria agree, and every
/// returned witness validates.
pub fn verify_coexist(
    n: usize,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    run_trials("coexist", trials, seed, |_, rng| {
        let p = random_ray(n, rng)?;
        let q = random_ray(n, rng)?;
        let lambda: f64 = rng.random_range(0.01..0.99);
        if !coexist_rank_one(lambda, &p, 1.0 - lambda, &q, tol)? {
            return Ok(TrialOutcome::fail(
                1.0,
                format!("lambda={lambda} pair not coexistent"),
            ));
        }
        let s: f64 = rng.random_range(0.05..1.0);
        let t: f64 = rng.random_range(0.05..1.0);
        let forward = coexist_rank_one(s, &p, t, &q, tol)?;
        if forward != coexist_rank_one(t, &q, s, &p, tol)? {
            return Ok(TrialOutcome::fail(
                1.0,
                format!("asymmetric at s={s} t={t}"),
            ));
        }
        let a = p.weighted(s)?;
        let b = q.weighted(t)?;
        let via_strength = coexist_weak_atom(&a, t, &q, tol)?;
        if forward != via_strength.is_some() {
            return Ok(TrialOutcome::fail(
                1.0,
                format!("criteria disagree at s={s} t={t}"),
            ));
        }
        if let Some(w) = via_strength {
            w.validate(&a, &b, tol)?;
        }
        let c = random_effect_of(n, rng, tol)?.scale(0.6)?;
        let d = random_effect_of(n, rng, tol)?.scale(0.6)?;
        if let Some(w) = coexist_trivial_witness(&c, &d, tol)? {
            w.validate(&c, &d, tol)?;
        }
        Ok(TrialOutcome::pass(0.0))
    })
}

/// Strength closed form against the bisection oracle, maximality of the
/// strength, and the two-block formula. Rays flagged near the range
/// threshold are skipped.
pub fn verify_strength_oracle(
    n: usize,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    run_trials("strength-oracle", trials, seed, |_, rng| {
        let a = random_effect_of(n, rng, tol)?;
        let ray = random_ray(n, rng)?;
        let closed = strength_closed(&a, &ray, tol)?;
        let mut outcome = TrialOutcome::pass(0.0);
        if !closed.near_threshold {
            let bisect = strength_bisect(&a, &ray, tol)?;
            let gap = (closed.value - bisect).abs();
            if gap > STRENGTH_ORACLE_TOL {
                return Ok(TrialOutcome::fail(
                    gap,
                    format!("closed={} bisect={bisect}", closed.value),
                ));
            }
            outcome = TrialOutcome::pass(gap);
            let p = ray.projection().matrix();
            if !psd_leq(&p.scale(closed.value), a.matrix(), tol)? {
                return Ok(TrialOutcome::fail(1.0, "strength atom not below A"));
            }
            if closed.value < 1.0 - MAXIMALITY_STEP
                && psd_leq(&p.scale(closed.value + MAXIMALITY_STEP), a.matrix(), tol)?
            {
                return Ok(TrialOutcome::fail(1.0, "strength is not maximal"));
            }
        }
        if n >= 2 {
            let (mu, p, q, r) = two_block_instance(n, rng)?;
            let formula = strength_two_block(mu, &p, &q, &r, tol)?;
            let e = Effect::new(
                &(&p.projection().matrix().scale(mu) + q.projection().matrix()),
                tol,
            )?;
            let closed = strength_closed(&e, &r, tol)?.value;
            let gap = (formula - closed).abs();
            if gap > TWO_BLOCK_TOL {
                return Ok(TrialOutcome::fail(
                    gap,
                    format!("two-block {formula} vs closed {closed}"),
                ));
            }
            outcome = outcome.merge(TrialOutcome::pass(gap));
        }
        Ok(outcome)
    })
}

/// Random `(μ, P, Q, R)` with `P ⟂ Q` and `R` in their span, neither equal
/// nor orthogonal to `P`.
pub fn two_block_instance(
    n: usize,
    rng: &mut SeededRng,
) -> Result<(f64, RayProjection, RayProjection, RayProjection)> {
    let u = haar_unitary_with(n, rng);
    let (e0, e1) = (u.column(0), u.column(1));
    let theta: f64 = rng.random_range(0.05..(std::f64::consts::FRAC_PI_2 - 0.05));
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let r: Vec<C64> = e0
        .iter()
        .zip(&e1)
        .map(|(x, y)| x * theta.cos() + y * phase * theta.sin())
        .collect();
    let mu: f64 = rng.random_range(0.01..0.99);
    Ok((
        mu,
        RayProjection::new(&e0)?,
        RayProjection::new(&e1)?,
        RayProjection::new(&r)?,
    ))
}

/// Functional-equation residuals, Pexider decomposition, fit round trip, and
/// the `g` symmetry rigidity on random solution instances.
pub fn verify_pexider_suite(trials: usize, seed: u64) -> VerificationReport {
    run_trials("pexider", trials, seed, |i, rng| {
        let a: f64 = rng.random_range(0.1..10.0);
        let c: f64 = rng.random_range(0.2..5.0);
        let f = FracParams::new(a, 1.0, c)?;
        let fe = verify_pexider(&f, &f, 20);
        if fe > PEXIDER_TOL {
            return Ok(TrialOutcome::fail(
                fe,
                format!("FE residual {fe:e} at a={a} c={c}"),
            ));
        }
        let pex = PexiderDecomposition::new(f, f).max_residual(20);
        if pex > 1e-9 {
            return Ok(TrialOutcome::fail(
                pex,
                format!("Pexider residual {pex:e} at a={a} c={c}"),
            ));
        }
        let samples: Vec<(f64, f64)> = lattice(50)
            .into_iter()
            .map(|x| Ok((x, f_eval(&f, x)?)))
            .collect::<Result<_>>()?;
        let fit = fit_frac(&samples)?;
        let err = (fit.params.a - a).abs().max((fit.params.c - c).abs());
        if err > FIT_TOL {
            return Ok(TrialOutcome::fail(
                err,
                format!("fit ({}, {}) vs ({a}, {c})", fit.params.a, fit.params.c),
            ));
        }
        if i == 0 && !g_symmetry_check(1.0, 1.0, 20) {
            return Ok(TrialOutcome::fail(1.0, "g symmetry rejects (1, 1)"));
        }
        let (b, c2) = off_identity_pair(rng);
        if g_symmetry_check(b, c2, 20) {
            return Ok(TrialOutcome::fail(
                1.0,
                format!("g symmetry accepts ({b}, {c2})"),
            ));
        }
        Ok(TrialOutcome::pass(fe.max(pex).max(err)))
    })
}

/// `(b, c)` at distance more than `1e−3` from `(1, 1)`; half the draws sit
/// just outside that ball.
pub fn off_identity_pair(rng: &mut SeededRng) -> (f64, f64) {
    if rng.random::<bool>() {
        let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let radius: f64 = rng.random_range(1.1e-3..1e-2);
        (1.0 + radius * angle.cos(), 1.0 + radius * angle.sin())
    } else {
        loop {
            let b: f64 = rng.random_range(0.1..3.0);
            let c: f64 = rng.random_range(0.1..3.0);
            if (b - 1.0).hypot(c - 1.0) > 1e-3 {
                return (b, c);
            }
        }
    }
}

/// Deterministic Haar automorphism for a `(seed, n, conjugate)` cell; the
/// unitary does not depend on `p`.
pub fn automorphism_for(seed: u64, n: usize, conjugate: bool, p: FpParam) -> EffectAutomorphism {
    let stream = (1u64 << 63) | ((n as u64) << 1) | conjugate as u64;
    let mut rng = trial_rng(seed, stream);
    EffectAutomorphism::random(n, conjugate, p, &mut rng)
}

/// Runs a map suite against `map`, applying `expect` (rigidity suites) or
/// `Preserve` (everything else).
pub fn run_map_suite(
    suite: Suite,
    map: &dyn EffectMap,
    trials: usize,
    seed: u64,
    lambda: f64,
    expect: Expectation,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let report = match suite {
        Suite::Order => verify_order(map, trials, seed, tol),
        Suite::ZeroProduct => verify_zero_product(map, trials, seed, tol),
        Suite::Ortho => verify_ortho(map, trials, seed, tol),
        Suite::Sequential => verify_sequential(map, trials, seed, tol),
        Suite::Transition => verify_transition(map, trials, seed, tol),
        Suite::ScalarPair => verify_scalar_pair(map, lambda, trials, seed, tol),
        Suite::Coexist => verify_coexist(map.dim(), trials, seed, tol),
        Suite::StrengthOracle => verify_strength_oracle(map.dim(), trials, seed, tol),
        Suite::Pexider => verify_pexider_suite(trials, seed),
    };
    let expect = if suite.is_rigidity() {
        expect
    } else {
        Expectation::Preserve
    };
    report.with_expectation(expect)
}
