//! Fixed inputs shared by the benchmarks.

use effectkit::numkern::random::{random_effect_with, random_unit_vector_with, trial_rng};
use effectkit::{Effect, RayProjection, ToleranceConfig};

/// `count` random effects of dimension `n`, identical across runs.
pub fn effects(n: usize, count: usize, seed: u64) -> Vec<Effect> {
    let tol = ToleranceConfig::default();
    let mut rng = trial_rng(seed, n as u64);
    (0..count)
        .map(|_| Effect::new(&random_effect_with(n, &mut rng), &tol).expect("random effect"))
        .collect()
}

pub fn rays(n: usize, count: usize, seed: u64) -> Vec<RayProjection> {
    let mut rng = trial_rng(seed, 1000 + n as u64);
    (0..count)
        .map(|_| RayProjection::new(&random_unit_vector_with(n, &mut rng)).expect("random ray"))
        .collect()
}
