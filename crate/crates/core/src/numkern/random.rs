//! Seeded sampling of unitaries, effects, and rays.
//!
//! Every generator is a ChaCha8 stream: `rng_from_seed(s)` is
//! `ChaCha8Rng::seed_from_u64(s)`, and `trial_rng(s, i)` selects stream `i`
//! of the same key, so trial `i` of a suite is reproducible on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{vec_norm, Matrix, C64};
use crate::error::{Error, Result};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, trial: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn require_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::DimensionError {
            expected: 1,
            found: 0,
        });
    }
    Ok(())
}

/// Standard complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re * s, im * s)
}

/// Uniformly distributed unit vector in `C^n`.
pub fn random_unit_vector_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let norm = vec_norm(&v);
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal of R made positive.
///
/// The QR factor comes from Gram–Schmidt with one reorthogonalization pass;
/// that already yields positive real `R_ii`, so the phase normalization is
/// built in.
pub fn haar_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = vec_norm(&v);
        if norm < 1e-10 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = Matrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

pub fn haar_unitary(n: usize, seed: u64) -> Result<Matrix> {
    require_dim(n)?;
    Ok(haar_unitary_with(n, &mut rng_from_seed(seed)))
}

/// `Q diag(d) Q*` with `Q` Haar and `d` i.i.d. uniform on `[0, 1]`.
pub fn random_effect_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let q = haar_unitary_with(n, rng);
    let d: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    spectral(&q, &d)
}

pub fn random_effect(n: usize, seed: u64) -> Result<Matrix> {
    require_dim(n)?;
    Ok(random_effect_with(n, &mut rng_from_seed(seed)))
}

/// Random PSD matrix of the given rank with eigenvalues uniform on `(0, 1]`.
pub fn random_psd_with<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Matrix {
    let q = haar_unitary_with(n, rng);
    let d: Vec<f64> = (0..n)
        .map(|i| {
            if i < rank {
                1.0 - rng.random::<f64>()
            } else {
                0.0
            }
        })
        .collect();
    spectral(&q, &d)
}

/// Random Hermitian matrix from the Gaussian unitary ensemble.
pub fn random_hermitian_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m.hermitian_part()
}

/// `Q diag(d) Q*`, built column by column so the result is exactly Hermitian.
pub fn spectral(q: &Matrix, d: &[f64]) -> Matrix {
    let n = q.dim();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = C64::new(0.0, 0.0);
            for (k, &w) in d.iter().enumerate() {
                acc += q[(i, k)] * q[(j, k)].conj() * w;
            }
            m[(i, j)] = acc;
            m[(j, i)] = acc.conj();
        }
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkern::{eig_hermitian, psd_leq};
    use crate::tolerance::ToleranceConfig;

    #[test]
    fn one_dimensional_unitary_is_a_phase() {
        for seed in 0..10 {
            let u = haar_unitary(1, seed).unwrap();
            assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn haar_is_deterministic() {
        assert_eq!(haar_unitary(3, 7).unwrap(), haar_unitary(3, 7).unwrap());
        assert_ne!(haar_unitary(3, 7).unwrap(), haar_unitary(3, 8).unwrap());
    }

    #[test]
    fn haar_is_unitary() {
        let u = haar_unitary(4, 1).unwrap();
        assert!(u.unitarity_residual() <= 1e-10);
        for n in 1..=16 {
            let u = haar_unitary(n, n as u64).unwrap();
            assert!(u.unitarity_residual() <= 1e-10 * n as f64);
        }
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(matches!(
            haar_unitary(0, 1),
            Err(Error::DimensionError { .. })
        ));
        assert!(matches!(
            random_effect(0, 1),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn random_effect_spectrum_in_unit_interval() {
        let tol = ToleranceConfig::default();
        let m = random_effect(2, 3).unwrap();
        let d = eig_hermitian(&m, &tol).unwrap();
        assert!(d
            .eigenvalues
            .iter()
            .all(|&l| (-1e-12..=1.0 + 1e-12).contains(&l)));
        assert!(psd_leq(&Matrix::zeros(2), &m, &tol).unwrap());
        assert!(psd_leq(&m, &Matrix::identity(2), &tol).unwrap());
        assert_eq!(m, random_effect(2, 3).unwrap());
    }

    #[test]
    fn trial_streams_are_independent_and_reproducible() {
        let a: f64 = trial_rng(1, 0).random();
        let b: f64 = trial_rng(1, 1).random();
        let a2: f64 = trial_rng(1, 0).random();
        assert_eq!(a, a2);
        assert_ne!(a, b);
    }

    #[test]
    fn haar_first_column_phase_is_uniform() {
        // Mean of u_00 over many draws should vanish for a Haar measure.
        let mut rng = rng_from_seed(99);
        let mut acc = C64::new(0.0, 0.0);
        let trials = 4000;
        for _ in 0..trials {
            acc += haar_unitary_with(3, &mut rng)[(0, 0)];
        }
        assert!((acc / trials as f64).norm() < 0.03);
    }
}
