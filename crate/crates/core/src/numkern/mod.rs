//! Dense Hermitian numeric kernel: eigendecomposition, functional calculus,
//! Löwner comparison and seeded random sampling.

mod calculus;
mod eig;
mod matrix;
pub mod random;

pub use calculus::{mat_sqrt, numerical_rank, pinv_sqrt, psd_leq, range_projector, rank_cutoff};
pub(crate) use calculus::{range_projector_from, sqrt_from};
pub use eig::{eig_hermitian, EigenDecomp};
pub use matrix::{inner, vec_norm, HermMatrix, Matrix, C64};
pub use random::{haar_unitary, random_effect, rng_from_seed, trial_rng, SeededRng};
