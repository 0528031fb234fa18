//! Effects on finite-dimensional Hilbert spaces: order, orthocomplement,
//! sequential product, strength, coexistence, and the maps that preserve
//! them.

pub mod autos;
pub mod coexist;
pub mod effects;
pub mod error;
pub mod fracfun;
pub mod numkern;
pub mod sequential;
pub mod strength;
pub mod tolerance;
pub mod verify;

pub use autos::{
    extract_scalar_action, fit_p, EffectAutomorphism, EffectMap, OrthocomplementMap, PFit,
    ShrinkMap, SquareMap,
};
pub use coexist::{
    coexist_rank_one, coexist_scalar_witness, coexist_trivial_witness, coexist_weak_atom,
    coexists_with_all_probe, CoexistenceWitness,
};
pub use effects::{Effect, RayProjection, WeakAtom};
pub use error::{Error, Result};
pub use fracfun::{
    fit_frac, fp_apply, rigidity_probe, verify_pexider, Counterexample, FpParam, FracFit,
    FracParams, PexiderDecomposition, RigidityKind,
};
pub use numkern::{eig_hermitian, EigenDecomp, HermMatrix, Matrix, C64};
pub use sequential::{douglas_quotient, order_via_seq, seq_product, SeqQuotient};
pub use strength::{strength_bisect, strength_closed, strength_two_block, StrengthValue};
pub use tolerance::ToleranceConfig;
pub use verify::{Expectation, Suite, VerificationReport};
