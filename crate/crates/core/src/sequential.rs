//! Sequential product `A∘B = √A B √A` and the factorization `A = B∘C`.

use crate::effects::Effect;
use crate::error::{check_dims, Error, Result};
use crate::numkern::{eig_hermitian, pinv_sqrt, sqrt_from, Matrix};
use crate::tolerance::ToleranceConfig;

/// Solution `C` of `B∘C = A` together with the achieved residual.
#[derive(Debug, Clone)]
pub struct SeqQuotient {
    pub quotient: Effect,
    /// `‖B∘C − A‖_F`.
    pub residual: f64,
}

/// `√A B √A`.
pub fn seq_product(a: &Effect, b: &Effect, tol: &ToleranceConfig) -> Result<Effect> {
    check_dims(a.dim(), b.dim())?;
    let s = sqrt_from(&a.eig(tol)?, tol)?;
    let prod = &(&s * b.matrix()) * &s;
    Effect::new(&prod.hermitian_part(), tol)
}

/// `(A∘B ≈ 0, AB ≈ 0)`; the two always agree for effects.
pub fn seq_zero_iff_zero(a: &Effect, b: &Effect, tol: &ToleranceConfig) -> Result<(bool, bool)> {
    let seq = seq_product(a, b, tol)?;
    let scale = (a.matrix().frobenius_norm() * b.matrix().frobenius_norm()).max(1.0);
    let seq_zero = seq.matrix().frobenius_norm() <= tol.eps_eq * scale;
    Ok((seq_zero, a.zero_product(b, tol)?))
}

/// For `A ≤ B`, the effect `C = B^{−1/2} A B^{−1/2}` with `B∘C = A`.
///
/// When `B` is singular `C` is only determined on `ran B`; this returns the
/// representative that vanishes on `ker B`.
pub fn douglas_quotient(a: &Effect, b: &Effect, tol: &ToleranceConfig) -> Result<SeqQuotient> {
    if !a.leq(b, tol)? {
        return Err(Error::OrderViolation);
    }
    quotient(a, b, tol)
}

/// Order test through the factorization route: `A ≤ B` iff some effect `C`
/// has `B∘C = A`. Does not consult the Löwner comparison.
pub fn order_via_seq(a: &Effect, b: &Effect, tol: &ToleranceConfig) -> bool {
    a.dim() == b.dim() && quotient(a, b, tol).is_ok()
}

fn quotient(a: &Effect, b: &Effect, tol: &ToleranceConfig) -> Result<SeqQuotient> {
    check_dims(a.dim(), b.dim())?;
    let r = pinv_sqrt(b.matrix(), tol)?;
    let c = (&(&r * a.matrix()) * &r).hermitian_part();
    let d = eig_hermitian(&c, tol)?;
    let (lo, hi) = (d.min_eigenvalue(), d.max_eigenvalue());
    if lo < -tol.eps_psd || hi > 1.0 + tol.eps_psd {
        return Err(Error::QuotientFailure(format!(
            "quotient spectrum [{lo:.3e}, {hi:.6}] leaves [0, 1]"
        )));
    }
    let quotient = Effect::from_decomp(&c, &d, tol)?;
    let recon = seq_product(b, &quotient, tol)?;
    let residual = (recon.matrix() - a.matrix()).frobenius_norm();
    if residual > tol.eps_eq * a.matrix().frobenius_norm().max(1.0) {
        return Err(Error::QuotientFailure(format!(
            "residual {residual:.3e} exceeds tolerance (ran A is not inside ran B)"
        )));
    }
    Ok(SeqQuotient { quotient, residual })
}

/// `AB` as a plain matrix, used by the commuting-collapse checks.
pub fn plain_product(a: &Effect, b: &Effect) -> Result<Matrix> {
    a.matrix().try_mul(b.matrix())
}
