use super::eig::{eig_hermitian, EigenDecomp};
use super::matrix::Matrix;
use crate::error::{check_dims, Error, Result};
use crate::tolerance::ToleranceConfig;

/// Löwner comparison `M ≤ N`: the smallest eigenvalue of `N − M` must be at
/// least `−eps_psd · max(1, ‖N − M‖_F)`.
pub fn psd_leq(m: &Matrix, n: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    check_dims(m.dim(), n.dim())?;
    let diff = n - m;
    let slack = tol.eps_psd * diff.frobenius_norm().max(1.0);
    let d = eig_hermitian(&diff, tol)?;
    Ok(d.min_eigenvalue() >= -slack)
}

/// Eigenvalue cutoff separating range from kernel: `eps_rank · λmax`.
pub fn rank_cutoff(d: &EigenDecomp, tol: &ToleranceConfig) -> f64 {
    tol.eps_rank * d.max_eigenvalue().max(0.0)
}

/// Number of eigenvalues above the relative rank cutoff.
pub fn numerical_rank(d: &EigenDecomp, tol: &ToleranceConfig) -> usize {
    let cut = rank_cutoff(d, tol);
    if d.max_eigenvalue() <= 0.0 {
        return 0;
    }
    d.eigenvalues.iter().filter(|&&l| l > cut).count()
}

fn require_psd(d: &EigenDecomp, tol: &ToleranceConfig) -> Result<()> {
    let lo = d.min_eigenvalue();
    if lo < -tol.eps_psd {
        return Err(Error::NotPositiveSemidefinite { eigenvalue: lo });
    }
    Ok(())
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// `[−eps_psd, 0)` are treated as zero.
pub fn mat_sqrt(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let d = eig_hermitian(m, tol)?;
    sqrt_from(&d, tol)
}

pub(crate) fn sqrt_from(d: &EigenDecomp, tol: &ToleranceConfig) -> Result<Matrix> {
    require_psd(d, tol)?;
    // Eigenvalues below the eigensolver's accuracy are rounding noise; their
    // square roots (~1e-8) would otherwise leak into the kernel.
    let floor = d.dim() as f64 * f64::EPSILON * d.max_eigenvalue().max(0.0);
    Ok(d.map_spectrum(|l| if l > floor { l.sqrt() } else { 0.0 }))
}

/// Inverse of `M^{1/2}` on its range, zero on the (numerical) kernel.
pub fn pinv_sqrt(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let d = eig_hermitian(m, tol)?;
    pinv_sqrt_from(&d, tol)
}

pub(crate) fn pinv_sqrt_from(d: &EigenDecomp, tol: &ToleranceConfig) -> Result<Matrix> {
    require_psd(d, tol)?;
    if d.max_eigenvalue() <= 0.0 {
        return Ok(Matrix::zeros(d.dim()));
    }
    let cut = rank_cutoff(d, tol);
    Ok(d.map_spectrum(|l| if l > cut { 1.0 / l.sqrt() } else { 0.0 }))
}

/// Orthogonal projection onto the span of eigenvectors above the rank cutoff.
pub fn range_projector(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let d = eig_hermitian(m, tol)?;
    Ok(range_projector_from(&d, tol))
}

pub(crate) fn range_projector_from(d: &EigenDecomp, tol: &ToleranceConfig) -> Matrix {
    if d.max_eigenvalue() <= 0.0 {
        return Matrix::zeros(d.dim());
    }
    let cut = rank_cutoff(d, tol);
    d.map_spectrum(|l| if l > cut { 1.0 } else { 0.0 })
}
