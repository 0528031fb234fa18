use super::matrix::{Matrix, C64};
use crate::error::Result;
use crate::tolerance::ToleranceConfig;

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `M = V diag(λ) V*` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: Matrix,
}

impl EigenDecomp {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(f(λ)) V*`: the functional calculus of the decomposed matrix.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = C64::new(0.0, 0.0);
                for (k, &w) in fl.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.map_spectrum(|l| l)
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies
/// the real symmetric Jacobi rotation that annihilates it. Sweeps continue
/// until the off-diagonal mass drops below round-off relative to `‖M‖_F`.
pub fn eig_hermitian(m: &Matrix, tol: &ToleranceConfig) -> Result<EigenDecomp> {
    m.require_hermitian(tol.eps_herm)?;
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = Matrix::identity(n);

    let scale = a.frobenius_norm();
    let threshold = (f64::EPSILON * scale).powi(2) * 1e-2;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= threshold || scale == 0.0 {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = Matrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(EigenDecomp {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    let n = a.dim();
    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A <- J* A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::numkern::random::random_hermitian_with;
    use crate::numkern::random::rng_from_seed;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn check_invariants(m: &Matrix, d: &EigenDecomp) {
        let n = m.dim() as f64;
        let rec = (&d.reconstruct() - m).frobenius_norm();
        assert!(
            rec <= 1e-10 * n * m.frobenius_norm().max(1.0),
            "residual {rec}"
        );
        let orth = d.eigenvectors.unitarity_residual();
        assert!(orth <= 1e-10 * n, "orthonormality {orth}");
        assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input() {
        let m = Matrix::from_diag(&[1.0, 0.5]);
        let d = eig_hermitian(&m, &tol()).unwrap();
        assert_eq!(d.eigenvalues, vec![0.5, 1.0]);
        assert!((d.eigenvector(0)[1].norm() - 1.0).abs() < 1e-15);
        check_invariants(&m, &d);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let d = eig_hermitian(&Matrix::identity(3), &tol()).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn rank_one_half_matrix() {
        // [[.5,.5],[.5,.5]] has eigenpairs 0 -> (e1-e2)/√2 and 1 -> (e1+e2)/√2.
        let m = Matrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let d = eig_hermitian(&m, &tol()).unwrap();
        assert!(d.eigenvalues[0].abs() < 1e-15);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-15);
        let v0 = d.eigenvector(0);
        let v1 = d.eigenvector(1);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(((v0[0] * v0[1].conj()).re + 0.5).abs() < 1e-14);
        assert!(((v1[0] * v1[1].conj()).re - 0.5).abs() < 1e-14);
        assert!((v1[0].norm() - r).abs() < 1e-14);
        check_invariants(&m, &d);
    }

    #[test]
    fn complex_hermitian_two_by_two() {
        // [[1, i],[-i, 1]] has eigenvalues 0 and 2.
        let m = Matrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), C64::new(1.0, 0.0)],
        ])
        .unwrap();
        let d = eig_hermitian(&m, &tol()).unwrap();
        assert!(d.eigenvalues[0].abs() < 1e-14);
        assert!((d.eigenvalues[1] - 2.0).abs() < 1e-14);
        check_invariants(&m, &d);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            eig_hermitian(&m, &tol()),
            Err(Error::HermiticityViolation { .. })
        ));
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = rng_from_seed(11);
        for n in 1..=16 {
            for _ in 0..5 {
                let m = random_hermitian_with(n, &mut rng);
                let d = eig_hermitian(&m, &tol()).unwrap();
                check_invariants(&m, &d);
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = rng_from_seed(5);
        let u = crate::numkern::random::haar_unitary_with(5, &mut rng);
        let m = Matrix::from_diag(&[0.3, 0.3, 0.3, 0.9, 0.9])
            .conjugate_by(&u)
            .unwrap();
        let d = eig_hermitian(&m, &tol()).unwrap();
        for (got, want) in d.eigenvalues.iter().zip([0.3, 0.3, 0.3, 0.9, 0.9]) {
            assert!((got - want).abs() < 1e-13);
        }
        check_invariants(&m, &d);
    }
}
