//! Polar decomposition and the transforms derived from it.
//!
//! `U` is always the partial isometry `T · |T|⁺`, which vanishes on `ker T`;
//! it is never extended to a unitary.

use alloc::vec::Vec;

use crate::error::{LabError, Result};
use crate::matrix::{ComplexMatrix, ZERO};
use crate::spectral::{psd_eig, spectral_pow, DEFAULT_RANK_TOL};

/// Hermitian tolerance used when diagonalizing `T*T`.
const GRAM_TOL: f64 = 1e-10;

/// `T = U · P` with `P = |T| = (T*T)^{1/2}` and `U` a partial isometry.
#[derive(Clone, Debug)]
pub struct PolarParts {
    pub u: ComplexMatrix,
    pub p: ComplexMatrix,
    basis: ComplexMatrix,
    singular_values: Vec<f64>,
}

impl PolarParts {
    /// `|T|^t` with `|T|^0 = I`.
    pub fn modulus_power(&self, t: f64) -> ComplexMatrix {
        let v = &self.basis;
        let n = v.rows();
        let vals: Vec<f64> = self
            .singular_values
            .iter()
            .map(|&s| spectral_pow(s, t))
            .collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = ZERO;
            for (k, &l) in vals.iter().enumerate() {
                if l != 0.0 {
                    acc += v.get(i, k) * v.get(j, k).conj() * l;
                }
            }
            acc
        })
    }

    /// Singular values of `T` in ascending order, with the kernel set to zero.
    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    /// Orthonormal basis of `ker T` (the eigenvectors of `|T|` for eigenvalue zero).
    pub fn kernel_basis(&self) -> Vec<Vec<crate::C64>> {
        self.singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0.0)
            .map(|(k, _)| self.basis.column(k))
            .collect()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &self.u * &self.p
    }
}

/// Scale-aware tolerance `1e-9 · (1 + ‖T‖_F)` used throughout this module.
pub fn polar_tolerance(t: &ComplexMatrix) -> f64 {
    1e-9 * (1.0 + t.frobenius_norm())
}

/// Polar decomposition of a square matrix.
///
/// Singular values `σ` with `σ² ≤ rank_tol · σ_max²` are treated as kernel.
pub fn polar_decompose(t: &ComplexMatrix, rank_tol: f64) -> Result<PolarParts> {
    t.ensure_square()?;
    let gram = &t.adjoint() * t;
    let eig = psd_eig(&gram, GRAM_TOL, rank_tol)?;
    let singular_values: Vec<f64> = eig.eigenvalues.iter().map(|&l| libm::sqrt(l)).collect();
    let basis = eig.eigenvectors;
    let n = basis.rows();

    let weighted = |f: &dyn Fn(f64) -> f64| {
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = ZERO;
            for (k, &s) in singular_values.iter().enumerate() {
                let w = f(s);
                if w != 0.0 {
                    acc += basis.get(i, k) * basis.get(j, k).conj() * w;
                }
            }
            acc
        })
    };
    let p = weighted(&|s| s);
    let p_pinv = weighted(&|s| if s > 0.0 { 1.0 / s } else { 0.0 });
    let u = t * &p_pinv;
    Ok(PolarParts {
        u,
        p,
        basis,
        singular_values,
    })
}

/// Duggal transform `|T| U`.
pub fn duggal(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    let parts = polar_decompose(t, DEFAULT_RANK_TOL)?;
    Ok(&parts.p * &parts.u)
}

fn check_unit_interval(t: f64, upper: f64, range: &'static str) -> Result<()> {
    if (0.0..=upper).contains(&t) {
        Ok(())
    } else {
        Err(LabError::OutOfRange {
            name: "t",
            value: t,
            range,
        })
    }
}

fn aluthge_from_parts(parts: &PolarParts, t: f64) -> ComplexMatrix {
    let left = parts.modulus_power(t);
    let right = parts.modulus_power(1.0 - t);
    &(&left * &parts.u) * &right
}

/// Generalized Aluthge transform `|T|^t U |T|^{1-t}` for `t ∈ [0, 1]`.
///
/// `t = 0` returns `T`, `t = 1` the Duggal transform.
pub fn aluthge_t(op: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    check_unit_interval(t, 1.0, "[0, 1]")?;
    let parts = polar_decompose(op, DEFAULT_RANK_TOL)?;
    Ok(aluthge_from_parts(&parts, t))
}

/// Aluthge transform `|T|^{1/2} U |T|^{1/2}`.
pub fn aluthge(op: &ComplexMatrix) -> Result<ComplexMatrix> {
    aluthge_t(op, 0.5)
}

/// Generalized mean transform `(T̃(t) + T̃(1 - t)) / 2` for `t ∈ [0, 1/2]`.
pub fn mean_t(op: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    check_unit_interval(t, 0.5, "[0, 1/2]")?;
    let parts = polar_decompose(op, DEFAULT_RANK_TOL)?;
    let a = aluthge_from_parts(&parts, t);
    let b = aluthge_from_parts(&parts, 1.0 - t);
    Ok((&a + &b).scale_real(0.5))
}

/// Mean transform `(T + T^D) / 2`.
pub fn mean(op: &ComplexMatrix) -> Result<ComplexMatrix> {
    mean_t(op, 0.0)
}

/// `U*U` is Hermitian and idempotent within `tol · (1 + ‖U*U‖_F)`.
pub fn is_partial_isometry(u: &ComplexMatrix, tol: f64) -> bool {
    if !u.is_square() {
        return false;
    }
    let q = &u.adjoint() * u;
    let bound = tol * (1.0 + q.frobenius_norm());
    let herm = q.distance(&q.adjoint()).unwrap_or(f64::INFINITY);
    let idem = (&q * &q).distance(&q).unwrap_or(f64::INFINITY);
    herm <= bound && idem <= bound
}

/// `U*U = I` within `tol · (1 + √n)`.
pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    if !u.is_square() {
        return false;
    }
    let n = u.rows();
    let q = &u.adjoint() * u;
    q.distance(&ComplexMatrix::identity(n))
        .unwrap_or(f64::INFINITY)
        <= tol * (1.0 + libm::sqrt(n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;
    use crate::sampling::SeededRng;
    use crate::shift::WeightedShift;

    fn shift(w: &[f64]) -> ComplexMatrix {
        WeightedShift::from_real(w).unwrap().to_matrix()
    }

    fn assert_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = a.distance(b).unwrap();
        assert!(d <= tol, "distance {d:e} > {tol:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn polar_of_shift_121() {
        let t = shift(&[1., 2., 1.]);
        let parts = polar_decompose(&t, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(parts.u, shift(&[1., 1., 1.]));
        assert_eq!(parts.p, ComplexMatrix::diag_real(&[0., 1., 2., 1.]));
        assert_eq!(parts.reconstruct(), t);
    }

    #[test]
    fn polar_of_unitary() {
        let mut rng = SeededRng::new(8);
        let q = rng.unitary(5);
        let parts = polar_decompose(&q, DEFAULT_RANK_TOL).unwrap();
        assert_close(&parts.u, &q, 1e-12);
        assert_close(&parts.p, &ComplexMatrix::identity(5), 1e-12);
    }

    #[test]
    fn polar_rejects_non_square() {
        assert!(polar_decompose(&ComplexMatrix::zeros(2, 3), DEFAULT_RANK_TOL).is_err());
    }

    #[test]
    fn polar_random_and_rank_deficient() {
        let mut rng = SeededRng::new(0x9014);
        for n in 1..=10 {
            for rank in [n, n / 2, 1] {
                let t = &rng.gaussian_matrix(n, rank) * &rng.gaussian_matrix(rank, n);
                let parts = polar_decompose(&t, DEFAULT_RANK_TOL).unwrap();
                let eps = polar_tolerance(&t);
                assert_close(&parts.reconstruct(), &t, eps);
                let proj = &parts.u.adjoint() * &parts.u;
                assert_close(&(&proj * &parts.p), &parts.p, eps);
                assert!(is_partial_isometry(&parts.u, 1e-9));
                let gram = &t.adjoint() * &t;
                assert_close(
                    &(&parts.p * &parts.p),
                    &gram,
                    eps * (1.0 + t.frobenius_norm()),
                );
                let kernel = parts.kernel_basis();
                assert_eq!(kernel.len(), n - rank);
                for x in &kernel {
                    let ux = parts.u.mat_vec(x).unwrap();
                    let nrm = libm::sqrt(ux.iter().map(|z| z.norm_sqr()).sum::<f64>());
                    assert!(nrm <= eps, "U does not vanish on ker T: {nrm:e}");
                }
            }
        }
    }

    #[test]
    fn duggal_of_shift_121() {
        let td = duggal(&shift(&[1., 2., 1.])).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            &[0., 0., 0., 0.],
            &[0., 0., 1., 0.],
            &[0., 0., 0., 2.],
            &[0., 0., 0., 0.],
        ]);
        assert_eq!(td, expected);
    }

    #[test]
    fn duggal_of_equal_weights_is_shifted_copy() {
        let alpha = 1.7;
        let td = duggal(&shift(&[alpha, alpha, alpha])).unwrap();
        let expected = ComplexMatrix::zeros(1, 1).direct_sum(&shift(&[alpha, alpha]));
        assert_close(&td, &expected, 1e-14);
    }

    #[test]
    fn transforms_fix_normal_matrices() {
        let mut rng = SeededRng::new(31);
        for n in 1..7 {
            let q = rng.unitary(n);
            let d: Vec<C64> = (0..n).map(|_| rng.complex_normal()).collect();
            let t = &(&q * &ComplexMatrix::diag(&d)) * &q.adjoint();
            let eps = polar_tolerance(&t);
            assert_close(&duggal(&t).unwrap(), &t, eps);
            for s in [0.0, 0.25, 0.5, 0.9, 1.0] {
                assert_close(&aluthge_t(&t, s).unwrap(), &t, eps);
            }
            for s in [0.0, 0.1, 0.5] {
                assert_close(&mean_t(&t, s).unwrap(), &t, eps);
            }
        }
    }

    #[test]
    fn aluthge_of_shift_121() {
        let a = aluthge(&shift(&[1., 2., 1.])).unwrap();
        let sd = a.superdiagonal();
        let r2 = core::f64::consts::SQRT_2;
        assert_eq!(
            sd,
            alloc::vec![C64::new(0., 0.), C64::new(r2, 0.), C64::new(r2, 0.)]
        );
        let sd_sum: f64 = a.as_slice().iter().map(|z| z.norm()).sum();
        assert!((sd_sum - 2.0 * r2).abs() < 1e-15);
    }

    #[test]
    fn endpoints() {
        let mut rng = SeededRng::new(55);
        for n in 1..8 {
            let t = rng.gaussian_matrix(n, n);
            let eps = polar_tolerance(&t);
            let td = duggal(&t).unwrap();
            assert_close(&aluthge_t(&t, 1.0).unwrap(), &td, eps);
            assert_close(&aluthge_t(&t, 0.0).unwrap(), &t, eps);
            let m = (&t + &td).scale_real(0.5);
            assert_close(&mean_t(&t, 0.0).unwrap(), &m, eps);
        }
        let t = shift(&[1., 2., 1.]);
        assert_eq!(aluthge_t(&t, 1.0).unwrap(), duggal(&t).unwrap());
    }

    #[test]
    fn parameter_range_checks() {
        let t = shift(&[1., 1.]);
        assert!(aluthge_t(&t, -0.1).is_err());
        assert!(aluthge_t(&t, 1.1).is_err());
        assert!(mean_t(&t, 0.6).is_err());
        assert!(mean_t(&t, f64::NAN).is_err());
    }

    #[test]
    fn mean_of_equal_weight_shift() {
        let m = mean(&shift(&[1., 1., 1.])).unwrap();
        assert_eq!(m, shift(&[0.5, 1., 1.]));
    }

    #[test]
    fn mean_of_general_n4_shift() {
        let (a, b, c) = (1.3, 0.4, 2.2);
        let m = mean(&shift(&[a, b, c])).unwrap();
        assert_close(&m, &shift(&[a / 2., (a + b) / 2., (b + c) / 2.]), 1e-14);
    }

    #[test]
    fn gauge_equivariance() {
        let mut rng = SeededRng::new(404);
        for n in 2..7 {
            let t = rng.gaussian_matrix(n, n);
            let d = rng.diagonal_unitary(n);
            let conj = |m: &ComplexMatrix| &(&d.adjoint() * m) * &d;
            let td = conj(&t);
            let eps = polar_tolerance(&t);
            assert_close(&duggal(&td).unwrap(), &conj(&duggal(&t).unwrap()), eps);
            for s in [0.25, 0.5, 0.75] {
                assert_close(
                    &aluthge_t(&td, s).unwrap(),
                    &conj(&aluthge_t(&t, s).unwrap()),
                    eps,
                );
            }
            for s in [0.0, 0.25] {
                assert_close(
                    &mean_t(&td, s).unwrap(),
                    &conj(&mean_t(&t, s).unwrap()),
                    eps,
                );
            }
        }
    }

    #[test]
    fn partial_isometry_and_unitary_predicates() {
        let parts = polar_decompose(&shift(&[1., 2., 1.]), DEFAULT_RANK_TOL).unwrap();
        assert!(is_partial_isometry(&parts.u, 1e-12));
        assert!(!is_unitary(&parts.u, 1e-12));

        let id = ComplexMatrix::identity(3);
        assert!(is_partial_isometry(&id, 1e-12));
        assert!(is_unitary(&id, 1e-12));

        let d = ComplexMatrix::diag_real(&[1., 0.]);
        assert!(is_partial_isometry(&d, 1e-12));
        assert!(!is_unitary(&d, 1e-12));

        let not_pi = ComplexMatrix::diag_real(&[2., 1.]);
        assert!(!is_partial_isometry(&not_pi, 1e-12));
    }

    #[test]
    fn degenerate_sizes() {
        let e = ComplexMatrix::zeros(0, 0);
        assert_eq!(duggal(&e).unwrap(), e);
        let one = ComplexMatrix::diag(&[C64::new(0., 2.)]);
        let parts = polar_decompose(&one, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(parts.p, ComplexMatrix::diag_real(&[2.]));
        assert_eq!(parts.u, ComplexMatrix::diag(&[C64::new(0., 1.)]));
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(duggal(&z).unwrap(), z);
        assert_eq!(aluthge_t(&z, 0.0).unwrap(), z);
    }
}
