use alloc::vec::Vec;

use crate::matrix::ComplexMatrix;
use crate::spectral::psd_power;

pub const DEFAULT_PREDICATE_TOL: f64 = 1e-10;

fn bound(t: &ComplexMatrix, tol: f64) -> f64 {
    let n = t.frobenius_norm();
    tol * (1.0 + n * n)
}

fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.commutator(b)
        .map_or(f64::INFINITY, |c| c.frobenius_norm())
}

/// `‖[T, T*]‖_F ≤ tol · (1 + ‖T‖_F²)`.
pub fn is_normal(t: &ComplexMatrix, tol: f64) -> bool {
    t.is_square() && commutator_norm(t, &t.adjoint()) <= bound(t, tol)
}

/// `‖[T, T*T]‖_F ≤ tol · (1 + ‖T‖_F²)`.
pub fn is_quasinormal(t: &ComplexMatrix, tol: f64) -> bool {
    t.is_square() && commutator_norm(t, &(&t.adjoint() * t)) <= bound(t, tol)
}

/// `(‖[T*T, TT*]‖_F, ‖[|T|, |T*|]‖_F)`.
pub fn binormal_residuals(t: &ComplexMatrix) -> (f64, f64) {
    if !t.is_square() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let gram = &t.adjoint() * t;
    let cogram = t * &t.adjoint();
    let direct = commutator_norm(&gram, &cogram);
    let moduli =
        psd_power(&gram, 0.5, 1e-10).and_then(|m| Ok((m, psd_power(&cogram, 0.5, 1e-10)?)));
    let via_moduli = match moduli {
        Ok((m, mstar)) => commutator_norm(&m, &mstar),
        Err(_) => f64::INFINITY,
    };
    (direct, via_moduli)
}

/// Binormality, tested both as `[T*T, TT*] = 0` and as `[|T|, |T*|] = 0`;
/// true only when both commutators are within `tol · (1 + ‖T‖_F²)`.
pub fn is_binormal(t: &ComplexMatrix, tol: f64) -> bool {
    let (direct, via_moduli) = binormal_residuals(t);
    let b = bound(t, tol);
    direct <= b && via_moduli <= b
}

/// Mutual commutativity of `{(T^k)* T^k, T^k (T^k)* : 1 ≤ k ≤ n}`.
///
/// The family is truncated at `k = n`, which is exact for nilpotent `T`.
/// Each pair `X, Y` is accepted when `‖[X, Y]‖_F ≤ tol · (1 + ‖X‖_F ‖Y‖_F)`.
pub fn is_centered(t: &ComplexMatrix, tol: f64) -> bool {
    let Ok(n) = t.ensure_square() else {
        return false;
    };
    let mut family: Vec<ComplexMatrix> = Vec::with_capacity(2 * n);
    let mut power = t.clone();
    for k in 1..=n {
        if k > 1 {
            power = &power * t;
        }
        family.push(&power.adjoint() * &power);
        family.push(&power * &power.adjoint());
    }
    let norms: Vec<f64> = family.iter().map(ComplexMatrix::frobenius_norm).collect();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let c = commutator_norm(&family[i], &family[j]);
            if c > tol * (1.0 + norms[i] * norms[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;
    use crate::sampling::SeededRng;
    use crate::shift::WeightedShift;

    const TOL: f64 = DEFAULT_PREDICATE_TOL;

    #[test]
    fn shifts_are_binormal() {
        let mut rng = SeededRng::new(12);
        for n in 2..9 {
            let s = rng.shift_with_moduli(n, &[0.5, 1.0, 2.0, 3.0]);
            let t = s.to_matrix();
            let (a, b) = binormal_residuals(&t);
            assert!(a <= 1e-12 && b <= 1e-12, "n={n}: {a:e} {b:e}");
            assert!(is_binormal(&t, TOL));
        }
    }

    #[test]
    fn equal_weight_shift_is_not_quasinormal() {
        let t = WeightedShift::from_real(&[1., 1., 1.]).unwrap().to_matrix();
        assert!(!is_quasinormal(&t, TOL));
        assert!(!is_normal(&t, TOL));
    }

    #[test]
    fn jordan_block_is_not_binormal() {
        let t = ComplexMatrix::from_real_rows(&[&[1., 1.], &[0., 1.]]);
        let gram = &t.adjoint() * &t;
        let cogram = &t * &t.adjoint();
        assert_eq!(gram, ComplexMatrix::from_real_rows(&[&[1., 1.], &[1., 2.]]));
        assert_eq!(
            cogram,
            ComplexMatrix::from_real_rows(&[&[2., 1.], &[1., 1.]])
        );
        // [[1,1],[1,2]]·[[2,1],[1,1]] − reverse = [[0,-2],[2,0]]
        let (direct, via) = binormal_residuals(&t);
        assert!((direct - 2.0 * core::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(via > 1e-3);
        assert!(!is_binormal(&t, TOL));
        assert!(!is_centered(&t, TOL));
    }

    #[test]
    fn normal_matrices_pass_everything() {
        let mut rng = SeededRng::new(6);
        for n in 1..6 {
            let q = rng.unitary(n);
            let d: Vec<C64> = (0..n).map(|_| rng.complex_normal()).collect();
            let t = &(&q * &ComplexMatrix::diag(&d)) * &q.adjoint();
            assert!(is_normal(&t, TOL));
            assert!(is_quasinormal(&t, TOL));
            assert!(is_binormal(&t, TOL));
            assert!(is_centered(&t, TOL));
        }
    }

    #[test]
    fn shifts_are_centered() {
        let mut rng = SeededRng::new(66);
        for n in 2..=6 {
            for _ in 0..5 {
                let s = rng.shift_with_moduli(n, &[0.5, 1.0, 2.0, 3.0]);
                assert!(is_centered(&s.to_matrix(), TOL));
            }
        }
    }

    #[test]
    fn non_square_inputs_are_rejected() {
        let t = ComplexMatrix::zeros(2, 3);
        assert!(!is_normal(&t, TOL));
        assert!(!is_binormal(&t, TOL));
        assert!(!is_centered(&t, TOL));
    }
}
