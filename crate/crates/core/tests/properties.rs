use approx::assert_abs_diff_eq;
use cslab_core::sampling::SeededRng;
use cslab_core::symmetry::objective;
use cslab_core::{
    aluthge_cs_criterion, aluthge_t, both_cs_criterion, check_cs_with, cs_criterion, duggal,
    duggal_cs_criterion, is_binormal, is_centered, is_partial_isometry, mean_cs_criterion, mean_t,
    polar_decompose, psd_power, pseudoinverse_psd, AntilinearMap, ComplexMatrix, WeightedShift,
    C64, DEFAULT_RANK_TOL,
};
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((0.1f64..5.0, 0.0f64..std::f64::consts::TAU), 1..8).prop_map(|v| {
        v.into_iter()
            .map(|(r, th)| C64::from_polar(r, th))
            .collect()
    })
}

fn palindromic_weights() -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(
        (prop::sample::select(vec![0.5, 1.0, 2.0, 3.0]), 0.0f64..6.3),
        1..5,
    )
    .prop_flat_map(|half| {
        (Just(half), any::<bool>()).prop_map(|(half, odd)| {
            let mut mods: Vec<(f64, f64)> = half.clone();
            let mirror = if odd {
                &half[..half.len() - 1]
            } else {
                &half[..]
            };
            // Mirror moduli only; phases for the second half are reused
            // in reverse, which is as arbitrary as fresh ones.
            mods.extend(mirror.iter().rev().copied());
            mods.into_iter()
                .map(|(r, th)| C64::from_polar(r, th))
                .collect()
        })
    })
}

fn relative(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.distance(b).unwrap() / (1.0 + b.frobenius_norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polar_reconstructs_and_u_is_partial_isometry(seed in any::<u64>(), n in 1usize..7, rank in 0usize..7) {
        let mut rng = SeededRng::new(seed);
        let r = rank.min(n);
        let t = &rng.gaussian_matrix(n, r) * &rng.gaussian_matrix(r, n);
        let parts = polar_decompose(&t, DEFAULT_RANK_TOL).unwrap();
        prop_assert!(relative(&parts.reconstruct(), &t) <= 1e-9);
        prop_assert!(is_partial_isometry(&parts.u, 1e-9));
        for x in parts.kernel_basis() {
            let ux = parts.u.mat_vec(&x).unwrap();
            let norm: f64 = ux.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(norm <= 1e-9);
        }
    }

    #[test]
    fn pseudoinverse_penrose_identities(seed in any::<u64>(), n in 1usize..7, rank in 0usize..7) {
        let mut rng = SeededRng::new(seed);
        let p = rng.psd(n, rank.min(n));
        let q = pseudoinverse_psd(&p, 1e-10).unwrap();
        let scale = 1.0 + p.frobenius_norm() * q.frobenius_norm();
        prop_assert!((&(&p * &q) * &p).distance(&p).unwrap() <= 1e-8 * scale * (1.0 + p.frobenius_norm()));
        prop_assert!((&(&q * &p) * &q).distance(&q).unwrap() <= 1e-8 * scale * (1.0 + q.frobenius_norm()));
        let pq = &p * &q;
        prop_assert!(pq.distance(&pq.adjoint()).unwrap() <= 1e-8 * scale);
    }

    #[test]
    fn psd_powers_compose(seed in any::<u64>(), n in 1usize..6, s in 0.05f64..0.5, t in 0.05f64..0.5) {
        let mut rng = SeededRng::new(seed);
        let p = rng.psd(n, n);
        let lhs = &psd_power(&p, s, 1e-10).unwrap() * &psd_power(&p, t, 1e-10).unwrap();
        let rhs = psd_power(&p, s + t, 1e-10).unwrap();
        prop_assert!(relative(&lhs, &rhs) <= 1e-9);
    }

    #[test]
    fn shift_criteria_gauge_invariant(w in weights()) {
        let s = WeightedShift::new(w).unwrap();
        let (d, g) = s.unimodular_gauge();
        // The gauge is a genuine unitary similarity onto nonnegative weights.
        let rotated = &(&d.adjoint() * &s.to_matrix()) * &d;
        prop_assert!(rotated.distance(&g.to_matrix()).unwrap() <= 1e-12 * (1.0 + rotated.frobenius_norm()));
        prop_assert!(g.weights().iter().all(|z| z.im.abs() <= 1e-12 && z.re > 0.0));
        prop_assert_eq!(cs_criterion(&s), cs_criterion(&g));
        prop_assert_eq!(duggal_cs_criterion(&s), duggal_cs_criterion(&g));
        prop_assert_eq!(both_cs_criterion(&s), both_cs_criterion(&g));
        for t in [0.25, 0.5, 1.0] {
            prop_assert_eq!(aluthge_cs_criterion(&s, t).unwrap(), aluthge_cs_criterion(&g, t).unwrap());
        }
        for t in [0.0, 0.25, 0.5] {
            prop_assert_eq!(mean_cs_criterion(&s, t).unwrap(), mean_cs_criterion(&g, t).unwrap());
        }
    }

    #[test]
    fn palindromic_shifts_satisfy_every_implied_criterion(w in palindromic_weights()) {
        let s = WeightedShift::new(w).unwrap();
        prop_assert!(cs_criterion(&s));
        prop_assert!(aluthge_cs_criterion(&s, 0.5).unwrap());
        for t in [0.1, 0.25, 0.5] {
            prop_assert!(mean_cs_criterion(&s, t).unwrap());
        }
        // A palindromic shift is CS with the flip conjugation once its phases are gauged away.
        let (_, g) = s.unimodular_gauge();
        let flip = cslab_core::flip_conjugation(g.dim());
        prop_assert!(check_cs_with(&g.to_matrix(), &flip).unwrap() <= 1e-9 * (1.0 + g.to_matrix().frobenius_norm()));
    }

    #[test]
    fn transforms_commute_with_unitary_similarity(seed in any::<u64>(), n in 1usize..6, t in 0.0f64..=0.5) {
        let mut rng = SeededRng::new(seed);
        let a = rng.gaussian_matrix(n, n);
        let q = rng.unitary(n);
        let rotate = |m: &ComplexMatrix| &(&q.adjoint() * m) * &q;
        let b = rotate(&a);
        let tol = 1e-8;
        prop_assert!(relative(&duggal(&b).unwrap(), &rotate(&duggal(&a).unwrap())) <= tol);
        prop_assert!(relative(&aluthge_t(&b, t).unwrap(), &rotate(&aluthge_t(&a, t).unwrap())) <= tol);
        prop_assert!(relative(&aluthge_t(&b, 1.0 - t).unwrap(), &rotate(&aluthge_t(&a, 1.0 - t).unwrap())) <= tol);
        prop_assert!(relative(&mean_t(&b, t).unwrap(), &rotate(&mean_t(&a, t).unwrap())) <= tol);
    }

    #[test]
    fn residual_transfers_to_certificate(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = SeededRng::new(seed);
        let t = rng.gaussian_matrix(n, n);
        let v = rng.unitary(n);
        let j = &v * &v.transpose();
        let map = AntilinearMap::new(j).unwrap();
        prop_assert!(map.is_conjugation(1e-10));
        let lhs = check_cs_with(&t, &map).unwrap();
        let rhs = objective(&t, &v).sqrt();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + t.frobenius_norm()));
    }

    #[test]
    fn shifts_are_binormal_and_centered(w in weights()) {
        let t = WeightedShift::new(w).unwrap().to_matrix();
        prop_assert!(is_binormal(&t, 1e-10));
        prop_assert!(is_centered(&t, 1e-10));
    }
}

#[test]
fn flip_conjugation_is_an_involution() {
    for n in 1..9 {
        let c = cslab_core::flip_conjugation(n);
        assert!(c.is_conjugation(0.0));
        let cc = c.compose(&c).unwrap();
        assert_abs_diff_eq!(cc.distance(&ComplexMatrix::identity(n)).unwrap(), 0.0);
    }
}

#[test]
fn aluthge_of_shift_matches_closed_form_weights() {
    // T̃(t) = 0 ⊕ shift(|λ_i|^t |λ_{i+1}|^{1-t}) up to phases.
    let s = WeightedShift::from_real(&[1.0, 2.0, 3.0, 0.5]).unwrap();
    let t = 0.3;
    let a = aluthge_t(&s.to_matrix(), t).unwrap();
    let sd = a.superdiagonal();
    assert_abs_diff_eq!(sd[0].norm(), 0.0, epsilon = 1e-12);
    let m = s.moduli();
    for i in 0..m.len() - 1 {
        let expected = m[i].powf(t) * m[i + 1].powf(1.0 - t);
        assert_abs_diff_eq!(sd[i + 1].norm(), expected, epsilon = 1e-12);
    }
}
