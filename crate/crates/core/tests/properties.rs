use grasslog::configspace::{alternate, AnyConfiguration, Configuration, GaussRat};
use grasslog::formeval::{eval_r, ChartPoint, FunctionSystem, Presentation, TangentVector};
use grasslog::grasspoly::{grass_dilog_closed, grass_trilog_closed};
use grasslog::polylog::{bloch_wigner, sv_trilog};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn away_from_real_line() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, 0.05..3.0f64, any::<bool>()).prop_map(|(re, im, up)| Complex64::new(re, if up { im } else { -im }))
}

fn float_config(n: usize, dim: usize) -> impl Strategy<Value = Configuration<Complex64>> {
    proptest::collection::vec(proptest::collection::vec(complex(), dim), n).prop_filter_map("generic", move |vs| {
        Configuration::new(dim, vs).ok().filter(|c| c.is_generic())
    })
}

fn exact_config(n: usize, dim: usize) -> impl Strategy<Value = Configuration<GaussRat>> {
    let entry = (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| GaussRat::from_ints(a, b, c, d));
    proptest::collection::vec(proptest::collection::vec(entry, dim), n).prop_filter_map("generic", move |vs| {
        Configuration::new(dim, vs).ok().filter(|c| c.is_generic())
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bloch_wigner_symmetries(z in away_from_real_line()) {
        let d = bloch_wigner(z);
        prop_assert!(close(d, -bloch_wigner(z.inv()), 1e-11));
        prop_assert!(close(d, -bloch_wigner(z.conj()), 1e-11));
        prop_assert!(close(d, -bloch_wigner(Complex64::new(1.0, 0.0) - z), 1e-11));
    }

    #[test]
    fn sv_trilog_inversion_and_conjugation(z in away_from_real_line()) {
        let l = sv_trilog(z);
        prop_assert!(close(l, sv_trilog(z.inv()), 1e-11));
        prop_assert!(close(l, sv_trilog(z.conj()), 1e-11));
    }

    #[test]
    fn alternating_a_symmetric_evaluator_gives_zero(n in 2usize..6, c in -5.0..5.0f64) {
        let v: f64 = alternate(n, |p| c * p.iter().map(|&i| i as f64).sum::<f64>()).unwrap();
        prop_assert!(v.abs() < 1e-9);
    }

    #[test]
    fn dilog_changes_sign_under_transpositions(c in float_config(4, 2), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let mut images: Vec<usize> = (0..4).collect();
        images.swap(i, j);
        let a = grass_dilog_closed(&c).unwrap();
        let b = grass_dilog_closed(&c.permuted(&images).unwrap()).unwrap();
        prop_assert!(close(a, -b, 1e-10));
    }

    #[test]
    fn exact_json_round_trip_is_bit_exact(c in exact_config(4, 3)) {
        let any = AnyConfiguration::Exact(c);
        let back = AnyConfiguration::from_json_str(&any.to_json().to_string()).unwrap();
        prop_assert_eq!(back, any);
    }

    #[test]
    fn r_forms_are_alternating_in_vectors(
        forms in proptest::collection::vec(proptest::collection::vec(complex(), 3), 4),
        t in proptest::collection::vec(complex(), 2),
        w in proptest::collection::vec(proptest::collection::vec(-1.0..1.0f64, 4), 2),
    ) {
        let fs = FunctionSystem::new(3, forms).unwrap();
        let p = ChartPoint::new(0, t).unwrap();
        let ws = [TangentVector(w[0].clone()), TangentVector(w[1].clone())];
        let swapped = [ws[1].clone(), ws[0].clone()];
        let a = eval_r(3, &fs, &p, &ws, Presentation::Definition);
        prop_assume!(a.is_ok());
        let a = a.unwrap().value;
        let b = eval_r(3, &fs, &p, &swapped, Presentation::Definition).unwrap().value;
        let h = eval_r(3, &fs, &p, &ws, Presentation::Holo).unwrap().value;
        prop_assert!(close(a, -b, 1e-12));
        prop_assert!(close(a, h, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trilog_is_invariant_under_gl3(c in float_config(6, 3), g in proptest::collection::vec(proptest::collection::vec(complex(), 3), 3)) {
        let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        prop_assume!(det.norm() > 0.05);
        let moved = c.transformed(&g).unwrap();
        prop_assume!(moved.is_generic());
        let a = grass_trilog_closed(&c).unwrap().closed;
        let b = grass_trilog_closed(&moved).unwrap().closed;
        prop_assert!(close(a, b, 1e-8), "{} vs {}", a, b);
    }

    #[test]
    fn trilog_changes_sign_under_transpositions(c in exact_config(6, 3), i in 0usize..6, j in 0usize..6) {
        prop_assume!(i != j);
        let mut images: Vec<usize> = (0..6).collect();
        images.swap(i, j);
        let a = grass_trilog_closed(&c).unwrap().closed;
        let b = grass_trilog_closed(&c.permuted(&images).unwrap()).unwrap().closed;
        prop_assert!(close(a, -b, 1e-10));
    }
}
