use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use onb_core::approx::{bezier_curve_recover, fit_curve_onb, BasisKind, ControlVector};
use onb_core::exact::{bernstein_poly, ortho_double_sum, phi_bern_integral};
use onb_core::quadrature::integrate;
use onb_core::{
    bernstein_eval, bernstein_eval_all, onb_coeffs, onb_eval, onb_eval_all, BasisSpec, Interval,
    QuadratureRule, RationalPoly,
};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-10.0f64..10.0, 0.1f64..20.0).prop_map(|(a, len)| Interval::new(a, a + len).unwrap())
}

fn point_in(iv: Interval) -> impl Strategy<Value = f64> {
    (0.0f64..=1.0).prop_map(move |s| iv.a() + s * iv.length())
}

fn spec_and_point(max_n: usize) -> impl Strategy<Value = (BasisSpec, f64)> {
    (0..=max_n, interval())
        .prop_flat_map(|(n, iv)| (Just(BasisSpec::new(n, iv).unwrap()), point_in(iv)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bernstein_partition_of_unity((spec, x) in spec_and_point(25)) {
        let s: f64 = bernstein_eval_all(&spec, x).unwrap().iter().sum();
        prop_assert!((s - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn bernstein_positive_and_symmetric((spec, x) in spec_and_point(25)) {
        let iv = spec.interval();
        let mirror = (iv.a() + iv.b() - x).clamp(iv.a(), iv.b());
        let n = spec.degree();
        for j in 0..=n {
            let v = bernstein_eval(&spec, j, x).unwrap();
            prop_assert!(v >= 0.0);
            let w = bernstein_eval(&spec, n - j, mirror).unwrap();
            prop_assert!((v - w).abs() <= 1e-12 * (1.0 + v.abs()), "j={} v={} w={}", j, v, w);
        }
    }

    #[test]
    fn onb_forms_agree(n in 0usize..=20, t in 0.0f64..=1.0) {
        let spec = BasisSpec::unit(n).unwrap();
        let all = onb_eval_all(&spec, t).unwrap();
        for (j, &from_all) in all.iter().enumerate() {
            let c = onb_coeffs(n, j).unwrap();
            let fast = onb_eval(&spec, j, t).unwrap();
            prop_assert_eq!(fast, from_all);
            let (p, k) = (c.eval_power(t), c.eval_combo(t));
            let scale = 1.0 + fast.abs();
            prop_assert!((fast - p).abs() <= 1e-12 * scale, "j={} fast={} power={}", j, fast, p);
            prop_assert!((fast - k).abs() <= 1e-12 * scale, "j={} fast={} combo={}", j, fast, k);
        }
    }

    #[test]
    fn outside_points_are_rejected(iv in interval(), d in 1e-6f64..5.0) {
        let spec = BasisSpec::new(3, iv).unwrap();
        prop_assert!(onb_eval(&spec, 0, iv.b() + d).is_err());
        prop_assert!(bernstein_eval(&spec, 0, iv.a() - d).is_err());
    }

    #[test]
    fn quadrature_matches_exact_polynomial_integral(
        coeffs in prop::collection::vec(-50i64..50, 1..=24),
        nodes in 12usize..=20,
    ) {
        let p = RationalPoly::from_ints(coeffs.iter().copied());
        let exact = p.integral_unit().to_f64().unwrap();
        let rule = QuadratureRule::new(1, nodes).unwrap();
        let got = integrate(|x| p.eval_f64(x), Interval::unit(), &rule).unwrap();
        let bound: f64 = coeffs.iter().map(|c| c.abs() as f64).sum();
        prop_assert!((got - exact).abs() <= 1e-13 * (1.0 + bound));
    }

    #[test]
    fn projection_is_idempotent(
        n in 1usize..=10,
        iv in interval(),
        values in prop::collection::vec(-1.0f64..1.0, 11),
    ) {
        let spec = BasisSpec::new(n, iv).unwrap();
        let rule = QuadratureRule::for_basis(n).unwrap();
        let cv = ControlVector::new(BasisKind::Orthonormal, spec, values[..=n].to_vec()).unwrap();
        let again = fit_curve_onb(|x| cv.eval(x).unwrap(), spec, &rule).unwrap();
        for (a, b) in again.values().iter().zip(cv.values()) {
            prop_assert!((a - b).abs() <= 1e-11, "{} vs {}", a, b);
        }
    }

    #[test]
    fn ortho_and_bezier_reconstructions_coincide(
        n in 1usize..=10,
        iv in interval(),
        s in prop::collection::vec(0.0f64..=1.0, 5),
    ) {
        let spec = BasisSpec::new(n, iv).unwrap();
        let rule = QuadratureRule::new(8, 12).unwrap();
        let f = |x: f64| (1.7 * x).sin() + 0.1 * x * x;
        let onb = fit_curve_onb(f, spec, &rule).unwrap();
        let bez = bezier_curve_recover(f, spec, &rule).unwrap();
        for u in s {
            let x = iv.a() + u * iv.length();
            let (a, b) = (onb.eval(x).unwrap(), bez.eval(x).unwrap());
            prop_assert!((a - b).abs() <= 1e-8 * (1.0 + a.abs()), "x={} {} vs {}", x, a, b);
        }
    }
}

#[test]
fn mixed_integrals_are_upper_triangular() {
    for n in 0..=10 {
        for i in 0..=n {
            for j in 0..=n {
                let v = phi_bern_integral(n, i, j, Interval::unit()).unwrap();
                assert_eq!(v.is_zero(), j < i, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn mixed_integrals_match_exact_polynomials() {
    for n in 0..=8 {
        for i in 0..=n {
            let phi = onb_coeffs(n, i).unwrap().power;
            for j in 0..=n {
                let exact = (&phi * &bernstein_poly(j, n).unwrap()).integral_unit();
                assert_eq!(
                    phi_bern_integral(n, i, j, Interval::unit())
                        .unwrap()
                        .rational,
                    exact
                );
            }
        }
    }
}

#[test]
fn double_sum_diagonal_and_symmetry() {
    for n in 0..=9 {
        for i in 0..=n {
            for j in 0..=n {
                let s = ortho_double_sum(n, i, j).unwrap();
                assert_eq!(s, ortho_double_sum(n, j, i).unwrap());
                if i == j {
                    assert_eq!(
                        s,
                        BigRational::new(1.into(), ((2 * (n - i) + 1) as i64).into())
                    );
                } else {
                    assert!(s.is_zero());
                }
            }
        }
    }
}

#[test]
fn numeric_gram_matrix_is_identity() {
    for n in [3usize, 12, 24, 40] {
        let iv = Interval::new(-2.0, 5.0).unwrap();
        let spec = BasisSpec::new(n, iv).unwrap();
        let rule = QuadratureRule::for_basis(n).unwrap();
        let (xs, ws) = rule.abscissae(iv);
        let rows: Vec<Vec<f64>> = xs
            .iter()
            .map(|&x| onb_eval_all(&spec, x).unwrap())
            .collect();
        for i in 0..=n {
            for j in 0..=n {
                let g: f64 = rows.iter().zip(&ws).map(|(r, w)| w * r[i] * r[j]).sum();
                // orthonormal in the unit variable, so the Gram matrix is length * I
                let want = if i == j { iv.length() } else { 0.0 };
                assert!((g - want).abs() < 1e-10, "n={n} i={i} j={j} g={g}");
            }
        }
    }
}
