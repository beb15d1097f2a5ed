use num_traits::ToPrimitive;
use onb_core::approx::{degree_sweep_curve, degree_sweep_surface, BasisKind, SampleGrid};
use onb_core::exact::bernstein_pair_integral;
use onb_core::quadrature::{integrate, integrate2d};
use onb_core::testfns::{LissajousParams, SincParams};
use onb_core::{bernstein_eval, onb_eval, BasisSpec, Interval, QuadratureRule};

#[test]
fn bernstein_pair_with_eight_point_rule() {
    let spec = BasisSpec::unit(4).unwrap();
    let rule = QuadratureRule::new(1, 8).unwrap();
    let got = integrate(
        |x| bernstein_eval(&spec, 2, x).unwrap() * bernstein_eval(&spec, 1, x).unwrap(),
        Interval::unit(),
        &rule,
    )
    .unwrap();
    let exact = bernstein_pair_integral(2, 4, 1, 4).unwrap();
    assert_eq!(exact, num_rational::BigRational::new(1.into(), 21.into()));
    approx::assert_abs_diff_eq!(got, exact.to_f64().unwrap(), epsilon = 1e-15);
}

#[test]
fn squared_norms_are_one() {
    let rule = QuadratureRule::default();
    let spec = BasisSpec::unit(8).unwrap();
    let v = integrate(
        |x| onb_eval(&spec, 3, x).unwrap().powi(2),
        Interval::unit(),
        &rule,
    )
    .unwrap();
    approx::assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);

    let spec = BasisSpec::unit(5).unwrap();
    let phi = |x: f64| onb_eval(&spec, 2, x).unwrap();
    let v = integrate2d(
        |x, y| (phi(x) * phi(y)).powi(2),
        Interval::unit(),
        Interval::unit(),
        &rule,
    )
    .unwrap();
    approx::assert_abs_diff_eq!(v, 1.0, epsilon = 1e-11);
}

#[test]
fn lissajous_sweep_reports_every_degree() {
    let p = LissajousParams::default();
    let (fx, fy) = (|t: f64| p.x(t), |t: f64| p.y(t));
    let grid = SampleGrid::curve(p.t_interval, 1001).unwrap();
    let rule = QuadratureRule::default();
    for kind in [BasisKind::Orthonormal, BasisKind::Bernstein] {
        let reports =
            degree_sweep_curve(&[&fx, &fy], kind, p.t_interval, 16..=24, &rule, &grid).unwrap();
        assert_eq!(
            reports.iter().map(|r| r.n).collect::<Vec<_>>(),
            (16..=24).collect::<Vec<_>>()
        );
        let at20 = reports.iter().find(|r| r.n == 20).unwrap();
        assert!(at20.error <= 5e-7, "{kind:?} E={}", at20.error);
        assert!(reports
            .iter()
            .all(|r| r.error.is_finite() && r.error >= 0.0));
    }
    assert!(degree_sweep_curve(
        &[&fx],
        BasisKind::Orthonormal,
        p.t_interval,
        5..5,
        &rule,
        &grid
    )
    .is_err());
}

#[test]
fn sinc_sweep_reports_every_degree() {
    let p = SincParams::default();
    let f = |x: f64, y: f64| p.eval(x, y);
    let grid = SampleGrid::surface(p.domain, 101, p.domain, 101).unwrap();
    let rule = QuadratureRule::default();
    let reports = degree_sweep_surface(
        &f,
        BasisKind::Orthonormal,
        p.domain,
        p.domain,
        10..=14,
        &rule,
        &grid,
    )
    .unwrap();
    assert_eq!(reports.len(), 5);
    for (r, n) in reports.iter().zip(10..) {
        assert_eq!((r.n, r.m), (n, Some(n)));
        assert!(r.error.is_finite() && r.error < 1e-3);
    }
}
