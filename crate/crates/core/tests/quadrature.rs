use fraclap_core::domain::*;
use fraclap_core::Point;
use proptest::prelude::*;

fn unit_interval() -> Domain {
    Domain::interval(0.0, 1.0, 11).unwrap()
}

/// `∫_{[0,a]×[0,b]} 1/|ξ| dξ`, the corner sitting at the singular point.
fn corner_box(a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    a * (b / a).asinh() + b * (a / b).asinh()
}

proptest! {
    #[test]
    fn measure_is_preserved(x in 0.0f64..=1.0, levels in 1usize..20, ratio in 0.2f64..0.8, sub in 1usize..4) {
        let params = QuadratureParams { levels, ratio, gauss_order: 6, subdivisions: sub };
        let rule = graded_quadrature_rule(&unit_interval(), Point::on_line(x), params).unwrap();
        prop_assert!((rule.measure() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn rectangle_measure_is_preserved(x in 0.0f64..=2.0, y in 0.0f64..=1.0, levels in 1usize..12) {
        let d = Domain::rectangle((0.0, 2.0), (0.0, 1.0), 5, 5).unwrap();
        let params = QuadratureParams { levels, ..QuadratureParams::default_for(2) };
        let rule = graded_quadrature_rule(&d, Point::new(x, y), params).unwrap();
        prop_assert!((rule.measure() - 2.0).abs() <= 1e-12 * 2.0);
    }

    #[test]
    fn inverse_distance_over_rectangle(x in 0.05f64..1.95, y in 0.05f64..0.95) {
        let d = Domain::rectangle((0.0, 2.0), (0.0, 1.0), 5, 5).unwrap();
        let rule = graded_kernel_rule(&d, Point::new(x, y), QuadratureParams::default_for(2), 1.0).unwrap();
        let got = rule.integrate(|n| 1.0 / n.offset.norm());
        let exact = corner_box(x, y) + corner_box(2.0 - x, y) + corner_box(x, 1.0 - y) + corner_box(2.0 - x, 1.0 - y);
        prop_assert!((got - exact).abs() <= 1e-10 * exact, "{} vs {}", got, exact);
    }
}

#[test]
fn polynomials_are_integrated() {
    let d = Domain::interval(-1.0, 2.0, 7).unwrap();
    for x in [-1.0, 0.3, 2.0] {
        let rule = graded_quadrature_rule(&d, Point::on_line(x), QuadratureParams::default_for(1))
            .unwrap();
        for k in 0..=7 {
            let got = rule.integrate(|n| n.point.x.powi(k));
            let exact = (2f64.powi(k + 1) - (-1f64).powi(k + 1)) / (k + 1) as f64;
            assert!(
                (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                "x={x} k={k}"
            );
        }
    }
}

#[test]
fn weak_singularity_worked_values() {
    let params = QuadratureParams {
        levels: 12,
        ratio: 0.5,
        gauss_order: 8,
        subdivisions: 1,
    };
    let d = unit_interval();
    let mid = graded_quadrature_rule(&d, Point::on_line(0.5), params).unwrap();
    let got = mid.integrate(|n| n.offset.norm().powf(-0.3));
    let exact = 2.0 * 0.5f64.powf(0.7) / 0.7;
    assert!((got - exact).abs() <= 1e-8 * exact);
    let end = graded_quadrature_rule(&d, Point::on_line(0.0), params).unwrap();
    let got = end.integrate(|n| n.offset.norm().powf(-0.3));
    assert!((got - 1.0 / 0.7).abs() <= 1e-8 / 0.7);
}

/// Error against a heavily refined rule for `exp(ξ)|x-ξ|^{-α}`.
fn kernel_errors(alpha: f64, x: f64) -> Vec<f64> {
    let d = unit_interval();
    let x = Point::on_line(x);
    let f = |n: &QuadNode| n.point.x.exp() * n.offset.norm().powf(-alpha);
    let fine = QuadratureParams {
        levels: 60,
        ratio: 0.5,
        gauss_order: 20,
        subdivisions: 4,
    };
    let exact = graded_kernel_rule(&d, x, fine, alpha).unwrap().integrate(f);
    (1..=6)
        .map(|k| {
            let params = QuadratureParams {
                levels: 2 * k,
                ..QuadratureParams::default_for(1)
            };
            let got = graded_kernel_rule(&d, x, params, alpha)
                .unwrap()
                .integrate(f);
            (got - exact).abs() / exact
        })
        .collect()
}

#[test]
fn error_drops_fourfold_per_two_levels() {
    // once the error reaches round-off there is nothing left to gain
    const FLOOR: f64 = 1e-12;
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for x in [0.0, 0.5, 0.3] {
            let errors = kernel_errors(alpha, x);
            for pair in errors.windows(2) {
                assert!(
                    pair[1] <= FLOOR || pair[0] >= 4.0 * pair[1],
                    "alpha={alpha} x={x}: {errors:?}"
                );
            }
        }
    }
}

#[test]
fn boundary_rule_weights() {
    let d = Domain::rectangle((0.0, 2.0), (0.0, 1.0), 9, 5).unwrap();
    let total: f64 = boundary_quadrature(&d).iter().map(|n| n.weight).sum();
    assert!((total - 6.0).abs() <= 1e-12);
    for n in boundary_quadrature(&d) {
        assert!((n.normal.norm() - 1.0).abs() <= 1e-14);
    }
}
