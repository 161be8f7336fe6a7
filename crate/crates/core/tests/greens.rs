use fraclap_core::domain::*;
use fraclap_core::greens::*;
use fraclap_core::Point;
use proptest::prelude::*;

fn cubic_1d() -> impl Strategy<Value = TestFunction> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(|c| {
        let terms = (0..4)
            .map(|k| Monomial {
                coefficient: c[k],
                px: k as u32,
                py: 0,
            })
            .collect();
        TestFunction::polynomial(1, terms).unwrap()
    })
}

fn cubic_2d() -> impl Strategy<Value = TestFunction> {
    prop::array::uniform10(-2.0f64..2.0).prop_map(|c| {
        let mut terms = Vec::new();
        let mut k = 0;
        for total in 0..=3u32 {
            for px in 0..=total {
                terms.push(Monomial {
                    coefficient: c[k],
                    px,
                    py: total - px,
                });
                k += 1;
            }
        }
        TestFunction::polynomial(2, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_pairs_on_an_interval(phi in cubic_1d(), v in cubic_1d()) {
        let d = Domain::interval(-0.5, 1.5, 5).unwrap();
        prop_assert!(green_residual(&d, &phi, &v).unwrap() <= 1e-12);
    }

    #[test]
    fn polynomial_pairs_on_a_rectangle(phi in cubic_2d(), v in cubic_2d()) {
        let d = Domain::rectangle((0.0, 1.0), (-0.5, 0.5), 4, 4).unwrap();
        prop_assert!(green_residual(&d, &phi, &v).unwrap() <= 1e-12);
    }
}

#[test]
fn worked_pair() {
    let d = Domain::interval(0.0, 1.0, 3).unwrap();
    let phi = TestFunction::quadratic(1);
    let v = TestFunction::affine(1, Point::on_line(1.0), 0.0);
    assert!(green_residual(&d, &phi, &v).unwrap() <= 1e-12);
}

fn residuals(dim: usize, cells: &[usize]) -> Vec<f64> {
    cells
        .iter()
        .map(|&n| {
            let (d, phi, v) = if dim == 1 {
                (
                    Domain::interval(0.0, 1.0, n + 1).unwrap(),
                    TestFunction::gaussian(1, Point::on_line(0.3), 0.4).unwrap(),
                    TestFunction::sine(1, 1),
                )
            } else {
                (
                    Domain::rectangle((0.0, 1.0), (0.0, 1.0), n + 1, n + 1).unwrap(),
                    TestFunction::gaussian(2, Point::new(0.3, 0.6), 0.4).unwrap(),
                    TestFunction::sine(2, 1),
                )
            };
            green_residual_with(&d, &phi, &v, 1).unwrap()
        })
        .collect()
}

#[test]
fn second_order_decay_under_refinement() {
    for dim in [1, 2] {
        let r = residuals(dim, &[4, 8, 16, 32]);
        for pair in r.windows(2) {
            assert!(pair[0] / pair[1] >= 4.0, "dim={dim}: {r:?}");
        }
    }
}

#[test]
fn gaussian_against_quadratic_at_default() {
    let d = Domain::rectangle((0.0, 1.0), (0.0, 1.0), 11, 11).unwrap();
    let phi = TestFunction::gaussian(2, Point::new(0.5, 0.5), 0.3).unwrap();
    let v = TestFunction::quadratic(2);
    let coarse = green_residual(
        &Domain::rectangle((0.0, 1.0), (0.0, 1.0), 4, 4).unwrap(),
        &phi,
        &v,
    )
    .unwrap();
    let fine = green_residual(&d, &phi, &v).unwrap();
    assert!(fine <= 1e-8);
    assert!(fine <= coarse);
}
