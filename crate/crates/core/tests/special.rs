use fraclap_core::special::*;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// ln Γ(x) (or Γ(x) for negative x) to 20 digits, from an arbitrary-precision library
const LOG_GAMMA: [(f64, f64); 8] = [
    (0.1, 2.252_712_651_734_206),
    (0.5, 0.572_364_942_924_700_1),
    (0.75, 0.203_280_951_431_295_37),
    (1.3, -0.108_174_809_507_860_47),
    (2.5, 0.284_682_870_472_919_16),
    (7.5, 7.534_364_236_758_733),
    (13.7, 21.774_645_173_034_634),
    (29.9, 70.918_764_820_987_19),
];

#[test]
fn log_gamma_reference_values() {
    for (x, expected) in LOG_GAMMA {
        let got = gamma_ln(x).unwrap();
        assert!(
            (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
            "x={x}: {got} vs {expected}"
        );
    }
    assert!(rel(gamma(-0.5).unwrap(), -3.544_907_701_811_032) < 1e-12);
    assert!(rel(gamma(-2.3).unwrap(), -1.447_107_394_255_917_3) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(x in 0.5f64..15.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-12);
    }

    #[test]
    fn fractional_order_accepts_open_interval(s in -1.0f64..3.0) {
        prop_assert_eq!(FractionalOrder::new(s).is_ok(), s > 0.0 && s < 2.0);
    }
}

const ORDERS: [f64; 6] = [0.25, 0.5, 0.75, 1.25, 1.5, 1.75];

/// Profile without closed-form derivatives, forcing the difference quotients.
struct Opaque(PowerLaw);

impl RadialProfile for Opaque {
    fn value(&self, r: f64) -> f64 {
        self.0.value(r)
    }
}

#[test]
fn kernel_identity_sweep() {
    for d in 1..=3 {
        for s in ORDERS {
            let s = FractionalOrder::new(s).unwrap();
            let a = d as f64 - 2.0 + s.value();
            let f = PowerLaw::fractional_kernel(d, s);
            for i in 0..20 {
                let r = 0.5 + 1.5 * i as f64 / 19.0;
                let expected = a * s.value() * r.powf(-(d as f64 + s.value()));
                let analytic = radial_laplacian(&f, r, d).unwrap();
                let fd = radial_laplacian(&Opaque(f), r, d).unwrap();
                if expected == 0.0 {
                    assert!(analytic.abs() < 1e-12 && fd.abs() < 1e-6);
                    continue;
                }
                assert!(rel(analytic, expected) <= 1e-6, "d={d} s={s:?} r={r}");
                assert!(
                    rel(fd, expected) <= 1e-4,
                    "d={d} s={s:?} r={r}: {fd} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn kernel_identity_worked_value() {
    let s = FractionalOrder::new(0.5).unwrap();
    let got = radial_laplacian(&PowerLaw::fractional_kernel(2, s), 1.3, 2).unwrap();
    assert!(rel(got, 0.25 * 1.3f64.powf(-2.5)) < 1e-14);
}

#[test]
fn harmonic_and_quadratic_profiles() {
    let inverse = PowerLaw {
        coefficient: 1.0,
        exponent: -1.0,
    };
    let square = PowerLaw {
        coefficient: 1.0,
        exponent: 2.0,
    };
    for r in [0.3, 1.0, 4.0] {
        assert!(radial_laplacian(&inverse, r, 3).unwrap().abs() < 1e-12);
        assert!((radial_laplacian(&square, r, 3).unwrap() - 6.0).abs() < 1e-12);
    }
    assert!(radial_laplacian(&square, 0.0, 3).is_err());
}

#[test]
fn reciprocal_identity_sweep() {
    for mode in [ConstantMode::HalfOrder, ConstantMode::StandardRiesz] {
        for d in 1..=3 {
            for s in [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75] {
                let order = FractionalOrder::new(s).unwrap();
                let (Ok(h), Ok(c)) = (h_constant(d, order, mode), riesz_constant(d, 2.0 - s, mode))
                else {
                    assert_eq!((d, s), (1, 1.0), "only the d=1, s=1 pole may fail");
                    continue;
                };
                let product = h * c * (d as f64 - 2.0 + s) * s;
                assert!((product - 1.0).abs() <= 1e-14, "d={d} s={s}: {product}");
            }
        }
    }
}

#[test]
fn constant_worked_values() {
    let c = riesz_constant(1, 0.5, ConstantMode::HalfOrder).unwrap();
    assert!(rel(c, 1.0 / (std::f64::consts::PI.powf(0.25) * 2f64.sqrt())) < 1e-14);
    let h = h_constant(
        2,
        FractionalOrder::new(1.0).unwrap(),
        ConstantMode::HalfOrder,
    )
    .unwrap();
    assert!(rel(h, 2.0 * std::f64::consts::PI.sqrt()) < 1e-14);
    assert!(matches!(
        riesz_constant(1, 1.0, ConstantMode::HalfOrder),
        Err(fraclap_core::Error::GammaPole { .. })
    ));
}

#[test]
fn modes_differ_by_power_of_pi() {
    for d in 1..=3 {
        for sigma in [0.3, 0.9, 1.4, 1.9] {
            let (Ok(a), Ok(b)) = (
                riesz_constant(d, sigma, ConstantMode::HalfOrder),
                riesz_constant(d, sigma, ConstantMode::StandardRiesz),
            ) else {
                continue;
            };
            let ratio = std::f64::consts::PI.powf((d as f64 - sigma) / 2.0);
            assert!(rel(a, b * ratio) < 1e-14);
        }
    }
}
