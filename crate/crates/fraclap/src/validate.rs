//! Invariant suites behind `fraclap validate`. Every check measures one
//! number against a pinned tolerance.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use fraclap_core::discrete::{
    apply_fraclap_discrete, assemble_1d, assemble_laplacian_1d, assemble_laplacian_2d,
    matrix_fractional_power, modal_diffusion_solve, sym_eigendecompose, Assembly, Matrix,
};
use fraclap_core::domain::{BoundaryData, Domain, Monomial, QuadratureParams, TestFunction};
use fraclap_core::fraclap::FracLapRequest;
use fraclap_core::greens::{green_residual, green_residual_with};
use fraclap_core::riesz::PotentialRequest;
use fraclap_core::special::{
    gamma, radial_laplacian, riesz_constant, ConstantMode, FractionalOrder, PowerLaw,
};
use fraclap_core::Point;

use crate::error::{CliError, CliResult};

pub const SUITES: [&str; 5] = ["special", "riesz", "fraclap", "greens", "discrete"];

/// Gaps below this are round-off and count as having shrunk.
pub const REFINEMENT_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub check: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `measured ≤ tolerance`.
    fn at_most(
        suite: &'static str,
        check: impl Into<String>,
        measured: f64,
        tolerance: f64,
    ) -> Self {
        Check {
            suite,
            check: check.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }

    /// Passes when `measured ≥ tolerance`.
    fn at_least(
        suite: &'static str,
        check: impl Into<String>,
        measured: f64,
        tolerance: f64,
    ) -> Self {
        Check {
            suite,
            check: check.into(),
            measured,
            tolerance,
            pass: measured >= tolerance,
        }
    }
}

pub fn run(suite: &str, refinements: usize) -> CliResult<Vec<Check>> {
    let suites: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(CliError::usage(format!("unknown suite {other:?}"))),
    };
    let mut out = Vec::new();
    for s in suites {
        out.extend(match s {
            "special" => special()?,
            "riesz" => riesz()?,
            "fraclap" => fraclap(refinements)?,
            "greens" => greens(refinements)?,
            _ => discrete()?,
        });
    }
    Ok(out)
}

pub fn table(checks: &[Check]) -> String {
    let width = checks
        .iter()
        .map(|c| c.suite.len() + c.check.len() + 1)
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let name = format!("{}/{}", c.suite, c.check);
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict}  {name:<width$}  measured {:.3e}  tolerance {:.3e}\n",
            c.measured, c.tolerance
        ));
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    out
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn special() -> CliResult<Vec<Check>> {
    let reference = [
        (0.5, PI.sqrt()),
        (1.0, 1.0),
        (5.0, 24.0),
        (2.5, 0.75 * PI.sqrt()),
        (-0.5, -2.0 * PI.sqrt()),
        (0.1, 9.513507698668732),
    ];
    let mut worst: f64 = 0.0;
    for (x, exact) in reference {
        worst = worst.max(rel(gamma(x)?, exact));
    }
    let mut out = vec![Check::at_most(
        "special",
        "gamma_reference_values",
        worst,
        1e-12,
    )];

    let mut worst: f64 = 0.0;
    for d in 1..=3 {
        for s in [0.25, 0.5, 0.75, 1.25, 1.5, 1.75] {
            let s = FractionalOrder::new(s)?;
            let a = d as f64 - 2.0 + s.value();
            let f = PowerLaw::fractional_kernel(d, s);
            for i in 0..20 {
                let r = 0.05 * 1.25f64.powi(i);
                let exact = a * s.value() * r.powf(-(d as f64 + s.value()));
                worst = worst.max(rel(radial_laplacian(&f, r, d)?, exact));
            }
        }
    }
    out.push(Check::at_most(
        "special",
        "kernel_laplacian_identity",
        worst,
        1e-6,
    ));

    let mut worst: f64 = 0.0;
    for d in [1, 2] {
        for sigma in [0.3, 0.7, 1.4] {
            let half = riesz_constant(d, sigma, ConstantMode::HalfOrder)?;
            let standard = riesz_constant(d, sigma, ConstantMode::StandardRiesz)?;
            worst = worst.max(rel(half / standard, PI.powf((d as f64 - sigma) / 2.0)));
        }
    }
    out.push(Check::at_most(
        "special",
        "constant_mode_ratio",
        worst,
        1e-13,
    ));
    Ok(out)
}

fn riesz() -> CliResult<Vec<Check>> {
    let domain = Domain::interval(0.0, 1.0, 11)?;
    let one = TestFunction::constant(1, 1.0);
    let mut worst: f64 = 0.0;
    for sigma in [0.25, 0.5, 0.75, 1.5] {
        let c = riesz_constant(1, sigma, ConstantMode::HalfOrder)?;
        let req = PotentialRequest::new(&domain, &one, sigma);
        for x in [0.1f64, 0.3, 0.5, 0.7, 0.9] {
            let exact = c * (x.powf(sigma) + (1.0 - x).powf(sigma)) / sigma;
            worst = worst.max(rel(req.point(Point::on_line(x))?, exact));
        }
    }
    let mut out = vec![Check::at_most(
        "riesz",
        "closed_form_constant_density_1d",
        worst,
        1e-7,
    )];

    // σ = 1 on a square seen from a corner: ∫ 1/r = 2 L ln(1 + √2)
    let square = Domain::rectangle((0.0, 1.0), (0.0, 1.0), 5, 5)?;
    let one = TestFunction::constant(2, 1.0);
    let got = PotentialRequest::new(&square, &one, 1.0).point(Point::new(0.0, 0.0))?;
    let exact = riesz_constant(2, 1.0, ConstantMode::HalfOrder)? * 2.0 * (1.0 + 2f64.sqrt()).ln();
    out.push(Check::at_most(
        "riesz",
        "closed_form_corner_2d",
        rel(got, exact),
        1e-10,
    ));
    Ok(out)
}

struct Case {
    dim: usize,
    s: f64,
    phi: TestFunction,
    name: &'static str,
}

fn cases() -> CliResult<Vec<Case>> {
    let mut out = Vec::new();
    for dim in [1, 2] {
        for s in [0.5, 1.5] {
            let centre = if dim == 1 {
                Point::on_line(0.45)
            } else {
                Point::new(0.45, 0.55)
            };
            out.push(Case {
                dim,
                s,
                phi: TestFunction::quadratic(dim),
                name: "quad",
            });
            out.push(Case {
                dim,
                s,
                phi: TestFunction::gaussian(dim, centre, 0.3)?,
                name: "gauss",
            });
        }
    }
    Ok(out)
}

fn unit_domain(dim: usize) -> CliResult<Domain> {
    Ok(if dim == 1 {
        Domain::interval(0.0, 1.0, 11)?
    } else {
        Domain::rectangle((0.0, 1.0), (0.0, 1.0), 11, 11)?
    })
}

fn probe(dim: usize) -> Point {
    if dim == 1 {
        Point::on_line(0.4)
    } else {
        Point::new(0.4, 0.6)
    }
}

fn fraclap(refinements: usize) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for dim in [1, 2] {
        let domain = unit_domain(dim)?;
        for s in [0.5, 1.5] {
            let s = FractionalOrder::new(s)?;
            for _ in 0..4 {
                let g = Point::new(
                    rng.gen_range(-3.0..3.0),
                    if dim == 2 {
                        rng.gen_range(-3.0..3.0)
                    } else {
                        0.0
                    },
                );
                let phi = TestFunction::affine(dim, g, rng.gen_range(-3.0..3.0));
                let req = FracLapRequest::new(&domain, &phi, s);
                for x in domain
                    .interior_nodes(domain.default_margin())
                    .into_iter()
                    .step_by(7)
                {
                    worst = worst.max(req.new_definition(x)?.abs());
                }
            }
        }
    }
    out.push(Check::at_most(
        "fraclap",
        "affine_annihilation",
        worst,
        1e-10,
    ));

    for case in cases()? {
        let domain = unit_domain(case.dim)?;
        let s = FractionalOrder::new(case.s)?;
        let data = BoundaryData::from_function(&domain, &case.phi)?;
        let x = probe(case.dim);
        let mut params = QuadratureParams::default_for(case.dim);
        let mut previous: Option<f64> = None;
        for level in 0..=refinements {
            let req = FracLapRequest::new(&domain, &case.phi, s)
                .with_boundary(&data)
                .with_params(params);
            let new = req.new_definition(x)?;
            let gap = rel(req.augmented(x)?, new);
            let label = format!(
                "green_equivalence_{}_d{}_s{}_level{level}",
                case.name, case.dim, case.s
            );
            out.push(match previous {
                None => Check::at_most("fraclap", label, gap, 5e-3),
                Some(p) => Check::at_most("fraclap", label, gap, (0.5 * p).max(REFINEMENT_FLOOR)),
            });
            previous = Some(gap);
            params = params.refined();
        }
    }

    let domain = unit_domain(1)?;
    let phi = TestFunction::gaussian(1, Point::on_line(0.45), 0.3)?;
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.5] {
        let req = FracLapRequest::new(&domain, &phi, FractionalOrder::new(s)?);
        for x in [0.3, 0.5, 0.7] {
            let x = Point::on_line(x);
            worst = worst.max(rel(req.restated(x)?, req.hypersingular(x)?));
        }
    }
    out.push(Check::at_most(
        "fraclap",
        "restated_vs_hypersingular_1d",
        worst,
        5e-3,
    ));

    let phi = TestFunction::quadratic(1);
    let data = BoundaryData::from_function(&domain, &phi)?;
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.5] {
        let req = FracLapRequest::new(&domain, &phi, FractionalOrder::new(s)?).with_boundary(&data);
        for x in [0.3, 0.5, 0.7] {
            let x = Point::on_line(x);
            let difference = req.restated(x)? - req.new_definition(x)?;
            worst = worst.max(rel(difference, -req.boundary_term(x)?));
        }
    }
    out.push(Check::at_most(
        "fraclap",
        "boundary_decomposition_1d",
        worst,
        1e-2,
    ));
    Ok(out)
}

fn random_cubic(rng: &mut ChaCha8Rng, dim: usize) -> CliResult<TestFunction> {
    let mut terms = Vec::new();
    for total in 0..=3u32 {
        for px in 0..=total {
            let py = total - px;
            if dim == 1 && py > 0 {
                continue;
            }
            terms.push(Monomial {
                coefficient: rng.gen_range(-2.0..2.0),
                px,
                py,
            });
        }
    }
    Ok(TestFunction::polynomial(dim, terms)?)
}

fn greens(refinements: usize) -> CliResult<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for dim in [1, 2] {
        let domain = if dim == 1 {
            Domain::interval(-0.5, 1.5, 5)?
        } else {
            Domain::rectangle((0.0, 1.0), (-0.5, 0.5), 4, 4)?
        };
        let mut worst: f64 = 0.0;
        for _ in 0..16 {
            let phi = random_cubic(&mut rng, dim)?;
            let v = random_cubic(&mut rng, dim)?;
            worst = worst.max(green_residual(&domain, &phi, &v)?);
        }
        out.push(Check::at_most(
            "greens",
            format!("cubic_pairs_{dim}d"),
            worst,
            1e-12,
        ));

        // midpoint rule: the residual is pure discretisation error, O(h²)
        let mut previous: Option<f64> = None;
        let mut worst_ratio = f64::INFINITY;
        for level in 0..=refinements {
            let cells = 4usize << level;
            let (domain, phi, v) = if dim == 1 {
                (
                    Domain::interval(0.0, 1.0, cells + 1)?,
                    TestFunction::gaussian(1, Point::on_line(0.3), 0.4)?,
                    TestFunction::sine(1, 1),
                )
            } else {
                (
                    Domain::rectangle((0.0, 1.0), (0.0, 1.0), cells + 1, cells + 1)?,
                    TestFunction::gaussian(2, Point::new(0.3, 0.6), 0.4)?,
                    TestFunction::sine(2, 1),
                )
            };
            let r = green_residual_with(&domain, &phi, &v, 1)?;
            if let Some(p) = previous {
                worst_ratio = worst_ratio.min(p / r);
            }
            previous = Some(r);
        }
        out.push(Check::at_least(
            "greens",
            format!("second_order_decay_{dim}d"),
            worst_ratio,
            4.0,
        ));
    }
    Ok(out)
}

fn rel_frobenius(a: &Matrix, b: &Matrix) -> CliResult<f64> {
    Ok(a.sub(b)?.frobenius_norm() / b.frobenius_norm())
}

fn discrete() -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let k = assemble_laplacian_2d(6, 5, 1.0, 1.5)?;
    let eig = sym_eigendecompose(&k)?;
    out.push(Check::at_most(
        "discrete",
        "unit_power_reproduces_k",
        rel_frobenius(&matrix_fractional_power(&eig, 1.0)?, &k)?,
        1e-10,
    ));
    let identity = Matrix::identity(k.rows());
    out.push(Check::at_most(
        "discrete",
        "zero_power_is_identity",
        rel_frobenius(&matrix_fractional_power(&eig, 0.0)?, &identity)?,
        1e-10,
    ));

    let mut worst: f64 = 0.0;
    for k in [
        assemble_laplacian_1d(400, 1.0)?,
        assemble_laplacian_2d(20, 20, 1.0, 1.0)?,
        assemble_1d(60, 3.0, Assembly::LumpedFem)?,
    ] {
        let eig = sym_eigendecompose(&k)?;
        for (a, b) in [(0.25, 0.25), (0.5, 0.5), (0.3, 0.7)] {
            let product =
                matrix_fractional_power(&eig, a)?.matmul(&matrix_fractional_power(&eig, b)?)?;
            worst = worst.max(rel_frobenius(
                &product,
                &matrix_fractional_power(&eig, a + b)?,
            )?);
        }
    }
    out.push(Check::at_most("discrete", "semigroup", worst, 1e-8));

    let (n, length) = (50, 1.0);
    let eig = sym_eigendecompose(&assemble_laplacian_1d(n, length)?)?;
    let h = length / (n + 1) as f64;
    let mut worst: f64 = 0.0;
    for (i, &lambda) in eig.eigenvalues().iter().enumerate() {
        let k = (i + 1) as f64;
        let exact = 4.0 / (h * h) * (k * PI * h / (2.0 * length)).sin().powi(2);
        worst = worst.max(rel(lambda, exact));
    }
    out.push(Check::at_most(
        "discrete",
        "closed_form_eigenvalues_1d",
        worst,
        1e-10,
    ));

    let mut worst: f64 = 0.0;
    for s in [0.5, 1.0, 1.5] {
        for i in 0..eig.len() {
            let v = eig.eigenvector(i);
            let got = apply_fraclap_discrete(&eig, s, &v)?;
            let scale = eig.eigenvalues()[i].powf(0.5 * s);
            let err = got
                .iter()
                .zip(&v)
                .map(|(g, v)| (g - scale * v).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(err / scale);
        }
    }
    out.push(Check::at_most("discrete", "spectral_action", worst, 1e-10));

    let u0: Vec<f64> = (0..n)
        .map(|i| {
            if i == n / 3 {
                1.0
            } else {
                ((i as f64) * 0.37).sin()
            }
        })
        .collect();
    let times = [0.0, 1e-4, 1e-3, 1e-2, 0.1];
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.0, 1.5, 2.0] {
        let norms: Vec<f64> = modal_diffusion_solve(&eig, s, &u0, &times)?
            .iter()
            .map(|u| u.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        for pair in norms.windows(2) {
            worst = worst.max((pair[1] - pair[0]) / norms[0]);
        }
    }
    out.push(Check::at_most(
        "discrete",
        "norm_non_increasing",
        worst,
        0.0,
    ));
    Ok(out)
}
