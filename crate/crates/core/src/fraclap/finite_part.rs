//! Hadamard finite part of `∫_Ω φ(ξ) ‖x - ξ‖^{-(d+s)} dΩ(ξ)` for interior `x`.
//!
//! Two Taylor terms are subtracted,
//!
//! ```text
//! f.p.∫ φ r^{-(d+s)} = ∫ [φ(ξ) - φ(x) - ∇φ(x)·(ξ-x)] r^{-(d+s)}
//!                    + φ(x) f.p.∫ r^{-(d+s)} + ∇φ(x)·f.p.∫ (ξ-x) r^{-(d+s)},
//! ```
//!
//! the remainder is weakly singular and goes to the graded rule, and the two
//! subtracted moments are finite parts over a ball excision, known in closed
//! form (1D) or as smooth one-dimensional integrals over the boundary seen
//! from `x` (rectangles): with `R(θ)` the distance from `x` to the boundary
//! along direction `θ`,
//!
//! ```text
//! f.p.∫ r^{-(2+s)}       = -(1/s) ∮ R(θ)^{-s} dθ
//! f.p.∫ (ξ-x) r^{-(2+s)} = 1/(1-s) ∮ e(θ) R(θ)^{1-s} dθ     (∮ e(θ) ln R(θ) dθ at s = 1)
//! ```

use crate::domain::{
    edge_parameter_rule, graded_kernel_rule, Domain, QuadratureParams, ScalarField, UnitRule,
};
use crate::sum::Accumulator;
use crate::{Point, Result};

/// Below this fraction of the diameter the Taylor remainder is replaced by
/// `½ dᵀ H(x + d/3) d`, which also carries the cubic term; the difference
/// `φ(ξ) - φ(x) - ∇φ(x)·d` is all cancellation there.
const TAYLOR_RADIUS: f64 = 5e-5;

/// The finite-part moments `(f.p.∫ r^{-(d+s)}, f.p.∫ (ξ-x) r^{-(d+s)})`.
pub(crate) fn moments(domain: &Domain, x: Point, s: f64, params: QuadratureParams) -> (f64, Point) {
    match domain {
        Domain::Interval(g) => {
            let (left, right) = (x.x - g.a(), g.b() - x.x);
            let zeroth = -(libm::pow(left, -s) + libm::pow(right, -s)) / s;
            let first = if s == 1.0 {
                libm::log(right / left)
            } else {
                (libm::pow(right, 1.0 - s) - libm::pow(left, 1.0 - s)) / (1.0 - s)
            };
            (zeroth, Point::on_line(first))
        }
        Domain::Rectangle(g) => {
            let rule = UnitRule::new(params.gauss_order);
            let mut zeroth = Accumulator::default();
            let (mut first_x, mut first_y) = (Accumulator::default(), Accumulator::default());
            for edge in g.edges() {
                let p = (edge.start - x).dot(edge.normal);
                let scale = edge.length() * p;
                for (t, w) in edge_parameter_rule(&rule, x, &edge, params) {
                    let ray = edge.at(t) - x;
                    let rho = ray.norm();
                    // dθ = L p / ρ² dt
                    let dtheta = w * scale / (rho * rho);
                    zeroth.add(-dtheta * libm::pow(rho, -s) / s);
                    let radial = if s == 1.0 {
                        libm::log(rho)
                    } else {
                        libm::pow(rho, 1.0 - s) / (1.0 - s)
                    };
                    let weight = dtheta * radial / rho;
                    first_x.add(weight * ray.x);
                    first_y.add(weight * ray.y);
                }
            }
            (zeroth.total(), Point::new(first_x.total(), first_y.total()))
        }
    }
}

/// `f.p.∫_Ω φ(ξ) ‖x - ξ‖^{-(d+s)} dΩ(ξ)`.
pub(crate) fn hypersingular_integral(
    domain: &Domain,
    phi: &dyn ScalarField,
    x: Point,
    s: f64,
    params: QuadratureParams,
) -> Result<f64> {
    let exponent = domain.dim() as f64 + s;
    let value = phi.value(x);
    let gradient = phi.gradient(x);
    let cutoff = TAYLOR_RADIUS * domain.diameter();
    // the remainder is O(r²), so the integrand behaves like r^{2-(d+s)}
    let rule = graded_kernel_rule(domain, x, params, exponent - 2.0)?;
    let remainder = rule.integrate(|n| {
        let r = n.offset.norm();
        let taylor = if r < cutoff {
            phi.quadratic_form(x + n.offset * (1.0 / 3.0), n.offset)
        } else {
            phi.value(n.point) - value - gradient.dot(n.offset)
        };
        taylor * libm::pow(r, -exponent)
    });
    let (zeroth, first) = moments(domain, x, s, params);
    Ok(remainder + value * zeroth + gradient.dot(first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::TestFunction;

    #[test]
    fn one_dimensional_constant() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let one = TestFunction::constant(1, 1.0);
        for &(x, s) in &[(0.5, 0.5), (0.3, 1.5), (0.7, 0.25)] {
            let value = hypersingular_integral(
                &d,
                &one,
                Point::on_line(x),
                s,
                QuadratureParams::default_for(1),
            )
            .unwrap();
            let exact = -(libm::pow(x, -s) + libm::pow(1.0 - x, -s)) / s;
            assert!((value - exact).abs() < 1e-13 * exact.abs());
        }
    }

    #[test]
    fn one_dimensional_quadratic_against_antiderivative() {
        // φ = ξ², remainder (ξ-x)² → ∫ |ξ-x|^{1-s} = (x^{2-s} + (1-x)^{2-s})/(2-s)
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let f = TestFunction::quadratic(1);
        for &(x, s) in &[(0.5, 0.5), (0.35, 1.5), (0.6, 1.25)] {
            let value = hypersingular_integral(
                &d,
                &f,
                Point::on_line(x),
                s,
                QuadratureParams::default_for(1),
            )
            .unwrap();
            let rem = (libm::pow(x, 2.0 - s) + libm::pow(1.0 - x, 2.0 - s)) / (2.0 - s);
            let a0 = -(libm::pow(x, -s) + libm::pow(1.0 - x, -s)) / s;
            let a1 = (libm::pow(1.0 - x, 1.0 - s) - libm::pow(x, 1.0 - s)) / (1.0 - s);
            let exact = rem + x * x * a0 + 2.0 * x * a1;
            assert!(
                (value - exact).abs() < 1e-10 * exact.abs(),
                "x={x} s={s}: {value} vs {exact}"
            );
        }
    }

    #[test]
    fn square_moments_about_center() {
        // centre of [-1,1]²: first moment vanishes; ∮ R^{-s} dθ = 8 ∫_0^{π/4} cos^s θ dθ
        let d = Domain::rectangle((-1.0, 1.0), (-1.0, 1.0), 5, 5).unwrap();
        let s = 0.5;
        let (zeroth, first) = moments(
            &d,
            Point::new(0.0, 0.0),
            s,
            QuadratureParams::default_for(2),
        );
        assert!(first.norm() < 1e-14);
        let (nodes, weights) = crate::domain::gauss_legendre(40);
        let quarter = core::f64::consts::FRAC_PI_4;
        let integral: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(u, w)| {
                let th = quarter * 0.5 * (u + 1.0);
                0.5 * quarter * w * libm::pow(libm::cos(th), s)
            })
            .sum();
        assert!((zeroth + 8.0 * integral / s).abs() < 1e-13);
    }
}
