//! Truncated Riesz potential
//!
//! ```text
//! I_d^σ φ(x) = c(d, σ) ∫_Ω φ(ξ) / ‖x - ξ‖^{d-σ} dΩ(ξ),   0 < σ < 2,
//! ```
//!
//! evaluated with a graded rule centred at `x`.

use alloc::vec::Vec;

use crate::domain::{graded_kernel_rule, Domain, QuadNode, QuadratureParams, ScalarField};
use crate::special::{ConstantMode, KernelSpec};
use crate::{Error, Point, Result};

pub struct PotentialRequest<'a> {
    pub domain: &'a Domain,
    pub phi: &'a dyn ScalarField,
    /// Potential order `σ ∈ (0, 2)`.
    pub sigma: f64,
    pub eval_points: Vec<Point>,
    pub mode: ConstantMode,
    pub params: QuadratureParams,
}

impl<'a> PotentialRequest<'a> {
    /// Request with the default constant mode and quadrature, no points yet.
    pub fn new(domain: &'a Domain, phi: &'a dyn ScalarField, sigma: f64) -> Self {
        PotentialRequest {
            domain,
            phi,
            sigma,
            eval_points: Vec::new(),
            mode: ConstantMode::default(),
            params: QuadratureParams::default_for(domain.dim()),
        }
    }

    pub fn with_points(mut self, points: Vec<Point>) -> Self {
        self.eval_points = points;
        self
    }

    pub fn with_mode(mut self, mode: ConstantMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_params(mut self, params: QuadratureParams) -> Self {
        self.params = params;
        self
    }

    pub fn kernel(&self) -> Result<KernelSpec> {
        if self.phi.dim() != self.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.dim(),
                found: self.phi.dim(),
            });
        }
        KernelSpec::new(self.domain.dim(), self.sigma, self.mode)
    }

    /// `I_d^σ φ(x)`.
    pub fn point(&self, x: Point) -> Result<f64> {
        let kernel = self.kernel()?;
        let integral = weighted_integral(self.domain, x, kernel.exponent, self.params, |n| {
            self.phi.value(n.point)
        })?;
        Ok(kernel.constant * integral)
    }

    /// The potential at every evaluation point, in order; errors are per point.
    pub fn field(&self) -> Vec<(Point, Result<f64>)> {
        self.eval_points
            .iter()
            .map(|&x| (x, self.point(x)))
            .collect()
    }
}

pub fn riesz_potential_point(req: &PotentialRequest<'_>, x: Point) -> Result<f64> {
    req.point(x)
}

pub fn riesz_potential_field(req: &PotentialRequest<'_>) -> Vec<(Point, Result<f64>)> {
    req.field()
}

/// `∫_Ω f(ξ) ‖x - ξ‖^{-exponent} dΩ(ξ)` on the kernel-aware graded rule
/// about `x`.
pub(crate) fn weighted_integral(
    domain: &Domain,
    x: Point,
    exponent: f64,
    params: QuadratureParams,
    mut f: impl FnMut(&QuadNode) -> f64,
) -> Result<f64> {
    let rule = graded_kernel_rule(domain, x, params, exponent)?;
    Ok(rule.integrate(|n| f(n) * libm::pow(n.offset.norm(), -exponent)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::TestFunction;
    use crate::special::riesz_constant;

    fn closed_form(sigma: f64, x: f64) -> f64 {
        riesz_constant(1, sigma, ConstantMode::HalfOrder).unwrap()
            * (libm::pow(x, sigma) + libm::pow(1.0 - x, sigma))
            / sigma
    }

    #[test]
    fn constant_density_interior_and_endpoint() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let one = TestFunction::constant(1, 1.0);
        let req = PotentialRequest::new(&d, &one, 0.5);
        let mid = req.point(Point::on_line(0.5)).unwrap();
        let c = riesz_constant(1, 0.5, ConstantMode::HalfOrder).unwrap();
        assert!((mid - c * 2.0 * libm::sqrt(0.5) / 0.5).abs() < 1e-12 * mid);
        let end = req.point(Point::on_line(0.0)).unwrap();
        assert!((end - c / 0.5).abs() < 1e-12 * end);
        assert!((mid - closed_form(0.5, 0.5)).abs() < 1e-12 * mid);
    }

    #[test]
    fn zero_density_gives_zero() {
        let d = Domain::rectangle((0.0, 1.0), (0.0, 1.0), 5, 5).unwrap();
        let zero = TestFunction::constant(2, 0.0);
        let req = PotentialRequest::new(&d, &zero, 0.7);
        assert_eq!(req.point(Point::new(0.3, 0.4)).unwrap(), 0.0);
    }

    #[test]
    fn pole_and_dimension_errors() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let one = TestFunction::constant(1, 1.0);
        let req =
            PotentialRequest::new(&d, &one, 1.0).with_points(alloc::vec![Point::on_line(0.5)]);
        let field = req.field();
        assert!(matches!(field[0].1, Err(Error::GammaPole { .. })));
        let two = TestFunction::constant(2, 1.0);
        let req = PotentialRequest::new(&d, &two, 0.5);
        assert!(matches!(
            req.point(Point::on_line(0.5)),
            Err(Error::DimensionMismatch { .. })
        ));
        let req = PotentialRequest::new(&d, &one, 0.5);
        assert!(matches!(
            req.point(Point::on_line(1.5)),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn mode_ratio_is_constant() {
        let d = Domain::rectangle((0.0, 1.0), (0.0, 2.0), 5, 5).unwrap();
        let f = TestFunction::gaussian(2, Point::new(0.4, 0.8), 0.5).unwrap();
        let x = Point::new(0.3, 1.1);
        for sigma in [0.4, 1.3] {
            let half = PotentialRequest::new(&d, &f, sigma).point(x).unwrap();
            let standard = PotentialRequest::new(&d, &f, sigma)
                .with_mode(ConstantMode::StandardRiesz)
                .point(x)
                .unwrap();
            let ratio = libm::pow(core::f64::consts::PI, (2.0 - sigma) / 2.0);
            assert!((half - standard * ratio).abs() < 1e-13 * half.abs());
        }
    }
}
