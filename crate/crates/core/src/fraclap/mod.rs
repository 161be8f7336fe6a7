//! Fractional Laplacian `(-Δ)^{s/2}` on a bounded domain, four ways:
//!
//! * restated standard form `-Δ_x I_d^{2-s}[φ](x)`, outer Laplacian by
//!   central differences;
//! * hypersingular standard form `-(1/h) f.p.∫_Ω φ(ξ) ‖x-ξ‖^{-(d+s)}`;
//! * the potential of the Laplacian, `-I_d^{2-s}[Δφ](x)`;
//! * the hypersingular volume term augmented with boundary integrals of the
//!   Dirichlet and Neumann traces.
//!
//! With `v = ‖x-ξ‖^{-(d-2+s)}`, Green's second identity gives
//!
//! ```text
//! -I^{2-s}[Δφ](x) = -(1/h) f.p.∫_Ω φ ‖x-ξ‖^{-(d+s)} + c(d,2-s) ∮_S (D ∂v/∂n - v N)
//! ```
//!
//! so the restated form equals the potential of the Laplacian minus the
//! boundary integral.

mod finite_part;

use alloc::vec::Vec;

use crate::domain::{
    graded_boundary_quadrature, BoundaryData, Domain, QuadratureParams, ScalarField,
};
use crate::riesz::{weighted_integral, PotentialRequest};
use crate::special::{h_constant, riesz_constant, ConstantMode, FractionalOrder};
use crate::{Error, Point, Result};

/// Fraction of the diameter that caps the finite-difference step of the
/// restated form.
pub const RESTATED_STEP_CAP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Definition {
    /// `-Δ_x I_d^{2-s}[φ]`.
    Restated,
    /// `-(1/h) f.p.∫ φ ‖x-ξ‖^{-(d+s)}`; intervals only.
    Hypersingular,
    /// `-I_d^{2-s}[Δφ]`.
    #[default]
    New,
    /// Finite-part volume term plus the boundary integral that Green's
    /// identity actually produces.
    Augmented,
    /// Finite-part volume term plus surface kernels with exponent `d+s` and
    /// prefactor `1/h`. Kept for comparison; not equal to the others.
    AugmentedAsPrinted,
}

impl Definition {
    pub const ALL: [Definition; 5] = [
        Definition::Restated,
        Definition::Hypersingular,
        Definition::New,
        Definition::Augmented,
        Definition::AugmentedAsPrinted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Definition::Restated => "restated",
            Definition::Hypersingular => "hyper",
            Definition::New => "new",
            Definition::Augmented => "augmented",
            Definition::AugmentedAsPrinted => "augmented-asprinted",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Definition::ALL.into_iter().find(|d| d.name() == name)
    }

    pub fn needs_boundary(self) -> bool {
        matches!(self, Definition::Augmented | Definition::AugmentedAsPrinted)
    }
}

pub struct FracLapRequest<'a> {
    pub domain: &'a Domain,
    pub phi: &'a dyn ScalarField,
    pub s: FractionalOrder,
    pub eval_points: Vec<Point>,
    pub mode: ConstantMode,
    pub definition: Definition,
    /// Traces for the augmented forms; ignored otherwise.
    pub boundary: Option<&'a BoundaryData>,
    pub params: QuadratureParams,
    /// Minimum distance from an evaluation point to the boundary.
    pub margin: f64,
}

impl<'a> FracLapRequest<'a> {
    /// Default constant mode, quadrature and margin; the new definition.
    pub fn new(domain: &'a Domain, phi: &'a dyn ScalarField, s: FractionalOrder) -> Self {
        FracLapRequest {
            domain,
            phi,
            s,
            eval_points: Vec::new(),
            mode: ConstantMode::default(),
            definition: Definition::default(),
            boundary: None,
            params: QuadratureParams::default_for(domain.dim()),
            margin: domain.default_margin(),
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

    pub fn with_definition(mut self, definition: Definition) -> Self {
        self.definition = definition;
        self
    }

    pub fn with_boundary(mut self, boundary: &'a BoundaryData) -> Self {
        self.boundary = Some(boundary);
        self
    }

    pub fn with_params(mut self, params: QuadratureParams) -> Self {
        self.params = params;
        self
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    fn dim(&self) -> usize {
        self.domain.dim()
    }

    fn check(&self, x: Point) -> Result<f64> {
        if self.phi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: self.phi.dim(),
            });
        }
        self.params.validate()?;
        if !self.domain.contains(x) {
            return Err(Error::OutsideDomain { x: x.x, y: x.y });
        }
        let distance = self.domain.distance_to_boundary(x);
        let slack = 1e-12 * self.domain.diameter();
        if distance < self.margin - slack || distance <= 0.0 {
            return Err(Error::MarginViolation {
                distance,
                required: self.margin,
            });
        }
        Ok(distance)
    }

    /// Evaluates the request's definition at `x`.
    pub fn evaluate(&self, x: Point) -> Result<f64> {
        self.evaluate_as(self.definition, x)
    }

    pub fn evaluate_as(&self, definition: Definition, x: Point) -> Result<f64> {
        match definition {
            Definition::Restated => self.restated(x),
            Definition::Hypersingular => self.hypersingular(x),
            Definition::New => self.new_definition(x),
            Definition::Augmented => self.augmented(x),
            Definition::AugmentedAsPrinted => self.augmented_as_printed(x),
        }
    }

    /// Every evaluation point, in order; errors are per point.
    pub fn evaluate_all(&self) -> Vec<(Point, Result<f64>)> {
        self.eval_points
            .iter()
            .map(|&x| (x, self.evaluate(x)))
            .collect()
    }

    /// `-Δ_x I_d^{2-s}[φ](x)` with a second-order central stencil of step
    /// `min(dist/2, 1e-3·diam)`.
    pub fn restated(&self, x: Point) -> Result<f64> {
        let distance = self.check(x)?;
        let tau = (0.5 * distance).min(RESTATED_STEP_CAP * self.domain.diameter());
        if distance < 3.0 * tau {
            return Err(Error::MarginViolation {
                distance,
                required: 3.0 * tau,
            });
        }
        let potential = PotentialRequest::new(self.domain, self.phi, self.s.complement().value())
            .with_mode(self.mode)
            .with_params(self.params);
        let center = potential.point(x)?;
        let axes: &[Point] = match self.dim() {
            1 => &[Point { x: 1.0, y: 0.0 }],
            _ => &[Point { x: 1.0, y: 0.0 }, Point { x: 0.0, y: 1.0 }],
        };
        let mut laplacian = 0.0;
        for &e in axes {
            let plus = potential.point(x + e * tau)?;
            let minus = potential.point(x - e * tau)?;
            laplacian += (plus - 2.0 * center + minus) / (tau * tau);
        }
        Ok(-laplacian)
    }

    /// `-(1/h) f.p.∫_Ω φ(ξ) ‖x-ξ‖^{-(d+s)}`. Intervals only; rectangles give
    /// [`Error::Unsupported`].
    pub fn hypersingular(&self, x: Point) -> Result<f64> {
        if self.dim() != 1 {
            return Err(Error::Unsupported(
                "finite-part form is implemented on intervals only; use the restated form",
            ));
        }
        self.check(x)?;
        self.volume_term(x)
    }

    fn volume_term(&self, x: Point) -> Result<f64> {
        let h = h_constant(self.dim(), self.s, self.mode)?;
        let fp = finite_part::hypersingular_integral(
            self.domain,
            self.phi,
            x,
            self.s.value(),
            self.params,
        )?;
        Ok(-fp / h)
    }

    /// `-c(d,2-s) ∫_Ω Δφ(ξ) ‖x-ξ‖^{-(d-2+s)}`.
    pub fn new_definition(&self, x: Point) -> Result<f64> {
        self.check(x)?;
        let sigma = self.s.complement().value();
        let c = riesz_constant(self.dim(), sigma, self.mode)?;
        let exponent = self.dim() as f64 - sigma;
        let integral = weighted_integral(self.domain, x, exponent, self.params, |n| {
            self.phi.laplacian(n.point)
        })?;
        Ok(-c * integral)
    }

    /// Finite-part volume term plus [`boundary_term`](Self::boundary_term).
    pub fn augmented(&self, x: Point) -> Result<f64> {
        let boundary = self.boundary_term(x)?;
        Ok(self.volume_term(x)? + boundary)
    }

    /// `c(d,2-s) ∮_S (D ∂v/∂n - v N) dS` with `v = ‖x-ξ‖^{-(d-2+s)}`.
    pub fn boundary_term(&self, x: Point) -> Result<f64> {
        self.check(x)?;
        let data = self.traces()?;
        let c = riesz_constant(self.dim(), self.s.complement().value(), self.mode)?;
        let a = self.dim() as f64 - 2.0 + self.s.value();
        Ok(c * self.surface_integral(x, data, a))
    }

    /// Finite-part volume term plus `(1/h) ∮_S (D ∂w/∂n - w N)` with
    /// `w = ‖x-ξ‖^{-(d+s)}`.
    pub fn augmented_as_printed(&self, x: Point) -> Result<f64> {
        self.check(x)?;
        let data = self.traces()?;
        let h = h_constant(self.dim(), self.s, self.mode)?;
        let k = self.dim() as f64 + self.s.value();
        Ok(self.volume_term(x)? + self.surface_integral(x, data, k) / h)
    }

    fn traces(&self) -> Result<&'a BoundaryData> {
        let data = self.boundary.ok_or(Error::MissingBoundaryData(
            "augmented form needs boundary traces",
        ))?;
        if data.sides().len() != self.domain.side_count() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.side_count(),
                found: data.sides().len(),
            });
        }
        data.require_full_coverage()?;
        Ok(data)
    }

    /// `∮_S (D ∂w/∂n - w N)` for `w = ‖x-ξ‖^{-k}`.
    fn surface_integral(&self, x: Point, data: &BoundaryData, k: f64) -> f64 {
        let mut total = crate::sum::Accumulator::default();
        for node in graded_boundary_quadrature(self.domain, x, self.params) {
            let ray = node.point - x;
            let r = ray.norm();
            let w = libm::pow(r, -k);
            let dw = -k * w / r * (ray.dot(node.normal) / r);
            let d = data.dirichlet(&node).unwrap_or(0.0);
            let n = data.neumann(&node).unwrap_or(0.0);
            total.add(node.weight * (d * dw - w * n));
        }
        total.total()
    }
}
