//! Green's second identity as a numerical check,
//!
//! ```text
//! ∫_Ω (v Δφ - φ Δv) dΩ = ∮_S (v ∂φ/∂n - φ ∂v/∂n) dS.
//! ```

use crate::domain::{boundary_quadrature_with, domain_quadrature, Domain, ScalarField};
use crate::sum::Accumulator;
use crate::{Error, Result};

/// Gauss order per grid cell used by [`green_residual`].
pub const DEFAULT_GAUSS_ORDER: usize = 4;

/// `|∫ vΔφ - ∫ φΔv + ∮ (φ ∂v/∂n - v ∂φ/∂n)|` on the grid quadrature.
pub fn green_residual(domain: &Domain, phi: &dyn ScalarField, v: &dyn ScalarField) -> Result<f64> {
    green_residual_with(domain, phi, v, DEFAULT_GAUSS_ORDER)
}

pub fn green_residual_with(
    domain: &Domain,
    phi: &dyn ScalarField,
    v: &dyn ScalarField,
    gauss_order: usize,
) -> Result<f64> {
    for f in [phi, v] {
        if f.dim() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                found: f.dim(),
            });
        }
    }
    if gauss_order == 0 {
        return Err(Error::Domain("gauss order must be positive"));
    }
    let mut volume = Accumulator::default();
    for n in domain_quadrature(domain, gauss_order) {
        let term =
            v.value(n.point) * phi.laplacian(n.point) - phi.value(n.point) * v.laplacian(n.point);
        if !term.is_finite() {
            return Err(Error::Domain(
                "functions must be smooth on the closed domain",
            ));
        }
        volume.add(n.weight * term);
    }
    let mut surface = Accumulator::default();
    for n in boundary_quadrature_with(domain, gauss_order) {
        let dv = v.gradient(n.point).dot(n.normal);
        let dphi = phi.gradient(n.point).dot(n.normal);
        let term = phi.value(n.point) * dv - v.value(n.point) * dphi;
        if !term.is_finite() {
            return Err(Error::Domain(
                "functions must be smooth on the closed domain",
            ));
        }
        surface.add(n.weight * term);
    }
    Ok((volume.total() + surface.total()).abs())
}
