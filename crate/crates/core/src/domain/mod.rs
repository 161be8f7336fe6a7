//! Computational domains, test functions, boundary data and quadrature.

mod boundary;
mod field;
mod grid;
mod quadrature;

pub use boundary::{
    boundary_quadrature, boundary_quadrature_with, graded_boundary_quadrature, BoundaryData,
    BoundaryNode, SideData, Trace,
};
pub use field::{
    Combination, FunctionKind, Hessian, Monomial, SampledField1D, SampledField2D, ScalarField,
    TestFunction,
};
pub use grid::{Domain, Edge, Grid1D, Grid2D};
pub use quadrature::{
    domain_quadrature, gauss_legendre, graded_kernel_rule, graded_quadrature_rule, integrate,
    GradedPanels, Panel, QuadNode, QuadratureParams, INNER_MAP_POWER, MAX_MAP_POWER,
};
pub(crate) use quadrature::{edge_parameter_rule, UnitRule};
