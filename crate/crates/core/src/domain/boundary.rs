use alloc::vec::Vec;

use super::field::{ScalarField, TestFunction};
use super::grid::Domain;
use super::quadrature::{edge_parameter_rule, QuadratureParams, UnitRule};
use crate::{Error, Point, Result};

/// A boundary quadrature point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryNode {
    pub point: Point,
    /// Unit outward normal.
    pub normal: Point,
    pub weight: f64,
    /// Side index: 0 = left, 1 = right in 1D; bottom, right, top, left in 2D.
    pub side: usize,
}

/// Boundary rule on the grid: the two endpoints with unit weight in 1D,
/// composite Gauss (order 8) over every boundary grid cell in 2D.
pub fn boundary_quadrature(domain: &Domain) -> Vec<BoundaryNode> {
    boundary_quadrature_with(domain, 8)
}

pub fn boundary_quadrature_with(domain: &Domain, gauss_order: usize) -> Vec<BoundaryNode> {
    match domain {
        Domain::Interval(g) => endpoint_nodes(g.a(), g.b()),
        Domain::Rectangle(g) => {
            let rule = UnitRule::new(gauss_order.max(1));
            let mut out = Vec::new();
            for (side, edge) in g.edges().iter().enumerate() {
                let cells = if side % 2 == 0 {
                    g.x_axis().len() - 1
                } else {
                    g.y_axis().len() - 1
                };
                let length = edge.length();
                for c in 0..cells {
                    let lo = c as f64 / cells as f64;
                    let hi = (c + 1) as f64 / cells as f64;
                    rule.on(lo, hi, |t, w| {
                        out.push(BoundaryNode {
                            point: edge.at(t),
                            normal: edge.normal,
                            weight: w * length,
                            side,
                        })
                    });
                }
            }
            out
        }
    }
}

fn endpoint_nodes(a: f64, b: f64) -> Vec<BoundaryNode> {
    alloc::vec![
        BoundaryNode {
            point: Point::on_line(a),
            normal: Point::on_line(-1.0),
            weight: 1.0,
            side: 0
        },
        BoundaryNode {
            point: Point::on_line(b),
            normal: Point::on_line(1.0),
            weight: 1.0,
            side: 1
        },
    ]
}

/// Boundary rule refined toward the boundary points nearest to `x`, for
/// kernels that peak there.
pub fn graded_boundary_quadrature(
    domain: &Domain,
    x: Point,
    params: QuadratureParams,
) -> Vec<BoundaryNode> {
    match domain {
        Domain::Interval(g) => endpoint_nodes(g.a(), g.b()),
        Domain::Rectangle(g) => {
            let rule = UnitRule::new(params.gauss_order);
            let mut out = Vec::new();
            for (side, edge) in g.edges().iter().enumerate() {
                let length = edge.length();
                for (t, w) in edge_parameter_rule(&rule, x, edge, params) {
                    out.push(BoundaryNode {
                        point: edge.at(t),
                        normal: edge.normal,
                        weight: w * length,
                        side,
                    });
                }
            }
            out
        }
    }
}

/// Source of a boundary trace.
#[derive(Clone, Debug, PartialEq)]
pub enum Trace {
    Constant(f64),
    /// Value (Dirichlet) or outward normal derivative (Neumann) of a function.
    Function(TestFunction),
}

/// Dirichlet (`R`) and Neumann (`Q`) data for one boundary side.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SideData {
    pub dirichlet: Option<Trace>,
    pub neumann: Option<Trace>,
}

/// Boundary conditions on a partitioned boundary: a side with Dirichlet data
/// belongs to `Γ_D`, a side with Neumann data to `Γ_N`; a side may carry both.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryData {
    sides: Vec<SideData>,
}

impl BoundaryData {
    pub fn new(domain: &Domain, sides: Vec<SideData>) -> Result<Self> {
        if sides.len() != domain.side_count() {
            return Err(Error::DimensionMismatch {
                expected: domain.side_count(),
                found: sides.len(),
            });
        }
        for side in &sides {
            for trace in [&side.dirichlet, &side.neumann].into_iter().flatten() {
                if let Trace::Function(f) = trace {
                    if f.dim() != domain.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: domain.dim(),
                            found: f.dim(),
                        });
                    }
                }
            }
        }
        Ok(BoundaryData { sides })
    }

    /// Exact Dirichlet and Neumann traces of `f` on every side.
    pub fn from_function(domain: &Domain, f: &TestFunction) -> Result<Self> {
        let side = SideData {
            dirichlet: Some(Trace::Function(f.clone())),
            neumann: Some(Trace::Function(f.clone())),
        };
        BoundaryData::new(domain, alloc::vec![side; domain.side_count()])
    }

    pub fn sides(&self) -> &[SideData] {
        &self.sides
    }

    /// Sides in `Γ_D`.
    pub fn dirichlet_sides(&self) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&i| self.sides[i].dirichlet.is_some())
            .collect()
    }

    /// Sides in `Γ_N`.
    pub fn neumann_sides(&self) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&i| self.sides[i].neumann.is_some())
            .collect()
    }

    /// Errors unless every side carries both traces.
    pub fn require_full_coverage(&self) -> Result<()> {
        for side in &self.sides {
            if side.dirichlet.is_none() {
                return Err(Error::MissingBoundaryData(
                    "Dirichlet trace missing on a side",
                ));
            }
            if side.neumann.is_none() {
                return Err(Error::MissingBoundaryData(
                    "Neumann trace missing on a side",
                ));
            }
        }
        Ok(())
    }

    pub fn dirichlet(&self, node: &BoundaryNode) -> Option<f64> {
        self.sides
            .get(node.side)?
            .dirichlet
            .as_ref()
            .map(|t| match t {
                Trace::Constant(c) => *c,
                Trace::Function(f) => f.value(node.point),
            })
    }

    pub fn neumann(&self, node: &BoundaryNode) -> Option<f64> {
        self.sides
            .get(node.side)?
            .neumann
            .as_ref()
            .map(|t| match t {
                Trace::Constant(c) => *c,
                Trace::Function(f) => f.gradient(node.point).dot(node.normal),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_boundary_is_two_points() {
        let d = Domain::interval(0.0, 1.0, 5).unwrap();
        let b = boundary_quadrature(&d);
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].point.x, b[0].normal.x, b[0].weight), (0.0, -1.0, 1.0));
        assert_eq!((b[1].point.x, b[1].normal.x, b[1].weight), (1.0, 1.0, 1.0));
    }

    #[test]
    fn rectangle_weights_sum_to_perimeter() {
        for (xr, yr, expected) in [((0.0, 1.0), (0.0, 1.0), 4.0), ((0.0, 2.0), (0.0, 1.0), 6.0)] {
            let d = Domain::rectangle(xr, yr, 7, 4).unwrap();
            let total: f64 = boundary_quadrature(&d).iter().map(|n| n.weight).sum();
            assert!((total - expected).abs() < 1e-12);
            let graded = graded_boundary_quadrature(
                &d,
                Point::new(0.3, 0.2),
                QuadratureParams::default_for(2),
            );
            let total: f64 = graded.iter().map(|n| n.weight).sum();
            assert!((total - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn graded_boundary_resolves_nearby_kernel() {
        // ∮ 1/r² over the bottom edge from a point at height p above it
        let d = Domain::rectangle((-1.0, 1.0), (0.0, 1.0), 5, 5).unwrap();
        let p = 0.01;
        let x = Point::new(0.1, p);
        let nodes = graded_boundary_quadrature(&d, x, QuadratureParams::default_for(2));
        let value: f64 = nodes
            .iter()
            .filter(|n| n.side == 0)
            .map(|n| n.weight / (n.point - x).dot(n.point - x))
            .sum();
        let exact = (libm::atan(0.9 / p) + libm::atan(1.1 / p)) / p;
        assert!((value - exact).abs() / exact < 1e-10, "{value} vs {exact}");
    }

    #[test]
    fn traces_and_coverage() {
        let d = Domain::interval(0.0, 1.0, 5).unwrap();
        let f = TestFunction::quadratic(1);
        let data = BoundaryData::from_function(&d, &f).unwrap();
        data.require_full_coverage().unwrap();
        let nodes = boundary_quadrature(&d);
        assert_eq!(data.dirichlet(&nodes[1]), Some(1.0));
        assert_eq!(data.neumann(&nodes[1]), Some(2.0));
        assert_eq!(data.neumann(&nodes[0]), Some(0.0));

        let partial = BoundaryData::new(
            &d,
            alloc::vec![
                SideData {
                    dirichlet: Some(Trace::Constant(0.0)),
                    neumann: None
                },
                SideData {
                    dirichlet: None,
                    neumann: Some(Trace::Constant(1.0))
                },
            ],
        )
        .unwrap();
        assert_eq!(partial.dirichlet_sides(), alloc::vec![0]);
        assert_eq!(partial.neumann_sides(), alloc::vec![1]);
        assert!(matches!(
            partial.require_full_coverage(),
            Err(Error::MissingBoundaryData(_))
        ));
        assert!(BoundaryData::new(&d, alloc::vec![SideData::default()]).is_err());
    }
}
