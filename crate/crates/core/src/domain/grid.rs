use alloc::vec::Vec;

use crate::{Error, Point, Result};

/// Uniform discretization of `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid1D {
    a: f64,
    b: f64,
    nodes: Vec<f64>,
}

impl Grid1D {
    /// `n ≥ 3` uniformly spaced nodes including both endpoints.
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || !(a < b) {
            return Err(Error::InvalidGrid("interval endpoints must satisfy a < b"));
        }
        if n < 3 {
            return Err(Error::InvalidGrid("need at least 3 nodes"));
        }
        let h = (b - a) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| a + h * i as f64).collect();
        nodes[n - 1] = b;
        Ok(Grid1D { a, b, nodes })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.nodes.len() - 1) as f64
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// Boundary points with their outward normals: `(a, -1)`, `(b, +1)`.
    pub fn boundary(&self) -> [(f64, f64); 2] {
        [(self.a, -1.0), (self.b, 1.0)]
    }
}

/// One straight side of a rectangle, traversed counter-clockwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub start: Point,
    pub end: Point,
    /// Unit outward normal.
    pub normal: Point,
}

impl Edge {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn at(&self, t: f64) -> Point {
        self.start + (self.end - self.start) * t
    }
}

/// Tensor-product grid on `[a1, b1] × [a2, b2]`, nodes in lexicographic order
/// (x fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    x: Grid1D,
    y: Grid1D,
}

impl Grid2D {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        Ok(Grid2D {
            x: Grid1D::new(x_range.0, x_range.1, nx)?,
            y: Grid1D::new(y_range.0, y_range.1, ny)?,
        })
    }

    pub fn x_axis(&self) -> &Grid1D {
        &self.x
    }

    pub fn y_axis(&self) -> &Grid1D {
        &self.y
    }

    pub fn nodes(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.x.len() * self.y.len());
        for &y in self.y.nodes() {
            for &x in self.x.nodes() {
                out.push(Point::new(x, y));
            }
        }
        out
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x.a(), self.y.a()),
            Point::new(self.x.b(), self.y.a()),
            Point::new(self.x.b(), self.y.b()),
            Point::new(self.x.a(), self.y.b()),
        ]
    }

    /// Bottom, right, top, left.
    pub fn edges(&self) -> [Edge; 4] {
        let c = self.corners();
        let normals = [
            Point::new(0.0, -1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(-1.0, 0.0),
        ];
        core::array::from_fn(|i| Edge {
            start: c[i],
            end: c[(i + 1) % 4],
            normal: normals[i],
        })
    }
}

/// A bounded computational domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Interval(Grid1D),
    Rectangle(Grid2D),
}

impl Domain {
    pub fn interval(a: f64, b: f64, n: usize) -> Result<Self> {
        Grid1D::new(a, b, n).map(Domain::Interval)
    }

    pub fn rectangle(
        x_range: (f64, f64),
        y_range: (f64, f64),
        nx: usize,
        ny: usize,
    ) -> Result<Self> {
        Grid2D::new(x_range, y_range, nx, ny).map(Domain::Rectangle)
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Interval(_) => 1,
            Domain::Rectangle(_) => 2,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Interval(g) => g.length(),
            Domain::Rectangle(g) => libm::hypot(g.x.length(), g.y.length()),
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            Domain::Interval(g) => g.length(),
            Domain::Rectangle(g) => g.x.length() * g.y.length(),
        }
    }

    /// Total boundary measure; 2 for an interval (two points of unit weight).
    pub fn perimeter(&self) -> f64 {
        match self {
            Domain::Interval(_) => 2.0,
            Domain::Rectangle(g) => 2.0 * (g.x.length() + g.y.length()),
        }
    }

    pub fn center(&self) -> Point {
        match self {
            Domain::Interval(g) => Point::on_line(0.5 * (g.a() + g.b())),
            Domain::Rectangle(g) => {
                Point::new(0.5 * (g.x.a() + g.x.b()), 0.5 * (g.y.a() + g.y.b()))
            }
        }
    }

    /// Largest grid spacing.
    pub fn spacing(&self) -> f64 {
        match self {
            Domain::Interval(g) => g.spacing(),
            Domain::Rectangle(g) => g.x.spacing().max(g.y.spacing()),
        }
    }

    /// Default boundary clearance for nonlocal evaluation: two grid spacings.
    pub fn default_margin(&self) -> f64 {
        2.0 * self.spacing()
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        match self {
            Domain::Interval(g) => (p.x - g.a()).min(g.b() - p.x),
            Domain::Rectangle(g) => (p.x - g.x.a())
                .min(g.x.b() - p.x)
                .min(p.y - g.y.a())
                .min(g.y.b() - p.y),
        }
    }

    /// Membership in the closed domain, with a relative slack of 1e-12.
    pub fn contains(&self, p: Point) -> bool {
        let inside = self.distance_to_boundary(p) >= -1e-12 * self.diameter();
        match self {
            Domain::Interval(_) => inside && p.y == 0.0,
            Domain::Rectangle(_) => inside,
        }
    }

    pub fn nodes(&self) -> Vec<Point> {
        match self {
            Domain::Interval(g) => g.nodes().iter().map(|&x| Point::on_line(x)).collect(),
            Domain::Rectangle(g) => g.nodes(),
        }
    }

    /// Grid nodes at distance at least `margin` from the boundary.
    pub fn interior_nodes(&self, margin: f64) -> Vec<Point> {
        let slack = 1e-12 * self.diameter();
        self.nodes()
            .into_iter()
            .filter(|&p| self.distance_to_boundary(p) >= margin - slack)
            .collect()
    }

    /// Number of boundary sides: 2 endpoints or 4 edges.
    pub fn side_count(&self) -> usize {
        match self {
            Domain::Interval(_) => 2,
            Domain::Rectangle(_) => 4,
        }
    }
}
