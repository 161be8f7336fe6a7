use alloc::vec::Vec;
use core::f64::consts::PI;

use super::grid::{Grid1D, Grid2D};
use crate::{Error, Point, Result};

/// Symmetric 2×2 Hessian; one-dimensional fields only fill `[0][0]`.
pub type Hessian = [[f64; 2]; 2];

/// A scalar field with first and second derivatives.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;
    fn value(&self, p: Point) -> f64;
    fn gradient(&self, p: Point) -> Point;
    fn hessian(&self, p: Point) -> Hessian;

    fn laplacian(&self, p: Point) -> f64 {
        let h = self.hessian(p);
        if self.dim() == 1 {
            h[0][0]
        } else {
            h[0][0] + h[1][1]
        }
    }

    /// Leading term `½ dᵀ H(x) d` of `φ(x + d) - φ(x) - ∇φ(x)·d`.
    fn quadratic_form(&self, x: Point, d: Point) -> f64 {
        let h = self.hessian(x);
        0.5 * (h[0][0] * d.x * d.x + 2.0 * h[0][1] * d.x * d.y + h[1][1] * d.y * d.y)
    }
}

/// `coefficient · x^px · y^py`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monomial {
    pub coefficient: f64,
    pub px: u32,
    pub py: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionKind {
    Const(f64),
    /// `gradient · x + offset`
    Affine {
        gradient: Point,
        offset: f64,
    },
    /// `|x|²`
    Quadratic,
    /// `exp(-|x - center|² / width²)`
    GaussianBump {
        center: Point,
        width: f64,
    },
    /// `sin(kπx)` in 1D, `sin(kπx) sin(kπy)` in 2D.
    SineMode {
        k: u32,
    },
    Polynomial(Vec<Monomial>),
}

/// Analytic test function with exact gradient, Hessian and Laplacian.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    dim: usize,
    kind: FunctionKind,
}

impl TestFunction {
    pub fn new(dim: usize, kind: FunctionKind) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::Domain("test functions live in 1 or 2 dimensions"));
        }
        match &kind {
            FunctionKind::GaussianBump { width, .. } if !(*width > 0.0) => {
                return Err(Error::Domain("Gaussian bump width must be positive"));
            }
            FunctionKind::Polynomial(terms) if dim == 1 && terms.iter().any(|m| m.py > 0) => {
                return Err(Error::Domain("1D polynomial cannot depend on y"));
            }
            _ => {}
        }
        Ok(TestFunction { dim, kind })
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        TestFunction {
            dim: dim.clamp(1, 2),
            kind: FunctionKind::Const(c),
        }
    }

    pub fn affine(dim: usize, gradient: Point, offset: f64) -> Self {
        let gradient = if dim == 1 {
            Point::on_line(gradient.x)
        } else {
            gradient
        };
        TestFunction {
            dim: dim.clamp(1, 2),
            kind: FunctionKind::Affine { gradient, offset },
        }
    }

    pub fn quadratic(dim: usize) -> Self {
        TestFunction {
            dim: dim.clamp(1, 2),
            kind: FunctionKind::Quadratic,
        }
    }

    pub fn gaussian(dim: usize, center: Point, width: f64) -> Result<Self> {
        TestFunction::new(dim, FunctionKind::GaussianBump { center, width })
    }

    pub fn sine(dim: usize, k: u32) -> Self {
        TestFunction {
            dim: dim.clamp(1, 2),
            kind: FunctionKind::SineMode { k },
        }
    }

    pub fn polynomial(dim: usize, terms: Vec<Monomial>) -> Result<Self> {
        TestFunction::new(dim, FunctionKind::Polynomial(terms))
    }

    /// Largest total degree for polynomial kinds, `None` otherwise.
    pub fn polynomial_degree(&self) -> Option<u32> {
        match &self.kind {
            FunctionKind::Const(_) => Some(0),
            FunctionKind::Affine { .. } => Some(1),
            FunctionKind::Quadratic => Some(2),
            FunctionKind::Polynomial(t) => Some(t.iter().map(|m| m.px + m.py).max().unwrap_or(0)),
            _ => None,
        }
    }

    fn offset(&self, p: Point) -> Point {
        if self.dim == 1 {
            Point::on_line(p.x)
        } else {
            p
        }
    }
}

fn powi(x: f64, n: u32) -> f64 {
    let mut out = 1.0;
    for _ in 0..n {
        out *= x;
    }
    out
}

/// d^k/dx^k of x^p.
fn monomial_derivative(x: f64, p: u32, k: u32) -> f64 {
    if k > p {
        return 0.0;
    }
    let mut factor = 1.0;
    for j in 0..k {
        factor *= (p - j) as f64;
    }
    factor * powi(x, p - k)
}

impl ScalarField for TestFunction {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, p: Point) -> f64 {
        let p = self.offset(p);
        match &self.kind {
            FunctionKind::Const(c) => *c,
            FunctionKind::Affine { gradient, offset } => gradient.dot(p) + offset,
            FunctionKind::Quadratic => p.dot(p),
            FunctionKind::GaussianBump { center, width } => {
                let d = p - self.offset(*center);
                libm::exp(-d.dot(d) / (width * width))
            }
            FunctionKind::SineMode { k } => {
                let w = *k as f64 * PI;
                let sx = libm::sin(w * p.x);
                if self.dim == 1 {
                    sx
                } else {
                    sx * libm::sin(w * p.y)
                }
            }
            FunctionKind::Polynomial(terms) => terms
                .iter()
                .map(|m| m.coefficient * powi(p.x, m.px) * powi(p.y, m.py))
                .sum(),
        }
    }

    fn gradient(&self, p: Point) -> Point {
        let p = self.offset(p);
        let g = match &self.kind {
            FunctionKind::Const(_) => Point::default(),
            FunctionKind::Affine { gradient, .. } => *gradient,
            FunctionKind::Quadratic => p * 2.0,
            FunctionKind::GaussianBump { center, width } => {
                let d = p - self.offset(*center);
                let w2 = width * width;
                d * (-2.0 / w2 * libm::exp(-d.dot(d) / w2))
            }
            FunctionKind::SineMode { k } => {
                let w = *k as f64 * PI;
                if self.dim == 1 {
                    Point::on_line(w * libm::cos(w * p.x))
                } else {
                    Point::new(
                        w * libm::cos(w * p.x) * libm::sin(w * p.y),
                        w * libm::sin(w * p.x) * libm::cos(w * p.y),
                    )
                }
            }
            FunctionKind::Polynomial(terms) => {
                let mut g = Point::default();
                for m in terms {
                    g.x += m.coefficient * monomial_derivative(p.x, m.px, 1) * powi(p.y, m.py);
                    g.y += m.coefficient * powi(p.x, m.px) * monomial_derivative(p.y, m.py, 1);
                }
                g
            }
        };
        self.offset(g)
    }

    fn hessian(&self, p: Point) -> Hessian {
        let p = self.offset(p);
        let mut h = match &self.kind {
            FunctionKind::Const(_) | FunctionKind::Affine { .. } => [[0.0; 2]; 2],
            FunctionKind::Quadratic => [[2.0, 0.0], [0.0, 2.0]],
            FunctionKind::GaussianBump { center, width } => {
                let d = p - self.offset(*center);
                let w2 = width * width;
                let g = libm::exp(-d.dot(d) / w2);
                let w4 = w2 * w2;
                let hxy = 4.0 * d.x * d.y / w4 * g;
                [
                    [(4.0 * d.x * d.x / w4 - 2.0 / w2) * g, hxy],
                    [hxy, (4.0 * d.y * d.y / w4 - 2.0 / w2) * g],
                ]
            }
            FunctionKind::SineMode { k } => {
                let w = *k as f64 * PI;
                let (sx, cx) = (libm::sin(w * p.x), libm::cos(w * p.x));
                if self.dim == 1 {
                    [[-w * w * sx, 0.0], [0.0, 0.0]]
                } else {
                    let (sy, cy) = (libm::sin(w * p.y), libm::cos(w * p.y));
                    let hxy = w * w * cx * cy;
                    [[-w * w * sx * sy, hxy], [hxy, -w * w * sx * sy]]
                }
            }
            FunctionKind::Polynomial(terms) => {
                let mut h = [[0.0; 2]; 2];
                for m in terms {
                    let c = m.coefficient;
                    h[0][0] += c * monomial_derivative(p.x, m.px, 2) * powi(p.y, m.py);
                    h[1][1] += c * powi(p.x, m.px) * monomial_derivative(p.y, m.py, 2);
                    let xy =
                        c * monomial_derivative(p.x, m.px, 1) * monomial_derivative(p.y, m.py, 1);
                    h[0][1] += xy;
                    h[1][0] += xy;
                }
                h
            }
        };
        if self.dim == 1 {
            h[0][1] = 0.0;
            h[1][0] = 0.0;
            h[1][1] = 0.0;
        }
        h
    }
}

/// Weighted sum of fields, `Σ wᵢ fᵢ`.
pub struct Combination<'a> {
    terms: Vec<(f64, &'a dyn ScalarField)>,
}

impl<'a> Combination<'a> {
    pub fn new(terms: Vec<(f64, &'a dyn ScalarField)>) -> Result<Self> {
        let dim = terms
            .first()
            .map(|t| t.1.dim())
            .ok_or(Error::Domain("empty combination"))?;
        if terms.iter().any(|t| t.1.dim() != dim) {
            return Err(Error::Domain("combined fields must share a dimension"));
        }
        Ok(Combination { terms })
    }
}

impl ScalarField for Combination<'_> {
    fn dim(&self) -> usize {
        self.terms[0].1.dim()
    }

    fn value(&self, p: Point) -> f64 {
        self.terms.iter().map(|(w, f)| w * f.value(p)).sum()
    }

    fn gradient(&self, p: Point) -> Point {
        self.terms
            .iter()
            .fold(Point::default(), |acc, (w, f)| acc + f.gradient(p) * *w)
    }

    fn hessian(&self, p: Point) -> Hessian {
        let mut h = [[0.0; 2]; 2];
        for (w, f) in &self.terms {
            let hf = f.hessian(p);
            for i in 0..2 {
                for j in 0..2 {
                    h[i][j] += w * hf[i][j];
                }
            }
        }
        h
    }
}

/// Second-order nodal first/second differences on a uniform 1D grid.
fn nodal_derivatives(values: &[f64], h: f64) -> (Vec<f64>, Vec<f64>) {
    let n = values.len();
    let mut d1 = Vec::with_capacity(n);
    let mut d2 = Vec::with_capacity(n);
    for i in 0..n {
        let (first, second) = if i == 0 {
            (
                (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h),
                if n >= 4 {
                    (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2] - values[3]) / (h * h)
                } else {
                    (values[0] - 2.0 * values[1] + values[2]) / (h * h)
                },
            )
        } else if i == n - 1 {
            (
                (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h),
                if n >= 4 {
                    (2.0 * values[n - 1] - 5.0 * values[n - 2] + 4.0 * values[n - 3]
                        - values[n - 4])
                        / (h * h)
                } else {
                    (values[n - 1] - 2.0 * values[n - 2] + values[n - 3]) / (h * h)
                },
            )
        } else {
            (
                (values[i + 1] - values[i - 1]) / (2.0 * h),
                (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h),
            )
        };
        d1.push(first);
        d2.push(second);
    }
    (d1, d2)
}

/// Cell index and local coordinate in `[0, 1]` of `x` on a uniform grid.
fn locate(grid: &Grid1D, x: f64) -> (usize, f64) {
    let h = grid.spacing();
    let cells = grid.len() - 1;
    let u = ((x - grid.a()) / h).clamp(0.0, cells as f64);
    let i = (libm::floor(u) as usize).min(cells - 1);
    (i, u - i as f64)
}

/// Grid-sampled 1D field: values by piecewise-linear interpolation, derivatives
/// from nodal central differences interpolated the same way.
#[derive(Clone, Debug)]
pub struct SampledField1D {
    grid: Grid1D,
    values: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl SampledField1D {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        let (d1, d2) = nodal_derivatives(&values, grid.spacing());
        Ok(SampledField1D {
            grid,
            values,
            d1,
            d2,
        })
    }

    pub fn sample<F: ScalarField + ?Sized>(grid: Grid1D, f: &F) -> Result<Self> {
        let values = grid
            .nodes()
            .iter()
            .map(|&x| f.value(Point::on_line(x)))
            .collect();
        SampledField1D::new(grid, values)
    }

    fn interpolate(&self, data: &[f64], x: f64) -> f64 {
        let (i, t) = locate(&self.grid, x);
        (1.0 - t) * data[i] + t * data[i + 1]
    }
}

impl ScalarField for SampledField1D {
    fn dim(&self) -> usize {
        1
    }

    fn value(&self, p: Point) -> f64 {
        self.interpolate(&self.values, p.x)
    }

    fn gradient(&self, p: Point) -> Point {
        Point::on_line(self.interpolate(&self.d1, p.x))
    }

    fn hessian(&self, p: Point) -> Hessian {
        [[self.interpolate(&self.d2, p.x), 0.0], [0.0, 0.0]]
    }
}

/// Grid-sampled 2D field with bilinear interpolation of values and of nodal
/// finite-difference derivatives.
#[derive(Clone, Debug)]
pub struct SampledField2D {
    grid: Grid2D,
    values: Vec<f64>,
    gx: Vec<f64>,
    gy: Vec<f64>,
    hxx: Vec<f64>,
    hxy: Vec<f64>,
    hyy: Vec<f64>,
}

impl SampledField2D {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        let (nx, ny) = (grid.x_axis().len(), grid.y_axis().len());
        if values.len() != nx * ny {
            return Err(Error::DimensionMismatch {
                expected: nx * ny,
                found: values.len(),
            });
        }
        let (hx, hy) = (grid.x_axis().spacing(), grid.y_axis().spacing());
        let mut gx = alloc::vec![0.0; nx * ny];
        let mut hxx = alloc::vec![0.0; nx * ny];
        for j in 0..ny {
            let row = &values[j * nx..(j + 1) * nx];
            let (d1, d2) = nodal_derivatives(row, hx);
            gx[j * nx..(j + 1) * nx].copy_from_slice(&d1);
            hxx[j * nx..(j + 1) * nx].copy_from_slice(&d2);
        }
        let mut gy = alloc::vec![0.0; nx * ny];
        let mut hyy = alloc::vec![0.0; nx * ny];
        let mut hxy = alloc::vec![0.0; nx * ny];
        for i in 0..nx {
            let column: Vec<f64> = (0..ny).map(|j| values[j * nx + i]).collect();
            let (d1, d2) = nodal_derivatives(&column, hy);
            let cross: Vec<f64> = (0..ny).map(|j| gx[j * nx + i]).collect();
            let (dxy, _) = nodal_derivatives(&cross, hy);
            for j in 0..ny {
                gy[j * nx + i] = d1[j];
                hyy[j * nx + i] = d2[j];
                hxy[j * nx + i] = dxy[j];
            }
        }
        Ok(SampledField2D {
            grid,
            values,
            gx,
            gy,
            hxx,
            hxy,
            hyy,
        })
    }

    pub fn sample<F: ScalarField + ?Sized>(grid: Grid2D, f: &F) -> Result<Self> {
        let values = grid.nodes().into_iter().map(|p| f.value(p)).collect();
        SampledField2D::new(grid, values)
    }

    fn interpolate(&self, data: &[f64], p: Point) -> f64 {
        let nx = self.grid.x_axis().len();
        let (i, u) = locate(self.grid.x_axis(), p.x);
        let (j, v) = locate(self.grid.y_axis(), p.y);
        let at = |ii: usize, jj: usize| data[jj * nx + ii];
        (1.0 - u) * (1.0 - v) * at(i, j)
            + u * (1.0 - v) * at(i + 1, j)
            + (1.0 - u) * v * at(i, j + 1)
            + u * v * at(i + 1, j + 1)
    }
}

impl ScalarField for SampledField2D {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, p: Point) -> f64 {
        self.interpolate(&self.values, p)
    }

    fn gradient(&self, p: Point) -> Point {
        Point::new(self.interpolate(&self.gx, p), self.interpolate(&self.gy, p))
    }

    fn hessian(&self, p: Point) -> Hessian {
        let xy = self.interpolate(&self.hxy, p);
        [
            [self.interpolate(&self.hxx, p), xy],
            [xy, self.interpolate(&self.hyy, p)],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(dim: usize) -> Vec<TestFunction> {
        let mut out = alloc::vec![
            TestFunction::constant(dim, 1.5),
            TestFunction::affine(dim, Point::new(0.3, -1.2), 0.4),
            TestFunction::quadratic(dim),
            TestFunction::gaussian(dim, Point::new(0.45, 0.55), 0.3).unwrap(),
            TestFunction::sine(dim, 2),
        ];
        let terms = if dim == 1 {
            alloc::vec![
                Monomial {
                    coefficient: 2.0,
                    px: 3,
                    py: 0
                },
                Monomial {
                    coefficient: -1.0,
                    px: 1,
                    py: 0
                },
            ]
        } else {
            alloc::vec![
                Monomial {
                    coefficient: 2.0,
                    px: 2,
                    py: 1
                },
                Monomial {
                    coefficient: -1.0,
                    px: 0,
                    py: 3
                },
            ]
        };
        out.push(TestFunction::polynomial(dim, terms).unwrap());
        out
    }

    fn close(a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= 1e-6 * (b.abs().max(scale))
    }

    #[test]
    fn analytic_derivatives_match_central_differences() {
        // deterministic pseudo-random points in [0.05, 0.95]^2
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            0.05 + 0.9 * (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let h = 1e-4;
        for dim in [1, 2] {
            for f in kinds(dim) {
                for _ in 0..50 {
                    let p = if dim == 1 {
                        Point::on_line(next())
                    } else {
                        Point::new(next(), next())
                    };
                    let ex = Point::new(h, 0.0);
                    let ey = Point::new(0.0, h);
                    let scale = f.value(p).abs().max(1.0);
                    let gx = (f.value(p + ex) - f.value(p - ex)) / (2.0 * h);
                    let g = f.gradient(p);
                    assert!(
                        close(g.x, gx, scale),
                        "{f:?} grad x at {p:?}: {} vs {gx}",
                        g.x
                    );
                    let hxx = (f.value(p + ex) - 2.0 * f.value(p) + f.value(p - ex)) / (h * h);
                    let hs = f.hessian(p);
                    assert!((hs[0][0] - hxx).abs() <= 1e-5 * scale.max(hxx.abs()) * 10.0);
                    if dim == 2 {
                        let gy = (f.value(p + ey) - f.value(p - ey)) / (2.0 * h);
                        assert!(close(g.y, gy, scale));
                        let lap_fd =
                            hxx + (f.value(p + ey) - 2.0 * f.value(p) + f.value(p - ey)) / (h * h);
                        assert!((f.laplacian(p) - lap_fd).abs() <= 1e-4 * scale.max(lap_fd.abs()));
                        let hxy = (f.gradient(p + ey).x - f.gradient(p - ey).x) / (2.0 * h);
                        assert!(close(hs[0][1], hxy, scale));
                    } else {
                        assert_eq!(g.y, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn one_dimensional_functions_ignore_y() {
        let f = TestFunction::gaussian(1, Point::new(0.5, 0.9), 0.2).unwrap();
        assert_eq!(f.value(Point::new(0.5, 0.0)), 1.0);
        assert_eq!(f.value(Point::new(0.3, 7.0)), f.value(Point::on_line(0.3)));
    }

    #[test]
    fn invalid_functions_rejected() {
        assert!(TestFunction::gaussian(2, Point::default(), 0.0).is_err());
        assert!(TestFunction::polynomial(
            1,
            alloc::vec![Monomial {
                coefficient: 1.0,
                px: 0,
                py: 1
            }]
        )
        .is_err());
        assert!(TestFunction::new(3, FunctionKind::Quadratic).is_err());
    }

    #[test]
    fn sampled_fields_are_second_order() {
        let f = TestFunction::sine(1, 1);
        let p = Point::on_line(0.37);
        let mut errors = Vec::new();
        for n in [41, 81, 161] {
            let s = SampledField1D::sample(Grid1D::new(0.0, 1.0, n).unwrap(), &f).unwrap();
            errors.push((s.laplacian(p) - f.laplacian(p)).abs());
        }
        assert!(
            errors[1] < errors[0] / 3.0 && errors[2] < errors[1] / 3.0,
            "{errors:?}"
        );

        let g = TestFunction::gaussian(2, Point::new(0.5, 0.5), 0.4).unwrap();
        let grid = Grid2D::new((0.0, 1.0), (0.0, 1.0), 81, 81).unwrap();
        let s = SampledField2D::sample(grid, &g).unwrap();
        let q = Point::new(0.4, 0.6);
        assert!((s.value(q) - g.value(q)).abs() < 1e-3);
        assert!((s.laplacian(q) - g.laplacian(q)).abs() < 5e-2);
        assert!((s.hessian(q)[0][1] - g.hessian(q)[0][1]).abs() < 5e-2);
    }

    #[test]
    fn combination_is_linear() {
        let a = TestFunction::quadratic(2);
        let b = TestFunction::sine(2, 1);
        let c = Combination::new(alloc::vec![(2.0, &a as &dyn ScalarField), (-0.5, &b)]).unwrap();
        let p = Point::new(0.2, 0.7);
        assert!((c.value(p) - (2.0 * a.value(p) - 0.5 * b.value(p))).abs() < 1e-15);
        assert!((c.laplacian(p) - (2.0 * a.laplacian(p) - 0.5 * b.laplacian(p))).abs() < 1e-12);
    }
}
