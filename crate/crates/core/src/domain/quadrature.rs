//! Gauss–Legendre rules and geometrically graded composite rules for
//! integrands with a weak point singularity.
//!
//! A graded rule centred at `x` splits the distance to the boundary into
//! panels `[ρ^{k+1} L, ρ^k L]`, `k < levels`, each carrying a Gauss rule. The
//! innermost cell `[0, ρ^levels L]` uses the Gauss rule after the substitution
//! `r = h u^q`, which turns `r^{-α}` into the smooth `u^{q(1-α)-1}`, so the
//! rule needs no knowledge of the kernel exponent.
//!
//! In two dimensions the rectangle is cut into four triangles with apex `x`,
//! one per edge. A triangle is parametrised by the edge parameter `t` and the
//! radial fraction `λ`, `ξ = x + λ (y(t) - x)`, with Jacobian `λ L p` (`L` the
//! edge length, `p` the distance from `x` to the edge line). `λ` is graded
//! toward 0, `t` toward the foot of the perpendicular from `x`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::grid::{Domain, Edge};
use crate::sum::Accumulator;
use crate::{Error, Point, Result};

/// Exponent `q` of the innermost-cell substitution `r = h u^q`.
pub const INNER_MAP_POWER: u32 = 8;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            derivative = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        if dp != 0.0 {
            derivative = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss rule mapped to `[0, 1]`.
#[derive(Clone, Debug)]
pub(crate) struct UnitRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    map_power: u32,
}

impl UnitRule {
    pub(crate) fn new(order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        UnitRule {
            nodes: x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
            weights: w.iter().map(|v| 0.5 * v).collect(),
            map_power: INNER_MAP_POWER.min(2 * order as u32),
        }
    }

    /// Plain Gauss nodes on `[lo, hi]`.
    pub(crate) fn on(&self, lo: f64, hi: f64, mut push: impl FnMut(f64, f64)) {
        let h = hi - lo;
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            push(lo + h * u, h * w);
        }
    }

    /// Nodes on `[0, h]` after `r = h u^q` with the default power.
    pub(crate) fn mapped(&self, h: f64, push: impl FnMut(f64, f64)) {
        self.mapped_with(h, self.map_power as f64, push)
    }

    /// Nodes on `[0, h]` after `r = h u^q`.
    pub(crate) fn mapped_with(&self, h: f64, q: f64, mut push: impl FnMut(f64, f64)) {
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            push(h * libm::pow(*u, q), h * q * libm::pow(*u, q - 1.0) * w);
        }
    }
}

/// Resolution of the graded rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureParams {
    /// Number of geometric panels between the singular point and the boundary.
    pub levels: usize,
    /// Size ratio `ρ` between successive panels.
    pub ratio: f64,
    pub gauss_order: usize,
    /// Equal splits of every graded panel.
    pub subdivisions: usize,
}

impl QuadratureParams {
    /// Ratio 0.5, Gauss order 8, 14 levels in 1D and 10 in 2D.
    pub fn default_for(dim: usize) -> Self {
        QuadratureParams {
            levels: if dim == 1 { 14 } else { 10 },
            ratio: 0.5,
            gauss_order: 8,
            subdivisions: 1,
        }
    }

    /// One refinement step: twice as many panels and an innermost cell `ρ`
    /// times smaller.
    pub fn refined(self) -> Self {
        QuadratureParams {
            levels: self.levels + 1,
            subdivisions: self.subdivisions * 2,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::Domain("grading ratio must lie in (0, 1)"));
        }
        if self.levels == 0 {
            return Err(Error::Domain("graded rule needs at least one level"));
        }
        if self.gauss_order == 0 || self.gauss_order > 64 {
            return Err(Error::Domain("Gauss order must lie in 1..=64"));
        }
        if self.subdivisions == 0 {
            return Err(Error::Domain("subdivisions must be positive"));
        }
        Ok(())
    }
}

/// A quadrature node with its weight (Jacobian included).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadNode {
    pub point: Point,
    /// `point - singular point`, kept exactly: near the singular point the
    /// difference of absolute coordinates loses all precision.
    pub offset: Point,
    pub weight: f64,
}

/// One graded panel. `inner`/`outer` are distances from the singular point in
/// 1D and radial fractions `λ` in 2D.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Panel {
    pub inner: f64,
    pub outer: f64,
    pub measure: f64,
    /// The innermost cell, integrated with the mapped rule.
    pub singular: bool,
}

/// Composite rule refined geometrically toward a singular point.
#[derive(Clone, Debug)]
pub struct GradedPanels {
    singular_point: Point,
    params: QuadratureParams,
    panels: Vec<Panel>,
    nodes: Vec<QuadNode>,
}

impl GradedPanels {
    pub fn singular_point(&self) -> Point {
        self.singular_point
    }

    pub fn params(&self) -> QuadratureParams {
        self.params
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    pub fn nodes(&self) -> &[QuadNode] {
        &self.nodes
    }

    /// Sum of all weights.
    pub fn measure(&self) -> f64 {
        self.integrate(|_: &QuadNode| 1.0)
    }

    /// `Σ w f(node)` in node order (compensated).
    pub fn integrate(&self, f: impl FnMut(&QuadNode) -> f64) -> f64 {
        integrate(&self.nodes, f)
    }
}

/// `(lo, hi)` distance intervals of the non-singular graded panels on a
/// segment of length `length`, and the innermost radius.
fn graded_segments(
    length: f64,
    levels: usize,
    ratio: f64,
    subdivisions: usize,
) -> (Vec<(f64, f64)>, f64) {
    let mut out = Vec::with_capacity(levels * subdivisions);
    let mut outer = length;
    for _ in 0..levels {
        let inner = outer * ratio;
        let step = (outer - inner) / subdivisions as f64;
        for j in 0..subdivisions {
            let lo = inner + step * j as f64;
            let hi = if j + 1 == subdivisions {
                outer
            } else {
                inner + step * (j + 1) as f64
            };
            out.push((lo, hi));
        }
        outer = inner;
    }
    (out, outer)
}

fn line_node(x: f64, offset: f64, weight: f64) -> QuadNode {
    QuadNode {
        point: Point::on_line(x + offset),
        offset: Point::on_line(offset),
        weight,
    }
}

/// Largest power used by [`graded_kernel_rule`] in the innermost cell.
pub const MAX_MAP_POWER: f64 = 100.0;

/// Builds the graded rule about `singular_point`, which must lie in the closed
/// domain. The innermost cell uses `r = h u^q` with `q` = [`INNER_MAP_POWER`]
/// (or `2·gauss_order` if smaller).
pub fn graded_quadrature_rule(
    domain: &Domain,
    singular_point: Point,
    params: QuadratureParams,
) -> Result<GradedPanels> {
    build_rule(domain, singular_point, params, None)
}

/// Graded rule for integrands behaving like `‖ξ - x‖^{-α}·(smooth)` near
/// `x`. The innermost cell is mapped so that the pure power is integrated
/// exactly: with `β = α - (d - 1)` the radial exponent, `r = h u^{1/(1-β)}`
/// (power capped at [`MAX_MAP_POWER`]).
pub fn graded_kernel_rule(
    domain: &Domain,
    singular_point: Point,
    params: QuadratureParams,
    alpha: f64,
) -> Result<GradedPanels> {
    if !alpha.is_finite() || alpha >= domain.dim() as f64 {
        return Err(Error::Domain(
            "kernel exponent must be finite and integrable",
        ));
    }
    let beta = alpha - (domain.dim() as f64 - 1.0);
    build_rule(
        domain,
        singular_point,
        params,
        Some((1.0 / (1.0 - beta)).min(MAX_MAP_POWER)),
    )
}

fn build_rule(
    domain: &Domain,
    singular_point: Point,
    params: QuadratureParams,
    map_power: Option<f64>,
) -> Result<GradedPanels> {
    params.validate()?;
    if !domain.contains(singular_point) {
        return Err(Error::OutsideDomain {
            x: singular_point.x,
            y: singular_point.y,
        });
    }
    let rule = UnitRule::new(params.gauss_order);
    let mut panels = Vec::new();
    let mut nodes = Vec::new();
    let tiny = 1e-14 * domain.diameter();
    match domain {
        Domain::Interval(g) => {
            let x = singular_point.x;
            for (direction, length) in [(-1.0, x - g.a()), (1.0, g.b() - x)] {
                if length <= tiny {
                    continue;
                }
                let (segments, inner) =
                    graded_segments(length, params.levels, params.ratio, params.subdivisions);
                for (lo, hi) in segments {
                    panels.push(Panel {
                        inner: lo,
                        outer: hi,
                        measure: hi - lo,
                        singular: false,
                    });
                    rule.on(lo, hi, |r, w| nodes.push(line_node(x, direction * r, w)));
                }
                panels.push(Panel {
                    inner: 0.0,
                    outer: inner,
                    measure: inner,
                    singular: true,
                });
                let push = |r, w| nodes.push(line_node(x, direction * r, w));
                match map_power {
                    Some(q) => rule.mapped_with(inner, q, push),
                    None => rule.mapped(inner, push),
                }
            }
        }
        Domain::Rectangle(g) => {
            for edge in g.edges() {
                let p = (edge.start - singular_point).dot(edge.normal);
                if p <= tiny {
                    continue;
                }
                let length = edge.length();
                let t_rule = edge_parameter_rule(&rule, singular_point, &edge, params);
                let (segments, inner) =
                    graded_segments(1.0, params.levels, params.ratio, params.subdivisions);
                let scale = length * p;
                let mut radial: Vec<(f64, f64)> = Vec::new();
                for &(lo, hi) in &segments {
                    panels.push(Panel {
                        inner: lo,
                        outer: hi,
                        measure: 0.5 * scale * (hi * hi - lo * lo),
                        singular: false,
                    });
                    rule.on(lo, hi, |l, w| radial.push((l, w)));
                }
                panels.push(Panel {
                    inner: 0.0,
                    outer: inner,
                    measure: 0.5 * scale * inner * inner,
                    singular: true,
                });
                let push = |l, w| radial.push((l, w));
                match map_power {
                    Some(q) => rule.mapped_with(inner, q, push),
                    None => rule.mapped(inner, push),
                }
                for &(t, wt) in &t_rule {
                    let ray = edge.at(t) - singular_point;
                    for &(l, wl) in &radial {
                        let offset = ray * l;
                        nodes.push(QuadNode {
                            point: singular_point + offset,
                            offset,
                            weight: wt * wl * l * scale,
                        });
                    }
                }
            }
        }
    }
    Ok(GradedPanels {
        singular_point,
        params,
        panels,
        nodes,
    })
}

/// Rule in the edge parameter `t ∈ [0, 1]` (weights sum to 1), graded toward
/// the foot of the perpendicular from `x` so that the innermost cell is at
/// most half the relative distance `p / L`.
pub(crate) fn edge_parameter_rule(
    rule: &UnitRule,
    x: Point,
    edge: &Edge,
    params: QuadratureParams,
) -> Vec<(f64, f64)> {
    let length = edge.length();
    let tangent = edge.end - edge.start;
    let foot = ((x - edge.start).dot(tangent) / (length * length)).clamp(0.0, 1.0);
    let relative_distance = ((edge.start - x).dot(edge.normal).abs() / length).max(1e-300);
    let mut out = Vec::new();
    for (direction, side) in [(-1.0, foot), (1.0, 1.0 - foot)] {
        if side <= 1e-15 {
            continue;
        }
        let target = 0.5 * relative_distance;
        let levels = if target < side {
            (libm::ceil(libm::log(target / side) / libm::log(params.ratio)) as usize).min(200)
        } else {
            0
        };
        let (segments, inner) = graded_segments(side, levels, params.ratio, params.subdivisions);
        for (lo, hi) in segments {
            rule.on(lo, hi, |r, w| out.push((foot + direction * r, w)));
        }
        let step = inner / params.subdivisions as f64;
        for j in 0..params.subdivisions {
            rule.on(step * j as f64, step * (j + 1) as f64, |r, w| {
                out.push((foot + direction * r, w))
            });
        }
    }
    out
}

/// Composite Gauss rule over the grid cells (no grading). Offsets are taken
/// from the origin.
pub fn domain_quadrature(domain: &Domain, gauss_order: usize) -> Vec<QuadNode> {
    let rule = UnitRule::new(gauss_order.max(1));
    let cells = |nodes: &[f64]| -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for w in nodes.windows(2) {
            rule.on(w[0], w[1], |x, wt| out.push((x, wt)));
        }
        out
    };
    match domain {
        Domain::Interval(g) => cells(g.nodes())
            .into_iter()
            .map(|(x, w)| QuadNode {
                point: Point::on_line(x),
                offset: Point::on_line(x),
                weight: w,
            })
            .collect(),
        Domain::Rectangle(g) => {
            let xs = cells(g.x_axis().nodes());
            let ys = cells(g.y_axis().nodes());
            let mut out = Vec::with_capacity(xs.len() * ys.len());
            for &(y, wy) in &ys {
                for &(x, wx) in &xs {
                    let point = Point::new(x, y);
                    out.push(QuadNode {
                        point,
                        offset: point,
                        weight: wx * wy,
                    });
                }
            }
            out
        }
    }
}

/// Integrates `f` with a node list, summing in node order.
pub fn integrate(nodes: &[QuadNode], mut f: impl FnMut(&QuadNode) -> f64) -> f64 {
    let mut acc = Accumulator::default();
    for n in nodes {
        acc.add(n.weight * f(n));
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_orders() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / libm::sqrt(3.0);
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_eq!(x[1], 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        for n in 1..=20 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn unit_measure_for_any_grading() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        for &(x, levels, ratio, order) in &[
            (0.5, 14, 0.5, 8),
            (0.0, 3, 0.3, 2),
            (0.93, 20, 0.7, 5),
            (1.0, 1, 0.5, 1),
        ] {
            let params = QuadratureParams {
                levels,
                ratio,
                gauss_order: order,
                subdivisions: 1,
            };
            let rule = graded_quadrature_rule(&d, Point::on_line(x), params).unwrap();
            assert!((rule.measure() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weakly_singular_interior() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let params = QuadratureParams {
            levels: 12,
            ratio: 0.5,
            gauss_order: 8,
            subdivisions: 1,
        };
        let rule = graded_quadrature_rule(&d, Point::on_line(0.5), params).unwrap();
        let value = rule.integrate(|n| libm::pow(n.offset.norm(), -0.3));
        let exact = 2.0 * libm::pow(0.5, 0.7) / 0.7;
        assert!((value - exact).abs() / exact < 1e-8, "{value} vs {exact}");
    }

    #[test]
    fn weakly_singular_endpoint() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let rule =
            graded_quadrature_rule(&d, Point::on_line(0.0), QuadratureParams::default_for(1))
                .unwrap();
        let value = rule.integrate(|n| libm::pow(n.offset.norm(), -0.3));
        assert!((value - 1.0 / 0.7).abs() * 0.7 < 1e-8);
    }

    #[test]
    fn singular_point_outside_rejected() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        assert!(matches!(
            graded_quadrature_rule(&d, Point::on_line(1.5), QuadratureParams::default_for(1)),
            Err(Error::OutsideDomain { .. })
        ));
        let r = Domain::rectangle((0.0, 1.0), (0.0, 1.0), 5, 5).unwrap();
        assert!(graded_quadrature_rule(
            &r,
            Point::new(0.5, -0.1),
            QuadratureParams::default_for(2)
        )
        .is_err());
        let bad = QuadratureParams {
            ratio: 1.0,
            ..QuadratureParams::default_for(1)
        };
        assert!(graded_quadrature_rule(&d, Point::on_line(0.5), bad).is_err());
    }

    #[test]
    fn panels_shrink_geometrically() {
        let d = Domain::interval(0.0, 1.0, 11).unwrap();
        let rule =
            graded_quadrature_rule(&d, Point::on_line(0.3), QuadratureParams::default_for(1))
                .unwrap();
        let right: Vec<&Panel> = rule.panels().iter().skip(15).collect();
        for w in right.windows(2) {
            if !w[1].singular {
                assert!((w[1].measure / w[0].measure - 0.5).abs() < 1e-12);
            }
        }
        let innermost = rule
            .panels()
            .iter()
            .filter(|p| p.singular)
            .map(|p| p.outer)
            .fold(0.0, f64::max);
        assert!(innermost <= libm::pow(0.5, 14.0) * d.diameter());
    }

    #[test]
    fn rectangle_measure_and_polar_cells() {
        let d = Domain::rectangle((0.0, 2.0), (-1.0, 0.5), 9, 9).unwrap();
        for &p in &[
            Point::new(1.0, 0.0),
            Point::new(0.05, 0.45),
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.5),
        ] {
            let rule = graded_quadrature_rule(&d, p, QuadratureParams::default_for(2)).unwrap();
            assert!(
                (rule.measure() - 3.0).abs() < 1e-12 * 3.0,
                "{p:?}: {}",
                rule.measure()
            );
            let panel_total: f64 = rule.panels().iter().map(|c| c.measure).sum();
            assert!((panel_total - 3.0).abs() < 1e-12 * 3.0);
        }
    }

    #[test]
    fn rectangle_weak_singularity() {
        // ∫_{[-1,1]^2} |ξ|^{-1} dξ = 8 asinh(1)
        let d = Domain::rectangle((-1.0, 1.0), (-1.0, 1.0), 5, 5).unwrap();
        let rule =
            graded_quadrature_rule(&d, Point::new(0.0, 0.0), QuadratureParams::default_for(2))
                .unwrap();
        let value = rule.integrate(|n| 1.0 / n.offset.norm());
        let exact = 8.0 * libm::asinh(1.0);
        assert!((value - exact).abs() / exact < 1e-10, "{value} vs {exact}");
    }

    #[test]
    fn domain_quadrature_exactness() {
        let d = Domain::rectangle((0.0, 1.0), (0.0, 2.0), 4, 3).unwrap();
        let nodes = domain_quadrature(&d, 3);
        // ∫∫ x^5 y^4 = (1/6)(32/5)
        let v = integrate(&nodes, |n| {
            libm::pow(n.point.x, 5.0) * libm::pow(n.point.y, 4.0)
        });
        assert!((v - 32.0 / 30.0).abs() < 1e-13);
    }
}
