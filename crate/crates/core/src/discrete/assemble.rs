use alloc::vec::Vec;

use super::matrix::Matrix;
use crate::{Error, Result};

/// How `-Δ` is discretized. Both use homogeneous Dirichlet conditions and
/// coincide on uniform grids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Assembly {
    /// Three- or five-point difference stencil.
    #[default]
    FiniteDifference,
    /// Linear finite elements (right triangles in 2D), scaled by the lumped
    /// mass as `M^{-1/2} A M^{-1/2}`.
    LumpedFem,
}

/// Tridiagonal `(-1, 2, -1)/h²`, `h = L/(n + 1)`.
pub fn assemble_laplacian_1d(n_interior: usize, length: f64) -> Result<Matrix> {
    assemble_1d(n_interior, length, Assembly::FiniteDifference)
}

/// Five-point stencil on `nx × ny` interior nodes of `[0,Lx]×[0,Ly]`,
/// lexicographic with x fastest.
pub fn assemble_laplacian_2d(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Matrix> {
    assemble_2d(nx, ny, lx, ly, Assembly::FiniteDifference)
}

pub fn assemble_1d(n_interior: usize, length: f64, assembly: Assembly) -> Result<Matrix> {
    check_size(n_interior, length)?;
    let h = length / (n_interior + 1) as f64;
    let mut k = Matrix::zeros(n_interior, n_interior);
    match assembly {
        Assembly::FiniteDifference => {
            let w = 1.0 / (h * h);
            for i in 0..n_interior {
                k[(i, i)] = 2.0 * w;
                if i + 1 < n_interior {
                    k[(i, i + 1)] = -w;
                    k[(i + 1, i)] = -w;
                }
            }
        }
        Assembly::LumpedFem => {
            // elements e = 0..=n between nodes e-1 and e; node -1 and n are boundary
            let mut mass = alloc::vec![0.0; n_interior];
            for e in 0..=n_interior {
                let ends = [e.checked_sub(1), (e < n_interior).then_some(e)];
                let local = [[1.0 / h, -1.0 / h], [-1.0 / h, 1.0 / h]];
                for (a, ia) in ends.iter().enumerate() {
                    let Some(i) = *ia else { continue };
                    mass[i] += 0.5 * h;
                    for (b, ib) in ends.iter().enumerate() {
                        if let Some(j) = *ib {
                            k[(i, j)] += local[a][b];
                        }
                    }
                }
            }
            scale_by_mass(&mut k, &mass);
        }
    }
    Ok(k)
}

pub fn assemble_2d(nx: usize, ny: usize, lx: f64, ly: f64, assembly: Assembly) -> Result<Matrix> {
    check_size(nx, lx)?;
    check_size(ny, ly)?;
    let (hx, hy) = (lx / (nx + 1) as f64, ly / (ny + 1) as f64);
    let n = nx * ny;
    if n > super::MAX_ORDER {
        return Err(Error::TooLarge {
            n,
            max: super::MAX_ORDER,
        });
    }
    let index = |i: usize, j: usize| j * nx + i;
    let mut k = Matrix::zeros(n, n);
    match assembly {
        Assembly::FiniteDifference => {
            let (wx, wy) = (1.0 / (hx * hx), 1.0 / (hy * hy));
            for j in 0..ny {
                for i in 0..nx {
                    let p = index(i, j);
                    k[(p, p)] = 2.0 * (wx + wy);
                    if i + 1 < nx {
                        k[(p, index(i + 1, j))] = -wx;
                        k[(index(i + 1, j), p)] = -wx;
                    }
                    if j + 1 < ny {
                        k[(p, index(i, j + 1))] = -wy;
                        k[(index(i, j + 1), p)] = -wy;
                    }
                }
            }
        }
        Assembly::LumpedFem => {
            // full grid node (I, J), I in 0..=nx+1; interior when 1..=nx
            let dof = |i: usize, j: usize| {
                ((1..=nx).contains(&i) && (1..=ny).contains(&j)).then(|| index(i - 1, j - 1))
            };
            let mut mass = alloc::vec![0.0; n];
            let area = 0.5 * hx * hy;
            for cj in 0..=ny {
                for ci in 0..=nx {
                    let lower = [(ci, cj), (ci + 1, cj), (ci + 1, cj + 1)];
                    let upper = [(ci, cj), (ci + 1, cj + 1), (ci, cj + 1)];
                    for tri in [lower, upper] {
                        let pts: Vec<(f64, f64)> = tri
                            .iter()
                            .map(|&(i, j)| (i as f64 * hx, j as f64 * hy))
                            .collect();
                        let local = p1_stiffness(&pts, area);
                        for a in 0..3 {
                            let Some(p) = dof(tri[a].0, tri[a].1) else {
                                continue;
                            };
                            mass[p] += area / 3.0;
                            for b in 0..3 {
                                if let Some(q) = dof(tri[b].0, tri[b].1) {
                                    k[(p, q)] += local[a][b];
                                }
                            }
                        }
                    }
                }
            }
            scale_by_mass(&mut k, &mass);
        }
    }
    Ok(k)
}

fn p1_stiffness(p: &[(f64, f64)], area: f64) -> [[f64; 3]; 3] {
    // gradient of the hat function at vertex a is perp(p_{a+2} - p_{a+1}) / 2A
    let grad = |a: usize| {
        let (b, c) = (p[(a + 1) % 3], p[(a + 2) % 3]);
        ((b.1 - c.1) / (2.0 * area), (c.0 - b.0) / (2.0 * area))
    };
    let g = [grad(0), grad(1), grad(2)];
    let mut out = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            out[a][b] = area * (g[a].0 * g[b].0 + g[a].1 * g[b].1);
        }
    }
    out
}

fn scale_by_mass(k: &mut Matrix, mass: &[f64]) {
    let inv: Vec<f64> = mass.iter().map(|m| 1.0 / libm::sqrt(*m)).collect();
    for i in 0..k.rows() {
        for j in 0..k.cols() {
            k[(i, j)] *= inv[i] * inv[j];
        }
    }
}

fn check_size(n: usize, length: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidGrid(
            "need at least 2 interior nodes per direction",
        ));
    }
    if n > super::MAX_ORDER {
        return Err(Error::TooLarge {
            n,
            max: super::MAX_ORDER,
        });
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidGrid("length must be positive"));
    }
    Ok(())
}
