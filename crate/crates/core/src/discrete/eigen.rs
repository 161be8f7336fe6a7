//! Symmetric eigensolver: Householder tridiagonalization followed by the
//! implicit QL iteration with Wilkinson-type shifts.

use alloc::vec;
use alloc::vec::Vec;

use super::matrix::Matrix;
use super::MAX_ORDER;
use crate::{Error, Result};

/// Entrywise symmetry tolerance relative to the largest entry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-14;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order and orthonormal eigenvectors as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: Matrix,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }

    /// `V diag(f(λ_i)) Vᵀ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.len();
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            let vi = self.vectors.row(i);
            for j in i..n {
                let vj = self.vectors.row(j);
                let mut sum = 0.0;
                for k in 0..n {
                    sum += vi[k] * weights[k] * vj[k];
                }
                out[(i, j)] = sum;
                out[(j, i)] = sum;
            }
        }
        out
    }

    /// `V diag(f(λ_i)) Vᵀ p` without forming the matrix.
    pub fn apply(&self, f: impl Fn(f64) -> f64, p: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let mut modal = vec![0.0; n];
        for (i, &pi) in p.iter().enumerate() {
            for (m, &v) in modal.iter_mut().zip(self.vectors.row(i)) {
                *m += v * pi;
            }
        }
        for (m, &l) in modal.iter_mut().zip(&self.values) {
            *m *= f(l);
        }
        Ok((0..n)
            .map(|i| {
                self.vectors
                    .row(i)
                    .iter()
                    .zip(&modal)
                    .map(|(v, m)| v * m)
                    .sum()
            })
            .collect())
    }

    pub fn reconstruct(&self) -> Matrix {
        self.map(|l| l)
    }
}

/// Eigendecomposition of a symmetric positive definite matrix.
///
/// Fails with [`Error::NotSymmetric`] or [`Error::NotPositiveDefinite`]; the
/// smallest eigenvalue must exceed `1e-14` times the largest.
pub fn sym_eigendecompose(k: &Matrix) -> Result<EigenDecomposition> {
    let eig = symmetric_eigen(k)?;
    let largest = eig.values.last().map_or(0.0, |l| l.abs());
    let smallest = eig.values.first().copied().unwrap_or(1.0);
    if !(smallest > 1e-14 * largest) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: smallest,
        });
    }
    Ok(eig)
}

/// Eigendecomposition of any symmetric matrix.
pub fn symmetric_eigen(k: &Matrix) -> Result<EigenDecomposition> {
    if !k.is_square() {
        return Err(Error::DimensionMismatch {
            expected: k.rows(),
            found: k.cols(),
        });
    }
    let n = k.rows();
    if n > MAX_ORDER {
        return Err(Error::TooLarge { n, max: MAX_ORDER });
    }
    if let Some((row, col)) = k.asymmetry(SYMMETRY_TOLERANCE) {
        return Err(Error::NotSymmetric { row, col });
    }
    if k.as_slice().iter().any(|a| !a.is_finite()) {
        return Err(Error::Domain("matrix entries must be finite"));
    }
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: Matrix::zeros(0, 0),
        });
    }
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| k.row(i).to_vec()).collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    ql_implicit(&mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        // fix the sign so the largest component is positive
        let pivot = (0..n).fold(0, |best, r| {
            if v[r][src].abs() > v[best][src].abs() {
                r
            } else {
                best
            }
        });
        let sign = if v[pivot][src] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[(r, col)] = sign * v[r][src];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for x in d[..i].iter_mut() {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let g = if f > 0.0 {
                -libm::sqrt(h)
            } else {
                libm::sqrt(h)
            };
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                let f = d[j];
                v[j][i] = f;
                let mut g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let (f, g) = (d[j], e[j]);
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

fn ql_implicit(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence);
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in d[l + 2..].iter_mut() {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        let h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input() {
        let eig = sym_eigendecompose(&Matrix::diagonal(&[4.0, 1.0])).unwrap();
        assert_eq!(eig.eigenvalues(), &[1.0, 4.0]);
        assert!((eig.eigenvector(0)[1].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two() {
        let k = Matrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 2.0]]).unwrap();
        let eig = sym_eigendecompose(&k).unwrap();
        assert!((eig.eigenvalues()[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues()[1] - 3.0).abs() < 1e-14);
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let v0 = eig.eigenvector(0);
        let v1 = eig.eigenvector(1);
        assert!((v0[0].abs() - r).abs() < 1e-14 && (v0[0] - v0[1]).abs() < 1e-14);
        assert!((v1[0].abs() - r).abs() < 1e-14 && (v1[0] + v1[1]).abs() < 1e-14);
    }

    #[test]
    fn single_entry() {
        let eig = sym_eigendecompose(&Matrix::diagonal(&[3.0])).unwrap();
        assert_eq!(eig.eigenvalues(), &[3.0]);
        assert_eq!(eig.eigenvector(0), vec![1.0]);
    }

    #[test]
    fn rejects_bad_input() {
        let k = Matrix::from_rows(&[vec![2.0, -1.0], vec![-0.5, 2.0]]).unwrap();
        assert!(matches!(
            symmetric_eigen(&k),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        ));
        let k = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(
            sym_eigendecompose(&k),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(symmetric_eigen(&k).is_ok());
        assert!(symmetric_eigen(&Matrix::zeros(2, 3)).is_err());
    }
}
