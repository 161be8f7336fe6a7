use alloc::vec::Vec;

use super::eigen::EigenDecomposition;
use super::matrix::Matrix;
use crate::{Error, Result};

/// `K^α = V diag(λ_i^α) Vᵀ` for `α ≥ 0`.
pub fn matrix_fractional_power(eig: &EigenDecomposition, alpha: f64) -> Result<Matrix> {
    check_exponent(alpha)?;
    Ok(eig.map(|l| power(l, alpha)))
}

/// `K^{s/2} p`, for `0 < s ≤ 2`.
pub fn apply_fraclap_discrete(eig: &EigenDecomposition, s: f64, p: &[f64]) -> Result<Vec<f64>> {
    check_order(s)?;
    eig.apply(|l| power(l, 0.5 * s), p)
}

/// Modal solution of `u' = -K^{s/2} u`, `u(0) = u0`, at each time:
/// `u(t) = Σ_k exp(-λ_k^{s/2} t) (v_kᵀ u0) v_k`.
pub fn modal_diffusion_solve(
    eig: &EigenDecomposition,
    s: f64,
    u0: &[f64],
    times: &[f64],
) -> Result<Vec<Vec<f64>>> {
    check_order(s)?;
    let mut previous = 0.0;
    for &t in times {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::NegativeTime(t));
        }
        if t < previous {
            return Err(Error::Domain("times must be ascending"));
        }
        previous = t;
    }
    times
        .iter()
        .map(|&t| {
            eig.apply(
                |l| {
                    if t == 0.0 {
                        1.0
                    } else {
                        libm::exp(-power(l, 0.5 * s) * t)
                    }
                },
                u0,
            )
        })
        .collect()
}

fn power(l: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else if alpha == 1.0 {
        l
    } else {
        libm::pow(l, alpha)
    }
}

fn check_exponent(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::NegativeExponent(alpha));
    }
    Ok(())
}

/// Orders for the discrete operator include `s = 2`, the plain Laplacian.
fn check_order(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 2.0) {
        return Err(Error::InvalidOrder(s));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{assemble_laplacian_1d, sym_eigendecompose};

    #[test]
    fn diagonal_square_root() {
        let eig = sym_eigendecompose(&Matrix::diagonal(&[1.0, 4.0])).unwrap();
        let half = matrix_fractional_power(&eig, 0.5).unwrap();
        assert!(half.sub(&Matrix::diagonal(&[1.0, 2.0])).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn unit_and_zero_exponents() {
        let k = assemble_laplacian_1d(6, 1.0).unwrap();
        let eig = sym_eigendecompose(&k).unwrap();
        let one = matrix_fractional_power(&eig, 1.0).unwrap();
        assert!(one.sub(&k).unwrap().frobenius_norm() <= 1e-10 * k.frobenius_norm());
        let zero = matrix_fractional_power(&eig, 0.0).unwrap();
        assert!(zero.sub(&Matrix::identity(6)).unwrap().frobenius_norm() <= 1e-10);
        assert!(matches!(
            matrix_fractional_power(&eig, -0.1),
            Err(Error::NegativeExponent(_))
        ));
    }

    #[test]
    fn apply_agrees_with_power() {
        let k = assemble_laplacian_1d(8, 2.0).unwrap();
        let eig = sym_eigendecompose(&k).unwrap();
        let p: Vec<f64> = (0..8).map(|i| libm::sin(i as f64 + 0.3)).collect();
        let direct = apply_fraclap_discrete(&eig, 1.2, &p).unwrap();
        let via = matrix_fractional_power(&eig, 0.6)
            .unwrap()
            .matvec(&p)
            .unwrap();
        for (a, b) in direct.iter().zip(&via) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        assert!(apply_fraclap_discrete(&eig, 1.0, &p[..3]).is_err());
        assert!(apply_fraclap_discrete(&eig, 2.5, &p).is_err());
    }

    #[test]
    fn diffusion_times() {
        let eig = sym_eigendecompose(&assemble_laplacian_1d(5, 1.0).unwrap()).unwrap();
        let u0 = [1.0, 0.0, 2.0, 0.0, -1.0];
        let out = modal_diffusion_solve(&eig, 1.0, &u0, &[0.0]).unwrap();
        for (a, b) in out[0].iter().zip(&u0) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(matches!(
            modal_diffusion_solve(&eig, 1.0, &u0, &[-0.1]),
            Err(Error::NegativeTime(_))
        ));
        assert!(modal_diffusion_solve(&eig, 1.0, &u0, &[0.2, 0.1]).is_err());
    }
}
