//! Discrete fractional Laplacian `K^{s/2}` for a symmetric positive definite
//! discretization `K` of `-Δ`, and modal anomalous diffusion.

mod assemble;
mod eigen;
mod matrix;
mod power;

pub use assemble::{
    assemble_1d, assemble_2d, assemble_laplacian_1d, assemble_laplacian_2d, Assembly,
};
pub use eigen::{sym_eigendecompose, symmetric_eigen, EigenDecomposition, SYMMETRY_TOLERANCE};
pub use matrix::Matrix;
pub use power::{apply_fraclap_discrete, matrix_fractional_power, modal_diffusion_solve};

/// Largest matrix order handled by the dense routines.
pub const MAX_ORDER: usize = 2000;
