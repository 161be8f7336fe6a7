//! Fractional Laplacian operators on bounded domains.
//!
//! The crate evaluates and cross-checks several formulations of the
//! fractional Laplacian `(-Δ)^{s/2}`, `0 < s < 2`, on an interval or a
//! rectangle:
//!
//! * the truncated Riesz potential ([`riesz`]),
//! * the standard (Riesz derivative) form, either as the Laplacian of a
//!   potential or as a Hadamard finite-part integral ([`fraclap`]),
//! * the form that applies the potential to `Δφ`, together with its
//!   Green-identity rewrite as a volume term plus boundary data,
//! * the discrete form `K^{s/2}` built from a symmetric eigendecomposition
//!   of a Laplacian matrix ([`discrete`]).
//!
//! Everything here is pure computation on `f64` with `alloc` only; file
//! formats, the CLI and threading live in the `fraclap` companion crate.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod discrete;
pub mod domain;
mod error;
pub mod fraclap;
mod geometry;
pub mod greens;
pub mod riesz;
pub mod special;
mod sum;

pub use error::{Error, Result};
pub use geometry::Point;
