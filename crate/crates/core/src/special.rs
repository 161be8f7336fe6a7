//! Gamma function, Riesz normalization constants and radial kernel calculus.
//!
//! The Riesz potential of order `σ` in `d` dimensions carries the constant
//!
//! ```text
//!                Γ((d - σ)/2)
//! c(d, σ) = ---------------------
//!            π^e · 2^σ · Γ(σ/2)
//! ```
//!
//! with `e = σ/2` ([`ConstantMode::HalfOrder`], the default) or the classical
//! `e = d/2` ([`ConstantMode::StandardRiesz`]). The two differ by the factor
//! `π^{(d-σ)/2}`.

use core::f64::consts::PI;

use crate::{Error, Result};

/// Arguments closer than this to a non-positive integer are treated as poles.
pub const POLE_TOLERANCE: f64 = 1e-8;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFICIENTS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(z: f64) -> f64 {
    let mut sum = LANCZOS_COEFFICIENTS[0];
    for (i, c) in LANCZOS_COEFFICIENTS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    sum
}

/// `ln Γ(x)` for `x > 0`.
pub fn gamma_ln(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("gamma_ln needs a positive finite argument"));
    }
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx), and sin(πx) > 0 on (0, 1/2).
        return Ok(libm::log(PI / libm::sin(PI * x)) - lanczos_ln(1.0 - x));
    }
    Ok(lanczos_ln(x))
}

fn lanczos_ln(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * libm::log(t) - t + libm::log(lanczos_sum(z))
}

/// `Γ(x)` for any real `x` that is not a pole.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain("gamma needs a finite argument"));
    }
    check_pole(x)?;
    if x < 0.5 {
        let g = gamma(1.0 - x)?;
        return Ok(PI / (libm::sin(PI * x) * g));
    }
    if x > 20.0 {
        return Ok(libm::exp(lanczos_ln(x)));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(libm::sqrt(2.0 * PI) * libm::pow(t, z + 0.5) * libm::exp(-t) * lanczos_sum(z))
}

fn check_pole(argument: f64) -> Result<()> {
    if argument < POLE_TOLERANCE && libm::fabs(argument - libm::round(argument)) < POLE_TOLERANCE {
        return Err(Error::GammaPole { argument });
    }
    Ok(())
}

/// Fractional order `s` with `0 < s < 2`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(s: f64) -> Result<Self> {
        if s > 0.0 && s < 2.0 {
            Ok(FractionalOrder(s))
        } else {
            Err(Error::InvalidOrder(s))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The complementary potential order `2 - s`.
    pub fn complement(self) -> FractionalOrder {
        FractionalOrder(2.0 - self.0)
    }
}

/// Which power of π sits in the Riesz constant's denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ConstantMode {
    /// `π^{σ/2}`.
    #[default]
    HalfOrder,
    /// `π^{d/2}`, the classical Riesz normalization.
    StandardRiesz,
}

impl ConstantMode {
    fn pi_exponent(self, d: usize, sigma: f64) -> f64 {
        match self {
            ConstantMode::HalfOrder => sigma / 2.0,
            ConstantMode::StandardRiesz => d as f64 / 2.0,
        }
    }
}

fn check_dimension(d: usize) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(Error::Domain("dimension must be 1, 2 or 3"))
    }
}

/// Riesz potential normalization `c(d, σ)`.
pub fn riesz_constant(d: usize, sigma: f64, mode: ConstantMode) -> Result<f64> {
    check_dimension(d)?;
    FractionalOrder::new(sigma)?;
    let numerator = gamma((d as f64 - sigma) / 2.0)?;
    let denominator =
        libm::pow(PI, mode.pi_exponent(d, sigma)) * libm::pow(2.0, sigma) * gamma(sigma / 2.0)?;
    Ok(numerator / denominator)
}

/// The constant `h` with `1/h = c(d, 2-s)·(d-2+s)·s`, the inverse prefactor of
/// the hypersingular kernel `‖x-ξ‖^{-(d+s)}`.
pub fn h_constant(d: usize, s: FractionalOrder, mode: ConstantMode) -> Result<f64> {
    check_dimension(d)?;
    let s = s.value();
    let sigma = 2.0 - s;
    let exponent = d as f64 - 2.0 + s;
    check_pole(exponent / 2.0)?;
    if exponent == 0.0 {
        return Err(Error::DegenerateExponent);
    }
    let numerator =
        libm::pow(PI, mode.pi_exponent(d, sigma)) * libm::pow(2.0, sigma) * gamma(sigma / 2.0)?;
    Ok(numerator / (exponent * s * gamma(exponent / 2.0)?))
}

/// Kernel `c(d, σ) ‖x-ξ‖^{-(d-σ)}` of the truncated Riesz potential.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelSpec {
    pub d: usize,
    pub sigma: f64,
    /// `d - σ`; the kernel is `‖x-ξ‖^{-exponent}`.
    pub exponent: f64,
    pub constant: f64,
}

impl KernelSpec {
    pub fn new(d: usize, sigma: f64, mode: ConstantMode) -> Result<Self> {
        let constant = riesz_constant(d, sigma, mode)?;
        Ok(KernelSpec {
            d,
            sigma,
            exponent: d as f64 - sigma,
            constant,
        })
    }

    /// Kernel value at distance `r > 0`, without the constant.
    #[inline]
    pub fn weight(&self, r: f64) -> f64 {
        libm::pow(r, -self.exponent)
    }
}

/// A radial profile `f(r)`, optionally with analytic first and second derivatives.
pub trait RadialProfile {
    fn value(&self, r: f64) -> f64;

    /// `(f'(r), f''(r))` if known in closed form.
    fn derivatives(&self, _r: f64) -> Option<(f64, f64)> {
        None
    }
}

/// `coefficient · r^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLaw {
    pub coefficient: f64,
    pub exponent: f64,
}

impl PowerLaw {
    /// The profile `r^{-(d-2+s)}` whose Laplacian is the hypersingular kernel.
    pub fn fractional_kernel(d: usize, s: FractionalOrder) -> Self {
        PowerLaw {
            coefficient: 1.0,
            exponent: -(d as f64 - 2.0 + s.value()),
        }
    }
}

impl RadialProfile for PowerLaw {
    fn value(&self, r: f64) -> f64 {
        self.coefficient * libm::pow(r, self.exponent)
    }

    fn derivatives(&self, r: f64) -> Option<(f64, f64)> {
        let p = self.exponent;
        let d1 = self.coefficient * p * libm::pow(r, p - 1.0);
        let d2 = self.coefficient * p * (p - 1.0) * libm::pow(r, p - 2.0);
        Some((d1, d2))
    }
}

/// Radial Laplacian `f''(r) + (d-1)/r · f'(r)`, analytic when the profile
/// supplies derivatives and central differences otherwise.
pub fn radial_laplacian<F: RadialProfile + ?Sized>(f: &F, r: f64, d: usize) -> Result<f64> {
    check_dimension(d)?;
    if !(r > 0.0) {
        return Err(Error::Domain("radial Laplacian needs r > 0"));
    }
    let (d1, d2) = match f.derivatives(r) {
        Some(pair) => pair,
        None => central_derivatives(f, r),
    };
    Ok(d2 + (d as f64 - 1.0) / r * d1)
}

/// [`radial_laplacian`] with derivatives always taken by central differences.
pub fn radial_laplacian_fd<F: RadialProfile + ?Sized>(f: &F, r: f64, d: usize) -> Result<f64> {
    check_dimension(d)?;
    if !(r > 0.0) {
        return Err(Error::Domain("radial Laplacian needs r > 0"));
    }
    let (d1, d2) = central_derivatives(f, r);
    Ok(d2 + (d as f64 - 1.0) / r * d1)
}

fn central_derivatives<F: RadialProfile + ?Sized>(f: &F, r: f64) -> (f64, f64) {
    // step 1e-5·max(r, 1), kept inside r > 0
    let step = (1e-5 * r.max(1.0)).min(0.5 * r);
    let plus = f.value(r + step);
    let minus = f.value(r - step);
    let mid = f.value(r);
    let d1 = (plus - minus) / (2.0 * step);
    let d2 = (plus - 2.0 * mid + minus) / (step * step);
    (d1, d2)
}
