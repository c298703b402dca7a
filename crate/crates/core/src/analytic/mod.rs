//! Special functions and constants: `Γ`, `ζ`, the kernels `G` and `H`,
//! and the constants `γ`, `γ₁`, `log 2π`, `c₀`, `κ`.

mod bernoulli;
mod constants;
mod gamma;
mod zeta;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub use constants::{euler_gamma_limit, stieltjes_gamma1, stieltjes_gamma1_at, Constants};
pub use gamma::{gamma_fn, gamma_rotated, ln_gamma};
pub use zeta::{fe_check, hardy_z, zeta};

use crate::quadrature::Integrator;
use crate::{Error, Result};

/// A point `s = σ + iτ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub tau: f64,
}

impl ComplexPoint {
    pub const fn new(sigma: f64, tau: f64) -> Self {
        ComplexPoint { sigma, tau }
    }

    /// `1/2 + iτ`.
    pub const fn critical(tau: f64) -> Self {
        ComplexPoint { sigma: 0.5, tau }
    }

    pub fn is_finite(&self) -> bool {
        self.sigma.is_finite() && self.tau.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.tau)
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint {
            sigma: z.re,
            tau: z.im,
        }
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(s: ComplexPoint) -> Self {
        s.to_complex()
    }
}

/// `tan(πs/2)` through the addition formula
/// `tan(a + ib) = (tan a + i tanh b)/(1 − i tan a · tanh b)`,
/// which stays bounded for large `|τ|`.
pub fn tan_half_pi(s: ComplexPoint) -> Complex64 {
    let ta = libm::tan(core::f64::consts::FRAC_PI_2 * s.sigma);
    let th = libm::tanh(core::f64::consts::FRAC_PI_2 * s.tau);
    Complex64::new(ta, th) / Complex64::new(1.0, -ta * th)
}

/// `cot(πs/2)`, the reciprocal of [`tan_half_pi`].
pub fn cot_half_pi(s: ComplexPoint) -> Complex64 {
    let ta = libm::tan(core::f64::consts::FRAC_PI_2 * s.sigma);
    let th = libm::tanh(core::f64::consts::FRAC_PI_2 * s.tau);
    Complex64::new(1.0, -ta * th) / Complex64::new(ta, th)
}

/// `G(s) = 1 + i tan(πs/2)`.
#[allow(non_snake_case)]
pub fn G_of(s: ComplexPoint) -> Complex64 {
    Complex64::new(1.0, 0.0) + Complex64::i() * tan_half_pi(s)
}

/// `H(s) = 1/(s(1−s)) + i(cot(πs/2)/(1−s) − tan(πs/2)/s)`.
#[allow(non_snake_case)]
pub fn H_of(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    if z.norm() == 0.0 || (z - 1.0).norm() == 0.0 {
        return Err(Error::Pole { what: "H", at: z });
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    Ok((z * one_minus).inv() + Complex64::i() * (cot_half_pi(s) / one_minus - tan_half_pi(s) / z))
}

/// `|ζ(1/2 + iτ)|²`.
pub fn zeta_abs2_critical(tau: f64) -> f64 {
    zeta::zeta_unchecked(Complex64::new(0.5, tau)).norm_sqr()
}

/// Largest `T` accepted by [`mean_square_I2`].
pub const MEAN_SQUARE_MAX_T: f64 = 5000.0;

/// `I₂(T) = ∫₀^T |ζ(1/2 + iτ)|² dτ` with relative accuracy about `10⁻⁹`.
#[allow(non_snake_case)]
pub fn mean_square_I2(t_max: f64) -> Result<crate::quadrature::QuadResult<f64>> {
    if !(t_max > 0.0) {
        return Err(Error::invalid("T must be positive"));
    }
    if t_max > MEAN_SQUARE_MAX_T {
        return Err(Error::OutOfRange {
            what: "T",
            value: t_max,
            limit: MEAN_SQUARE_MAX_T,
        });
    }
    // Panels no wider than the gaps between consecutive zeros.
    let n = (t_max / 0.5).ceil() as usize;
    let points: alloc::vec::Vec<f64> = (0..=n).map(|k| t_max * k as f64 / n as f64).collect();
    Integrator::new(1e-12 * t_max)
        .with_rel_tol(1e-10)
        .integrate_with_points(zeta_abs2_critical, &points)
}

/// `E(T) = I₂(T) − T log T + (log 2π + 1 − 2γ) T`.
#[allow(non_snake_case)]
pub fn E_of(t_max: f64) -> Result<f64> {
    let c = Constants::frozen();
    let i2 = mean_square_I2(t_max)?.value;
    Ok(i2 - t_max * t_max.ln() + (c.log_2pi + 1.0 - 2.0 * c.euler_gamma) * t_max)
}
