//! Integration engines.
//!
//! Every integrator returns a [`QuadResult`] carrying the value, an error
//! estimate and the number of integrand evaluations. The error estimate is
//! the sum of the embedded Gauss/Kronrod differences over the final
//! partition plus any analytic tail or head bound the integrator added.

pub(crate) mod adaptive;
mod extrapolation;
mod grid;
mod oscillatory;
pub(crate) mod piecewise;
mod pv;

use core::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;

pub use adaptive::Integrator;
pub use extrapolation::EpsilonTable;
pub use grid::LogGrid;
pub use oscillatory::{integrate_oscillatory, integrate_oscillatory_tail, Phase};
pub use piecewise::{integrate_piecewise_exact, FracSegment};
pub use pv::{integrate_pv, PrincipalValueProblem, Tail};

use crate::Result;

/// Value type an integrator can accumulate.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign
{
    fn modulus(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    #[inline]
    fn modulus(&self) -> f64 {
        self.abs()
    }
    #[inline]
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    #[inline]
    fn modulus(&self) -> f64 {
        self.norm()
    }
    #[inline]
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Outcome of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<V = Complex64> {
    pub value: V,
    /// Upper bound reported by the rule; includes any tail bound.
    pub err_estimate: f64,
    pub n_evals: usize,
}

impl<V: QuadValue> QuadResult<V> {
    pub fn zero() -> Self {
        QuadResult {
            value: V::default(),
            err_estimate: 0.0,
            n_evals: 0,
        }
    }

    /// Sum of two results; errors and evaluation counts add.
    pub fn combine(self, other: QuadResult<V>) -> Self {
        QuadResult {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            n_evals: self.n_evals + other.n_evals,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        QuadResult {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            n_evals: self.n_evals,
        }
    }
}

impl QuadResult<f64> {
    pub fn to_complex(self) -> QuadResult<Complex64> {
        QuadResult {
            value: Complex64::new(self.value, 0.0),
            err_estimate: self.err_estimate,
            n_evals: self.n_evals,
        }
    }
}

/// Adaptive Gauss–Kronrod integration of a complex integrand over `[a, b]`
/// to absolute tolerance `tol`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    Integrator::new(tol).integrate(f, a, b)
}

/// Real-valued counterpart of [`integrate_adaptive`].
pub fn integrate_adaptive_real<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult<f64>>
where
    F: Fn(f64) -> f64,
{
    Integrator::new(tol).integrate(f, a, b)
}
