//! Numerical toolkit for Wilton's approximate functional equation of the
//! divisor trigonometric sum
//!
//! ```text
//! ψ(x, v) = Σ_{n ≤ v} τ(n)/n · e^{2πinx}
//! ```
//!
//! The crate computes every explicit object appearing in the relation
//! between `ψ(x, v)` and `ψ(1/x, x²v)`: the autocorrelation `A` of the
//! fractional part, its odd Hilbert transform `B`, the incomplete gamma
//! functions `λ` and `Λ`, the oscillatory integral `I(x, v)` and the
//! correction function `𝔉(x)`. The modules map onto those layers:
//!
//! - [`sieve`]: divisor counts, the Dirichlet remainder `Δ` and partial sums of `ψ`.
//! - [`analytic`]: `Γ`, `ζ`, the kernels `G`/`H` and the constants `γ`, `γ₁`, `c₀`.
//! - [`quadrature`]: adaptive, oscillatory, principal-value and piecewise-exact integration.
//! - [`autocorr`]: `A(x) = ∫₀^∞ {t}{xt} dt/t²` and `A₁(t) = A(t)/t`.
//! - [`hilbert`]: the function `B` and its identities.
//! - [`wilton`]: `λ`, `Λ`, `𝔉`, `I(x, v)`, the critical-line representation and residuals.
//! - [`fit`]: least-squares decay fits used on residual sweeps.
//!
//! The crate is `no_std` (it needs `alloc`); file formats, threading and the
//! command line live in the companion `wilton-cli` crate.

#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod analytic;
pub mod autocorr;
mod error;
pub mod fit;
pub mod hilbert;
pub mod quadrature;
pub mod sieve;
pub mod wilton;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `2π`
pub const TAU: f64 = core::f64::consts::TAU;
