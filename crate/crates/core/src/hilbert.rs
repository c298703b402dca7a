//! The odd Hilbert transform of `A₁`,
//!
//! ```text
//! B(x) = v.p.∫₀^∞ A(t) (1/(x−t) − 1/(x+t)) dt/t = v.p.∫₀^∞ A₁(t) · 2t/(x²−t²) dt,
//! ```
//!
//! the smooth combination `xB(x) + B(1/x)` and its derivative, and the
//! Mellin transform `F(s) = −π cot(πs/2) ζ(s)ζ(1−s)/(s(1−s))` of `B`.
//!
//! `A₁` is rough (its modulus of continuity is `h log(1/h)`), so adaptive
//! rules stall on it. All integrals against `A₁` therefore go through an
//! [`A1Grid`]: one set of samples on a uniform grid in `log t`, reused by
//! every kernel, with the singular points on panel edges.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::analytic::{cot_half_pi, zeta_abs2_critical, ComplexPoint, Constants};
use alloc::vec::Vec;

use crate::analytic::zeta;
use crate::autocorr::{asymptotic_constant, A1_with, AutocorrConfig, ASYMPTOTIC_REMAINDER};
use crate::quadrature::{Integrator, LogGrid, QuadResult};
use crate::{Error, Result};

/// How an [`A1Grid`] samples `A₁`.
///
/// Panels have width `step` in `log t` on a core range holding the singular
/// points and `t = 1`, where `A₁` is roughest; outside it the width doubles
/// every `tier` units up to `max_step`. The cutoff scale of `A` tapers
/// like `(cosh(u/2))^{−1/2}` away from `t = 1`, where `A₁` is small and
/// each evaluation costs more.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSettings {
    pub step: f64,
    pub max_step: f64,
    pub tier: f64,
    /// The grid reaches from `min(1, points)/span` to `max(1, points)·span`.
    pub span: f64,
    /// Cutoff scale at `t = 1`; see [`AutocorrConfig`].
    pub autocorr: AutocorrConfig,
    /// Panels folded on each side of a singular point.
    pub window: usize,
    /// Geometric refinement levels of the innermost panel; `None` reuses the
    /// stored samples there.
    pub refine: Option<usize>,
}

impl GridSettings {
    /// Around `10⁻⁶` on `B`.
    pub const DEFAULT: GridSettings = GridSettings {
        step: 0.005,
        max_step: 0.04,
        tier: 1.0,
        span: 300.0,
        autocorr: AutocorrConfig::FAST,
        window: 4,
        refine: Some(3),
    };
    /// Around `10⁻⁵`; for sweeps over many `x`.
    pub const FAST: GridSettings = GridSettings {
        step: 0.01,
        max_step: 0.04,
        tier: 1.0,
        span: 300.0,
        autocorr: AutocorrConfig::GRID,
        window: 4,
        refine: None,
    };
    /// Around `10⁻⁴`; for the Mellin check, which needs `B` at many points.
    pub const COARSE: GridSettings = GridSettings {
        step: 0.04,
        max_step: 0.04,
        tier: 1.0,
        span: 100.0,
        autocorr: AutocorrConfig::COARSE,
        window: 2,
        refine: None,
    };
}

impl Default for GridSettings {
    fn default() -> Self {
        GridSettings::DEFAULT
    }
}

/// Samples of `A₁` on a [`LogGrid`], with asymptotic tails beyond it.
///
/// Beyond the grid `A₁(t)` is replaced by `½ log(1/t) + a₁` below and by
/// `(½ log t + a₁)/t` above; the difference is bounded with
/// [`ASYMPTOTIC_REMAINDER`] and added to the error estimate.
#[derive(Debug, Clone)]
pub struct A1Grid {
    grid: LogGrid,
    settings: GridSettings,
}

impl A1Grid {
    /// Grid with `log x` on a panel edge for each of at most two points.
    ///
    /// With two points the step is shrunk so that both edges fall on the grid.
    pub fn around(points: &[f64], settings: GridSettings) -> Result<Self> {
        if points.is_empty()
            || points.len() > 2
            || points.iter().any(|&x| !(x > 0.0 && x.is_finite()))
        {
            return Err(Error::invalid(
                "a grid needs one or two finite positive points",
            ));
        }
        let anchor = points[0].ln();
        let mut step = settings.step;
        if let Some(&y) = points.get(1) {
            let gap = (y.ln() - anchor).abs();
            if gap > 0.0 {
                step = gap / (gap / step).ceil();
            }
        }
        let (lo, hi) = points.iter().fold((0.0f64, 0.0f64), |(lo, hi), &x| {
            (lo.min(x.ln()), hi.max(x.ln()))
        });
        Self::build(anchor, step, lo, hi, settings)
    }

    /// Grid anchored at `t = 1` with a core covering `[t_lo, t_hi]`.
    pub fn covering(t_lo: f64, t_hi: f64, settings: GridSettings) -> Result<Self> {
        if !(t_lo > 0.0 && t_lo < t_hi && t_hi.is_finite()) {
            return Err(Error::invalid(
                "grid range must satisfy 0 < t_lo < t_hi < ∞",
            ));
        }
        Self::build(
            0.0,
            settings.step,
            t_lo.ln().min(0.0),
            t_hi.ln().max(0.0),
            settings,
        )
    }

    fn build(
        anchor: f64,
        step: f64,
        core_lo: f64,
        core_hi: f64,
        settings: GridSettings,
    ) -> Result<Self> {
        let ok = step > 0.0
            && settings.max_step >= step
            && settings.tier > 0.0
            && settings.span > 1.0
            && settings.autocorr.cutoff_scale > 0.0;
        if !ok {
            return Err(Error::invalid(
                "grid settings need positive steps, tiers and cutoff, and a span above one",
            ));
        }
        let span = settings.span.ln();
        let edges = graded_edges(
            anchor,
            step,
            (core_lo - settings.tier, core_hi + settings.tier),
            (core_lo - span, core_hi + span),
            settings.tier,
            settings.max_step,
        );
        let c0 = settings.autocorr;
        let grid = LogGrid::from_edges(|t| sample(t, c0), edges)?;
        Ok(A1Grid { grid, settings })
    }

    pub fn grid(&self) -> &LogGrid {
        &self.grid
    }

    pub fn settings(&self) -> &GridSettings {
        &self.settings
    }

    /// `∫₀^∞ A₁(t) K(t) dt` for a kernel continuous on `(0, ∞)`.
    pub fn regular<K: Fn(f64) -> f64>(&self, kernel: K) -> Result<QuadResult<f64>> {
        let body = self.grid.integrate(0, self.grid.len(), |u: f64| {
            let t = u.exp();
            t * kernel(t)
        });
        Ok(body.combine(self.tails(&kernel)?))
    }

    /// `v.p.∫₀^∞ A₁(t) k(t)/(x₀ − t) dt` with `k` continuous and `log x₀` on
    /// a panel edge.
    pub fn singular<K: Fn(f64) -> f64>(&self, x0: f64, k: K) -> Result<QuadResult<f64>> {
        let j = self
            .grid
            .index_of(x0.ln())
            .ok_or_else(|| Error::invalid("singular point is not on the grid"))?;
        let u0 = self.grid.edges()[j];
        let x0 = u0.exp();
        // t·k(t)/(x₀ − t) = r(u)/(u₀ − u) with r = t·k(t)·d/(x₀·expm1(d)), d = u − u₀.
        let regular = |u: f64| {
            let t = u.exp();
            let d = u - u0;
            let ratio = if d == 0.0 { 1.0 } else { d / libm::expm1(d) };
            t * k(t) * ratio / x0
        };
        let c0 = self.settings.autocorr;
        let body = self.grid.principal_value(
            u0,
            self.settings.window,
            regular,
            |t| sample(t, c0),
            self.settings.refine,
        )?;
        let tails = self.tails(&|t: f64| k(t) / (x0 - t))?;
        Ok(body.combine(tails))
    }

    /// Tails beyond the grid, with the model error added to the estimate.
    fn tails<K: Fn(f64) -> f64>(&self, kernel: &K) -> Result<QuadResult<f64>> {
        let (u_lo, u_hi) = (self.grid.u_lo(), self.grid.u_hi());
        if u_lo > 0.0 || u_hi < 0.0 {
            return Err(Error::invalid("grid must contain t = 1"));
        }
        let a1 = asymptotic_constant();
        let quad = Integrator::new(1e-13).with_rel_tol(1e-10);
        let width = 45.0;
        let lower = quad.integrate(
            |u: f64| {
                let t = u.exp();
                (-0.5 * u + a1) * t * kernel(t)
            },
            u_lo - width,
            u_lo,
        )?;
        let lower_bound = quad.integrate(
            |u: f64| {
                let t = u.exp();
                ASYMPTOTIC_REMAINDER * t * t * kernel(t).abs()
            },
            u_lo - width,
            u_lo,
        )?;
        let upper = quad.integrate(
            |u: f64| (0.5 * u + a1) * kernel(u.exp()),
            u_hi,
            u_hi + width,
        )?;
        let upper_bound = quad.integrate(
            |u: f64| {
                let t = u.exp();
                ASYMPTOTIC_REMAINDER * kernel(t).abs() / t
            },
            u_hi,
            u_hi + width,
        )?;
        let mut out = lower.combine(upper);
        out.err_estimate += lower_bound.value + upper_bound.value;
        out.n_evals += lower_bound.n_evals + upper_bound.n_evals;
        Ok(out)
    }

    /// `B(x)` for `log x` on the grid.
    #[allow(non_snake_case)]
    pub fn B(&self, x: f64) -> Result<QuadResult<f64>> {
        self.singular(x, |t| 2.0 * t / (x + t))
    }

    /// `xB(x) + B(1/x) = −2x ∫₀^∞ A₁(t)/(x+t) dt`.
    pub fn smooth_sum(&self, x: f64) -> Result<QuadResult<f64>> {
        self.regular(|t| -2.0 * x / (x + t))
    }

    /// `d/dx (xB(x) + B(1/x)) = −2 ∫₀^∞ A(t)/(x+t)² dt`.
    pub fn smooth_derivative(&self, x: f64) -> Result<QuadResult<f64>> {
        self.regular(|t| -2.0 * t / ((x + t) * (x + t)))
    }

    /// `−2x · v.p.∫₀^∞ A(t) (x²+t²)/((x−t)(x+t)²) dt/t`.
    pub fn kernel_pv(&self, x: f64) -> Result<QuadResult<f64>> {
        self.singular(x, |t| -2.0 * x * (x * x + t * t) / ((x + t) * (x + t)))
    }
}

const MIN_CUTOFF: f64 = 200.0;

/// `A₁(t)` with the cutoff scale tapered away from `t = 1`.
fn sample(t: f64, c0: AutocorrConfig) -> Result<f64> {
    let taper = (2.0 / (t.sqrt() + 1.0 / t.sqrt())).sqrt();
    let cfg = AutocorrConfig {
        cutoff_scale: (c0.cutoff_scale * taper).max(MIN_CUTOFF),
        ..c0
    };
    A1_with(t, &cfg)
}

/// Edges of `anchor + kΔ` over `core`, then panels doubling in width every
/// `tier` units up to `max_step` until `outer` is covered.
fn graded_edges(
    anchor: f64,
    step: f64,
    core: (f64, f64),
    outer: (f64, f64),
    tier: f64,
    max_step: f64,
) -> Vec<f64> {
    let k_lo = ((core.0 - anchor) / step).floor() as i64;
    let k_hi = ((core.1 - anchor) / step).ceil() as i64;
    let mut right: Vec<f64> = (k_lo..=k_hi).map(|k| anchor + k as f64 * step).collect();
    let mut left = Vec::new();
    for (dir, out) in [(1.0, &mut right), (-1.0, &mut left)] {
        let mut e = if dir > 0.0 {
            anchor + k_hi as f64 * step
        } else {
            anchor + k_lo as f64 * step
        };
        let limit = if dir > 0.0 { outer.1 } else { -outer.0 };
        let mut w = step;
        while dir * e < limit {
            w = (2.0 * w).min(max_step.max(step));
            let tier_end = dir * e + tier;
            while dir * e < tier_end && dir * e < limit {
                e += dir * w;
                out.push(e);
            }
        }
    }
    left.reverse();
    left.extend(right);
    left
}

/// Which computation produced a value of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BRoute {
    /// Principal-value integral of `A₁` against the Hilbert kernel.
    DirectPv,
    /// Inversion of `F` along `σ = ½`.
    MellinInversion,
}

/// One value of `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BEval {
    pub x: f64,
    pub value: f64,
    pub route: BRoute,
    pub err_bound: f64,
}

/// `B(x)` by the direct principal-value route with default settings.
#[allow(non_snake_case)]
pub fn B_of(x: f64) -> Result<BEval> {
    B_direct(x, GridSettings::DEFAULT)
}

/// `B(x)` by the principal-value route.
#[allow(non_snake_case)]
pub fn B_direct(x: f64, settings: GridSettings) -> Result<BEval> {
    check_x(x)?;
    let r = A1Grid::around(&[x], settings)?.B(x)?;
    Ok(BEval {
        x,
        value: r.value,
        route: BRoute::DirectPv,
        err_bound: r.err_estimate,
    })
}

/// Largest truncation accepted by [`B_mellin`].
pub const MELLIN_MAX_T: f64 = 5000.0;

/// `B(x) = (1/π) Re ∫₀^∞ F(½+iτ) x^{−½−iτ} dτ`, truncated at `t_max`.
///
/// Beyond `t_max` the cotangent is `−i` to exponential accuracy and the
/// integrand is `x^{−½} |ζ|² sin(τ log x)/τ²`. The error bound adds the
/// quadrature estimate to `x^{−½} (L + 1)(min(1, 1/(|log x| T)) + T^{−½})/T`
/// with `L = log(T/2π) + 2γ` the mean of `|ζ|²`; this is an estimate
/// rather than a proof.
#[allow(non_snake_case)]
pub fn B_mellin(x: f64, t_max: f64) -> Result<BEval> {
    check_x(x)?;
    if !(t_max > 1.0 && t_max <= MELLIN_MAX_T) {
        return Err(Error::OutOfRange {
            what: "Mellin truncation",
            value: t_max,
            limit: MELLIN_MAX_T,
        });
    }
    let lx = x.ln();
    let n = (t_max / 0.5).ceil() as usize;
    let points: alloc::vec::Vec<f64> = (0..=n).map(|k| t_max * k as f64 / n as f64).collect();
    let r = Integrator::new(1e-10).integrate_with_points(
        |tau: f64| {
            let s = ComplexPoint::critical(tau);
            let phase = Complex64::from_polar(1.0, -tau * lx);
            -(cot_half_pi(s) * phase).re * zeta_abs2_critical(tau) / (0.25 + tau * tau)
        },
        &points,
    )?;
    let scale = (-0.5 * lx).exp();
    let c = Constants::frozen();
    let mean = (t_max / crate::TAU).ln() + 2.0 * c.euler_gamma;
    let tail =
        scale * (mean + 1.0) * ((1.0 / (lx.abs() * t_max)).min(1.0) + t_max.powf(-0.5)) / t_max;
    Ok(BEval {
        x,
        value: scale * r.value,
        route: BRoute::MellinInversion,
        err_bound: scale * r.err_estimate + tail,
    })
}

/// `xB(x) + B(1/x)` with its derivative in `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothSum {
    pub x: f64,
    pub value: f64,
    pub derivative: f64,
    pub err_bound: f64,
}

/// `xB(x) + B(1/x) = −2x ∫₀^∞ A(t)/(x+t) dt/t` and its derivative
/// `−2 ∫₀^∞ A(t)/(x+t)² dt`.
#[allow(non_snake_case)]
pub fn smooth_sum_xB(x: f64) -> Result<SmoothSum> {
    check_x(x)?;
    let g = A1Grid::around(&[x], GridSettings::DEFAULT)?;
    let v = g.smooth_sum(x)?;
    let d = g.smooth_derivative(x)?;
    Ok(SmoothSum {
        x,
        value: v.value,
        derivative: d.value,
        err_bound: v.err_estimate.max(d.err_estimate),
    })
}

/// Both sides of
/// `B(1/x) − x d/dx(xB(x) + B(1/x)) = −2x · v.p.∫₀^∞ A(t)(x²+t²)/((x−t)(t+x)²) dt/t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelIdentity {
    pub x: f64,
    pub lhs: f64,
    /// The principal-value side.
    pub rhs: f64,
    pub err_bound: f64,
}

/// Step factor for the second grid of a two-route comparison.
///
/// Both sides of an identity evaluated on one grid agree to rounding
/// whatever the grid resolution, so the sides are computed on grids whose
/// nodes differ.
pub const ALT_STEP_FACTOR: f64 = 0.85;

/// Evaluate both sides of the principal-value identity for `B` at `x`.
pub fn pv_kernel_identity(x: f64) -> Result<KernelIdentity> {
    pv_kernel_identity_with(x, GridSettings::DEFAULT)
}

/// [`pv_kernel_identity`] with explicit grid settings.
///
/// The principal-value side uses a grid around `x`; the `B(1/x)` side
/// uses a grid around `1/x` with the step scaled by [`ALT_STEP_FACTOR`].
pub fn pv_kernel_identity_with(x: f64, settings: GridSettings) -> Result<KernelIdentity> {
    check_x(x)?;
    let rhs = A1Grid::around(&[x], settings)?.kernel_pv(x)?;
    let alt = GridSettings {
        step: settings.step * ALT_STEP_FACTOR,
        ..settings
    };
    let g = A1Grid::around(&[1.0 / x], alt)?;
    let b_inv = g.B(1.0 / x)?;
    let d = g.smooth_derivative(x)?;
    Ok(KernelIdentity {
        x,
        lhs: b_inv.value - x * d.value,
        rhs: rhs.value,
        err_bound: b_inv.err_estimate + x * d.err_estimate + rhs.err_estimate,
    })
}

/// `F(s) = −π cot(πs/2) ζ(s)ζ(1−s)/(s(1−s))`, the Mellin transform of `B`
/// in `0 < σ < 1`.
#[allow(non_snake_case)]
pub fn F_of(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    let one = Complex64::new(1.0, 0.0);
    let w = one - z;
    if z.norm() == 0.0 || w.norm() == 0.0 {
        return Err(Error::Pole { what: "F", at: z });
    }
    let zz = zeta(s)? * zeta(ComplexPoint::from(w))?;
    Ok(-core::f64::consts::PI * cot_half_pi(s) * zz / (z * w))
}

/// `c` in `B(x) ≈ −½ log² x + (log 2π + 1 − γ) log x + c` as `x → 0`.
pub fn small_x_constant() -> f64 {
    let c = Constants::frozen();
    c.c0 - c.log_2pi - 1.0 + c.euler_gamma
}

/// Leading behaviour of `B` at zero (the polar part of `F` at `s = 0`).
pub fn b_asymptotic_small(x: f64) -> f64 {
    let c = Constants::frozen();
    let l = x.ln();
    -0.5 * l * l + (c.log_2pi + 1.0 - c.euler_gamma) * l + small_x_constant()
}

/// Leading behaviour of `B` at infinity, `−π²/(4x)` (the pole of `F` at `s = 1`).
pub fn b_asymptotic_large(x: f64) -> f64 {
    -core::f64::consts::PI * core::f64::consts::PI / (4.0 * x)
}

/// Numerical `∫₀^∞ B(t) t^{s−1} dt` minus `F(s)`, for `0 < σ < 1`.
///
/// `B` is sampled at the panel edges of one [`GridSettings::FAST`] grid
/// over `t ∈ [e^{−8}, e^{8}]` and integrated by Simpson's rule in `log t`.
/// `B` is only Hölder-smooth, so the rule converges roughly like the step;
/// at step `0.01` the discrepancy is about `10⁻⁴`.
/// Outside that range `B` is replaced by [`b_asymptotic_small`] and
/// [`b_asymptotic_large`]; the remainder at each end is measured and
/// extrapolated as `O(t^{1/2})` resp. `O(t^{−2})` into the error estimate.
#[allow(non_snake_case)]
pub fn mellin_B_check(s: ComplexPoint) -> Result<QuadResult> {
    mellin_B_check_with(s, GridSettings::FAST, 8.0)
}

/// [`mellin_B_check`] on `t ∈ [e^{−edge}, e^{edge}]` with explicit settings;
/// `B` is sampled at the edges `k·step`.
#[allow(non_snake_case)]
pub fn mellin_B_check_with(
    s: ComplexPoint,
    settings: GridSettings,
    edge: f64,
) -> Result<QuadResult> {
    if !(s.sigma > 0.0 && s.sigma < 1.0) {
        return Err(Error::Domain(
            "the Mellin transform of B needs 0 < σ < 1".into(),
        ));
    }
    let g = A1Grid::covering((-edge).exp(), edge.exp(), settings)?;
    let h = settings.step;
    let m = (edge / h).round() as i64;
    let z = s.to_complex();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut n = 0;
    let (mut b_lo, mut b_hi) = (0.0, 0.0);
    for k in -m..=m {
        let u = k as f64 * h;
        let b = g.B(u.exp())?;
        let w = if k == -m || k == m {
            1.0
        } else if (k + m) % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let weight = w * h / 3.0;
        acc += (z * u).exp() * (b.value * weight);
        err += b.err_estimate * weight * (s.sigma * u).exp();
        n += b.n_evals;
        if k == -m {
            b_lo = b.value;
        }
        if k == m {
            b_hi = b.value;
        }
    }
    let (u_lo, u_hi) = (-(m as f64) * h, m as f64 * h);
    let c = Constants::frozen();
    let b1 = c.log_2pi + 1.0 - c.euler_gamma;
    // ∫₀^ε (−½ log² t + b₁ log t + c) t^{s−1} dt
    let e_s = (z * u_lo).exp();
    let zi = z.inv();
    let j0 = e_s * zi;
    let j1 = e_s * (u_lo * zi - zi * zi);
    let j2 = e_s * (u_lo * u_lo * zi - 2.0 * u_lo * zi * zi + 2.0 * zi * zi * zi);
    let head = -0.5 * j2 + b1 * j1 + small_x_constant() * j0;
    // ∫_E^∞ −π²/(4t) · t^{s−1} dt
    let p = Complex64::new(1.0, 0.0) - z;
    let tail = -core::f64::consts::PI.powi(2) / 4.0 * (-p * u_hi).exp() / p;
    let r_lo = (b_lo - b_asymptotic_small(u_lo.exp())).abs();
    let r_hi = (b_hi - b_asymptotic_large(u_hi.exp())).abs();
    let model = r_lo * (s.sigma * u_lo).exp() / (s.sigma + 0.5)
        + r_hi * ((s.sigma - 1.0) * u_hi).exp() / (2.0 - s.sigma);
    Ok(QuadResult {
        value: head + acc + tail - F_of(s)?,
        err_estimate: err + model,
        n_evals: n,
    })
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("B needs a finite x > 0"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_pole_at_one_has_residue() {
        // F(s) ≈ (π²/4)/(s − 1) near s = 1.
        let eps = 1e-6;
        let f = F_of(ComplexPoint::new(1.0 + eps, 0.0)).unwrap();
        let pi2 = core::f64::consts::PI.powi(2);
        assert!((f.re * eps - pi2 / 4.0).abs() < 1e-4, "{}", f.re * eps);
    }

    #[test]
    fn f_is_real_on_real_axis() {
        let f = F_of(ComplexPoint::new(0.3, 0.0)).unwrap();
        assert!(f.im.abs() < 1e-14);
    }
}
