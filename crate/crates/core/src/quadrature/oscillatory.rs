use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use super::{EpsilonTable, Integrator, QuadResult};
use crate::{Error, Result, TAU};

/// Phase `f(t) = ω t + κ log t` of an oscillatory integrand `g(t) e^{i f(t)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub omega: f64,
    pub log_coeff: f64,
}

impl Phase {
    pub fn linear(omega: f64) -> Self {
        Phase {
            omega,
            log_coeff: 0.0,
        }
    }

    pub fn with_log(omega: f64, log_coeff: f64) -> Self {
        Phase { omega, log_coeff }
    }

    pub fn value(&self, t: f64) -> f64 {
        if self.log_coeff == 0.0 {
            self.omega * t
        } else {
            self.omega * t + self.log_coeff * t.ln()
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        self.omega + self.log_coeff / t
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        -self.log_coeff / (t * t)
    }
}

const MAX_PANELS: usize = 2_000_000;

/// Panel boundaries sized to the local period of `phase`, never wider than
/// two local cycles.
fn panel_points(phase: Phase, a: f64, b: f64) -> Result<Vec<f64>> {
    const CYCLES: f64 = 2.0;
    let mut pts = vec![a];
    let mut t = a;
    let span = b - a;
    while t < b {
        let fp = phase.derivative(t).abs();
        let fpp = phase.second_derivative(t).abs();
        let mut w = if fp > 0.0 {
            CYCLES * TAU / fp
        } else {
            f64::INFINITY
        };
        if fpp > 0.0 {
            w = w.min(CYCLES * (TAU / fpp).sqrt());
        }
        w = w.min(span).max(span * 1e-12);
        if t == 0.0 && !w.is_finite() {
            w = span;
        }
        t = if t + w >= b { b } else { t + w };
        pts.push(t);
        if pts.len() > MAX_PANELS {
            return Err(Error::Resource {
                guard: "oscillatory panels",
                requested: pts.len() as f64,
                limit: MAX_PANELS as f64,
                hint: "shorten the interval or split off an analytic tail",
            });
        }
    }
    Ok(pts)
}

/// `∫_a^b g(t) e^{i f(t)} dt` with `f = phase`.
///
/// The interval is cut into panels no wider than two local oscillation
/// periods before adaptive refinement. When `a = 0` and the phase has a
/// logarithmic term, a short head `[0, ε]` is dropped and its contribution is
/// bounded by `2 |g(ε) / f'(ε)|`, valid when `|g/f'|` is monotone on the head.
/// That bound is included in `err_estimate`.
pub fn integrate_oscillatory<G>(g: G, phase: Phase, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    G: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::invalid(
            "oscillatory integration needs finite a <= b",
        ));
    }
    if a < 0.0 && phase.log_coeff != 0.0 {
        return Err(Error::invalid("a logarithmic phase needs a >= 0"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if a == b {
        return Ok(QuadResult::zero());
    }

    let mut start = a;
    let mut head_bound = 0.0;
    let mut n_evals = 0;
    if a == 0.0 && phase.log_coeff != 0.0 {
        let mut eps = b;
        if phase.omega != 0.0 {
            eps = eps.min(0.5 * phase.log_coeff.abs() / phase.omega.abs());
        }
        loop {
            let ge = g(eps);
            n_evals += 1;
            if !(ge.re.is_finite() && ge.im.is_finite()) {
                return Err(Error::Singularity { at: eps });
            }
            head_bound = 2.0 * ge.norm() / phase.derivative(eps).abs();
            if head_bound <= 1e-3 * tol || eps < 1e-300 {
                break;
            }
            eps *= 0.5;
        }
        start = eps;
    }

    let pts = panel_points(phase, start, b)?;
    let body = Integrator::new((tol - head_bound).max(0.5 * tol))
        .with_max_subdivisions(20_000 + 4 * pts.len())
        .integrate_with_points(
            |t| {
                let y = g(t);
                y * Complex64::from_polar(1.0, phase.value(t))
            },
            &pts,
        )?;
    Ok(QuadResult {
        value: body.value,
        err_estimate: body.err_estimate + head_bound,
        n_evals: body.n_evals + n_evals,
    })
}

/// `∫_a^∞ g(t) e^{iωt} dt` for `g` slowly varying and decaying.
///
/// The integral is split into half-period pieces whose partial sums are
/// accelerated with Wynn's epsilon algorithm. The reported error is the
/// last change of the extrapolant plus the per-piece quadrature errors.
pub fn integrate_oscillatory_tail<G>(g: G, omega: f64, a: f64, tol: f64) -> Result<QuadResult>
where
    G: Fn(f64) -> Complex64,
{
    const MAX_PIECES: usize = 400;
    if !(omega != 0.0 && omega.is_finite()) || !a.is_finite() {
        return Err(Error::invalid(
            "tail integration needs finite a and non-zero ω",
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let half = core::f64::consts::PI / omega.abs();
    let integrand = |t: f64| g(t) * Complex64::from_polar(1.0, omega * t);
    let piece_rule = Integrator::new(1e-3 * tol).with_rel_tol(1e-13);

    let mut table = EpsilonTable::new();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut n_evals = 0;
    let mut small_changes = 0;
    for k in 0..MAX_PIECES {
        let lo = a + k as f64 * half;
        let piece = piece_rule.integrate(integrand, lo, lo + half)?;
        sum += piece.value;
        quad_err += piece.err_estimate;
        n_evals += piece.n_evals;

        // Once the integrand is small the plain truncation bound suffices.
        let hi = lo + half;
        let gb = g(hi).norm();
        n_evals += 1;
        let trunc = 2.0 * gb / omega.abs();
        if trunc < 0.25 * tol {
            return Ok(QuadResult {
                value: sum,
                err_estimate: quad_err + trunc,
                n_evals,
            });
        }

        let (estimate, change) = table.push(sum);
        if k >= 6 && change < 0.25 * tol {
            small_changes += 1;
            if small_changes >= 2 {
                return Ok(QuadResult {
                    value: estimate,
                    err_estimate: quad_err + change,
                    n_evals,
                });
            }
        } else {
            small_changes = 0;
        }
    }
    Err(Error::NonConvergence {
        value: sum,
        err_estimate: f64::INFINITY,
        n_evals,
        subdivisions: MAX_PIECES,
    })
}
