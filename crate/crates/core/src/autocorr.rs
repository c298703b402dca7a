//! The autocorrelation `A(x) = ∫₀^∞ {t}{xt} dt/t²` of the fractional part.
//!
//! On every interval free of the breakpoints `k` and `k/x` the integrand is
//! a rational function, so `∫₀^T` is a finite sum of closed forms. The tail
//! beyond `T` is split with `{u} = ½ + B(u)`, `B(u) = {u} − ½`, into
//!
//! ```text
//! {t}{xt} = ¼ + ½B(t) + ½B(xt) + B(t)B(xt)
//! ```
//!
//! The first three pieces have exact tails (the `B` ones via the digamma
//! function); the cross term decays like `1/T` on average and is removed by
//! Richardson extrapolation between `T` and `T/2`. The cutoff is
//! `T = C/√x`, which makes the scheme equivariant under `x ↦ 1/x` so that
//! `A(x) = x A(1/x)` holds to rounding.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::analytic::{zeta, ComplexPoint, Constants};
use crate::quadrature::piecewise::frac_segment_integral;
use crate::quadrature::{LogGrid, QuadResult};
use crate::{Error, Result};

/// Tunables for [`A_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutocorrConfig {
    /// `C` in the cutoff `T = C/√x`.
    pub cutoff_scale: f64,
    /// Guard on the number of breakpoints `T + xT`.
    pub max_breakpoints: f64,
}

impl AutocorrConfig {
    /// About `2·10⁻⁹` absolute accuracy.
    pub const ACCURATE: AutocorrConfig = AutocorrConfig {
        cutoff_scale: 8000.0,
        max_breakpoints: 2e7,
    };
    /// About `2·10⁻⁸`; used inside integrals where `A` is sampled many times.
    pub const FAST: AutocorrConfig = AutocorrConfig {
        cutoff_scale: 2000.0,
        max_breakpoints: 2e7,
    };
    /// About `3·10⁻⁷`; the default for sampling `A₁` on integration grids.
    pub const GRID: AutocorrConfig = AutocorrConfig {
        cutoff_scale: 1000.0,
        max_breakpoints: 2e7,
    };
    /// About `10⁻⁵`; for loose Mellin checks over wide ranges.
    pub const COARSE: AutocorrConfig = AutocorrConfig {
        cutoff_scale: 300.0,
        max_breakpoints: 2e7,
    };
}

impl Default for AutocorrConfig {
    fn default() -> Self {
        AutocorrConfig::ACCURATE
    }
}

/// One evaluation of `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutocorrEval {
    pub x: f64,
    pub value: f64,
    pub tail_cutoff: f64,
    /// Difference between the extrapolants at `T` and `T/2`.
    pub err_bound: f64,
}

/// `a₁ = ½(log 2π + 1 − γ)` in `A(x) = ½ log x + a₁ + O(1/x)`.
pub fn asymptotic_constant() -> f64 {
    let c = Constants::frozen();
    0.5 * (c.log_2pi + 1.0 - c.euler_gamma)
}

/// `A(x)` with the default (accurate) settings.
#[allow(non_snake_case)]
pub fn A_of(x: f64) -> Result<AutocorrEval> {
    A_with(x, &AutocorrConfig::ACCURATE)
}

/// `A(x)` with explicit settings.
#[allow(non_snake_case)]
pub fn A_with(x: f64, config: &AutocorrConfig) -> Result<AutocorrEval> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("A(x) needs a finite x > 0"));
    }
    let t = config.cutoff_scale / x.sqrt();
    let breakpoints = t * (1.0 + x);
    if breakpoints > config.max_breakpoints {
        return Err(Error::Resource {
            guard: "autocorrelation breakpoints",
            requested: breakpoints,
            limit: config.max_breakpoints,
            hint: "reduce the cutoff scale or use A(x) = x·A(1/x) with a coarser setting",
        });
    }
    let cuts = [0.25 * t, 0.5 * t, t];
    let sums = partial_sums(x, cuts);
    let base = |k: usize| {
        let c = cuts[k];
        sums[k] + 0.25 / c + 0.5 * b_tail(c) + 0.5 * x * b_tail(x * c)
    };
    let (b4, b2, b1) = (base(0), base(1), base(2));
    let fine = 2.0 * b1 - b2;
    let coarse = 2.0 * b2 - b4;
    let value = fine;
    let err_bound = (fine - coarse).abs() + 1e-15 * breakpoints.sqrt() * value.abs();
    Ok(AutocorrEval {
        x,
        value,
        tail_cutoff: t,
        err_bound,
    })
}

/// `A₁(t) = A(t)/t = A(1/t)`.
#[allow(non_snake_case)]
pub fn A1_of(t: f64) -> Result<f64> {
    Ok(A_of(t)?.value / t)
}

/// `A₁` with explicit settings.
#[allow(non_snake_case)]
pub fn A1_with(t: f64, config: &AutocorrConfig) -> Result<f64> {
    Ok(A_with(t, config)?.value / t)
}

/// Exact `∫₀^{c} {t}{xt} dt/t²` at the three increasing cutoffs.
fn partial_sums(x: f64, cuts: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    let mut acc = Neumaier::default();
    let mut a = 0.0;
    let mut m = 0u64;
    let mut n = 0u64;
    let mut next_int: f64 = 1.0;
    let mut next_frac = 1.0 / x;
    let mut ci = 0;
    loop {
        let next = next_int.min(next_frac);
        while ci < 3 && cuts[ci] <= next {
            acc.add(frac_segment_integral(a, cuts[ci], m as f64, n as f64, x));
            a = cuts[ci];
            out[ci] = acc.value();
            ci += 1;
        }
        if ci == 3 {
            return out;
        }
        acc.add(frac_segment_integral(a, next, m as f64, n as f64, x));
        a = next;
        if next_int <= next {
            m += 1;
            next_int = (m + 1) as f64;
        }
        if next_frac <= next {
            n += 1;
            next_frac = (n + 1) as f64 / x;
        }
    }
}

/// `∫_T^∞ ({t} − ½)/t² dt` for `T > 0`.
pub(crate) fn b_tail(t: f64) -> f64 {
    let n = t.ceil().max(1.0);
    let mut part = 0.0;
    if n > t {
        let m = n - 1.0;
        part = (n / t).ln() - (m + 0.5) * (1.0 / t - 1.0 / n);
    }
    part + integer_b_tail(n)
}

/// `∫_N^∞ ({t} − ½)/t² dt = ψ(N) − log N + 1/(2N)` for integer `N ≥ 1`.
fn integer_b_tail(n: f64) -> f64 {
    // −Σ B_{2k}/(2k N^{2k})
    let series = |z: f64| {
        let z2 = 1.0 / (z * z);
        -z2 * (1.0 / 12.0
            - z2 * (1.0 / 120.0 - z2 * (1.0 / 252.0 - z2 * (1.0 / 240.0 - z2 / 132.0))))
    };
    if n >= 10.0 {
        return series(n);
    }
    // ψ(N) = ψ(M) − Σ_{i<M−N} 1/(N+i) with M ≥ 10.
    let mut z = n;
    let mut harmonic = 0.0;
    while z < 10.0 {
        harmonic += 1.0 / z;
        z += 1.0;
    }
    let psi_m = z.ln() - 0.5 / z + series(z);
    psi_m - harmonic - n.ln() + 0.5 / n
}

#[derive(Default)]
struct Neumaier {
    s: f64,
    c: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }
    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Empirical constant `c_A` with `|A(x) − ½ log x − a₁| ≤ c_A/x` for `x ≥ 1`.
///
/// Used to bound tails where `A` is replaced by its asymptotic form.
pub const ASYMPTOTIC_REMAINDER: f64 = 0.25;

/// `½ log x + a₁`, the large-`x` model of `A`.
pub fn asymptotic(x: f64) -> f64 {
    0.5 * x.ln() + asymptotic_constant()
}

/// Numerical `∫₀^∞ A₁(t) t^{s−1} dt` minus `ζ(s)ζ(1−s)/(s(1−s))` for `0 < σ < 1`.
#[allow(non_snake_case)]
pub fn mellin_A1_check(s: ComplexPoint) -> Result<Complex64> {
    Ok(mellin_A1(s)?.value - mellin_A1_exact(s)?)
}

/// `ζ(s)ζ(1−s)/(s(1−s))`.
#[allow(non_snake_case)]
pub fn mellin_A1_exact(s: ComplexPoint) -> Result<Complex64> {
    if !(s.sigma > 0.0 && s.sigma < 1.0) {
        return Err(Error::Domain(
            "the Mellin transform of A₁ needs 0 < σ < 1".into(),
        ));
    }
    let z = s.to_complex();
    let one = Complex64::new(1.0, 0.0);
    Ok(zeta(s)? * zeta(ComplexPoint::from(one - z))? / (z * (one - z)))
}

/// Numerical Mellin transform of `A₁`.
///
/// The body is a composite rule in `u = log t` on a [`LogGrid`]; beyond it
/// `A₁` is replaced by its asymptotic forms `½ log(1/t) + a₁` near zero and
/// `(½ log t + a₁)/t` near infinity, and the ends are placed so that the
/// [`ASYMPTOTIC_REMAINDER`] bound on each is below `2·10⁻⁵`.
#[allow(non_snake_case)]
pub fn mellin_A1(s: ComplexPoint) -> Result<QuadResult> {
    if !(s.sigma > 0.0 && s.sigma < 1.0) {
        return Err(Error::Domain(
            "the Mellin transform of A₁ needs 0 < σ < 1".into(),
        ));
    }
    let z = s.to_complex();
    let sigma = s.sigma;
    let a1 = asymptotic_constant();
    let target = 2e-5;
    let u_lo = -(ASYMPTOTIC_REMAINDER / (target * (1.0 + sigma))).ln() / (1.0 + sigma);
    let u_hi = (ASYMPTOTIC_REMAINDER / (target * (2.0 - sigma))).ln() / (2.0 - sigma);
    let grid = LogGrid::build(|t| A1_with(t, &AutocorrConfig::GRID), 0.0, 0.02, u_lo, u_hi)?;
    let (u_lo, u_hi) = (grid.u_lo(), grid.u_hi());

    // ∫₀^ε (−½ log t + a₁) t^{s−1} dt
    let head = (z * u_lo).exp() * (-0.5 * (u_lo / z - (z * z).inv()) + a1 / z);
    let head_bound = ASYMPTOTIC_REMAINDER * (u_lo * (sigma + 1.0)).exp() / (sigma + 1.0);
    // ∫_E^∞ (½ log t + a₁) t^{p−1} dt with p = s − 1
    let p = z - 1.0;
    let tp = (p * u_hi).exp();
    let tail = 0.5 * (-tp * u_hi / p + tp / (p * p)) - a1 * tp / p;
    let tail_bound = ASYMPTOTIC_REMAINDER * (u_hi * (sigma - 2.0)).exp() / (2.0 - sigma);

    let body = grid.integrate(0, grid.len(), |u: f64| (z * u).exp());
    Ok(QuadResult {
        value: head + body.value + tail,
        err_estimate: head_bound + tail_bound + body.err_estimate,
        n_evals: body.n_evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_tail_matches_direct_sum() {
        // ∫_T^∞ B(t)/t² dt summed cell by cell far out, plus the asymptotic rest.
        for t0 in [0.3f64, 1.0, 3.3, 17.9] {
            let mut total = 0.0;
            let n0 = t0.ceil();
            if n0 > t0 {
                total += (n0 / t0).ln() - (n0 - 0.5) * (1.0 / t0 - 1.0 / n0);
            }
            let mut k = n0;
            while k < 2e6 {
                total += (1.0 + 1.0 / k).ln() - (k + 0.5) / (k * (k + 1.0));
                k += 1.0;
            }
            total += -1.0 / (12.0 * k * k);
            assert!(
                (b_tail(t0) - total).abs() < 1e-12,
                "T={t0}: {} vs {}",
                b_tail(t0),
                total
            );
        }
    }

    #[test]
    fn value_at_one() {
        let c = Constants::frozen();
        let a = A_of(1.0).unwrap();
        assert!((a.value - (c.log_2pi - c.euler_gamma)).abs() < 1e-9);
        assert!(a.err_bound < 1e-8);
    }

    #[test]
    fn remainder_constant_holds_on_a_sample() {
        for k in 0..120 {
            let x = 10f64.powf(k as f64 / 20.0 + 0.013);
            let a = A_with(x, &AutocorrConfig::FAST).unwrap().value;
            assert!(
                x * (a - asymptotic(x)).abs() <= ASYMPTOTIC_REMAINDER,
                "x={x}"
            );
        }
    }

    #[test]
    fn mellin_transform_of_a1() {
        for s in [ComplexPoint::critical(0.0), ComplexPoint::new(0.3, 2.0)] {
            let r = mellin_A1(s).unwrap();
            let d = (r.value - mellin_A1_exact(s).unwrap()).norm();
            assert!(
                d < 1e-4 && d <= r.err_estimate + 1e-6,
                "s={s:?}: {d:e} vs {:e}",
                r.err_estimate
            );
        }
    }
}
