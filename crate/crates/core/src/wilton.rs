//! The incomplete gamma functions `λ` and `Λ`, the correction `𝔉`, the
//! oscillatory integral `I(x, v)`, its critical-line representation and the
//! residual of the functional equation.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::analytic::{zeta, zeta_abs2_critical, ComplexPoint, Constants};
use crate::autocorr::A_of;
use crate::hilbert::{pv_kernel_identity_with, GridSettings};
use crate::quadrature::{
    integrate_oscillatory, integrate_oscillatory_tail, Integrator, Phase, QuadResult,
};
use crate::sieve::{psi_partial, DivisorTable};
use crate::{Error, Result, TAU};

const OSC_TOL: f64 = 1e-12;

/// Below this `v` the series for `λ` is used on its own.
const SERIES_LIMIT: f64 = 4.0;

fn check_strip(s: ComplexPoint) -> Result<()> {
    if s.sigma > 0.0 && s.sigma < 1.0 && s.tau.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("λ and Λ need 0 < σ < 1".into()))
    }
}

fn cpow(v: f64, s: Complex64) -> Complex64 {
    (s * v.ln()).exp()
}

/// `λ(s, v) = e^{iv} v^s Σ_{k≥0} (−iv)^k / (s(s+1)⋯(s+k))`.
///
/// The terms stop growing once `|s + k| > v`, so the series is used for
/// small `v` and whenever `|s| ≥ v`.
fn lambda_series(s: Complex64, v: f64) -> Complex64 {
    let z = Complex64::new(0.0, -v);
    let mut term = s.inv();
    let mut sum = term;
    let mut largest = term.norm();
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= z / (s + k);
        sum += term;
        let m = term.norm();
        largest = largest.max(m);
        if (k > v && m < 1e-18 * largest.max(sum.norm())) || k > 100_000.0 {
            break;
        }
    }
    Complex64::from_polar(1.0, v) * cpow(v, s) * sum
}

/// `∫_a^b e^{it} t^{s−1} dt` for `0 < a < b`.
fn oscillatory_piece(s: Complex64, a: f64, b: f64) -> Result<QuadResult> {
    let e = s.re - 1.0;
    integrate_oscillatory(
        |t: f64| Complex64::new(t.powf(e), 0.0),
        Phase::with_log(1.0, s.im),
        a,
        b,
        OSC_TOL,
    )
}

/// `λ(s, v) = ∫₀^v e^{it} t^{s−1} dt` with an error estimate.
///
/// Small `v` and large `|s|` use the convergent series; otherwise the series
/// up to `v = 4` is continued by oscillatory quadrature, whose panels follow
/// the phase `t + τ log t` through its stationary point at `t = −τ`.
pub fn lambda_inc_quad(s: ComplexPoint, v: f64) -> Result<QuadResult> {
    check_strip(s)?;
    if !(v >= 0.0 && v.is_finite()) {
        return Err(Error::invalid("λ needs a finite v >= 0"));
    }
    if v == 0.0 {
        return Ok(QuadResult::zero());
    }
    let z = s.to_complex();
    if v <= SERIES_LIMIT || z.norm() >= v {
        return Ok(QuadResult {
            value: lambda_series(z, v),
            err_estimate: 1e-15,
            n_evals: 0,
        });
    }
    let head = lambda_series(z, SERIES_LIMIT);
    let mut r = oscillatory_piece(z, SERIES_LIMIT, v)?;
    r.value += head;
    Ok(r)
}

/// `λ(s, v) = ∫₀^v e^{it} t^{s−1} dt`.
pub fn lambda_inc(s: ComplexPoint, v: f64) -> Result<Complex64> {
    lambda_inc_quad(s, v).map(|r| r.value)
}

/// `Λ(s, v) = ∫_v^∞ e^{it} t^{s−1} dt` with an error estimate.
///
/// One integration by parts at a point `V ≥ v` gives
/// `Λ(s, V) = i e^{iV} V^{s−1} + i(s−1) ∫_V^∞ e^{it} t^{s−2} dt`, and the
/// last integral is taken along `t = V + iy`, where it decays like `e^{−y}`.
/// On that ray `|t^{iτ}|` grows like `e^{|τ| arg t}` when `τ < 0`, so there
/// `V ≥ 2|τ| + 1` keeps the integrand below `e^{−y/2}`; the piece between
/// `v` and `V` is added by oscillatory quadrature (or by the series below 1).
#[allow(non_snake_case)]
pub fn Lambda_inc_quad(s: ComplexPoint, v: f64) -> Result<QuadResult> {
    check_strip(s)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::invalid("Λ needs a finite v > 0"));
    }
    let z = s.to_complex();
    let stable = if s.tau < 0.0 {
        2.0 * s.tau.abs() + 1.0
    } else {
        1.0
    };
    let big_v = v.max(stable);
    let mut acc = QuadResult::zero();
    let mut lo = v;
    if v < 1.0 {
        acc.value += lambda_series(z, 1.0) - lambda_series(z, v);
        acc.err_estimate += 1e-15;
        lo = 1.0;
    }
    if big_v > lo {
        acc = acc.combine(oscillatory_piece(z, lo, big_v)?);
    }
    Ok(acc.combine(ray_tail(z, big_v)?))
}

/// `Λ(s, v) = ∫_v^∞ e^{it} t^{s−1} dt`.
#[allow(non_snake_case)]
pub fn Lambda_inc(s: ComplexPoint, v: f64) -> Result<Complex64> {
    Lambda_inc_quad(s, v).map(|r| r.value)
}

/// `Λ(s, V)` by one integration by parts and the ray `t = V + iy`.
fn ray_tail(s: Complex64, big_v: f64) -> Result<QuadResult> {
    const Y: f64 = 90.0;
    let e = s - 2.0;
    let j = Integrator::new(1e-15).with_rel_tol(1e-13).integrate(
        |y: f64| (e * Complex64::new(big_v, y).ln()).exp() * (-y).exp(),
        0.0,
        Y,
    )?;
    let rot = Complex64::from_polar(1.0, big_v);
    let boundary = Complex64::i() * rot * cpow(big_v, s - 1.0);
    let factor = (1.0 - s) * rot;
    let cut = 2.0 * (-0.5 * Y).exp() * big_v.powf(s.re - 2.0);
    Ok(QuadResult {
        value: boundary + factor * j.value,
        err_estimate: factor.norm() * (j.err_estimate + cut),
        n_evals: j.n_evals,
    })
}

/// `Ci`: the real part of `λ`.
#[allow(non_snake_case)]
pub fn Ci(s: ComplexPoint, v: f64) -> Result<f64> {
    lambda_inc(s, v).map(|z| z.re)
}

/// `Si`: the imaginary part of `λ`.
#[allow(non_snake_case)]
pub fn Si(s: ComplexPoint, v: f64) -> Result<f64> {
    lambda_inc(s, v).map(|z| z.im)
}

/// `ci`: the real part of `Λ`.
pub fn ci(s: ComplexPoint, v: f64) -> Result<f64> {
    Lambda_inc(s, v).map(|z| z.re)
}

/// `si`: the imaginary part of `Λ`.
pub fn si(s: ComplexPoint, v: f64) -> Result<f64> {
    Lambda_inc(s, v).map(|z| z.im)
}

/// `∫₀¹ (e^{it} − 1) dt/t + ∫₁^∞ e^{it} dt/t`, which equals `−γ + iπ/2`.
pub fn log_integral_constant() -> Result<QuadResult> {
    let head = Integrator::new(1e-15).integrate(
        |t: f64| (Complex64::new(0.0, t).exp() - 1.0) / t,
        0.0,
        1.0,
    )?;
    let tail = integrate_oscillatory_tail(|t: f64| Complex64::new(1.0 / t, 0.0), 1.0, 1.0, 1e-12)?;
    Ok(head.combine(tail))
}

/// The two evaluations of `Re 𝔉(x)` and the value of `Im 𝔉(x)`.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FCorrection {
    pub x: f64,
    /// From the principal-value integral of `A` against the kernel
    /// `(x² + t²)/((t − x)(t + x)²)`.
    pub re_direct: f64,
    /// From `B(1/x) + 2x ∫₀^∞ A(t)/(x + t)² dt`.
    pub re_via_B: f64,
    pub im: f64,
    pub err_bound: f64,
}

impl FCorrection {
    /// `re_direct + i·im`.
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re_direct, self.im)
    }
}

/// `𝔉(x)` with the default grid settings.
#[allow(non_snake_case)]
pub fn F_correction(x: f64) -> Result<FCorrection> {
    F_correction_with(x, GridSettings::DEFAULT)
}

/// `𝔉(x)` with explicit grid settings.
///
/// The real part is `2x · v.p.∫₀^∞ A(t)(x²+t²)/((t−x)(t+x)²) dt/t` minus
/// `x(½ log² x + (log 2π − γ) log(1/x) − c₀) + c₀`; the principal value is
/// also evaluated through `B` on an independent grid. The imaginary part is
/// `π(A(x) + (x/2) log x − ((x+1)/2)(log 2π − γ))`.
#[allow(non_snake_case)]
pub fn F_correction_with(x: f64, settings: GridSettings) -> Result<FCorrection> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("𝔉 needs a finite x > 0"));
    }
    let c = Constants::frozen();
    let l = x.ln();
    let poly = x * (0.5 * l * l - (c.log_2pi - c.euler_gamma) * l - c.c0) + c.c0;
    let k = pv_kernel_identity_with(x, settings)?;
    let a = A_of(x)?;
    let pi = core::f64::consts::PI;
    let im = pi * (a.value + 0.5 * x * l - 0.5 * (x + 1.0) * (c.log_2pi - c.euler_gamma));
    Ok(FCorrection {
        x,
        re_direct: k.rhs - poly,
        re_via_B: k.lhs - poly,
        im,
        err_bound: k.err_bound + pi * a.err_bound,
    })
}

/// `I(x, v) = 2 ∫₀^v Δ(t)/t · e^{2πitx} dt`.
///
/// Each unit interval is integrated separately, since `Δ` jumps at the
/// integers. On `(0, 1)` the integrand is `−(log t + 2γ − 1) e^{2πitx}`,
/// whose logarithmic end is integrated termwise from the exponential series.
#[allow(non_snake_case)]
pub fn I_of(x: f64, v: f64, table: &DivisorTable) -> Result<QuadResult> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("I(x, v) needs a finite x > 0"));
    }
    if !(v > 0.0) {
        return Err(Error::invalid("I(x, v) needs v > 0"));
    }
    table.summatory(v)?;
    let omega = TAU * x;
    let c = 2.0 * Constants::frozen().euler_gamma - 1.0;
    let rule = Integrator::new(1e-13).with_rel_tol(1e-12);

    let h = v.min(1.0).min(2.0 / omega);
    let mut acc = QuadResult {
        value: -2.0 * log_head(omega, c, h),
        err_estimate: 1e-15,
        n_evals: 0,
    };
    let top = v.min(1.0);
    if top > h {
        let r = rule.integrate(
            |t: f64| Complex64::from_polar(-2.0 * (t.ln() + c), omega * t),
            h,
            top,
        )?;
        acc = acc.combine(r);
    }
    let prefix = table.prefix();
    let mut k = 1usize;
    while (k as f64) < v {
        let d = prefix[k] as f64;
        let hi = v.min(k as f64 + 1.0);
        let r = rule.integrate(
            |t: f64| Complex64::from_polar(2.0 * (d / t - t.ln() - c), omega * t),
            k as f64,
            hi,
        )?;
        acc = acc.combine(r);
        k += 1;
    }
    Ok(acc)
}

/// `∫₀^h (log t + c) e^{iωt} dt` from the exponential series, for `ωh ≲ 2`.
fn log_head(omega: f64, c: f64, h: f64) -> Complex64 {
    let lh = h.ln();
    let iw = Complex64::new(0.0, omega);
    let mut coef = Complex64::new(1.0, 0.0); // (iω)^k/k!
    let mut hp = h; // h^{k+1}
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..60 {
        let k1 = (k + 1) as f64;
        let term = coef * (hp * ((lh + c) / k1 - 1.0 / (k1 * k1)));
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-300) && k > 2 {
            break;
        }
        coef *= iw / k1;
        hp *= h;
    }
    sum
}

/// `I(x, v)` compared with its critical-line representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelCheck {
    pub x: f64,
    pub v: f64,
    pub t_max: f64,
    pub direct: Complex64,
    /// `(1/π) ∫_{−T}^{T} ζ²(s)/s · λ(s, 2πxv) (2πx)^{−s} dτ` on `σ = ½`.
    pub line: Complex64,
    /// `direct − line`.
    pub difference: Complex64,
    /// Quadrature error estimates of both sides.
    pub quad_err: f64,
    /// Estimate of the truncated part of the line integral.
    pub tail_budget: f64,
}

/// Largest `v` accepted by [`plancherel_check`].
pub const PLANCHEREL_MAX_V: f64 = 50.0;
/// Largest `T` accepted by [`plancherel_check`].
pub const PLANCHEREL_MAX_T: f64 = 5000.0;

/// Compare `I(x, v)` with its critical-line integral truncated at `T`.
///
/// On `|τ| > V = 2πxv` one has `|λ(s, V)| ≈ √V/|τ|`, so with the mean value
/// `log(τ/2π) + 2γ` of `|ζ|²` the neglected part is about
/// `2√V (2πx)^{−½} (log(T/2π) + 2γ + 1)/(πT)`, reported as `tail_budget`.
pub fn plancherel_check(
    x: f64,
    v: f64,
    t_max: f64,
    table: &DivisorTable,
) -> Result<PlancherelCheck> {
    if !(v > 0.0 && v <= PLANCHEREL_MAX_V) {
        return Err(Error::OutOfRange {
            what: "v",
            value: v,
            limit: PLANCHEREL_MAX_V,
        });
    }
    if !(t_max > 1.0 && t_max <= PLANCHEREL_MAX_T) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t_max,
            limit: PLANCHEREL_MAX_T,
        });
    }
    let direct = I_of(x, v, table)?;
    let big_v = TAU * x * v;
    let lw = (TAU * x).ln();
    let pi = core::f64::consts::PI;
    let integrand = |tau: f64| -> Complex64 {
        let s = ComplexPoint::critical(tau);
        let z = s.to_complex();
        let zz = match zeta(s) {
            Ok(w) => w,
            Err(_) => return Complex64::new(f64::NAN, 0.0),
        };
        let lam = match lambda_inc(s, big_v) {
            Ok(w) => w,
            Err(_) => return Complex64::new(f64::NAN, 0.0),
        };
        zz * zz / z * lam * (-z * lw).exp() / pi
    };
    let n = (2.0 * t_max / 0.5).ceil() as usize;
    let points: Vec<f64> = (0..=n)
        .map(|k| -t_max + 2.0 * t_max * k as f64 / n as f64)
        .collect();
    let line = Integrator::new(1e-7).integrate_with_points(integrand, &points)?;
    if !(line.value.re.is_finite() && line.value.im.is_finite()) {
        return Err(Error::Singularity { at: f64::NAN });
    }
    let c = Constants::frozen();
    let mean = (t_max / TAU).ln() + 2.0 * c.euler_gamma;
    let tail_budget = 2.0 * big_v.sqrt() * (TAU * x).powf(-0.5) * (mean + 1.0) / (pi * t_max);
    Ok(PlancherelCheck {
        x,
        v,
        t_max,
        direct: direct.value,
        line: line.value,
        difference: direct.value - line.value,
        quad_err: direct.err_estimate + line.err_estimate,
        tail_budget,
    })
}

/// One sample of the functional-equation residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRecord {
    pub x: f64,
    pub v: f64,
    /// `x²v`
    pub scale: f64,
    pub residual: Complex64,
    /// `|residual| · √scale / log²(2 + scale)`
    pub normalized: f64,
}

/// Residual evaluator that computes `𝔉(x)` once for many `v`.
#[derive(Debug, Clone, Copy)]
pub struct ResidualEvaluator {
    x: f64,
    f: FCorrection,
}

impl ResidualEvaluator {
    pub fn new(x: f64) -> Result<Self> {
        Self::with_settings(x, GridSettings::DEFAULT)
    }

    pub fn with_settings(x: f64, settings: GridSettings) -> Result<Self> {
        Ok(ResidualEvaluator {
            x,
            f: F_correction_with(x, settings)?,
        })
    }

    pub fn correction(&self) -> &FCorrection {
        &self.f
    }

    /// `ψ(x, v) − x·conj ψ(1/x, x²v) − 𝔉(x) − ½ log²(1/x) − κ log(1/x)`.
    pub fn at(&self, v: f64, table: &DivisorTable) -> Result<ResidualRecord> {
        let x = self.x;
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::invalid("the residual needs a finite v > 0"));
        }
        let scale = x * x * v;
        let lhs = psi_partial(x, v, table)? - psi_partial(1.0 / x, scale, table)?.conj() * x;
        let l = (1.0 / x).ln();
        let kappa = Constants::frozen().kappa;
        let residual = lhs - self.f.value() - 0.5 * l * l - kappa * l;
        let lg = (2.0 + scale).ln();
        Ok(ResidualRecord {
            x,
            v,
            scale,
            residual,
            normalized: residual.norm() * scale.sqrt() / (lg * lg),
        })
    }
}

/// Functional-equation residual at `(x, v)`; both `v` and `x²v` must lie
/// within the table.
pub fn residual(x: f64, v: f64, table: &DivisorTable) -> Result<ResidualRecord> {
    ResidualEvaluator::new(x)?.at(v, table)
}

/// The weighted mean square of `ζ` on the critical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCheck {
    pub big_v: f64,
    /// `∫₀^∞ |ζ(½+iτ)|²/(1+τ) · min(1, √V/|V−τ|) dτ`.
    pub integral: f64,
    /// Truncation point of the quadrature.
    pub t_max: f64,
    pub quad_err: f64,
    /// Upper bound for the part beyond `t_max`, assuming `I₂(τ) ≤ τ log τ`
    /// there.
    pub tail_bound: f64,
    /// `integral / (V^{−½} log²(2 + V))`.
    pub ratio: f64,
}

/// Largest `V` accepted by [`mean_square_kernel_check`].
pub const KERNEL_MAX_V: f64 = 2000.0;

/// The weighted mean square at `V` together with its normalized ratio.
///
/// Requires `4 ≤ V ≤ 2000`; see [`mean_square_kernel_integral`] for smaller `V`.
pub fn mean_square_kernel_check(big_v: f64) -> Result<KernelCheck> {
    if !(4.0..=KERNEL_MAX_V).contains(&big_v) {
        return Err(Error::OutOfRange {
            what: "V",
            value: big_v,
            limit: KERNEL_MAX_V,
        });
    }
    mean_square_kernel_integral(big_v)
}

/// [`mean_square_kernel_check`] for any `0 < V ≤ 2000`.
///
/// The range `[0, T]` with `T = min(max(4V, 1000), 5000)` is integrated
/// with panels no wider than 2 and breaks at the kinks `V ± √V` and `V`.
/// Beyond `T` the value uses the mean `log(τ/2π) + 2γ` of `|ζ|²`, and
/// `tail_bound` bounds the whole tail through `I₂(τ) ≤ τ log τ`, which
/// gives `∫_T^∞ |ζ|² τ^{−2} dτ ≤ 2(log T + 1)/T`.
pub fn mean_square_kernel_integral(big_v: f64) -> Result<KernelCheck> {
    if !(big_v > 0.0 && big_v <= KERNEL_MAX_V) {
        return Err(Error::OutOfRange {
            what: "V",
            value: big_v,
            limit: KERNEL_MAX_V,
        });
    }
    let sv = big_v.sqrt();
    let t_max = (4.0 * big_v).clamp(1000.0, 5000.0);
    let weight = |tau: f64| {
        let d = (big_v - tau).abs();
        let m = if d <= sv { 1.0 } else { sv / d };
        m / (1.0 + tau)
    };
    let mut points: Vec<f64> = Vec::new();
    let n = (t_max / 2.0).ceil() as usize;
    for k in 0..=n {
        points.push(t_max * k as f64 / n as f64);
    }
    for p in [big_v - sv, big_v, big_v + sv] {
        if p > 0.0 && p < t_max {
            points.push(p);
        }
    }
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup();
    let body = Integrator::new(1e-9)
        .integrate_with_points(|tau: f64| zeta_abs2_critical(tau) * weight(tau), &points)?;

    let g = Constants::frozen().euler_gamma;
    // τ = T/u maps the tail onto (0, 1].
    let model = Integrator::new(1e-12).integrate(
        |u: f64| {
            if u == 0.0 {
                return 0.0;
            }
            let tau = t_max / u;
            ((tau / TAU).ln() + 2.0 * g) * weight(tau) * t_max / (u * u)
        },
        0.0,
        1.0,
    )?;
    let tail_bound = sv / (1.0 - big_v / t_max) * 2.0 * (t_max.ln() + 1.0) / t_max;
    let integral = body.value + model.value;
    let lg = (2.0 + big_v).ln();
    Ok(KernelCheck {
        big_v,
        integral,
        t_max,
        quad_err: body.err_estimate + model.err_estimate,
        tail_bound,
        ratio: integral * sv / (lg * lg),
    })
}

/// Both sides of `x ∫_x^∞ ψ₂(t) dt/t² = πA(x) + (π/2) log(1/x) − (π/2)(1 − γ + log 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineSeriesCheck {
    pub x: f64,
    pub series: f64,
    pub closed_form: f64,
    /// Estimate of the series truncation at the table limit.
    pub truncation: f64,
}

/// Sum `x Σ τ(n)/n ∫_x^∞ sin(2πnt) dt/t²` over the whole table.
///
/// With `E₁` the exponential integral,
/// `∫_x^∞ e^{iωt} dt/t² = e^{iωx}/x + iω E₁(−iωx)`. The terms decay like
/// `τ(n)/(2πn²x)`, so the neglected part is below `(log N + 2γ + 1)/(2πN)`.
pub fn sine_series_check(x: f64, table: &DivisorTable) -> Result<SineSeriesCheck> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("the sine series needs a finite x > 0"));
    }
    let counts = table.counts();
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (n, &tn) in counts.iter().enumerate().skip(1) {
        let omega = TAU * n as f64;
        let e1 = exp_integral_imag(omega * x);
        let inner = Complex64::from_polar(1.0 / x, omega * x) + Complex64::new(0.0, omega) * e1;
        let term = f64::from(tn) / n as f64 * inner.im;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let c = Constants::frozen();
    let pi = core::f64::consts::PI;
    let a = A_of(x)?.value;
    let nf = table.limit() as f64;
    Ok(SineSeriesCheck {
        x,
        series: x * sum,
        closed_form: pi * a - 0.5 * pi * x.ln() - 0.5 * pi * (1.0 - c.euler_gamma + c.log_2pi),
        truncation: (nf.ln() + 2.0 * c.euler_gamma + 1.0) / (TAU * nf),
    })
}

/// `E₁(−iy) = ∫_y^∞ e^{it} dt/t` for `y ≥ 1`, by the continued fraction
/// `E₁(z) = e^{−z}/(z + 1 − 1²/(z + 3 − 2²/(z + 5 − …)))` (modified Lentz).
fn exp_integral_imag(y: f64) -> Complex64 {
    let z = Complex64::new(0.0, -y);
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = (b + d * an).inv();
        c = b + c.inv() * an;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_quadrature_routes_agree() {
        // λ(s, 10) by the series alone against series to 4 plus quadrature.
        let s = Complex64::new(0.5, 3.0);
        let direct = lambda_series(s, 10.0);
        let split = lambda_inc(ComplexPoint::new(0.5, 3.0), 10.0).unwrap();
        assert!((direct - split).norm() < 1e-10, "{direct} {split}");
    }

    #[test]
    fn log_head_matches_quadrature() {
        let (w, c, h) = (5.0, 0.154, 0.3);
        let q = Integrator::new(1e-14)
            .integrate(|t: f64| Complex64::from_polar(t.ln() + c, w * t), 0.0, h)
            .unwrap();
        assert!((q.value - log_head(w, c, h)).norm() < 1e-12);
    }

    #[test]
    fn exp_integral_at_pi() {
        // E₁(−iπ): Ci(π) = 0.07366791204642548, Si(π) = 1.851937051982466,
        // ∫_π^∞ e^{it}/t dt = −Ci(π) + i(π/2 − Si(π)).
        let e = exp_integral_imag(core::f64::consts::PI);
        assert!((e.re + 0.073_667_912_046_425_48).abs() < 1e-13);
        assert!((e.im - (core::f64::consts::FRAC_PI_2 - 1.851_937_051_982_466)).abs() < 1e-13);
    }
}
