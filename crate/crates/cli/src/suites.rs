//! Verification suites.
//!
//! Each suite is a list of checks. A check reduces to one number,
//! `measured`, which passes when it is finite and at most `threshold`.
//! Thresholds can be overridden by check id with `--tol`. Randomized checks
//! draw from a ChaCha stream seeded by `--seed` and the check id, so a
//! check's samples do not depend on which other checks run or in what order.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wilton_core::analytic::{
    cot_half_pi, euler_gamma_limit, fe_check, gamma_rotated, stieltjes_gamma1, stieltjes_gamma1_at,
    tan_half_pi, zeta, ComplexPoint, Constants, E_of, G_of, H_of,
};
use wilton_core::autocorr::{mellin_A1_check, A_of};
use wilton_core::fit::fit_log_log;
use wilton_core::hilbert::{mellin_B_check, A1Grid, B_mellin, F_of, GridSettings};
use wilton_core::quadrature::{
    integrate_oscillatory, integrate_oscillatory_tail, integrate_pv, Integrator, Phase,
    PrincipalValueProblem, Tail,
};
use wilton_core::sieve::{build_table, delta, psi_partial, DivisorTable};
use wilton_core::wilton::{
    lambda_inc, lambda_inc_quad, log_integral_constant, mean_square_kernel_check, plancherel_check,
    sine_series_check, F_correction, F_correction_with, I_of, Lambda_inc, Lambda_inc_quad,
    PlancherelCheck, ResidualEvaluator, ResidualRecord,
};
use wilton_core::{Complex64, Error, Result};

use crate::pool::parallel_map;
use crate::CliError;

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 9] = [
    "constants",
    "zeta",
    "quad",
    "autocorr",
    "hilbert",
    "lambda",
    "plancherel",
    "residual",
    "all",
];

/// Table size for the sieve and residual checks.
pub const SUITE_TABLE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub suite: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
    pub elapsed_s: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Worst {
    pub check: String,
    pub measured: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n_checks: usize,
    pub n_failed: usize,
    /// The check with the smallest margin below its threshold.
    pub worst: Option<Worst>,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn check(&self, id: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub jobs: usize,
    pub tol: BTreeMap<String, f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 42,
            jobs: 1,
            tol: BTreeMap::new(),
        }
    }
}

struct Measure {
    value: f64,
    note: String,
}

fn measure(value: f64, note: impl Into<String>) -> Result<Measure> {
    Ok(Measure {
        value,
        note: note.into(),
    })
}

struct CheckDef {
    id: &'static str,
    suite: &'static str,
    threshold: f64,
    run: fn(&Ctx) -> Result<Measure>,
}

/// Every check id, for validating `--tol`.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

/// Run the named suite.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> std::result::Result<SuiteReport, CliError> {
    if !SUITES.contains(&name) {
        return Err(CliError::Usage(format!(
            "unknown suite `{name}`; expected one of {}",
            SUITES.join(", ")
        )));
    }
    for key in opts.tol.keys() {
        if !CHECKS.iter().any(|c| c.id == key) {
            return Err(CliError::Usage(format!(
                "--tol names unknown check `{key}`"
            )));
        }
    }
    let selected: Vec<&CheckDef> = CHECKS
        .iter()
        .filter(|c| name == "all" || c.suite == name)
        .collect();
    let ctx = Ctx::new(opts.seed);
    let results = parallel_map(&selected, opts.jobs, |def| {
        let t0 = Instant::now();
        let r = (def.run)(&ctx);
        (r, t0.elapsed().as_secs_f64())
    });
    let mut checks = Vec::with_capacity(selected.len());
    for (def, (r, elapsed_s)) in selected.iter().zip(results) {
        let threshold = opts.tol.get(def.id).copied().unwrap_or(def.threshold);
        let (measured, note) = match r {
            Ok(m) => (m.value, m.note),
            Err(e @ Error::Resource { .. }) => return Err(CliError::Core(e)),
            Err(e) => (f64::NAN, format!("error: {e}")),
        };
        let passed = measured.is_finite() && measured <= threshold;
        checks.push(CheckOutcome {
            id: def.id.to_owned(),
            suite: def.suite.to_owned(),
            measured,
            threshold,
            passed,
            elapsed_s,
            note,
        });
    }
    let n_failed = checks.iter().filter(|c| !c.passed).count();
    let worst = checks
        .iter()
        .max_by(|a, b| margin(a).total_cmp(&margin(b)))
        .map(|c| Worst {
            check: c.id.clone(),
            measured: c.measured,
            threshold: c.threshold,
        });
    Ok(SuiteReport {
        suite: name.to_owned(),
        n_checks: checks.len(),
        n_failed,
        worst,
        checks,
    })
}

/// Excess over the threshold, relative where the threshold is non-zero.
fn margin(c: &CheckOutcome) -> f64 {
    if !c.measured.is_finite() {
        return f64::INFINITY;
    }
    let d = c.measured - c.threshold;
    if c.threshold != 0.0 {
        d / c.threshold.abs()
    } else {
        d
    }
}

/// Shared state, built on first use.
struct Ctx {
    seed: u64,
    table: OnceLock<Result<DivisorTable>>,
    grids: OnceLock<Result<HilbertGrids>>,
    residuals: OnceLock<Result<Vec<ResidualRecord>>>,
    plancherel: OnceLock<Result<PlancherelCheck>>,
}

impl Ctx {
    fn new(seed: u64) -> Self {
        Ctx {
            seed,
            table: OnceLock::new(),
            grids: OnceLock::new(),
            residuals: OnceLock::new(),
            plancherel: OnceLock::new(),
        }
    }

    fn rng(&self, id: &str) -> ChaCha8Rng {
        // FNV-1a of the id, so streams differ per check.
        let h = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
        });
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    fn table(&self) -> Result<&DivisorTable> {
        self.table
            .get_or_init(|| build_table(SUITE_TABLE_LIMIT))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn grids(&self) -> Result<&HilbertGrids> {
        self.grids
            .get_or_init(HilbertGrids::build)
            .as_ref()
            .map_err(Clone::clone)
    }

    fn residuals(&self) -> Result<&[ResidualRecord]> {
        self.residuals
            .get_or_init(|| {
                let table = self.table()?;
                let mut out = Vec::new();
                for x in RESIDUAL_X {
                    let e = ResidualEvaluator::new(x)?;
                    for v in RESIDUAL_V {
                        out.push(e.at(v, table)?);
                    }
                }
                Ok(out)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    fn plancherel_half_20(&self) -> Result<&PlancherelCheck> {
        self.plancherel
            .get_or_init(|| plancherel_check(0.5, 20.0, 3000.0, self.table()?))
            .as_ref()
            .map_err(Clone::clone)
    }
}

macro_rules! check {
    ($id:literal, $suite:literal, $thr:expr, $f:ident) => {
        CheckDef {
            id: $id,
            suite: $suite,
            threshold: $thr,
            run: $f,
        }
    };
}

const CHECKS: &[CheckDef] = &[
    check!("c0-assembly", "constants", 1e-12, c0_assembly),
    check!("euler-gamma", "constants", 1e-14, euler_gamma),
    check!("gamma1-consistency", "constants", 1e-12, gamma1_consistency),
    check!("a0-constant", "constants", 1e-8, a0_constant),
    check!("A-at-one", "constants", 1e-8, a_at_one),
    check!("zeta-reflection", "zeta", 1e-12, zeta_reflection),
    check!("fe-check", "zeta", 1e-9, fe_grid),
    check!("strip-bound", "zeta", 1.1, strip_bound),
    check!("tan-no-overflow", "zeta", 0.0, tan_no_overflow),
    check!("ingham-ratio", "zeta", 1.1, ingham_ratio),
    check!("quad-self-consistency", "quad", 1.0, quad_self_consistency),
    check!("pv-linearity", "quad", 1e-8, pv_linearity),
    check!("oscillatory-bound", "quad", 0.0, oscillatory_bound),
    check!("mellin-A1", "quad", 1e-4, mellin_a1),
    check!("A-identity", "autocorr", 1e-10, a_identity),
    check!("A-continuity", "autocorr", 1.0, a_continuity),
    check!("A-growth", "autocorr", 0.0, a_growth),
    check!("B-route-agreement", "hilbert", 1.0, b_route_agreement),
    check!("identity-sum", "hilbert", 1e-5, identity_sum),
    check!("identity-kernel", "hilbert", 1e-4, identity_kernel),
    check!("B-continuity", "hilbert", 10.0, b_continuity),
    check!("mellin-B", "hilbert", 1e-3, mellin_b),
    check!("F-decay", "hilbert", 10.0, f_decay),
    check!("lambda-completion", "lambda", 1e-8, lambda_completion),
    check!("lambda-bounds", "lambda", 0.0, lambda_bounds),
    check!("plancherel-half-20", "plancherel", 1e-2, plancherel_half_20),
    check!("plancherel-one-10", "plancherel", 1e-2, plancherel_one_10),
    check!(
        "plancherel-truncation",
        "plancherel",
        0.0,
        plancherel_truncation
    ),
    check!("I-small-v", "plancherel", 1e-12, i_small_v),
    check!("kernel-bound", "plancherel", 1.1, kernel_bound),
    check!(
        "sieve-trial-division",
        "residual",
        0.0,
        sieve_trial_division
    ),
    check!("delta-jump", "residual", 1e-6, delta_jump),
    check!("psi-triangle", "residual", 0.0, psi_triangle),
    check!("voronoi-ratio", "residual", 1.1, voronoi_ratio),
    check!("F-at-one", "residual", 1e-5, f_at_one),
    check!("F-routes", "residual", 1e-4, f_routes),
    check!(
        "F-continuity-at-zero",
        "residual",
        1e-2,
        f_continuity_at_zero
    ),
    check!(
        "residual-running-max",
        "residual",
        1.0,
        residual_running_max
    ),
    check!("residual-slope", "residual", -0.45, residual_slope),
    check!("sine-series", "residual", 1e-3, sine_series),
];

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Ratio of the running maximum at the end of `values` to the one
/// `lookback` steps earlier.
fn running_max_growth(values: &[f64], lookback: usize) -> f64 {
    let n = values.len();
    let head = values[..n - lookback]
        .iter()
        .copied()
        .fold(0.0f64, f64::max);
    let all = values.iter().copied().fold(0.0f64, f64::max);
    all / head
}

// ---- constants

fn c0_assembly(_: &Ctx) -> Result<Measure> {
    let (f, l) = (Constants::frozen(), Constants::from_limits());
    measure((f.c0 - l.c0).abs(), format!("c0 = {:.17e}", l.c0))
}

fn euler_gamma(_: &Ctx) -> Result<Measure> {
    let g = euler_gamma_limit();
    measure(
        (g - Constants::frozen().euler_gamma).abs(),
        format!("γ = {g:.17e}"),
    )
}

fn gamma1_consistency(_: &Ctx) -> Result<Measure> {
    let a = stieltjes_gamma1_at(10_000);
    let b = stieltjes_gamma1_at(20_000);
    let frozen = (stieltjes_gamma1() - Constants::frozen().stieltjes_1).abs();
    measure((a - b).abs().max(frozen), format!("γ₁ = {a:.17e}"))
}

fn a0_constant(_: &Ctx) -> Result<Measure> {
    let r = log_integral_constant()?;
    let expected = Complex64::new(
        -Constants::frozen().euler_gamma,
        core::f64::consts::FRAC_PI_2,
    );
    measure(
        (r.value - expected).norm(),
        format!("a₀ = {} ± {:e}", r.value, r.err_estimate),
    )
}

fn a_at_one(_: &Ctx) -> Result<Measure> {
    let c = Constants::frozen();
    let a = A_of(1.0)?;
    measure(
        (a.value - (c.log_2pi - c.euler_gamma)).abs(),
        format!("A(1) = {:.17e}", a.value),
    )
}

// ---- zeta

fn zeta_reflection(ctx: &Ctx) -> Result<Measure> {
    let mut rng = ctx.rng("zeta-reflection");
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let s = ComplexPoint::new(rng.gen_range(-3.0..4.0), rng.gen_range(-100.0..100.0));
        let z = zeta(s)?;
        let zc = zeta(ComplexPoint::new(s.sigma, -s.tau))?;
        worst = worst.max((zc - z.conj()).norm() / z.norm().max(1.0));
    }
    measure(worst, "relative, 200 points, σ ∈ [-3, 4], |τ| < 100")
}

fn fe_grid(ctx: &Ctx) -> Result<Measure> {
    let mut rng = ctx.rng("fe-check");
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = ComplexPoint::new(rng.gen_range(0.01..0.99), rng.gen_range(-500.0..500.0));
        worst = worst.max(fe_check(s)?.norm());
    }
    measure(worst, "absolute, 100 points, 0 < σ < 1, |τ| ≤ 500")
}

fn strip_bound(_: &Ctx) -> Result<Measure> {
    // Decade maxima of |ζ(σ+iτ)|/(τ^{(1−σ)/2} log τ) on τ ∈ [2, 5000].
    let edges = [2.0, 5.0, 50.0, 500.0, 5000.0];
    let mut growth = 0.0f64;
    let mut notes = Vec::new();
    for sigma in [0.25, 0.5, 0.75] {
        let mut maxima = Vec::new();
        for w in edges.windows(2) {
            let mut m = 0.0f64;
            let mut tau = w[0];
            while tau <= w[1] {
                let z = zeta(ComplexPoint::new(sigma, tau))?.norm();
                m = m.max(z / (tau.powf(0.5 * (1.0 - sigma)) * tau.ln()));
                tau += 0.25;
            }
            maxima.push(m);
        }
        let g = running_max_growth(&maxima, 2);
        notes.push(format!("σ={sigma}: {maxima:.3?}"));
        growth = growth.max(g);
    }
    measure(
        growth,
        format!(
            "running max growth over the last two decades; {}",
            notes.join("; ")
        ),
    )
}

fn tan_no_overflow(ctx: &Ctx) -> Result<Measure> {
    let mut rng = ctx.rng("tan-no-overflow");
    let mut taus: Vec<f64> = (0..=6)
        .flat_map(|k| [10f64.powi(k), -(10f64.powi(k))])
        .collect();
    taus.extend((0..200).map(|_| rng.gen_range(-1e6..1e6)));
    let mut bad = 0usize;
    for tau in taus {
        let s = ComplexPoint::new(rng.gen_range(0.01..0.99), tau);
        let vals = [tan_half_pi(s), cot_half_pi(s), G_of(s), H_of(s)?];
        if vals.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            bad += 1;
        }
    }
    measure(bad as f64, "non-finite tan, cot, G or H for |τ| ≤ 10⁶")
}

fn ingham_ratio(_: &Ctx) -> Result<Measure> {
    let mut ratios = Vec::new();
    for t in [10.0, 50.0, 250.0, 1250.0] {
        let e = E_of(t)?;
        ratios.push(e.abs() / (t.sqrt() * (2.0 + t).ln()));
    }
    measure(
        running_max_growth(&ratios, 2),
        format!("|E(T)|/(√T log(2+T)) = {ratios:.4?}"),
    )
}

// ---- quad

fn quad_self_consistency(_: &Ctx) -> Result<Measure> {
    // |value − value at tol/10| over 2·err_estimate, with a rounding allowance.
    fn ratio(coarse: (Complex64, f64), fine: Complex64) -> f64 {
        let (v, err) = coarse;
        (v - fine).norm() / (2.0 * err + 1e-15 * v.norm().max(1.0))
    }
    let tol = 1e-8;
    let mut worst = 0.0f64;
    type Case = (fn(f64) -> f64, f64, f64);
    let real: [Case; 5] = [
        (f64::sqrt, 0.0, 1.0),
        (f64::ln, 0.0, 1.0),
        (|t| 1.0 / (1.0 + t * t), 0.0, 100.0),
        (|t| (-t).exp() * (5.0 * t).cos(), 0.0, 20.0),
        (|t| (t - 1.0 / 3.0).abs(), 0.0, 1.0),
    ];
    for (f, a, b) in real {
        let c = Integrator::new(tol).integrate(f, a, b)?;
        let r = Integrator::new(tol / 10.0).integrate(f, a, b)?;
        worst = worst.max(ratio((c.value.into(), c.err_estimate), r.value.into()));
    }
    let g = |t: f64| Complex64::new(1.0 / (1.0 + t), 0.0);
    for (omega, a, b) in [(40.0, 0.0, 10.0), (3.0, 1.0, 200.0)] {
        let c = integrate_oscillatory(g, Phase::linear(omega), a, b, tol)?;
        let r = integrate_oscillatory(g, Phase::linear(omega), a, b, tol / 10.0)?;
        worst = worst.max(ratio((c.value, c.err_estimate), r.value));
    }
    let c = integrate_oscillatory(
        |t: f64| Complex64::new(t.powf(-0.5), 0.0),
        Phase::with_log(1.0, 2.0),
        0.5,
        60.0,
        tol,
    )?;
    let r = integrate_oscillatory(
        |t: f64| Complex64::new(t.powf(-0.5), 0.0),
        Phase::with_log(1.0, 2.0),
        0.5,
        60.0,
        tol / 10.0,
    )?;
    worst = worst.max(ratio((c.value, c.err_estimate), r.value));
    let tail = |t: f64| Complex64::new(1.0 / (t * t), 0.0);
    let c = integrate_oscillatory_tail(tail, 2.0, 1.0, tol)?;
    let r = integrate_oscillatory_tail(tail, 2.0, 1.0, tol / 10.0)?;
    worst = worst.max(ratio((c.value, c.err_estimate), r.value));
    let p = PrincipalValueProblem::new(|t: f64| t.cos(), 1.3, 10.0, Tail::Zero);
    let c = integrate_pv(&p, tol)?;
    let r = integrate_pv(&p, tol / 10.0)?;
    worst = worst.max(ratio((c.value.into(), c.err_estimate), r.value.into()));
    measure(
        worst,
        "max |I(tol) − I(tol/10)| / (2 err) over adaptive, oscillatory, tail and p.v. engines",
    )
}

fn pv_linearity(ctx: &Ctx) -> Result<Measure> {
    let mut rng = ctx.rng("pv-linearity");
    let g1 = |t: f64| t.cos();
    let g2 = |t: f64| t * (-t).exp();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x0 = rng.gen_range(0.5..3.0);
        let (a, b): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let pv = |p: &PrincipalValueProblem<&dyn Fn(f64) -> f64>| {
            integrate_pv(p, 1e-12).map(|r| r.value)
        };
        let mix = move |t: f64| a * g1(t) + b * g2(t);
        let m = pv(&PrincipalValueProblem::new(&mix, x0, 10.0, Tail::Zero))?;
        let p1 = pv(&PrincipalValueProblem::new(&g1, x0, 10.0, Tail::Zero))?;
        let p2 = pv(&PrincipalValueProblem::new(&g2, x0, 10.0, Tail::Zero))?;
        worst = worst.max((m - a * p1 - b * p2).abs());
    }
    measure(worst, "20 random combinations of two numerators")
}

fn oscillatory_bound(ctx: &Ctx) -> Result<Measure> {
    // g decreasing and f' = ω + κ/t increasing and positive, so g/f' is
    // monotone and |∫ g e^{if}| ≤ 2 g(a)/f'(a).
    let mut rng = ctx.rng("oscillatory-bound");
    let mut violations = 0usize;
    let mut worst = 0.0f64;
    for k in 0..500 {
        let a: f64 = rng.gen_range(0.5..5.0);
        let b = a + rng.gen_range(1.0..100.0);
        let omega: f64 = rng.gen_range(0.5..20.0);
        let kappa = -rng.gen_range(0.0..0.9) * a * omega;
        let c: f64 = rng.gen_range(0.1..10.0);
        let p: f64 = rng.gen_range(0.0..2.0);
        let g = move |t: f64| {
            let v = if k % 2 == 0 {
                c * (1.0 + t).powf(-p)
            } else {
                c * (-p * t).exp()
            };
            Complex64::new(v, 0.0)
        };
        let phase = Phase::with_log(omega, kappa);
        let r = integrate_oscillatory(g, phase, a, b, 1e-10)?;
        let bound = 2.0 * g(a).re / phase.derivative(a);
        worst = worst.max(r.value.norm() / bound);
        if r.value.norm() > bound + r.err_estimate {
            violations += 1;
        }
    }
    measure(
        violations as f64,
        format!("500 cases; largest |I|/bound = {worst:.4}"),
    )
}

fn mellin_a1(_: &Ctx) -> Result<Measure> {
    let mut worst = 0.0f64;
    for s in [ComplexPoint::new(0.5, 0.0), ComplexPoint::new(0.3, 2.0)] {
        worst = worst.max(mellin_A1_check(s)?.norm());
    }
    measure(worst, "s = 1/2 and 0.3 + 2i")
}

// ---- autocorr

fn a_identity(_: &Ctx) -> Result<Measure> {
    let mut worst = 0.0f64;
    for x in log_spaced(1e-3, 1e3, 100) {
        let d = A_of(x)?.value - x * A_of(1.0 / x)?.value;
        worst = worst.max(d.abs());
    }
    measure(
        worst,
        "max |A(x) − xA(1/x)| on 100 log-spaced x in [1e-3, 1e3]",
    )
}

fn a_continuity(_: &Ctx) -> Result<Measure> {
    let mut worst = 0.0f64;
    for x in [0.37, 1.3, 2.9, 7.1] {
        let a = A_of(x)?.value;
        for h in [1e-4, 1e-5, 1e-6, 1e-7] {
            let d = (A_of(x + h)?.value - a).abs();
            worst = worst.max(d / (h * (1.0 / h).ln()));
        }
    }
    measure(worst, "max |A(x+h) − A(x)|/(h log(1/h)), h = 1e-4 … 1e-7")
}

/// `A` is positive on `[1, ∞)` and grows, but not pointwise: it peaks at
/// each integer and dips just after. The growth tested is over unit shifts,
/// `A(x+1) > A(x)`, and along the integers.
fn a_growth(_: &Ctx) -> Result<Measure> {
    let mut bad = 0usize;
    let mut dips = 0usize;
    let mut prev: Option<f64> = None;
    for x in log_spaced(1.0, 100.0, 200) {
        let a = A_of(x)?;
        let shifted = A_of(x + 1.0)?;
        if a.value <= 0.0 {
            bad += 1;
        }
        if shifted.value <= a.value + shifted.err_bound + a.err_bound {
            bad += 1;
        }
        if prev.is_some_and(|p| a.value < p) {
            dips += 1;
        }
        prev = Some(a.value);
    }
    let mut last = A_of(1.0)?.value;
    for n in 2..=100 {
        let a = A_of(f64::from(n))?.value;
        if a <= last {
            bad += 1;
        }
        last = a;
    }
    measure(
        bad as f64,
        format!("positivity, A(x+1) > A(x), A(n+1) > A(n) on [1, 100]; {dips} pointwise dips"),
    )
}

// ---- hilbert

/// Two default-resolution grids for the identity checks: `x = e^{0.09 j}`
/// lies on the edges of the first (step 0.005) and `1/x` on the edges of the
/// second (step 0.0045).
struct HilbertGrids {
    first: A1Grid,
    second: A1Grid,
}

impl HilbertGrids {
    fn build() -> Result<Self> {
        let base = GridSettings::DEFAULT;
        let first = A1Grid::covering(0.05, 20.0, base)?;
        let second = A1Grid::covering(
            0.05,
            20.0,
            GridSettings {
                step: 0.9 * base.step,
                ..base
            },
        )?;
        Ok(HilbertGrids { first, second })
    }

    fn point(j: i32) -> f64 {
        (0.09 * f64::from(j)).exp()
    }
}

/// 20 indices spread over `−25..=25`, `x ∈ [0.105, 9.5]`.
fn twenty_points() -> Vec<f64> {
    (0..20)
        .map(|k| HilbertGrids::point(-25 + (50 * k + 9) / 19))
        .collect()
}

fn b_route_agreement(ctx: &Ctx) -> Result<Measure> {
    let g = ctx.grids()?;
    let mut worst = 0.0f64;
    for x in twenty_points() {
        let d = g.first.B(x)?;
        let m = B_mellin(x, 2000.0)?;
        worst = worst.max((d.value - m.value).abs() / (d.err_estimate + m.err_bound));
    }
    measure(
        worst,
        "max |direct − Mellin| / (err_direct + err_Mellin) at 20 x",
    )
}

fn identity_sum(ctx: &Ctx) -> Result<Measure> {
    let g = ctx.grids()?;
    let mut worst = 0.0f64;
    for j in -25..25 {
        let x = HilbertGrids::point(j);
        let lhs = x * g.first.B(x)?.value + g.second.B(1.0 / x)?.value;
        let rhs = g.second.smooth_sum(x)?.value;
        worst = worst.max((lhs - rhs).abs());
    }
    measure(
        worst,
        "|xB(x) + B(1/x) − smooth sum| at 50 x in [0.105, 8.7]",
    )
}

fn identity_kernel(ctx: &Ctx) -> Result<Measure> {
    let g = ctx.grids()?;
    let mut worst = 0.0f64;
    for x in twenty_points() {
        let rhs = g.first.kernel_pv(x)?.value;
        let lhs = g.second.B(1.0 / x)?.value - x * g.second.smooth_derivative(x)?.value;
        worst = worst.max((lhs - rhs).abs());
    }
    measure(worst, "principal-value kernel identity at 20 x")
}

fn b_continuity(ctx: &Ctx) -> Result<Measure> {
    let g = ctx.grids()?;
    let h = g.first.settings().step;
    let mut worst = 0.0f64;
    for u in [-1.5, -0.5, 0.5, 1.5] {
        let x = f64::exp(u);
        let b = g.first.B(x)?.value;
        for k in [2.0, 4.0, 8.0, 16.0] {
            let y = (u + k * h).exp();
            let d = y - x;
            worst = worst.max((g.first.B(y)?.value - b).abs() / (d * (1.0 / d).ln()));
        }
    }
    measure(
        worst,
        "max |B(x+δ) − B(x)|/(δ log(1/δ)) on refinement steps",
    )
}

fn mellin_b(_: &Ctx) -> Result<Measure> {
    let r = mellin_B_check(ComplexPoint::new(0.5, 0.0))?;
    measure(
        r.value.norm(),
        format!("s = 1/2, estimate {:e}", r.err_estimate),
    )
}

fn f_decay(_: &Ctx) -> Result<Measure> {
    let mut worst = 0.0f64;
    let mut tau = 2.0f64;
    while tau <= 500.0 {
        let l = (2.0 + tau).ln();
        worst = worst.max(F_of(ComplexPoint::critical(tau))?.norm() * tau.powf(1.5) / (l * l));
        tau *= 1.05;
    }
    measure(worst, "max |F(1/2+iτ)| τ^{3/2}/log²(2+τ), τ ∈ [2, 500]")
}

// ---- lambda

fn lambda_completion(_: &Ctx) -> Result<Measure> {
    let mut worst = 0.0f64;
    for i in 0..10 {
        let tau = -50.0 + 100.0 * f64::from(i) / 9.0;
        for j in 1..=10 {
            let v = 10.0 * f64::from(j) - 0.5;
            let s = ComplexPoint::critical(tau);
            let sum = lambda_inc(s, v)? + Lambda_inc(s, v)?;
            worst = worst.max((sum - gamma_rotated(s)?).norm());
        }
    }
    measure(worst, "|λ + Λ − Γ(s)e^{iπs/2}| on 10 τ × 10 v")
}

fn lambda_bounds(ctx: &Ctx) -> Result<Measure> {
    let mut rng = ctx.rng("lambda-bounds");
    let mut violations = 0usize;
    for _ in 0..1000 {
        let v: f64 = rng.gen_range(0.1..60.0);
        let gap: f64 = rng.gen_range(0.01..60.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let r = lambda_inc_quad(ComplexPoint::critical(sign * (v + gap)), v)?;
        if r.value.norm() > (2.0 * v.sqrt() / gap).min(4.0) + r.err_estimate {
            violations += 1;
        }
    }
    for _ in 0..1000 {
        let v: f64 = rng.gen_range(0.1..60.0);
        let a = v * rng.gen_range(0.0..0.999);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let r = Lambda_inc_quad(ComplexPoint::critical(sign * a), v)?;
        if r.value.norm() > (2.0 * v.sqrt() / (v - a)).min(4.0) + r.err_estimate {
            violations += 1;
        }
    }
    measure(
        violations as f64,
        "1000 samples each for λ (|τ| > v) and Λ (|τ| < v)",
    )
}

// ---- plancherel

fn plancherel_half_20(ctx: &Ctx) -> Result<Measure> {
    let p = ctx.plancherel_half_20()?;
    measure(
        p.difference.norm(),
        format!("T = 3000, tail budget {:e}", p.tail_budget),
    )
}

fn plancherel_one_10(ctx: &Ctx) -> Result<Measure> {
    let p = plancherel_check(1.0, 10.0, 3000.0, ctx.table()?)?;
    measure(
        p.difference.norm(),
        format!("T = 3000, tail budget {:e}", p.tail_budget),
    )
}

fn plancherel_truncation(ctx: &Ctx) -> Result<Measure> {
    let fine = ctx.plancherel_half_20()?;
    let coarse = plancherel_check(0.5, 20.0, 500.0, ctx.table()?)?;
    let excess = fine.difference.norm() - coarse.difference.norm() - fine.tail_budget;
    measure(
        excess,
        format!(
            "|d(3000)| − |d(500)| − budget; d(500) = {:e}, d(3000) = {:e}",
            coarse.difference.norm(),
            fine.difference.norm()
        ),
    )
}

fn i_small_v(ctx: &Ctx) -> Result<Measure> {
    // For v < 1, I(x, v) = −2∫₀^v (log t + c) e^{iωt} dt termwise.
    let table = ctx.table()?;
    let c = 2.0 * Constants::frozen().euler_gamma - 1.0;
    let mut worst = 0.0f64;
    for (x, v) in [(0.2, 0.9f64), (1.3, 0.25), (0.05, 0.999)] {
        let w = core::f64::consts::TAU * x;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut coef = Complex64::new(1.0, 0.0);
        for k in 0..80 {
            let k1 = f64::from(k + 1);
            sum += coef * (v.powf(k1) * ((v.ln() + c) / k1 - 1.0 / (k1 * k1)));
            coef *= Complex64::new(0.0, w) / k1;
        }
        worst = worst.max((I_of(x, v, table)?.value + 2.0 * sum).norm());
    }
    measure(worst, "three (x, v) with v < 1")
}

fn kernel_bound(_: &Ctx) -> Result<Measure> {
    let mut ratios = Vec::new();
    for v in [4.0, 16.0, 64.0, 256.0, 1024.0] {
        ratios.push(mean_square_kernel_check(v)?.ratio);
    }
    measure(
        running_max_growth(&ratios, 2),
        format!("ratios {ratios:.4?}"),
    )
}

// ---- residual (with the sieve invariants)

const RESIDUAL_X: [f64; 5] = [0.2, 0.3, 0.5, 0.65, 0.8];
const RESIDUAL_V: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];
const SLOPE_X: [f64; 3] = [0.2, 0.5, 0.8];

fn trial_division(n: u64) -> u32 {
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

fn sieve_trial_division(ctx: &Ctx) -> Result<Measure> {
    let table = ctx.table()?;
    let mut rng = ctx.rng("sieve-trial-division");
    let mut ns: Vec<usize> = (1..=1000).collect();
    ns.extend((0..2000).map(|_| rng.gen_range(1..=SUITE_TABLE_LIMIT)));
    let mut bad = 0usize;
    for n in ns {
        if table.tau(n)? != trial_division(n as u64) {
            bad += 1;
        }
    }
    measure(bad as f64, "n ≤ 1000 and 2000 random n ≤ 10⁶")
}

fn delta_jump(ctx: &Ctx) -> Result<Measure> {
    let table = ctx.table()?;
    let mut rng = ctx.rng("delta-jump");
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(2..=SUITE_TABLE_LIMIT);
        let x = n as f64;
        let jump = delta(x, table)? - delta(x - 1e-9, table)?;
        worst = worst.max((jump - f64::from(table.tau(n)?)).abs());
    }
    measure(worst, "|Δ(n) − Δ(n − 10⁻⁹) − τ(n)| at 200 random n")
}

fn psi_triangle(ctx: &Ctx) -> Result<Measure> {
    let table = ctx.table()?;
    let mut rng = ctx.rng("psi-triangle");
    let mut bad = 0usize;
    for _ in 0..200 {
        let x: f64 = rng.gen_range(0.0..1.0);
        let v: f64 = rng.gen_range(1.0..1e4);
        let w: f64 = rng.gen_range(0.0..v);
        let d = (psi_partial(x, v, table)? - psi_partial(x, w, table)?).norm();
        let bound: f64 = ((w.floor() as usize + 1)..=(v.floor() as usize))
            .map(|n| f64::from(table.counts()[n]) / n as f64)
            .sum();
        if d > bound * (1.0 + 1e-12) + 1e-12 {
            bad += 1;
        }
    }
    measure(bad as f64, "200 random (x, v′ < v ≤ 10⁴)")
}

fn voronoi_ratio(ctx: &Ctx) -> Result<Measure> {
    let table = ctx.table()?;
    // Decade maxima of |Δ(n)|/(n^{1/3} log n).
    let mut maxima = [0.0f64; 6];
    for n in 2..=SUITE_TABLE_LIMIT {
        let x = n as f64;
        let r = delta(x, table)?.abs() / (x.cbrt() * x.ln());
        let decade = ((x - 1.0).log10().floor() as usize).min(5);
        maxima[decade] = maxima[decade].max(r);
    }
    measure(maxima[5] / maxima[4], format!("decade maxima {maxima:.4?}"))
}

fn f_at_one(_: &Ctx) -> Result<Measure> {
    let f = F_correction(1.0)?;
    measure(
        f.re_direct.abs().max(f.re_via_B.abs()).max(f.im.abs()),
        format!("{f:?}"),
    )
}

fn f_routes(_: &Ctx) -> Result<Measure> {
    let mut worst = 0.0f64;
    for x in log_spaced(0.05, 20.0, 25) {
        let f = F_correction_with(x, GridSettings::FAST)?;
        worst = worst.max((f.re_direct - f.re_via_B).abs());
    }
    measure(worst, "25 log-spaced x in [0.05, 20], fast grids")
}

fn f_continuity_at_zero(_: &Ctx) -> Result<Measure> {
    let v: Vec<Complex64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&x| F_correction_with(x, GridSettings::COARSE).map(|f| f.value()))
        .collect::<Result<_>>()?;
    let (d1, d2) = ((v[0] - v[1]).norm(), (v[1] - v[2]).norm());
    if d2 >= d1 {
        return measure(
            f64::INFINITY,
            format!("differences do not shrink: {d1:e}, {d2:e}"),
        );
    }
    measure(
        d2,
        format!("|𝔉(1e-2) − 𝔉(1e-3)| = {d1:e}, |𝔉(1e-3) − 𝔉(1e-4)| = {d2:e}"),
    )
}

fn residual_running_max(ctx: &Ctx) -> Result<Measure> {
    let records = ctx.residuals()?;
    let mut worst = 0.0f64;
    for chunk in records.chunks(RESIDUAL_V.len()) {
        let mut running = chunk[0].normalized;
        for r in &chunk[1..] {
            worst = worst.max(r.normalized / running);
            running = running.max(r.normalized);
        }
    }
    measure(
        worst,
        "max normalized_k / max_{j<k} normalized_j over x ∈ {0.2, 0.3, 0.5, 0.65, 0.8}",
    )
}

fn residual_slope(ctx: &Ctx) -> Result<Measure> {
    let records = ctx.residuals()?;
    let mut worst = f64::NEG_INFINITY;
    let mut notes = Vec::new();
    for x in SLOPE_X {
        let pts: Vec<(f64, f64)> = records
            .iter()
            .filter(|r| r.x == x)
            .map(|r| (r.scale, r.residual.norm()))
            .collect();
        let fit = fit_log_log(&pts)?;
        notes.push(format!("x={x}: {:.3}", fit.slope));
        worst = worst.max(fit.slope);
    }
    measure(
        worst,
        format!("slopes of log|R| against log(x²v): {}", notes.join(", ")),
    )
}

fn sine_series(ctx: &Ctx) -> Result<Measure> {
    let table = ctx.table()?;
    let mut worst = 0.0f64;
    for x in [0.5, 1.0, 2.0] {
        let r = sine_series_check(x, table)?;
        worst = worst.max((r.series - r.closed_form).abs());
    }
    measure(worst, "x ∈ {1/2, 1, 2}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_suites_known() {
        let mut ids = check_ids();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
        assert!(CHECKS.iter().all(|c| SUITES.contains(&c.suite)));
        for s in &SUITES[..8] {
            assert!(CHECKS.iter().any(|c| c.suite == *s), "{s}");
        }
    }

    #[test]
    fn trial_division_small() {
        assert_eq!([1, 2, 3, 4, 12, 36].map(trial_division), [1, 2, 2, 3, 6, 9]);
    }

    #[test]
    fn growth_of_running_max() {
        assert_eq!(running_max_growth(&[3.0, 1.0, 2.0, 1.0], 2), 1.0);
        assert_eq!(running_max_growth(&[1.0, 1.0, 2.0], 1), 2.0);
    }
}
