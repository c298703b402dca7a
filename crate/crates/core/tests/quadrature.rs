#![allow(clippy::excessive_precision)]

use wilton_core::quadrature::*;
use wilton_core::Complex64;

#[test]
fn adaptive_handles_endpoint_singularity() {
    let r = integrate_adaptive_real(|t| 1.0 / t.sqrt(), 0.0, 4.0, 1e-12).unwrap();
    assert!((r.value - 4.0).abs() < 1e-10, "{}", r.value);
    assert!(r.err_estimate < 1e-8);
    let r = integrate_adaptive(
        |t| Complex64::new(0.0, t).exp(),
        0.0,
        core::f64::consts::PI,
        1e-13,
    )
    .unwrap();
    assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
}

#[test]
fn breakpoints_are_respected() {
    let f = |t: f64| (t - t.floor()) * (t - t.floor());
    let r = Integrator::new(1e-13)
        .integrate_with_points(f, &[0.0, 1.0, 2.0, 3.0, 3.5])
        .unwrap();
    assert!((r.value - (1.0 + 0.125 / 3.0)).abs() < 1e-12, "{}", r.value);
}

#[test]
fn oscillatory_with_log_phase() {
    // ∫₁⁵⁰ e^{i(2t + 3 log t)}/t dt, mpmath at 30 digits.
    let r = integrate_oscillatory(
        |t| Complex64::new(1.0 / t, 0.0),
        Phase::with_log(2.0, 3.0),
        1.0,
        50.0,
        1e-12,
    )
    .unwrap();
    let e = Complex64::new(-0.197_446_157_465_108_41, -0.069_933_019_634_088_179);
    assert!((r.value - e).norm() < 1e-10, "{}", r.value);
}

#[test]
fn oscillatory_tail() {
    // ∫₁^∞ e^{3it} t^{−3/2} dt, mpmath quadosc.
    let r =
        integrate_oscillatory_tail(|t| Complex64::new(t.powf(-1.5), 0.0), 3.0, 1.0, 1e-12).unwrap();
    let e = Complex64::new(-0.141_878_426_724_058_17, -0.247_612_623_105_937_83);
    assert!((r.value - e).norm() < 1e-9, "{}", r.value);
    assert!((r.value - e).norm() <= r.err_estimate + 1e-11);
}

#[test]
fn principal_value_of_cosine() {
    // p.v.∫₀⁴ cos t/(1.3 − t) dt.
    let p = PrincipalValueProblem::new(f64::cos, 1.3, 4.0, Tail::Zero);
    p.check_dini().unwrap();
    let r = integrate_pv(&p, 1e-12).unwrap();
    assert!(
        (r.value - 2.953_127_657_397_760_7).abs() < 1e-10,
        "{}",
        r.value
    );
    let wide = integrate_pv(&p.with_window(0.5), 1e-12).unwrap();
    assert!((wide.value - r.value).abs() < 1e-10);
}

#[test]
fn principal_value_rejects_a_jump() {
    let p = PrincipalValueProblem::new(
        |t: f64| if t < 1.0 { 0.0 } else { 1.0 },
        1.0,
        3.0,
        Tail::Zero,
    );
    assert!(p.check_dini().is_err());
}

#[test]
fn exact_segments_match_adaptive() {
    // {t}{xt}/t² on [1, 2] with x = 1.5 splits at t = 4/3.
    let x = 1.5;
    let segs = [
        FracSegment {
            a: 1.0,
            b: 4.0 / 3.0,
            m: 1.0,
            n: 1.0,
            x,
        },
        FracSegment {
            a: 4.0 / 3.0,
            b: 2.0,
            m: 1.0,
            n: 2.0,
            x,
        },
    ];
    let exact = integrate_piecewise_exact(&segs).unwrap();
    let f = |t: f64| (t - t.floor()) * (x * t - (x * t).floor()) / (t * t);
    let r = Integrator::new(1e-14)
        .integrate_with_points(f, &[1.0, 4.0 / 3.0, 2.0])
        .unwrap();
    assert!((exact - r.value).abs() < 1e-13);
    let bad = [FracSegment {
        a: 1.0,
        b: 2.0,
        m: 1.0,
        n: 1.0,
        x,
    }];
    assert!(integrate_piecewise_exact(&bad).is_err());
}

#[test]
fn epsilon_accelerates_alternating_series() {
    // Partial sums of Σ (−1)^k/(k+1) → log 2.
    let mut table = EpsilonTable::new();
    let mut s = 0.0;
    let mut best = Complex64::new(0.0, 0.0);
    for k in 0..20 {
        s += if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0);
        best = table.push(Complex64::new(s, 0.0)).0;
    }
    assert!(
        (best.re - core::f64::consts::LN_2).abs() < 1e-12,
        "{}",
        best.re
    );
}

#[test]
fn log_grid_integrates_smooth_functions() {
    let g = LogGrid::build(|t| Ok(1.0 / (1.0 + t * t)), 0.0, 0.05, -3.0, 3.0).unwrap();
    let r: QuadResult<f64> = g.integrate(0, g.len(), f64::exp);
    let (a, b) = (g.u_lo().exp(), g.u_hi().exp());
    assert!(
        (r.value - (b.atan() - a.atan())).abs() < 1e-12,
        "{}",
        r.value
    );
}
