#![allow(clippy::excessive_precision)]

use proptest::prelude::*;
use wilton_core::analytic::{gamma_rotated, ComplexPoint, Constants};
use wilton_core::hilbert::GridSettings;
use wilton_core::sieve::build_table;
use wilton_core::wilton::*;
use wilton_core::Complex64;

// λ(s, v) = v^s/s · ₁F₁(s; s+1; iv) at 40 digits; Λ = Γ(s)e^{iπs/2} − λ.
// (σ, τ, v, Re λ, Im λ, Re Λ, Im Λ)
const LAMBDA_ORACLE: [(f64, f64, f64, f64, f64, f64, f64); 6] = [
    (
        0.5,
        3.0,
        10.0,
        -0.224_630_711_967_692_54,
        0.093_026_301_306_074_913,
        0.224_723_328_198_296_79,
        -0.092_846_465_475_913_354,
    ),
    (
        0.5,
        -7.0,
        3.0,
        -0.386_133_015_780_308_79,
        0.083_536_040_270_082_218,
        2.652_669_635_993_961,
        0.986_976_480_165_835_43,
    ),
    (
        0.3,
        20.0,
        0.5,
        -0.027_952_751_173_951_742,
        -0.028_080_160_508_097_642,
        0.027_952_751_173_951_742,
        0.028_080_160_508_097_642,
    ),
    (
        0.8,
        -40.0,
        60.0,
        7.825_329_791_568_340_2,
        1.599_585_135_293_447_1,
        -0.252_180_650_748_044_45,
        -1.262_709_731_780_147_6,
    ),
    (
        0.5,
        -30.0,
        20.0,
        0.337_511_693_214_282_88,
        0.241_846_580_966_020_74,
        -1.681_880_605_521_556,
        -2.357_468_838_081_252_1,
    ),
    (
        0.2,
        45.0,
        80.0,
        0.012_780_289_768_349_917,
        -0.014_352_294_924_792_466,
        -0.012_780_289_768_349_917,
        0.014_352_294_924_792_466,
    ),
];

// I(x, v) by per-interval tanh-sinh quadrature at 30 digits.
const I_ORACLE: [(f64, f64, f64, f64); 4] = [
    (0.5, 20.0, 0.916_331_272_898_021_3, 1.932_539_542_180_520_7),
    (1.0, 10.0, 0.590_106_096_809_820_79, 2.533_789_037_859_558_6),
    (0.3, 0.7, 1.479_301_504_479_920_9, 0.590_801_222_445_918_83),
    (2.5, 7.5, 0.200_380_941_311_628_37, 0.416_835_614_036_147_16),
];

#[test]
fn lambda_and_big_lambda_match_oracle() {
    for (sg, tau, v, lr, li, br, bi) in LAMBDA_ORACLE {
        let s = ComplexPoint::new(sg, tau);
        let l = lambda_inc(s, v).unwrap();
        let b = Lambda_inc(s, v).unwrap();
        assert!(
            (l - Complex64::new(lr, li)).norm() < 1e-11,
            "λ at {s:?}, {v}: {l}"
        );
        assert!(
            (b - Complex64::new(br, bi)).norm() < 1e-11,
            "Λ at {s:?}, {v}: {b}"
        );
    }
}

#[test]
fn real_variants_are_components() {
    let s = ComplexPoint::new(0.5, 3.0);
    let l = lambda_inc(s, 10.0).unwrap();
    let b = Lambda_inc(s, 10.0).unwrap();
    assert_eq!(Ci(s, 10.0).unwrap(), l.re);
    assert_eq!(Si(s, 10.0).unwrap(), l.im);
    assert_eq!(ci(s, 10.0).unwrap(), b.re);
    assert_eq!(si(s, 10.0).unwrap(), b.im);
}

#[test]
fn lambda_vanishes_at_zero() {
    let s = ComplexPoint::critical(2.0);
    assert_eq!(lambda_inc(s, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    let small = lambda_inc(s, 1e-12).unwrap();
    assert!(small.norm() < 1e-5);
}

#[test]
fn strip_is_enforced() {
    for s in [
        ComplexPoint::new(0.0, 1.0),
        ComplexPoint::new(1.0, 1.0),
        ComplexPoint::new(1.5, 0.0),
    ] {
        assert!(lambda_inc(s, 1.0).is_err());
        assert!(Lambda_inc(s, 1.0).is_err());
    }
    assert!(Lambda_inc(ComplexPoint::critical(1.0), 0.0).is_err());
}

#[test]
fn completion_identity_on_a_grid() {
    let mut worst = 0.0f64;
    for tau in [-50.0, -17.5, -3.0, 0.0, 1.0, 12.0, 49.0] {
        for v in [0.3, 2.0, 9.5, 40.0, 100.0] {
            let s = ComplexPoint::critical(tau);
            let sum = lambda_inc(s, v).unwrap() + Lambda_inc(s, v).unwrap();
            worst = worst.max((sum - gamma_rotated(s).unwrap()).norm());
        }
    }
    assert!(worst < 1e-8, "{worst}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lambda_bound_beyond_v(v in 0.1f64..60.0, gap in 0.01f64..60.0, neg in any::<bool>()) {
        let tau = if neg { -(v + gap) } else { v + gap };
        let r = lambda_inc_quad(ComplexPoint::critical(tau), v).unwrap();
        let bound = (2.0 * v.sqrt() / gap).min(4.0);
        prop_assert!(r.value.norm() <= bound + r.err_estimate, "τ={} v={} |λ|={} bound={}", tau, v, r.value.norm(), bound);
    }

    #[test]
    fn big_lambda_bound_below_v(v in 0.1f64..60.0, frac in 0.0f64..0.999, neg in any::<bool>()) {
        let a = v * frac;
        let tau = if neg { -a } else { a };
        let r = Lambda_inc_quad(ComplexPoint::critical(tau), v).unwrap();
        let bound = (2.0 * v.sqrt() / (v - a)).min(4.0);
        prop_assert!(r.value.norm() <= bound + r.err_estimate, "τ={} v={} |Λ|={} bound={}", tau, v, r.value.norm(), bound);
    }
}

#[test]
fn log_integral_constant_is_minus_gamma_plus_half_pi_i() {
    let r = log_integral_constant().unwrap();
    let expected = Complex64::new(
        -Constants::frozen().euler_gamma,
        core::f64::consts::FRAC_PI_2,
    );
    assert!((r.value - expected).norm() < 1e-8, "{}", r.value);
}

#[test]
fn oscillatory_integral_matches_oracle() {
    let table = build_table(100).unwrap();
    for (x, v, re, im) in I_ORACLE {
        let r = I_of(x, v, &table).unwrap();
        let e = Complex64::new(re, im);
        assert!(
            (r.value - e).norm() < 1e-10 * e.norm(),
            "I({x}, {v}) = {}",
            r.value
        );
        assert!(r.err_estimate < 1e-6 * e.norm());
    }
}

#[test]
fn oscillatory_integral_below_one_is_elementary() {
    // 2∫₀^v −(log t + c) e^{iωt} dt from the full exponential series.
    let table = build_table(10).unwrap();
    let c = 2.0 * Constants::frozen().euler_gamma - 1.0;
    for (x, v) in [(0.2, 0.9f64), (1.3, 0.25), (0.05, 0.999)] {
        let w = core::f64::consts::TAU * x;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut coef = Complex64::new(1.0, 0.0);
        for k in 0..80 {
            let k1 = (k + 1) as f64;
            sum += coef * (v.powf(k1) * ((v.ln() + c) / k1 - 1.0 / (k1 * k1)));
            coef *= Complex64::new(0.0, w) / k1;
        }
        let r = I_of(x, v, &table).unwrap();
        assert!((r.value + 2.0 * sum).norm() < 1e-12, "({x}, {v})");
    }
}

#[test]
fn oscillatory_integral_respects_table() {
    let table = build_table(10).unwrap();
    assert!(I_of(0.5, 11.0, &table).is_err());
    assert!(I_of(0.0, 1.0, &table).is_err());
}

#[test]
fn critical_line_representation() {
    let table = build_table(100).unwrap();
    let coarse = plancherel_check(0.5, 20.0, 500.0, &table).unwrap();
    let fine = plancherel_check(0.5, 20.0, 3000.0, &table).unwrap();
    assert!(fine.difference.norm() < 1e-2, "{}", fine.difference);
    assert!(fine.difference.norm() <= coarse.difference.norm() + fine.tail_budget);
    assert!(fine.difference.norm() <= fine.tail_budget + fine.quad_err);
    let other = plancherel_check(1.0, 10.0, 3000.0, &table).unwrap();
    assert!(other.difference.norm() < 1e-2, "{}", other.difference);
    assert!(plancherel_check(0.5, 60.0, 100.0, &table).is_err());
}

#[test]
fn correction_vanishes_at_one() {
    let f = F_correction(1.0).unwrap();
    assert!(
        f.re_direct.abs() < 1e-5 && f.re_via_B.abs() < 1e-5 && f.im.abs() < 1e-5,
        "{f:?}"
    );
}

#[test]
fn correction_routes_agree() {
    for x in [0.37, 2.0, 11.0] {
        let f = F_correction_with(x, GridSettings::FAST).unwrap();
        assert!((f.re_direct - f.re_via_B).abs() < 1e-4, "{f:?}");
        assert!(f.re_direct.is_finite() && f.im.is_finite() && f.err_bound.is_finite());
    }
}

#[test]
fn correction_is_continuous_at_zero() {
    let v: Vec<Complex64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&x| F_correction_with(x, GridSettings::COARSE).unwrap().value())
        .collect();
    let d1 = (v[0] - v[1]).norm();
    let d2 = (v[1] - v[2]).norm();
    assert!(d2 < 1e-2 && d2 < d1, "{d1} {d2}");
}

#[test]
fn residual_at_one_is_the_correction() {
    let table = build_table(1000).unwrap();
    let e = ResidualEvaluator::with_settings(1.0, GridSettings::FAST).unwrap();
    for v in [10.0, 999.5] {
        let r = e.at(v, &table).unwrap();
        assert!((r.residual + e.correction().value()).norm() < 1e-12);
        assert!(r.residual.norm() < 1e-5);
        assert_eq!(r.scale, v);
    }
}

#[test]
fn residual_refuses_out_of_range() {
    let table = build_table(100).unwrap();
    let e = ResidualEvaluator::with_settings(0.5, GridSettings::COARSE).unwrap();
    assert!(e.at(200.0, &table).is_err());
    // x = 2: x²v = 400 exceeds the table even though v does not.
    let e = ResidualEvaluator::with_settings(2.0, GridSettings::COARSE).unwrap();
    assert!(e.at(50.0, &table).is_err());
}

#[test]
fn kernel_mean_square() {
    let small = mean_square_kernel_integral(1.5).unwrap();
    assert!(small.integral > 0.0 && small.integral.is_finite());
    let mut ratios = Vec::new();
    for v in [4.0, 16.0, 64.0] {
        let k = mean_square_kernel_check(v).unwrap();
        assert!(k.integral > 0.0);
        ratios.push(k.ratio);
    }
    assert!(ratios.iter().all(|&r| r > 0.5 && r < 3.0), "{ratios:?}");
    assert!(mean_square_kernel_check(3.0).is_err());
}

#[test]
fn sine_series_identity() {
    let table = build_table(100_000).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let r = sine_series_check(x, &table).unwrap();
        assert!((r.series - r.closed_form).abs() < 1e-3, "{r:?}");
    }
}
