#![allow(clippy::excessive_precision)]

use wilton_core::analytic::*;
use wilton_core::Complex64;

// ζ and log Γ at 40 digits (mpmath): (σ, τ, Re, Im).
const ZETA_ORACLE: [(f64, f64, f64, f64); 5] = [
    (
        0.3,
        40.0,
        0.748_775_209_504_225_84,
        -1.440_885_440_634_440_5,
    ),
    (2.0, 3.0, 0.798_021_985_146_275_72, -0.113_744_308_052_938_5),
    (
        0.7,
        -100.0,
        2.108_484_299_177_043,
        0.049_591_617_500_114_536,
    ),
    (-1.5, 7.0, 0.816_176_772_836_566_77, 1.019_644_372_020_442_9),
    (
        0.5,
        1000.0,
        0.356_334_367_194_396_06,
        0.931_997_831_232_993_67,
    ),
];

const LN_GAMMA_ORACLE: [(f64, f64, f64, f64); 3] = [
    (0.5, 3.0, -3.793_450_450_436_223_2, 0.309_819_271_086_439_17),
    (0.25, -40.0, -62.835_129_518_830_187, -107.162_739_501_899_1),
    (3.5, 0.5, 1.159_860_106_917_523_7, 0.553_815_075_521_920_52),
];

#[test]
fn zeta_matches_reference() {
    for (sg, tau, re, im) in ZETA_ORACLE {
        let z = zeta(ComplexPoint::new(sg, tau)).unwrap();
        let e = Complex64::new(re, im);
        assert!(
            (z - e).norm() < 1e-12 * e.norm().max(1.0),
            "ζ({sg}+{tau}i) = {z}"
        );
    }
}

#[test]
fn first_zero_and_pole() {
    let z = zeta(ComplexPoint::critical(14.134_725_141_734_693)).unwrap();
    assert!(z.norm() < 1e-13, "{z}");
    assert!(hardy_z(14.0) * hardy_z(14.3) < 0.0);
    assert!(zeta(ComplexPoint::new(1.0, 0.0)).is_err());
}

#[test]
fn ln_gamma_matches_reference() {
    for (sg, tau, re, im) in LN_GAMMA_ORACLE {
        let z = ln_gamma(ComplexPoint::new(sg, tau)).unwrap();
        // The imaginary part is compared modulo 2π.
        let d = z - Complex64::new(re, im);
        let k = (d.im / core::f64::consts::TAU).round();
        let d = Complex64::new(d.re, d.im - k * core::f64::consts::TAU);
        assert!(
            d.norm() < 1e-12 * re.abs().max(1.0),
            "log Γ({sg}+{tau}i) = {z}"
        );
    }
}

#[test]
fn functional_equation_across_the_strip() {
    for sg in [0.1, 0.5, 0.9] {
        for tau in [-60.0, -2.5, 0.7, 33.0, 150.0] {
            let r = fe_check(ComplexPoint::new(sg, tau)).unwrap();
            assert!(r.norm() < 1e-9, "{sg} {tau}: {r}");
        }
    }
}

#[test]
fn constants_from_limits_match_frozen_values() {
    let f = Constants::frozen();
    let l = Constants::from_limits();
    assert!((f.stieltjes_1 - -0.072_815_845_483_676_724_861).abs() < 1e-16);
    assert!((f.c0 - -0.195_853_835_073_399_339_61).abs() < 1e-15);
    assert!((l.euler_gamma - f.euler_gamma).abs() < 1e-14);
    assert!((l.stieltjes_1 - f.stieltjes_1).abs() < 1e-12);
    assert!((l.c0 - f.c0).abs() < 1e-12);
    assert_eq!(f.kappa.im, core::f64::consts::FRAC_PI_2);
}

#[test]
fn half_pi_tangent_stays_finite_far_up() {
    for tau in [1e3, -1e4, 1e6] {
        let s = ComplexPoint::new(0.5, tau);
        let t = tan_half_pi(s);
        let c = cot_half_pi(s);
        assert!(t.re.is_finite() && t.im.is_finite());
        assert!((t * c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((t.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn mean_square_grows_like_t_log_t() {
    let r = mean_square_I2(1000.0).unwrap();
    let main = 1000.0
        * ((1000.0 / core::f64::consts::TAU).ln() + 2.0 * Constants::frozen().euler_gamma - 1.0);
    assert!(
        ((r.value - main) / main).abs() < 0.02,
        "{} vs {main}",
        r.value
    );
    let e = E_of(1000.0).unwrap();
    assert!((e - (r.value - main)).abs() < 1e-6 * main);
}
