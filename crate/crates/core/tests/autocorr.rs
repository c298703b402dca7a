#![allow(clippy::excessive_precision)]

use wilton_core::analytic::{ComplexPoint, Constants};
use wilton_core::autocorr::*;

// A at rational points: exact per-period integrals in 25-digit arithmetic,
// summed over periods with mpmath's nsum (A(1/3) taken as A(3)/3).
const A_ORACLE: [(f64, f64); 5] = [
    (1.0, 1.260_661_401_507_812_6),
    (2.0, 1.544_418_511_981_746_3),
    (1.5, 1.323_310_527_838_206_5),
    (1.0 / 3.0, 0.575_003_469_462_183_95),
    (5.0, 1.962_394_311_690_244_6),
];

#[test]
fn a_matches_reference() {
    for (x, a) in A_ORACLE {
        let r = A_of(x).unwrap();
        assert!((r.value - a).abs() < 1e-8, "A({x}) = {}", r.value);
        assert!((r.value - a).abs() <= r.err_bound + 1e-9);
    }
}

#[test]
fn a_at_one_is_log_two_pi_minus_gamma() {
    let c = Constants::frozen();
    let r = A_of(1.0).unwrap();
    assert!((r.value - (c.log_2pi - c.euler_gamma)).abs() < 1e-9);
}

#[test]
fn inversion_symmetry() {
    for x in [0.37, 2.6, 11.0] {
        let a = A_of(x).unwrap().value;
        let b = A_of(1.0 / x).unwrap().value;
        assert!((a - x * b).abs() < 1e-8, "{x}");
        assert!((A1_of(x).unwrap() - b).abs() < 1e-8);
    }
}

#[test]
fn presets_agree_within_their_accuracy() {
    let reference = A_of(2.0).unwrap().value;
    for (cfg, tol) in [
        (AutocorrConfig::FAST, 5e-8),
        (AutocorrConfig::GRID, 1e-6),
        (AutocorrConfig::COARSE, 3e-5),
    ] {
        let v = A_with(2.0, &cfg).unwrap().value;
        assert!((v - reference).abs() < tol, "{cfg:?}: {v}");
    }
}

#[test]
fn large_x_model() {
    for x in [50.0, 400.0] {
        let d = A_with(x, &AutocorrConfig::FAST).unwrap().value - asymptotic(x);
        assert!(
            d.abs() <= ASYMPTOTIC_REMAINDER * (1.0 + x.ln()) / x,
            "{x}: {d}"
        );
    }
}

#[test]
fn mellin_transform_matches_zeta_product() {
    let r = mellin_A1_check(ComplexPoint::new(0.5, 2.0)).unwrap();
    assert!(r.norm() < 1e-4, "{r}");
    assert!(mellin_A1_exact(ComplexPoint::new(1.0, 0.0)).is_err());
}

#[test]
fn rejects_bad_arguments() {
    assert!(A_of(0.0).is_err());
    assert!(A_of(f64::INFINITY).is_err());
    assert!(A_of(-1.0).is_err());
}
