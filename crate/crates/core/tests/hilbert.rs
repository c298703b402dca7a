use wilton_core::analytic::ComplexPoint;
use wilton_core::hilbert::*;

// Reference values from a grid refined four times beyond the default one.
const B_AT_2: f64 = -1.208_225_239_0;
const B_AT_037: f64 = -5.164_660_718_5;

#[test]
fn fast_grid_reproduces_reference_values() {
    let b = B_direct(2.0, GridSettings::FAST).unwrap();
    assert!((b.value - B_AT_2).abs() < 1e-5, "{}", b.value);
    assert_eq!(b.route, BRoute::DirectPv);
    let b = B_direct(0.37, GridSettings::FAST).unwrap();
    assert!((b.value - B_AT_037).abs() < 1e-5, "{}", b.value);
}

#[test]
fn mellin_route_agrees_at_two() {
    let m = B_mellin(2.0, 2000.0).unwrap();
    assert_eq!(m.route, BRoute::MellinInversion);
    assert!((m.value - B_AT_2).abs() < 1e-3);
    assert!(
        (m.value - B_AT_2).abs() <= m.err_bound + 1e-5,
        "{} ± {}",
        m.value,
        m.err_bound
    );
}

#[test]
fn sum_identity_on_independent_grids() {
    for x in [0.37, 3.0] {
        let alt = GridSettings {
            step: GridSettings::FAST.step * ALT_STEP_FACTOR,
            ..GridSettings::FAST
        };
        let bx = B_direct(x, GridSettings::FAST).unwrap();
        let binv = B_direct(1.0 / x, alt).unwrap();
        let s = A1Grid::around(&[1.0], GridSettings::FAST)
            .unwrap()
            .smooth_sum(x)
            .unwrap();
        let lhs = x * bx.value + binv.value;
        assert!((lhs - s.value).abs() < 1e-5, "x={x}: {lhs} vs {}", s.value);
    }
}

#[test]
fn smooth_sum_symmetry_and_sign() {
    let g = A1Grid::around(&[2.5], GridSettings::FAST).unwrap();
    let h = A1Grid::around(&[0.4], GridSettings::FAST).unwrap();
    let a = g.smooth_sum(2.5).unwrap().value;
    let b = h.smooth_sum(0.4).unwrap().value;
    assert!(a < 0.0 && b < 0.0);
    assert!((a - 2.5 * b).abs() < 1e-5, "{a} vs {}", 2.5 * b);
}

#[test]
fn smooth_derivative_matches_finite_difference() {
    let x = 1.7;
    let g = A1Grid::around(&[x], GridSettings::FAST).unwrap();
    let h = 1e-5;
    let fd = (g.smooth_sum(x + h).unwrap().value - g.smooth_sum(x - h).unwrap().value) / (2.0 * h);
    let d = g.smooth_derivative(x).unwrap().value;
    assert!((fd - d).abs() < 1e-4, "{fd} vs {d}");
}

#[test]
fn kernel_identity_at_one_and_037() {
    for x in [1.0, 0.37] {
        let k = pv_kernel_identity_with(x, GridSettings::FAST).unwrap();
        assert!(
            (k.lhs - k.rhs).abs() < 1e-4,
            "x={x}: {} vs {}",
            k.lhs,
            k.rhs
        );
    }
}

#[test]
fn b_decays_faster_than_x_to_minus_09() {
    let mut running = 0.0f64;
    let mut first = None;
    for x in [10.0, 100.0, 1000.0, 10_000.0] {
        let b = B_direct(x, GridSettings::FAST).unwrap();
        let r = b.value.abs() * x.powf(0.9);
        running = running.max(r);
        first.get_or_insert(r);
        assert!(
            (b.value - b_asymptotic_large(x)).abs() < 0.05 * b.value.abs(),
            "x={x}"
        );
    }
    assert!(running <= first.unwrap() * 1.0001);
}

#[test]
fn small_x_behaviour() {
    let x = 1e-3;
    let b = B_direct(x, GridSettings::FAST).unwrap();
    assert!(
        (b.value - b_asymptotic_small(x)).abs() < 0.05,
        "{} vs {}",
        b.value,
        b_asymptotic_small(x)
    );
}

#[test]
fn mellin_transform_of_b() {
    for s in [ComplexPoint::new(0.5, 0.0), ComplexPoint::new(0.7, 1.0)] {
        let r = mellin_B_check(s).unwrap();
        assert!(r.value.norm() < 1e-3, "{s:?}: {}", r.value);
    }
}

#[test]
fn f_decays_on_the_critical_line() {
    let mut worst = 0.0f64;
    let mut tau = 2.0f64;
    while tau <= 500.0 {
        let f = F_of(ComplexPoint::critical(tau)).unwrap();
        let l = (2.0 + tau).ln();
        worst = worst.max(f.norm() * tau.powf(1.5) / (l * l));
        tau *= 1.05;
    }
    assert!(worst < 10.0, "{worst}");
}

#[test]
fn rejects_non_positive_x() {
    assert!(B_of(0.0).is_err());
    assert!(B_of(-1.0).is_err());
    assert!(B_mellin(2.0, 1e6).is_err());
    assert!(mellin_B_check(ComplexPoint::new(1.2, 0.0)).is_err());
}
