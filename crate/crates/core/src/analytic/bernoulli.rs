use crate::TAU;
#[allow(unused_imports)]
use num_traits::Float;

/// Numerator and denominator of `B_{2k}` for `k = 1..=15`.
const TABLE: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

pub(crate) const TABLE_LEN: usize = TABLE.len();

/// `B_{2k}` for `1 ≤ k ≤ 15`.
pub(crate) fn b2k(k: usize) -> f64 {
    let (num, den) = TABLE[k - 1];
    num / den
}

/// `B_{2k}/(2k)!` for any `k ≥ 1`.
///
/// Beyond the exact table this uses `B_{2k}/(2k)! = (−1)^{k+1} 2ζ(2k)/(2π)^{2k}`.
pub(crate) fn b2k_over_factorial(k: usize) -> f64 {
    if k <= TABLE_LEN {
        let mut fact = 1.0;
        for j in 2..=2 * k {
            fact *= j as f64;
        }
        return b2k(k) / fact;
    }
    let e = 2 * k as i32;
    let mut z = 1.0;
    for n in 2..40 {
        let term = (n as f64).powi(-e);
        z += term;
        if term < 1e-18 {
            break;
        }
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2.0 * z / TAU.powi(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_zeta_formula() {
        for k in 1..=TABLE_LEN {
            let e = 2 * k as i32;
            let mut z = 0.0;
            for n in (1..20_000).rev() {
                z += (n as f64).powi(-e);
            }
            if k == 1 {
                z = core::f64::consts::PI.powi(2) / 6.0;
            } else if k == 2 {
                z = core::f64::consts::PI.powi(4) / 90.0;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let via_zeta = sign * 2.0 * z / TAU.powi(e);
            let exact = b2k_over_factorial(k);
            assert!((via_zeta - exact).abs() <= 1e-13 * exact.abs(), "k={k}");
        }
    }
}
