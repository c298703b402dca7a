use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::bernoulli::b2k_over_factorial;
use super::gamma::ln_gamma_unchecked;
use super::ComplexPoint;
use crate::{Error, Result, TAU};

const MAX_CORRECTIONS: usize = 40;

/// Number of explicit terms in the Euler–Maclaurin sum for height `τ`.
///
/// With `2πN ≥ 1.9|τ|` the correction terms shrink geometrically, so the
/// adaptive correction loop reaches rounding level well before its cap.
fn cutoff(s: Complex64) -> usize {
    let t = s.im.abs().max(s.re.abs());
    16.max((0.3 * t).ceil() as usize + 10)
}

/// Riemann `ζ(s)` by Euler–Maclaurin summation.
pub fn zeta(s: ComplexPoint) -> Result<Complex64> {
    let s = s.to_complex();
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole { what: "ζ", at: s });
    }
    Ok(zeta_unchecked(s))
}

pub(crate) fn zeta_unchecked(s: Complex64) -> Complex64 {
    let n = cutoff(s);
    let mut head = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        // Smallest terms first.
        head += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let mut total = head + n_pow * nf / (s - 1.0) + n_pow * 0.5;

    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) N^{−s−2k+1}
    let mut rising = s; // s(s+1)…(s+2k−2)
    let mut pow = n_pow / nf;
    let inv_n2 = 1.0 / (nf * nf);
    let scale = total.norm().max(1e-300);
    for k in 1..=MAX_CORRECTIONS {
        let term = rising * pow * b2k_over_factorial(k);
        total += term;
        if term.norm() < 1e-17 * scale {
            break;
        }
        let kf = k as f64;
        rising *= (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf);
        pow *= inv_n2;
    }
    total
}

/// Hardy's `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`.
pub fn hardy_z(t: f64) -> f64 {
    let theta =
        ln_gamma_unchecked(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * core::f64::consts::PI.ln();
    (Complex64::from_polar(1.0, theta) * zeta_unchecked(Complex64::new(0.5, t))).re
}

/// Left minus right of `−π ζ(−s)/ζ(s+1) = (2π)^{−s} sin(πs/2) Γ(s+1)`.
///
/// A self-test tying [`zeta`] and the gamma function together.
pub fn fe_check(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    let zm = zeta(ComplexPoint::from(-z))?;
    let zp = zeta(ComplexPoint::from(z + 1.0))?;
    if zp.norm() == 0.0 {
        return Err(Error::Pole {
            what: "1/ζ(s+1)",
            at: z,
        });
    }
    let lhs = -core::f64::consts::PI * zm / zp;
    // (2π)^{-s} sin(πs/2) Γ(s+1), assembled in log form against overflow.
    let sp1 = z + 1.0;
    if sp1.im == 0.0 && sp1.re <= 0.0 && sp1.re == sp1.re.round() {
        return Err(Error::Pole {
            what: "Γ", at: sp1
        });
    }
    let half = z * core::f64::consts::FRAC_PI_2;
    let i = Complex64::i();
    // sin w = (e^{iw} − e^{−iw})/(2i); factor out the dominant exponential.
    let (dominant, ratio) = if half.im >= 0.0 {
        (-i * half, (2.0 * i * half).exp())
    } else {
        (i * half, (-2.0 * i * half).exp())
    };
    let sign = if half.im >= 0.0 { -1.0 } else { 1.0 };
    let ln_rhs = -z * TAU.ln() + dominant + ln_gamma_unchecked(sp1);
    let rhs = (ln_rhs).exp() * (1.0 - ratio) * sign / (2.0 * i);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_and_zero() {
        let z2 = zeta(ComplexPoint::new(2.0, 0.0)).unwrap();
        assert!((z2.re - core::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
        let z0 = zeta(ComplexPoint::new(0.0, 0.0)).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-15);
        let zm1 = zeta(ComplexPoint::new(-1.0, 0.0)).unwrap();
        assert!((zm1.re + 1.0 / 12.0).abs() < 1e-13);
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(
            zeta(ComplexPoint::new(1.0, 0.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn sin_factor_matches_direct_form() {
        let s = Complex64::new(0.3, 2.0);
        let direct = (-s * TAU.ln()).exp()
            * (s * core::f64::consts::FRAC_PI_2).sin()
            * ln_gamma_unchecked(s + 1.0).exp();
        let lhs = -core::f64::consts::PI * zeta_unchecked(-s) / zeta_unchecked(s + 1.0);
        let d = fe_check(ComplexPoint::from(s)).unwrap();
        assert!(((lhs - direct) - d).norm() < 1e-13);
    }
}
