use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::bernoulli::b2k;
use super::ComplexPoint;
use crate::{Error, Result};

const HALF_LN_TAU: f64 = 0.918_938_533_204_672_741_780_329_736_405_6;

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { what: "Γ", at: z });
    }
    Ok(())
}

/// `log Γ(z)` on some branch (the imaginary part is not reduced mod 2π).
///
/// The argument is shifted upwards with the recurrence until Stirling's
/// series with ten correction terms is accurate to rounding.
pub fn ln_gamma(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    check_pole(z)?;
    Ok(ln_gamma_unchecked(z))
}

pub(crate) fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    // Conjugate symmetry keeps the branch consistent across τ = 0.
    if z.im < 0.0 {
        return ln_gamma_unchecked(z.conj()).conj();
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    let target = if w.im.abs() < 15.0 { 15.0 } else { 0.5 };
    let mut prod = Complex64::new(1.0, 0.0);
    let mut count = 0;
    while w.re < target {
        prod *= w;
        w += 1.0;
        count += 1;
        // Flush the product before it can overflow.
        if count % 16 == 0 {
            shift += prod.ln();
            prod = Complex64::new(1.0, 0.0);
        }
    }
    shift += prod.ln();

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for k in 1..=10 {
        let kf = k as f64;
        series += pow * (b2k(k) / (2.0 * kf * (2.0 * kf - 1.0)));
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TAU + series - shift
}

/// `Γ(s)`.
///
/// `|Γ(σ + iτ)|` decays like `e^{−π|τ|/2}` and underflows once `|τ|` is
/// beyond roughly 450; use [`ln_gamma`] there.
pub fn gamma_fn(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    check_pole(z)?;
    if z.im == 0.0 && z.re > 0.0 && z.re == z.re.round() && z.re <= 171.0 {
        let mut f = 1.0;
        for k in 2..(z.re as u32) {
            f *= k as f64;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    if z.im == 0.0 && z.re < 0.5 {
        // Reflection keeps the sign right on the negative real axis.
        let one_minus = Complex64::new(1.0 - z.re, 0.0);
        let g = ln_gamma_unchecked(one_minus).exp().re;
        let sin = libm::sin(core::f64::consts::PI * z.re);
        return Ok(Complex64::new(core::f64::consts::PI / (sin * g), 0.0));
    }
    Ok(ln_gamma_unchecked(z).exp())
}

/// `Γ(s) e^{iπs/2}`, the value of `∫₀^∞ e^{it} t^{s−1} dt` for `0 < σ < 1`.
pub fn gamma_rotated(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    check_pole(z)?;
    let rot = Complex64::new(0.0, core::f64::consts::FRAC_PI_2) * z;
    Ok((ln_gamma_unchecked(z) + rot).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((gamma_fn(c(1.0, 0.0)).unwrap().re - 1.0).abs() < 1e-15);
        let half = gamma_fn(c(0.5, 0.0)).unwrap();
        assert!((half.re - core::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!((gamma_fn(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-12);
        assert!(
            (gamma_fn(c(-0.5, 0.0)).unwrap().re + 2.0 * core::f64::consts::PI.sqrt()).abs() < 1e-13
        );
    }

    #[test]
    fn poles() {
        for k in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_fn(c(k, 0.0)), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn recurrence() {
        for (re, im) in [(0.3, 2.0), (0.5, 40.0), (1.7, -3.0), (0.01, 0.2)] {
            let z = Complex64::new(re, im);
            let g = gamma_fn(c(re, im)).unwrap();
            let g1 = gamma_fn(c(re + 1.0, im)).unwrap();
            assert!((g1 - g * z).norm() <= 1e-13 * g1.norm(), "{z}");
        }
    }
}
