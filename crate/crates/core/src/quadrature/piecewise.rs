use crate::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// A segment `[a, b]` on which `⌊t⌋ = m` and `⌊xt⌋ = n`, so that
/// `{t}{xt}/t² = (t − m)(xt − n)/t²` is a rational function there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracSegment {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub n: f64,
    pub x: f64,
}

impl FracSegment {
    /// Closed-form `∫_a^b (t − m)(xt − n)/t² dt`, assuming the segment is valid.
    ///
    /// With `α = a − m`, `β = xa − n` and `s = t − a` the integrand is
    /// `(α + s)(β + xs)/(a + s)²`; each of the three resulting integrals is a
    /// positive quantity evaluated without cancellation.
    #[inline]
    pub fn integral(&self) -> f64 {
        frac_segment_integral(self.a, self.b, self.m, self.n, self.x)
    }
}

#[inline]
pub(crate) fn frac_segment_integral(a: f64, b: f64, m: f64, n: f64, x: f64) -> f64 {
    let h = b - a;
    if h <= 0.0 {
        return 0.0;
    }
    if a == 0.0 {
        // Only reachable with m = n = 0, where the integrand is x.
        return x * h;
    }
    let alpha = a - m;
    let beta = x * a - n;
    let r = h / a;
    // I0 = ∫ ds/(a+s)², I1 = ∫ s ds/(a+s)², I2 = ∫ s² ds/(a+s)²
    let i0 = h / (a * b);
    let (i1, i2) = if r < 0.1 {
        let mut i1 = 0.0;
        let mut i2 = 0.0;
        let mut rk = r * r;
        let mut k = 2.0;
        let mut sign = 1.0;
        loop {
            let t1 = sign * (k - 1.0) * rk / k;
            let t2 = sign * (k - 1.0) * rk * r / (k + 1.0);
            i1 += t1;
            i2 += t2;
            if t1.abs() < 1e-17 * i1.abs() && t2.abs() < 1e-17 * i2.abs() {
                break;
            }
            rk *= r;
            k += 1.0;
            sign = -sign;
        }
        (i1, a * i2)
    } else {
        let l = r.ln_1p();
        let q = r / (1.0 + r);
        (l - q, a * (r - 2.0 * l + q))
    };
    alpha * beta * i0 + (alpha * x + beta) * i1 + x * i2
}

/// Sum of exact segment integrals of `{t}{xt}/t²`.
///
/// Each segment must satisfy `⌊t⌋ = m` and `⌊xt⌋ = n` throughout its
/// interior; otherwise `InvalidSegment` is returned.
pub fn integrate_piecewise_exact(segments: &[FracSegment]) -> Result<f64> {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for s in segments {
        validate(s)?;
        let v = s.integral();
        // Neumaier summation.
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    Ok(sum + comp)
}

fn validate(s: &FracSegment) -> Result<()> {
    let bad = Err(Error::InvalidSegment { a: s.a, b: s.b });
    if !(s.a >= 0.0 && s.a <= s.b && s.b.is_finite() && s.x > 0.0 && s.x.is_finite()) {
        return bad;
    }
    if s.a == s.b {
        return Ok(());
    }
    let mid = 0.5 * (s.a + s.b);
    if mid.floor() != s.m || (s.x * mid).floor() != s.n {
        return bad;
    }
    // A breakpoint strictly inside, beyond rounding of the endpoints.
    let slack = 1.0 - 8.0 * f64::EPSILON;
    if s.m + 1.0 < s.b * slack || s.n + 1.0 < s.x * s.b * slack {
        return bad;
    }
    if s.m > s.a / slack || s.n > s.x * s.a / slack {
        return bad;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_first_breakpoint_integrand_is_x() {
        let s = FracSegment {
            a: 0.1,
            b: 0.4,
            m: 0.0,
            n: 0.0,
            x: 2.0,
        };
        assert!((integrate_piecewise_exact(&[s]).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn matches_quadrature_on_general_segment() {
        let s = FracSegment {
            a: 3.2,
            b: 3.55,
            m: 3.0,
            n: 8.0,
            x: 2.7,
        };
        let f = |t: f64| (t - 3.0) * (2.7 * t - 8.0) / (t * t);
        let q = crate::quadrature::integrate_adaptive_real(f, 3.2, 3.55, 1e-15).unwrap();
        assert!((s.integral() - q.value).abs() < 1e-15);
        let narrow = FracSegment {
            a: 3.2,
            b: 3.2001,
            ..s
        };
        let q = crate::quadrature::integrate_adaptive_real(f, 3.2, 3.2001, 1e-18).unwrap();
        assert!((narrow.integral() - q.value).abs() < 1e-18);
    }

    #[test]
    fn rejects_segment_with_interior_breakpoint() {
        let s = FracSegment {
            a: 0.9,
            b: 1.1,
            m: 0.0,
            n: 0.0,
            x: 0.5,
        };
        assert!(matches!(
            integrate_piecewise_exact(&[s]),
            Err(Error::InvalidSegment { .. })
        ));
        let s = FracSegment {
            a: 1.1,
            b: 1.4,
            m: 1.0,
            n: 3.0,
            x: 3.0,
        };
        assert!(integrate_piecewise_exact(&[s]).is_err());
    }
}
