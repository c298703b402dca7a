//! Divisor counts, the Dirichlet remainder `Δ` and partial sums of `ψ`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::analytic::Constants;
use crate::{Error, Result};

/// Immutable table of `τ(n)` and `Σ_{m≤n} τ(m)` for `n ≤ limit`.
///
/// Index 0 is a placeholder (`counts[0] = 0`, `prefix[0] = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    limit: usize,
    counts: Vec<u32>,
    prefix: Vec<u64>,
}

/// Sieve `τ(n)` for `1 ≤ n ≤ limit` by marking multiples of every `d`.
pub fn build_table(limit: usize) -> Result<DivisorTable> {
    if limit == 0 {
        return Err(Error::invalid("table limit must be at least 1"));
    }
    let mut counts = vec![0u32; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            counts[m] += 1;
        }
    }
    let mut prefix = vec![0u64; limit + 1];
    for n in 1..=limit {
        prefix[n] = prefix[n - 1] + u64::from(counts[n]);
    }
    Ok(DivisorTable {
        limit,
        counts,
        prefix,
    })
}

impl DivisorTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// `τ(n)`.
    pub fn tau(&self, n: usize) -> Result<u32> {
        if n == 0 || n > self.limit {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as f64,
                limit: self.limit as f64,
            });
        }
        Ok(self.counts[n])
    }

    /// `D(x) = Σ_{n≤x} τ(n)` for `0 ≤ x ≤ limit`.
    pub fn summatory(&self, x: f64) -> Result<u64> {
        if !(x >= 0.0) || x > self.limit as f64 {
            return Err(Error::OutOfRange {
                what: "x",
                value: x,
                limit: self.limit as f64,
            });
        }
        Ok(self.prefix[x as usize])
    }

    fn check_v(&self, v: f64) -> Result<usize> {
        if v.is_nan() || v > self.limit as f64 {
            return Err(Error::OutOfRange {
                what: "v",
                value: v,
                limit: self.limit as f64,
            });
        }
        Ok(if v < 1.0 { 0 } else { v as usize })
    }
}

/// `Δ(x) = Σ_{n≤x} τ(n) − x(log x + 2γ − 1)` for `1 ≤ x ≤ limit`.
pub fn delta(x: f64, table: &DivisorTable) -> Result<f64> {
    if !(x >= 1.0) || x > table.limit as f64 {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
            limit: table.limit as f64,
        });
    }
    Ok(delta_unchecked(x, table))
}

/// `Δ` on `(0, limit]`; below 1 the divisor sum is empty.
pub(crate) fn delta_unchecked(x: f64, table: &DivisorTable) -> f64 {
    let g = Constants::frozen().euler_gamma;
    table.prefix[x as usize] as f64 - x * (libm::log(x) + 2.0 * g - 1.0)
}

/// `e^{2πi·frac}` with `frac ∈ [0, 1)` already reduced.
#[inline]
pub(crate) fn unit_phase(frac: f64) -> Complex64 {
    let (s, c) = libm::sincos(crate::TAU * frac);
    Complex64::new(c, s)
}

/// `ψ(x, v) = Σ_{n≤v} τ(n)/n · e^{2πinx}`.
///
/// The phase `nx` is reduced modulo 1 before the trigonometric call and the
/// sum is Neumaier-compensated in each component.
pub fn psi_partial(x: f64, v: f64, table: &DivisorTable) -> Result<Complex64> {
    let n_max = table.check_v(v)?;
    if !x.is_finite() {
        return Err(Error::invalid("x must be finite"));
    }
    Ok(psi_sum(x, n_max, table))
}

pub(crate) fn psi_sum(x: f64, n_max: usize, table: &DivisorTable) -> Complex64 {
    let xr = x - libm::floor(x);
    let mut acc = CompensatedComplex::default();
    for n in 1..=n_max {
        let frac = frac_mul(n as u64, xr);
        let w = f64::from(table.counts[n]) / n as f64;
        acc.add(unit_phase(frac) * w);
    }
    acc.value()
}

/// Fractional part of `n·x` for `x ∈ [0, 1)`, computed with an error-free
/// product so large `n` does not lose phase.
#[inline]
pub(crate) fn frac_mul(n: u64, x: f64) -> f64 {
    let nf = n as f64;
    let p = nf * x;
    let err = libm::fma(nf, x, -p);
    let fp = p - libm::floor(p);
    let f = fp + err;
    f - libm::floor(f)
}

/// Real part of [`psi_partial`]: `Σ τ(n)/n cos 2πnx`.
pub fn psi1_partial(x: f64, v: f64, table: &DivisorTable) -> Result<f64> {
    psi_partial(x, v, table).map(|z| z.re)
}

/// Imaginary part of [`psi_partial`]: `Σ τ(n)/n sin 2πnx`.
pub fn psi2_partial(x: f64, v: f64, table: &DivisorTable) -> Result<f64> {
    psi_partial(x, v, table).map(|z| z.im)
}

#[derive(Default)]
pub(crate) struct CompensatedComplex {
    re: (f64, f64),
    im: (f64, f64),
}

impl CompensatedComplex {
    #[inline]
    fn step(acc: &mut (f64, f64), v: f64) {
        let t = acc.0 + v;
        if acc.0.abs() >= v.abs() {
            acc.1 += (acc.0 - t) + v;
        } else {
            acc.1 += (v - t) + acc.0;
        }
        acc.0 = t;
    }

    #[inline]
    pub(crate) fn add(&mut self, z: Complex64) {
        Self::step(&mut self.re, z.re);
        Self::step(&mut self.im, z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let t = build_table(12).unwrap();
        assert_eq!(t.counts()[1], 1);
        assert_eq!(t.counts()[12], 6);
        assert_eq!(t.prefix()[12], 35);
        assert!(build_table(0).is_err());
    }

    #[test]
    fn psi_half_four() {
        let t = build_table(10).unwrap();
        let p = psi_partial(0.5, 4.0, &t).unwrap();
        assert!((p.re - 1.0 / 12.0).abs() < 1e-15);
        assert!(p.im.abs() < 1e-15);
        assert_eq!(psi_partial(0.3, 0.5, &t).unwrap(), Complex64::new(0.0, 0.0));
        assert!(psi_partial(0.3, 11.0, &t).is_err());
    }

    #[test]
    fn frac_mul_is_exact_for_large_n() {
        let x = 0.1;
        let n = 1_000_000_007u64;
        // 0.1 as f64 is 0.1000000000000000055511151231257827...
        let exact = (n as f64 * 5.551_115_123_125_783e-18 + 0.7) % 1.0;
        assert!((frac_mul(n, x) - exact).abs() < 1e-9);
    }
}
