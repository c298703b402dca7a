use num_complex::Complex64;

use super::bernoulli::{b2k, TABLE_LEN};

/// Constants shared by every module.
///
/// `c0` and `kappa` are always assembled from the other fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub euler_gamma: f64,
    /// The Stieltjes constant `γ₁`.
    pub stieltjes_1: f64,
    pub log_2pi: f64,
    /// `π²/24 − ½ log² 2π + ½ γ² + γ log 2π + 2γ₁`
    pub c0: f64,
    /// `γ − log 2π + iπ/2`
    pub kappa: Complex64,
}

const PI2_OVER_24: f64 = core::f64::consts::PI * core::f64::consts::PI / 24.0;

impl Constants {
    /// Assemble the derived constants from `γ`, `γ₁` and `log 2π`.
    pub const fn assemble(euler_gamma: f64, stieltjes_1: f64, log_2pi: f64) -> Self {
        let c0 = PI2_OVER_24 - 0.5 * log_2pi * log_2pi
            + 0.5 * euler_gamma * euler_gamma
            + euler_gamma * log_2pi
            + 2.0 * stieltjes_1;
        Constants {
            euler_gamma,
            stieltjes_1,
            log_2pi,
            c0,
            kappa: Complex64::new(euler_gamma - log_2pi, core::f64::consts::FRAC_PI_2),
        }
    }

    /// Values reproduced by [`Constants::from_limits`], frozen for speed.
    pub const fn frozen() -> Self {
        Constants::assemble(
            0.577_215_664_901_532_9,
            -0.072_815_845_483_676_72,
            1.837_877_066_409_345_5,
        )
    }

    /// Recompute `γ` and `γ₁` from their defining limits.
    pub fn from_limits() -> Self {
        Constants::assemble(
            euler_gamma_limit(),
            stieltjes_gamma1(),
            libm::log(crate::TAU),
        )
    }
}

impl Default for Constants {
    fn default() -> Self {
        Constants::frozen()
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }
    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// `γ = lim (H_n − log n)` accelerated with Euler–Maclaurin at `n = 1000`.
pub fn euler_gamma_limit() -> f64 {
    let n = 1000u32;
    let mut h = Sum::default();
    for k in (1..=n).rev() {
        h.add(1.0 / k as f64);
    }
    let nf = n as f64;
    // H_n = log n + γ + 1/(2n) − Σ B_{2k}/(2k n^{2k})
    let mut corr = Sum::default();
    corr.add(-libm::log(nf));
    corr.add(-0.5 / nf);
    let inv2 = 1.0 / (nf * nf);
    let mut pow = inv2;
    for k in 1..=6 {
        corr.add(b2k(k) / (2.0 * k as f64) * pow);
        pow *= inv2;
    }
    h.value() + corr.value()
}

/// `γ₁ = lim (Σ_{k≤n} log k/k − ½ log² n)` accelerated at the default `n = 10⁴`.
pub fn stieltjes_gamma1() -> f64 {
    stieltjes_gamma1_at(10_000)
}

/// The Euler–Maclaurin accelerated limit for `γ₁` truncated at `n`.
///
/// `γ₁ ≈ S(n) − ½ log² n − log n/(2n) + Σ_j B_{2j}/(2j) · (log n − H_{2j−1})/n^{2j}`.
pub fn stieltjes_gamma1_at(n: u32) -> f64 {
    let mut s = Sum::default();
    for k in (2..=n).rev() {
        let kf = k as f64;
        s.add(libm::log(kf) / kf);
    }
    let nf = n as f64;
    let ln = libm::log(nf);
    s.add(-0.5 * ln * ln);
    s.add(-0.5 * ln / nf);
    let inv2 = 1.0 / (nf * nf);
    let mut pow = inv2;
    let mut harmonic = 1.0; // H_{2j-1}
    for j in 1..=TABLE_LEN.min(8) {
        if j > 1 {
            harmonic += 1.0 / (2 * j - 2) as f64 + 1.0 / (2 * j - 1) as f64;
        }
        s.add(b2k(j) / (2.0 * j as f64) * (ln - harmonic) * pow);
        pow *= inv2;
    }
    s.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_matches_limits() {
        let f = Constants::frozen();
        let l = Constants::from_limits();
        assert!((f.euler_gamma - l.euler_gamma).abs() < 1e-15);
        assert!((f.stieltjes_1 - l.stieltjes_1).abs() < 1e-12);
        assert!((f.log_2pi - l.log_2pi).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn c0_assembly() {
        let c = Constants::frozen();
        let (g, l) = (c.euler_gamma, c.log_2pi);
        let direct = core::f64::consts::PI.powi(2) / 24.0 - 0.5 * l * l
            + 0.5 * g * g
            + g * l
            + 2.0 * c.stieltjes_1;
        assert!((c.c0 - direct).abs() < 1e-12);
    }
}
