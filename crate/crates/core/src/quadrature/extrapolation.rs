use alloc::vec::Vec;

use num_complex::Complex64;

/// Wynn's epsilon algorithm over a sequence of partial sums.
///
/// Feed partial sums one at a time with [`push`](EpsilonTable::push); each
/// call returns the current best extrapolated limit together with the
/// difference from the previous estimate.
#[derive(Debug, Clone, Default)]
pub struct EpsilonTable {
    // Last anti-diagonal of the epsilon table, eps_{-1} column omitted.
    diag: Vec<Complex64>,
    previous: Option<Complex64>,
    count: usize,
}

impl EpsilonTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Append a partial sum. Returns `(estimate, change)`.
    pub fn push(&mut self, s: Complex64) -> (Complex64, f64) {
        self.count += 1;
        let mut new_diag = Vec::with_capacity(self.diag.len() + 1);
        new_diag.push(s);
        // eps_{k+1}^{(n)} = eps_{k-1}^{(n+1)} + 1/(eps_k^{(n+1)} - eps_k^{(n)})
        let mut below = Complex64::new(0.0, 0.0);
        for (k, &old) in self.diag.iter().enumerate() {
            let diff = new_diag[k] - old;
            if diff.norm() == 0.0 || !diff.re.is_finite() || !diff.im.is_finite() {
                break;
            }
            let next = below + diff.inv();
            below = old;
            new_diag.push(next);
        }
        self.diag = new_diag;
        // Even columns hold the extrapolants; take the deepest one.
        let deepest_even = (self.diag.len() - 1) & !1;
        let estimate = self.diag[deepest_even];
        let change = match self.previous {
            Some(p) => (estimate - p).norm(),
            None => f64::INFINITY,
        };
        self.previous = Some(estimate);
        (estimate, change)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_harmonic_series() {
        let mut t = EpsilonTable::new();
        let mut s = 0.0;
        let mut est = Complex64::new(0.0, 0.0);
        for k in 1..=20 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            est = t.push(Complex64::new(s, 0.0)).0;
        }
        assert!(
            (est.re - core::f64::consts::LN_2).abs() < 1e-12,
            "{}",
            est.re
        );
    }

    #[test]
    fn geometric_series_is_exact_after_three_terms() {
        let mut t = EpsilonTable::new();
        let r = Complex64::new(0.3, 0.6);
        let mut s = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        let mut est = s;
        for _ in 0..3 {
            s += p;
            p *= r;
            est = t.push(s).0;
        }
        let exact = (Complex64::new(1.0, 0.0) - r).inv();
        assert!((est - exact).norm() < 1e-14);
    }
}
