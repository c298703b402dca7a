use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::adaptive::gk21_rule;
use super::{QuadResult, QuadValue};
use crate::{Error, Result};

/// Samples of a function `f(t)` at the Gauss–Kronrod nodes of panels in
/// `u = log t`.
///
/// Integrals of `f` against different smooth weights reuse the same
/// samples, which pays off when `f` is expensive and only Hölder-regular,
/// so that adaptive refinement would chase its kinks without gaining
/// accuracy. The error estimate of a composite integral is the signed
/// Kronrod minus Gauss difference.
#[derive(Debug, Clone)]
pub struct LogGrid {
    edges: Vec<f64>,
    samples: Vec<[f64; 21]>,
    nodes: [f64; 21],
    wk: [f64; 21],
    wg: [f64; 21],
}

impl LogGrid {
    /// Uniform panels `[anchor + kΔ, anchor + (k+1)Δ]` covering `[u_lo, u_hi]`.
    pub fn build<F>(f: F, anchor: f64, step: f64, u_lo: f64, u_hi: f64) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if !(step > 0.0
            && u_lo < u_hi
            && anchor.is_finite()
            && u_lo.is_finite()
            && u_hi.is_finite())
        {
            return Err(Error::invalid(
                "grid needs a positive step and a finite range",
            ));
        }
        let k_min = ((u_lo - anchor) / step).floor() as i64;
        let k_max = ((u_hi - anchor) / step).ceil() as i64;
        let edges = (k_min..=k_max).map(|k| anchor + k as f64 * step).collect();
        Self::from_edges(f, edges)
    }

    /// Panels between consecutive entries of an increasing edge list.
    pub fn from_edges<F>(f: F, edges: Vec<f64>) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if edges.len() < 2
            || edges.windows(2).any(|w| !(w[0] < w[1]))
            || edges.iter().any(|e| !e.is_finite())
        {
            return Err(Error::invalid("grid edges must be finite and increasing"));
        }
        let (nodes, wk, wg) = gk21_rule();
        let mut samples = Vec::with_capacity(edges.len() - 1);
        for w in edges.windows(2) {
            let (lo, h) = (w[0], 0.5 * (w[1] - w[0]));
            let mut row = [0.0; 21];
            for (i, r) in row.iter_mut().enumerate() {
                let u = lo + h * (1.0 + nodes[i]);
                let v = f(u.exp())?;
                if !v.is_finite() {
                    return Err(Error::Singularity { at: u.exp() });
                }
                *r = v;
            }
            samples.push(row);
        }
        Ok(LogGrid {
            edges,
            samples,
            nodes,
            wk,
            wg,
        })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Number of panels.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Lower end of the sampled range in `u`.
    pub fn u_lo(&self) -> f64 {
        self.edges[0]
    }

    /// Upper end of the sampled range in `u`.
    pub fn u_hi(&self) -> f64 {
        self.edges[self.edges.len() - 1]
    }

    /// Index of the edge at `u`, if `u` is an edge up to `10⁻⁹` of the
    /// adjacent panel width.
    pub fn index_of(&self, u: f64) -> Option<usize> {
        let k = self.edges.partition_point(|&e| e < u);
        let near = |k: usize| {
            let e = *self.edges.get(k)?;
            let width = if k + 1 < self.edges.len() {
                self.edges[k + 1] - e
            } else {
                e - self.edges[k - 1]
            };
            ((e - u).abs() <= 1e-9 * width).then_some(k)
        };
        near(k).or_else(|| k.checked_sub(1).and_then(near))
    }

    fn width(&self, k: usize) -> f64 {
        self.edges[k + 1] - self.edges[k]
    }

    fn node_u(&self, k: usize, i: usize) -> f64 {
        self.edges[k] + 0.5 * self.width(k) * (1.0 + self.nodes[i])
    }

    /// `∫ f(e^u) w(u) du` over panels `[k_a, k_b)`.
    pub fn integrate<V, W>(&self, k_a: usize, k_b: usize, weight: W) -> QuadResult<V>
    where
        V: QuadValue,
        W: Fn(f64) -> V,
    {
        let mut value = V::default();
        let mut err = 0.0;
        let mut n = 0;
        let mut signed = V::default();
        let mut last_h = f64::NAN;
        for k in k_a..k_b.min(self.len()) {
            let row = &self.samples[k];
            let h = 0.5 * self.width(k);
            let mut pk = V::default();
            let mut pg = V::default();
            for (i, &a) in row.iter().enumerate().take(21) {
                let y = weight(self.node_u(k, i)) * a;
                pk += y * self.wk[i];
                if self.wg[i] != 0.0 {
                    pg += y * self.wg[i];
                }
            }
            value += pk * h;
            // Signed differences cancel within a run of equal panels.
            if h != last_h {
                err += signed.modulus();
                signed = V::default();
                last_h = h;
            }
            signed += (pk - pg) * h;
            n += 21;
        }
        err += signed.modulus();
        QuadResult {
            value,
            err_estimate: err,
            n_evals: n,
        }
    }

    /// Principal value `v.p.∫ f(e^u) r(u)/(u₀ − u) du` over the whole grid,
    /// with `u₀` a panel edge and `r` regular at `u₀`.
    ///
    /// The `window` panels on each side of `u₀` are folded into
    /// `∫₀^{window·Δ} (G(u₀ − v) − G(u₀ + v))/v dv` with `G = f·r`. With
    /// `refine = Some(r)` the innermost panel pair is refined geometrically
    /// through `r` halvings with fresh evaluations of `f`, since `G` is only
    /// Hölder there; with `None` the stored samples are folded as they are.
    pub fn principal_value<R, F>(
        &self,
        u0: f64,
        window: usize,
        regular: R,
        f: F,
        refine: Option<usize>,
    ) -> Result<QuadResult<f64>>
    where
        R: Fn(f64) -> f64,
        F: Fn(f64) -> Result<f64>,
    {
        let j = self
            .index_of(u0)
            .ok_or_else(|| Error::invalid("singular point must lie on a panel edge"))?;
        let w = window.max(1);
        if j < w || j + w > self.len() {
            return Err(Error::invalid("principal-value window leaves the grid"));
        }
        let step = self.width(j);
        if (j - w..j + w).any(|k| (self.width(k) - step).abs() > 1e-9 * step) {
            return Err(Error::invalid("principal-value window needs equal panels"));
        }
        let u0 = self.edges[j];
        let h = 0.5 * step;
        let away = |u: f64| regular(u) / (u0 - u);
        let left = self.integrate(0, j - w, away);
        let right = self.integrate(j + w, self.len(), away);

        // Fold panel j + m with panel j − m − 1; node i mirrors node 20 − i.
        let first = if refine.is_some() { 1 } else { 0 };
        let mut kron = 0.0;
        let mut gauss = 0.0;
        let mut n = 0;
        for m in first..w {
            let rp = &self.samples[j + m];
            let rm = &self.samples[j - m - 1];
            for i in 0..21 {
                let up = self.node_u(j + m, i);
                let um = self.node_u(j - m - 1, 20 - i);
                let v = up - u0;
                let y = (rm[20 - i] * regular(um) - rp[i] * regular(up)) / v;
                kron += y * self.wk[i];
                gauss += y * self.wg[i];
            }
            n += 42;
        }
        let mut fold = QuadResult {
            value: kron * h,
            err_estimate: (kron - gauss).abs() * h,
            n_evals: n,
        };

        // Innermost panel: subpanels [Δ 2^{-(r+1)}, Δ 2^{-r}] for r < refine,
        // then [0, Δ 2^{-refine}] as a final panel.
        let Some(refine) = refine else {
            return Ok(left.combine(right).combine(fold));
        };
        let g = |u: f64| -> Result<f64> { Ok(f(u.exp())? * regular(u)) };
        let mut top = step;
        for r in 0..=refine {
            let bottom = if r == refine { 0.0 } else { 0.5 * top };
            let hh = 0.5 * (top - bottom);
            let mut k = 0.0;
            let mut gg = 0.0;
            for i in 0..21 {
                let v = bottom + hh * (1.0 + self.nodes[i]);
                let y = (g(u0 - v)? - g(u0 + v)?) / v;
                k += y * self.wk[i];
                gg += y * self.wg[i];
            }
            fold.value += k * hh;
            fold.err_estimate += (k - gg).abs() * hh;
            fold.n_evals += 42;
            top = bottom;
        }

        Ok(left.combine(right).combine(fold))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_integral_is_accurate() {
        // ∫_0^1 t² · (dt) = ∫_{-∞}^0 e^{3u} du = 1/3, truncated at u = -30.
        let g = LogGrid::build(|t| Ok(t * t), 0.0, 0.05, -30.0, 0.0).unwrap();
        let r = g.integrate(0, g.len(), |u: f64| u.exp());
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn principal_value_of_shifted_kernel() {
        // v.p.∫_{-1}^{1} e^u/(0 − u) du = −Shi(1)·2 = −2.1145017…
        let g = LogGrid::build(Ok, 0.0, 0.1, -1.0, 1.0).unwrap();
        let shi1 = 1.057_250_875_375_728_5;
        let r = g.principal_value(0.0, 3, |_| 1.0, Ok, Some(6)).unwrap();
        assert!((r.value + 2.0 * shi1).abs() < 1e-10, "{}", r.value);
        let r = g.principal_value(0.0, 3, |_| 1.0, Ok, None).unwrap();
        assert!((r.value + 2.0 * shi1).abs() < 1e-10, "{}", r.value);
    }
}
