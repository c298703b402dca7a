use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use super::{QuadResult, QuadValue};
use crate::{Error, Result};

// 21-point Kronrod abscissae on [-1, 1] (non-negative half, descending) with
// the embedded 10-point Gauss rule on the odd-indexed nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_938_811_236,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// The 21-point pair on `[-1, 1]` in ascending node order:
/// `(nodes, kronrod_weights, gauss_weights)`, with zero Gauss weight on the
/// Kronrod-only nodes. Node `i` mirrors node `20 − i`.
pub(crate) fn gk21_rule() -> ([f64; 21], [f64; 21], [f64; 21]) {
    let mut x = [0.0; 21];
    let mut wk = [0.0; 21];
    let mut wg = [0.0; 21];
    for j in 0..11 {
        let (lo, hi) = (j, 20 - j);
        x[lo] = -XGK[j];
        x[hi] = XGK[j];
        wk[lo] = WGK[j];
        wk[hi] = WGK[j];
        if j % 2 == 1 {
            wg[lo] = WG[j / 2];
            wg[hi] = WG[j / 2];
        }
    }
    (x, wk, wg)
}

/// One application of the 21-point Gauss–Kronrod pair.
pub(crate) fn gk21<V, F>(f: &F, a: f64, b: f64) -> Result<(V, f64, bool)>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> Result<V> {
        let y = f(t);
        if y.is_finite_value() {
            Ok(y)
        } else {
            Err(Error::Singularity { at: t })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = V::default();
    let mut abs_sum = fc.modulus() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        let pair = f1 + f2;
        kronrod += pair * WGK[j];
        abs_sum += (f1.modulus() + f2.modulus()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    let abs_sum = abs_sum * half.abs();
    // Roundoff floor: the rule cannot resolve better than a few ulps of the
    // absolute integrand mass, and bisecting such a panel gains nothing.
    let floor = 50.0 * f64::EPSILON * abs_sum;
    let diff = (kronrod - gauss).modulus();
    Ok((kronrod, diff.max(floor), diff <= floor))
}

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    err: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive Gauss–Kronrod (21-point) integrator with bisection of the
/// panel carrying the largest error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections before giving up.
    pub max_subdivisions: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_subdivisions: 20_000,
        }
    }
}

impl Integrator {
    pub fn new(abs_tol: f64) -> Self {
        Integrator {
            abs_tol,
            ..Integrator::default()
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<V, F>(&self, f: F, a: f64, b: f64) -> Result<QuadResult<V>>
    where
        V: QuadValue + Into<Complex64>,
        F: Fn(f64) -> V,
    {
        self.integrate_with_points(f, &[a, b])
    }

    /// Integrate over `[points[0], points[last]]`, using every listed point
    /// as an initial panel boundary. Points must be non-decreasing.
    pub fn integrate_with_points<V, F>(&self, f: F, points: &[f64]) -> Result<QuadResult<V>>
    where
        V: QuadValue + Into<Complex64>,
        F: Fn(f64) -> V,
    {
        if points.len() < 2 {
            return Err(Error::invalid("need at least two integration points"));
        }
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        for w in points.windows(2) {
            if !(w[0].is_finite() && w[1].is_finite()) {
                return Err(Error::invalid("integration limits must be finite"));
            }
            if w[0] > w[1] {
                return Err(Error::invalid("integration points must be non-decreasing"));
            }
        }

        let mut heap: BinaryHeap<Panel<V>> = BinaryHeap::with_capacity(points.len() + 64);
        // Panels already at the roundoff floor.
        let mut done: Vec<Panel<V>> = Vec::new();
        let mut n_evals = 0usize;
        let mut total = V::default();
        let mut total_err = 0.0;
        for w in points.windows(2) {
            if w[0] == w[1] {
                continue;
            }
            let (value, err, settled) = gk21(&f, w[0], w[1])?;
            n_evals += 21;
            total += value;
            total_err += err;
            park(
                &mut heap,
                &mut done,
                Panel {
                    a: w[0],
                    b: w[1],
                    value,
                    err,
                },
                settled,
            );
        }

        let mut subdivisions = 0usize;
        loop {
            let target = self.abs_tol.max(self.rel_tol * total.modulus());
            if total_err <= target || heap.is_empty() {
                break;
            }
            if subdivisions >= self.max_subdivisions {
                return Err(self.failure(&heap, &done, n_evals, subdivisions));
            }
            let worst = heap.pop().expect("heap is non-empty");
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                // The panel is at the resolution of f64; its error is roundoff.
                heap.push(worst);
                return Err(self.failure(&heap, &done, n_evals, subdivisions));
            }
            let (v1, e1, s1) = gk21(&f, worst.a, mid)?;
            let (v2, e2, s2) = gk21(&f, mid, worst.b)?;
            n_evals += 42;
            subdivisions += 1;
            total = total - worst.value + v1 + v2;
            total_err += e1 + e2 - worst.err;
            park(
                &mut heap,
                &mut done,
                Panel {
                    a: worst.a,
                    b: mid,
                    value: v1,
                    err: e1,
                },
                s1,
            );
            park(
                &mut heap,
                &mut done,
                Panel {
                    a: mid,
                    b: worst.b,
                    value: v2,
                    err: e2,
                },
                s2,
            );
            // Incremental sums drift; resynchronise now and then.
            if subdivisions % 256 == 0 {
                let (t, e) = resum(&heap, &done);
                total = t;
                total_err = e;
            }
        }
        let (value, err_estimate) = resum(&heap, &done);
        Ok(QuadResult {
            value,
            err_estimate,
            n_evals,
        })
    }

    fn failure<V: QuadValue + Into<Complex64>>(
        &self,
        heap: &BinaryHeap<Panel<V>>,
        done: &[Panel<V>],
        n_evals: usize,
        subdivisions: usize,
    ) -> Error {
        let (value, err_estimate) = resum(heap, done);
        Error::NonConvergence {
            value: value.into(),
            err_estimate,
            n_evals,
            subdivisions,
        }
    }
}

fn park<V>(heap: &mut BinaryHeap<Panel<V>>, done: &mut Vec<Panel<V>>, p: Panel<V>, settled: bool) {
    if settled {
        done.push(p);
    } else {
        heap.push(p);
    }
}

fn resum<V: QuadValue>(heap: &BinaryHeap<Panel<V>>, done: &[Panel<V>]) -> (V, f64) {
    // Sum from smallest to largest contribution.
    let mut panels: Vec<&Panel<V>> = heap.iter().chain(done.iter()).collect();
    panels.sort_by(|p, q| p.value.modulus().total_cmp(&q.value.modulus()));
    let mut value = V::default();
    let mut err = 0.0;
    for p in panels {
        value += p.value;
        err += p.err;
    }
    (value, err)
}
