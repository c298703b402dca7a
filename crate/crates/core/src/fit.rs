//! Ordinary least-squares line fits.

use crate::{Error, Result};

/// Fit of `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub n_points: usize,
    /// Coefficient of determination; 1 for an exact fit.
    pub r2: f64,
}

/// Least-squares line through `(x, y)` pairs.
pub fn fit_line(points: &[(f64, f64)]) -> Result<LineFit> {
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid("a line fit needs at least two points"));
    }
    if points
        .iter()
        .any(|&(x, y)| !(x.is_finite() && y.is_finite()))
    {
        return Err(Error::invalid("fit points must be finite"));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in points {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::invalid("fit abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Ok(LineFit {
        slope,
        intercept,
        n_points: n,
        r2,
    })
}

/// Fit `log|r|` against `log(scale)`.
pub fn fit_log_log(samples: &[(f64, f64)]) -> Result<LineFit> {
    let mut pts = alloc::vec::Vec::with_capacity(samples.len());
    for &(scale, r) in samples {
        if !(scale > 0.0) || r == 0.0 {
            return Err(Error::invalid(
                "log-log fit needs positive scale and non-zero residual",
            ));
        }
        pts.push((libm::log(scale), libm::log(r.abs())));
    }
    fit_line(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let s: alloc::vec::Vec<(f64, f64)> = [1e2, 1e3, 1e4, 1e5, 1e6]
            .iter()
            .map(|&v: &f64| (v, v.powf(-0.5)))
            .collect();
        let f = fit_log_log(&s).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
    }
}
