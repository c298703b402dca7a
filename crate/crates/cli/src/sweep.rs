//! Residual sweeps and decay fits.

use std::io::Read;

use wilton_core::fit::{fit_log_log, LineFit};
use wilton_core::hilbert::GridSettings;
use wilton_core::sieve::build_table;
use wilton_core::wilton::{ResidualEvaluator, ResidualRecord};

use crate::output::Record;
use crate::pool::parallel_map;
use crate::{check_table_limit, CliError};

pub const SWEEP_HEADER: [&str; 6] = [
    "x",
    "v",
    "scale",
    "re_residual",
    "im_residual",
    "normalized",
];

/// Smallest divisor table covering `max(v, x²v)` over the grid.
pub fn required_table_limit(xs: &[f64], vs: &[f64]) -> usize {
    let mut need = 1.0f64;
    for &x in xs {
        for &v in vs {
            need = need.max(v).max(x * x * v);
        }
    }
    need.ceil() as usize
}

/// Residuals on the grid `xs × vs`, row-major in `x`.
///
/// Each worker takes one `x`, builds its correction once and walks `vs`.
pub fn sweep(
    xs: &[f64],
    vs: &[f64],
    settings: GridSettings,
    table_limit: Option<usize>,
    jobs: usize,
) -> Result<Vec<ResidualRecord>, CliError> {
    if xs.is_empty() || vs.is_empty() {
        return Err(CliError::Usage(
            "sweep needs at least one x and one v".into(),
        ));
    }
    if xs.iter().chain(vs).any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(CliError::Usage(
            "sweep values must be finite and positive".into(),
        ));
    }
    let need = required_table_limit(xs, vs);
    let limit = table_limit.unwrap_or(need);
    if limit < need {
        return Err(CliError::Usage(format!(
            "--table-limit {limit} is below the {need} this grid needs"
        )));
    }
    check_table_limit(limit)?;
    let table = build_table(limit)?;
    let rows = parallel_map(xs, jobs, |&x| -> wilton_core::Result<Vec<ResidualRecord>> {
        let e = ResidualEvaluator::with_settings(x, settings)?;
        vs.iter().map(|&v| e.at(v, &table)).collect()
    });
    let mut out = Vec::with_capacity(xs.len() * vs.len());
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

pub fn residual_record(r: &ResidualRecord) -> Record {
    Record::new()
        .num("x", r.x)
        .num("v", r.v)
        .num("scale", r.scale)
        .num("re_residual", r.residual.re)
        .num("im_residual", r.residual.im)
        .num("normalized", r.normalized)
}

/// Decay fit for one `x` of a sweep file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub x: f64,
    pub fit: LineFit,
}

impl DecayFit {
    pub fn record(&self) -> Record {
        Record::new()
            .num("x", self.x)
            .num("slope", self.fit.slope)
            .num("intercept", self.fit.intercept)
            .int("n_points", self.fit.n_points as i64)
            .num("r2", self.fit.r2)
    }
}

/// Least-squares slope of `log|R|` against `log(scale)` for each `x`, in
/// order of first appearance.
pub fn fit_decay<R: Read>(input: R) -> Result<Vec<DecayFit>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header = reader.headers().map_err(|e| csv_error(&e, 1))?.clone();
    if header.iter().map(str::trim).ne(SWEEP_HEADER) {
        return Err(CliError::Parse {
            line: 1,
            message: format!("expected header `{}`", SWEEP_HEADER.join(",")),
        });
    }
    let mut groups: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| csv_error(&e, 0))?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64, CliError> {
            let s = row[i].trim();
            s.parse::<f64>().map_err(|_| CliError::Parse {
                line,
                message: format!("column `{}`: `{s}` is not a number", SWEEP_HEADER[i]),
            })
        };
        let (x, scale, re, im) = (field(0)?, field(2)?, field(3)?, field(4)?);
        let magnitude = re.hypot(im);
        match groups
            .iter_mut()
            .find(|(gx, _)| gx.to_bits() == x.to_bits())
        {
            Some((_, pts)) => pts.push((scale, magnitude)),
            None => groups.push((x, vec![(scale, magnitude)])),
        }
    }
    if groups.is_empty() {
        return Err(CliError::Parse {
            line: 2,
            message: "no data rows".into(),
        });
    }
    groups
        .into_iter()
        .map(|(x, pts)| {
            if pts.len() < 3 {
                return Err(CliError::Usage(format!(
                    "x = {x} has {} rows; a fit needs at least 3",
                    pts.len()
                )));
            }
            Ok(DecayFit {
                x,
                fit: fit_log_log(&pts)?,
            })
        })
        .collect()
}

fn csv_error(e: &csv::Error, fallback: u64) -> CliError {
    let line = e.position().map_or(fallback, |p| p.line());
    CliError::Parse {
        line,
        message: e.to_string(),
    }
}
