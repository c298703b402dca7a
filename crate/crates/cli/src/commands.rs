use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use wilton_core::analytic::{fe_check, mean_square_I2, zeta, ComplexPoint, E_of};
use wilton_core::autocorr::A_of;
use wilton_core::hilbert::{BEval, B_direct, B_mellin};
use wilton_core::sieve::{build_table, delta, psi_partial, DivisorTable};
use wilton_core::wilton::{
    lambda_inc_quad, plancherel_check, F_correction_with, Lambda_inc_quad, ResidualEvaluator,
    PLANCHEREL_MAX_V,
};

use crate::args::{Cli, Command, GlobalOpts, Route};
use crate::output::{emit, Format, Record};
use crate::suites::{check_ids, run_suite, SuiteOptions, SuiteReport};
use crate::sweep::{fit_decay, residual_record, sweep};
use crate::{check_table_limit, CliError};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "WILTON_OUT_DIR";

/// What a successful command reports back to `main`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A verification suite ran and this many checks failed.
    ChecksFailed(usize),
}

/// Run one parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let format = g.format.unwrap_or(Format::Json);
    let records = match cli.command {
        Command::Tau { n } => {
            let table = table_for(g, n as f64)?;
            vec![Record::new()
                .int("n", n as i64)
                .int("value", i64::from(table.tau(n)?))]
        }
        Command::Delta { x } => {
            let table = table_for(g, x)?;
            vec![Record::new().num("x", x).num("value", delta(x, &table)?)]
        }
        Command::Psi { x, v } => {
            let table = table_for(g, v)?;
            vec![Record::new()
                .num("x", x)
                .num("v", v)
                .complex("value", psi_partial(x, v, &table)?)]
        }
        Command::Zeta { sigma, tau } => {
            let z = zeta(ComplexPoint::new(sigma, tau))?;
            vec![Record::new()
                .num("sigma", sigma)
                .num("tau", tau)
                .complex("value", z)
                .num("abs", z.norm())]
        }
        Command::FeCheck {
            sigma: Some(sigma),
            tau: Some(tau),
        } => {
            let d = fe_check(ComplexPoint::new(sigma, tau))?;
            vec![Record::new()
                .num("sigma", sigma)
                .num("tau", tau)
                .complex("residual", d)
                .num("abs", d.norm())]
        }
        Command::FeCheck { .. } => {
            return report(suite_subset("zeta", &["fe-check"], g)?, format, out)
        }
        Command::I2 { t_max } => {
            let r = mean_square_I2(t_max)?;
            vec![Record::new()
                .num("T", t_max)
                .num("value", r.value)
                .num("err_estimate", r.err_estimate)
                .num("E", E_of(t_max)?)]
        }
        Command::QuadSelftest => {
            return report(run_suite("quad", &suite_options(g)?)?, format, out)
        }
        Command::Autocorr { x, check_identity } => {
            let a = A_of(x)?;
            let mut r = Record::new()
                .num("x", x)
                .num("value", a.value)
                .num("err_bound", a.err_bound)
                .num("tail_cutoff", a.tail_cutoff);
            if check_identity {
                let inv = A_of(1.0 / x)?;
                r = r
                    .num("x_times_A_inv", x * inv.value)
                    .num("identity_residual", a.value - x * inv.value);
            }
            vec![r]
        }
        Command::HilbertB {
            x,
            route,
            grid,
            tmax,
        } => {
            let mut evals = Vec::new();
            if matches!(route, Route::Direct | Route::Both) {
                evals.push(B_direct(x, grid.settings())?);
            }
            if matches!(route, Route::Mellin | Route::Both) {
                evals.push(B_mellin(x, tmax)?);
            }
            evals.iter().map(b_record).collect()
        }
        Command::Lambda { sigma, tau, v } => {
            let s = ComplexPoint::new(sigma, tau);
            let l = lambda_inc_quad(s, v)?;
            let b = Lambda_inc_quad(s, v)?;
            vec![Record::new()
                .num("sigma", sigma)
                .num("tau", tau)
                .num("v", v)
                .complex("lambda", l.value)
                .num("lambda_err", l.err_estimate)
                .complex("Lambda", b.value)
                .num("Lambda_err", b.err_estimate)]
        }
        Command::F { x, grid } => {
            let f = F_correction_with(x, grid.settings())?;
            vec![Record::new()
                .num("x", x)
                .num("re_direct", f.re_direct)
                .num("re_via_B", f.re_via_B)
                .num("im", f.im)
                .num("err_bound", f.err_bound)]
        }
        Command::Residual { x, v, grid } => {
            let table = table_for(g, v.max(x * x * v))?;
            let r = ResidualEvaluator::with_settings(x, grid.settings())?.at(v, &table)?;
            vec![residual_record(&r)]
        }
        Command::Sweep {
            x_list,
            v_list,
            out: path,
            grid,
        } => {
            let rows = sweep(&x_list, &v_list, grid.settings(), g.table_limit, jobs(g))?;
            let records: Vec<Record> = rows.iter().map(residual_record).collect();
            let format = g.format.unwrap_or(Format::Csv);
            return match resolve_out(path) {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
                    let mut w = BufWriter::new(file);
                    emit(&records, format, &mut w)?;
                    w.flush().map_err(|e| CliError::io(&path, e))?;
                    Ok(Outcome::Success)
                }
                None => emit(&records, format, out).map(|()| Outcome::Success),
            };
        }
        Command::Plancherel { x, v, tmax } => {
            if !(v > 0.0 && v <= PLANCHEREL_MAX_V) {
                return Err(CliError::Core(wilton_core::Error::OutOfRange {
                    what: "v",
                    value: v,
                    limit: PLANCHEREL_MAX_V,
                }));
            }
            let table = table_for(g, v)?;
            let p = plancherel_check(x, v, tmax, &table)?;
            vec![Record::new()
                .num("x", x)
                .num("v", v)
                .num("t_max", tmax)
                .complex("direct", p.direct)
                .complex("line", p.line)
                .num("difference", p.difference.norm())
                .num("quad_err", p.quad_err)
                .num("tail_budget", p.tail_budget)]
        }
        Command::FitDecay { input } => {
            let file = File::open(&input).map_err(|e| CliError::io(&input, e))?;
            fit_decay(BufReader::new(file))?
                .iter()
                .map(|f| f.record())
                .collect()
        }
        Command::Verify { suite } => {
            return report(run_suite(&suite, &suite_options(g)?)?, format, out)
        }
    };
    emit(&records, format, out)?;
    Ok(Outcome::Success)
}

fn jobs(g: &GlobalOpts) -> usize {
    g.jobs as usize
}

fn table_for(g: &GlobalOpts, needed: f64) -> Result<DivisorTable, CliError> {
    let need = if needed.is_finite() && needed >= 1.0 {
        needed.floor() as usize
    } else {
        1
    };
    let limit = g.table_limit.unwrap_or(need);
    check_table_limit(limit)?;
    Ok(build_table(limit)?)
}

fn b_record(b: &BEval) -> Record {
    let route = match b.route {
        wilton_core::hilbert::BRoute::DirectPv => "direct",
        wilton_core::hilbert::BRoute::MellinInversion => "mellin",
    };
    Record::new()
        .num("x", b.x)
        .text("route", route)
        .num("value", b.value)
        .num("err_bound", b.err_bound)
}

/// Relative paths go under `$WILTON_OUT_DIR` when it is set; without
/// `--out` the file is `sweep.csv` there, or standard output otherwise.
fn resolve_out(path: Option<PathBuf>) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (path, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(d)) => Some(d.join("sweep.csv")),
        (None, None) => None,
    }
}

fn suite_options(g: &GlobalOpts) -> Result<SuiteOptions, CliError> {
    let ids = check_ids();
    let mut tol = BTreeMap::new();
    for (name, value) in &g.tol {
        if !ids.contains(&name.as_str()) {
            return Err(CliError::Usage(format!(
                "--tol names unknown check `{name}`"
            )));
        }
        tol.insert(name.clone(), *value);
    }
    Ok(SuiteOptions {
        seed: g.seed,
        jobs: jobs(g),
        tol,
    })
}

fn suite_subset(suite: &str, ids: &[&str], g: &GlobalOpts) -> Result<SuiteReport, CliError> {
    let mut r = run_suite(suite, &suite_options(g)?)?;
    r.checks.retain(|c| ids.contains(&c.id.as_str()));
    r.n_checks = r.checks.len();
    r.n_failed = r.checks.iter().filter(|c| !c.passed).count();
    Ok(r)
}

fn report(r: SuiteReport, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let io = |e: std::io::Error| CliError::io("<output>", e);
    match format {
        Format::Json => {
            let text = serde_json::to_string(&r).expect("reports always serialize");
            writeln!(out, "{text}").map_err(io)?;
        }
        Format::Csv => {
            let rows: Vec<Record> = r
                .checks
                .iter()
                .map(|c| {
                    Record::new()
                        .text("suite", c.suite.clone())
                        .text("check", c.id.clone())
                        .num("measured", c.measured)
                        .num("threshold", c.threshold)
                        .flag("passed", c.passed)
                        .num("elapsed_s", c.elapsed_s)
                })
                .collect();
            emit(&rows, Format::Csv, out)?;
        }
    }
    Ok(if r.n_failed > 0 {
        Outcome::ChecksFailed(r.n_failed)
    } else {
        Outcome::Success
    })
}
