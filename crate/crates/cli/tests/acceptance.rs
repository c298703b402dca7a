//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs every suite once with seed 42 on one thread, then judges each
//! criterion from its checks' measured values and elapsed times.

use std::process::ExitCode;
use std::time::Instant;

use wilton_cli::{run_suite, SuiteOptions, SuiteReport};

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [&'static str],
    budget_s: f64,
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        number: 1,
        title: "constant a0 = -γ + iπ/2",
        checks: &["a0-constant"],
        budget_s: 1.0,
    },
    Criterion {
        number: 2,
        title: "F(1) = 0 in both components",
        checks: &["F-at-one"],
        budget_s: 30.0,
    },
    Criterion {
        number: 3,
        title: "A(x) = xA(1/x)",
        checks: &["A-identity"],
        budget_s: 60.0,
    },
    Criterion {
        number: 4,
        title: "λ + Λ completion",
        checks: &["lambda-completion"],
        budget_s: 60.0,
    },
    Criterion {
        number: 5,
        title: "λ and Λ bounds",
        checks: &["lambda-bounds"],
        budget_s: 120.0,
    },
    Criterion {
        number: 6,
        title: "critical-line representation of I(x, v)",
        checks: &["plancherel-half-20", "plancherel-one-10"],
        budget_s: 300.0,
    },
    Criterion {
        number: 7,
        title: "Re F route agreement",
        checks: &["F-routes"],
        budget_s: 600.0,
    },
    Criterion {
        number: 8,
        title: "residual decay and running maximum",
        checks: &["residual-slope", "residual-running-max"],
        budget_s: 900.0,
    },
    Criterion {
        number: 9,
        title: "Voronoi ratio stability",
        checks: &["voronoi-ratio"],
        budget_s: 60.0,
    },
    Criterion {
        number: 10,
        title: "Ingham ratio stability",
        checks: &["ingham-ratio"],
        budget_s: 600.0,
    },
    Criterion {
        number: 11,
        title: "mean-square kernel ratio stability",
        checks: &["kernel-bound"],
        budget_s: 600.0,
    },
];

/// Property checks named by the last criterion.
const PROPERTY_CHECKS: [&str; 4] = [
    "zeta-reflection",
    "fe-check",
    "pv-linearity",
    "quad-self-consistency",
];

fn judge(report: &SuiteReport, c: &Criterion) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut elapsed = 0.0;
    for id in c.checks {
        match report.check(id) {
            Some(o) => {
                ok &= o.passed;
                elapsed += o.elapsed_s;
                parts.push(format!("{id} = {:.3e} (≤ {:.3e})", o.measured, o.threshold));
            }
            None => {
                ok = false;
                parts.push(format!("{id} missing"));
            }
        }
    }
    let in_time = elapsed <= c.budget_s;
    if !in_time {
        parts.push(format!("over budget: {elapsed:.1} s > {} s", c.budget_s));
    }
    (
        ok && in_time,
        format!("{}; {elapsed:.1} s of {} s", parts.join(", "), c.budget_s),
    )
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let report = match run_suite("all", &SuiteOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: suite run aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failed = 0;
    for c in &CRITERIA {
        let (ok, detail) = judge(&report, c);
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {} {}: {detail}",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.title
        );
    }
    let props_ok = PROPERTY_CHECKS
        .iter()
        .all(|id| report.check(id).is_some_and(|o| o.passed));
    let ok12 = props_ok && report.n_failed == 0;
    failed += usize::from(!ok12);
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id.as_str())
        .collect();
    println!(
        "criterion 12 {} property suites under `verify --suite all --seed 42`: {} checks, {} failed{}",
        if ok12 { "PASS" } else { "FAIL" },
        report.n_checks,
        report.n_failed,
        if failing.is_empty() { String::new() } else { format!(" ({})", failing.join(", ")) }
    );
    println!(
        "acceptance: {} of 12 criteria passed in {:.0} s",
        12 - failed,
        t0.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
