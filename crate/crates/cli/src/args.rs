use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wilton_core::hilbert::GridSettings;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "wilton",
    version,
    about = "Divisor trigonometric sums and their approximate functional equation"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
#[command(next_help_heading = "Global options")]
pub struct GlobalOpts {
    /// Override a check threshold, `CHECK=VALUE`; repeatable.
    #[arg(long = "tol", global = true, value_name = "CHECK=VALUE", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Worker threads for `sweep` and `verify`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub jobs: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Divisor table size; defaults to what the command needs.
    #[arg(long = "table-limit", global = true)]
    pub table_limit: Option<usize>,
    /// Output format; `sweep` defaults to CSV, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected CHECK=VALUE, got `{s}`"))?;
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("tolerance for `{name}` must be finite"));
    }
    Ok((name.trim().to_owned(), v))
}

/// Resolution of the grids behind `B` and `𝔉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Default,
    Fast,
    Coarse,
}

impl Grid {
    pub fn settings(self) -> GridSettings {
        match self {
            Grid::Default => GridSettings::DEFAULT,
            Grid::Fast => GridSettings::FAST,
            Grid::Coarse => GridSettings::COARSE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Direct,
    Mellin,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of divisors of n.
    Tau {
        #[arg(long)]
        n: usize,
    },
    /// Dirichlet remainder Δ(x).
    Delta {
        #[arg(long)]
        x: f64,
    },
    /// Partial sum ψ(x, v).
    Psi {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        v: f64,
    },
    /// ζ(σ + iτ).
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
    },
    /// Functional-equation residual at one point, or the seeded grid check without arguments.
    FeCheck {
        #[arg(long, allow_hyphen_values = true, requires = "tau")]
        sigma: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "sigma")]
        tau: Option<f64>,
    },
    /// Mean square ∫₀^T |ζ(½+iτ)|² dτ and its remainder E(T).
    I2 {
        #[arg(long = "T")]
        t_max: f64,
    },
    /// Quadrature self-tests.
    #[command(hide = true)]
    QuadSelftest,
    /// Autocorrelation A(x).
    Autocorr {
        #[arg(long)]
        x: f64,
        /// Also evaluate x·A(1/x).
        #[arg(long)]
        check_identity: bool,
    },
    /// The Hilbert transform B(x).
    #[command(name = "hilbert-B")]
    HilbertB {
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        #[arg(long, value_enum, default_value_t = Grid::Default)]
        grid: Grid,
        /// Truncation of the Mellin route.
        #[arg(long, default_value_t = 2000.0)]
        tmax: f64,
    },
    /// Incomplete gamma functions λ(s, v) and Λ(s, v).
    Lambda {
        #[arg(long)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long)]
        v: f64,
    },
    /// The correction function 𝔉(x).
    #[command(name = "F")]
    F {
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Grid::Default)]
        grid: Grid,
    },
    /// Residual of the functional equation at (x, v).
    Residual {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        v: f64,
        #[arg(long, value_enum, default_value_t = Grid::Default)]
        grid: Grid,
    },
    /// Residuals over an x × v grid.
    Sweep {
        #[arg(long = "x-list", value_delimiter = ',', required = true)]
        x_list: Vec<f64>,
        #[arg(long = "v-list", value_delimiter = ',', required = true)]
        v_list: Vec<f64>,
        /// Output file; relative paths resolve against $WILTON_OUT_DIR when set.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Grid::Default)]
        grid: Grid,
    },
    /// I(x, v) against its critical-line representation.
    Plancherel {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        v: f64,
        #[arg(long, default_value_t = 3000.0)]
        tmax: f64,
    },
    /// Per-x decay exponent of a sweep file.
    FitDecay {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}
