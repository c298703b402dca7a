use alloc::string::String;
use core::fmt;

use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violated a precondition.
    InvalidArgument(String),
    /// A value fell outside the range covered by a precomputed table.
    OutOfRange {
        what: &'static str,
        value: f64,
        limit: f64,
    },
    /// Evaluation at a pole.
    Pole { what: &'static str, at: Complex64 },
    /// The argument lies outside the domain where the function is defined.
    Domain(String),
    /// An integrator gave up before reaching the tolerance.
    NonConvergence {
        value: Complex64,
        err_estimate: f64,
        n_evals: usize,
        subdivisions: usize,
    },
    /// The integrand produced a non-finite value.
    Singularity { at: f64 },
    /// A segment handed to the piecewise-exact integrator contains a breakpoint.
    InvalidSegment { a: f64, b: f64 },
    /// A work guard was exceeded.
    Resource {
        guard: &'static str,
        requested: f64,
        limit: f64,
        hint: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::OutOfRange { what, value, limit } => {
                write!(
                    f,
                    "{what} = {value} is outside the table range (limit {limit})"
                )
            }
            Error::Pole { what, at } => write!(f, "{what} has a pole at {at}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence {
                value,
                err_estimate,
                n_evals,
                subdivisions,
            } => write!(
                f,
                "integration did not converge after {subdivisions} subdivisions \
                 ({n_evals} evaluations): partial value {value}, error estimate {err_estimate:e}"
            ),
            Error::Singularity { at } => write!(f, "non-finite integrand at t = {at}"),
            Error::InvalidSegment { a, b } => {
                write!(
                    f,
                    "segment [{a}, {b}] contains a breakpoint of the integrand"
                )
            }
            Error::Resource {
                guard,
                requested,
                limit,
                hint,
            } => {
                write!(
                    f,
                    "resource guard `{guard}` exceeded: {requested} > {limit}"
                )?;
                if !hint.is_empty() {
                    write!(f, " ({hint})")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors raised by the integrators.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::Singularity { .. }
        )
    }
}
