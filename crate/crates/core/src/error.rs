use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the model solvers and the harness.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter `{name}` must be a finite positive number, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("parameter `{name}` = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error(
        "positive deployment requires lambda < mu + 1 (lambda = {lambda}, mu = {mu}); \
         use ModelParams::relaxed to opt into the clamped corner solution"
    )]
    AssumptionViolated { lambda: f64, mu: f64 },

    #[error("frontier capability {theta_f} must exceed legacy capability {theta_l}")]
    CapabilityOrder { theta_l: f64, theta_f: f64 },

    #[error("only one extension may deviate from the baseline at a time (got {0})")]
    MultipleDeviations(String),

    #[error("invalid range: {0}")]
    Range(String),

    #[error(transparent)]
    Oracle(#[from] OracleError),

    #[error("failed to write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Format(String),
}

/// Failures of the brute-force search and root-finding utilities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("objective is not finite at {point:?}: {value}")]
    NonFinite { point: Vec<f64>, value: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("bisection did not converge after {iterations} iterations; last bracket [{lo}, {hi}]")]
    NotConverged { iterations: usize, lo: f64, hi: f64 },

    #[error("invalid search specification: {0}")]
    Spec(String),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
