//! Closed form against brute force on randomly drawn parameter points.
//!
//! Points are drawn from a seeded ChaCha stream, so a given seed always
//! produces the same sample and the same report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::emit::Report;
use crate::error::{ModelError, Result};
use crate::extensions::{beta_optimal_deployment, beta_profit};
use crate::model::{self, ModelParams};
use crate::oracle::{maximize_profit, GridSpec};

pub const DEFAULT_SEED: u64 = 0x6f76_6761_7021;
pub const BASELINE_ALPHA_TOL: f64 = 1e-4;
pub const BASELINE_PROFIT_GAP: f64 = 1e-8;
pub const BETA_ALPHA_TOL: f64 = 1e-3;

pub const LAMBDA_RANGE: (f64, f64) = (0.2, 3.0);
pub const MU_RANGE: (f64, f64) = (0.5, 5.0);
pub const THETA_RANGE: (f64, f64) = (0.2, 5.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub baseline_points: usize,
    pub beta_values: Vec<f64>,
    pub beta_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            baseline_points: 500,
            beta_values: vec![1.25, 1.5, 2.0],
            beta_points: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointCheck {
    pub theta: f64,
    pub mu: f64,
    pub lambda: f64,
    /// `None` for the baseline objective.
    pub beta: Option<f64>,
    pub alpha_closed: f64,
    pub alpha_hat: f64,
    pub d_closed: f64,
    pub d_hat: f64,
    pub profit_closed: f64,
    pub value_hat: f64,
    pub alpha_err: f64,
    /// `value_hat - profit_closed`; positive means the grid beat the closed form.
    pub profit_gap: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub label: String,
    pub points: usize,
    pub alpha_tol: f64,
    pub profit_gap_tol: Option<f64>,
    pub max_alpha_err: f64,
    pub max_profit_gap: f64,
    pub failures: usize,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyMeta {
    pub version: String,
    pub config: VerifyConfig,
    pub suites: Vec<SuiteSummary>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub meta: VerifyMeta,
    pub rows: Vec<PointCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.meta.passed
    }
}

/// Draws `n` points uniformly from the sampling box, rejecting any with
/// `lambda >= mu + 1`.
pub fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<ModelParams> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let lambda = rng.gen_range(LAMBDA_RANGE.0..LAMBDA_RANGE.1);
        let mu = rng.gen_range(MU_RANGE.0..MU_RANGE.1);
        let theta = rng.gen_range(THETA_RANGE.0..THETA_RANGE.1);
        if let Ok(p) = ModelParams::new(theta, mu, lambda) {
            out.push(p);
        }
    }
    out
}

fn check_baseline(params: &ModelParams) -> Result<PointCheck> {
    let s = model::solve(params);
    let r = maximize_profit(
        |a, d| model::profit(a, d, params),
        &GridSpec::for_benchmark(params.alpha0()),
    )?;
    let alpha_err = (s.alpha_star - r.alpha_hat).abs();
    let profit_gap = r.value_hat - s.profit;
    Ok(PointCheck {
        theta: params.theta(),
        mu: params.mu(),
        lambda: params.lambda(),
        beta: None,
        alpha_closed: s.alpha_star,
        alpha_hat: r.alpha_hat,
        d_closed: s.d_star,
        d_hat: r.d_hat,
        profit_closed: s.profit,
        value_hat: r.value_hat,
        alpha_err,
        profit_gap,
        ok: alpha_err <= BASELINE_ALPHA_TOL && profit_gap <= BASELINE_PROFIT_GAP,
    })
}

fn check_beta(params: &ModelParams, beta: f64) -> Result<PointCheck> {
    let out = beta_optimal_deployment(params, beta)?;
    let r = maximize_profit(
        |a, d| beta_profit(a, d, params, beta),
        &GridSpec::for_benchmark(params.alpha0()),
    )?;
    let alpha_err = (out.deployment.alpha - r.alpha_hat).abs();
    Ok(PointCheck {
        theta: params.theta(),
        mu: params.mu(),
        lambda: params.lambda(),
        beta: Some(beta),
        alpha_closed: out.deployment.alpha,
        alpha_hat: r.alpha_hat,
        d_closed: out.defense,
        d_hat: r.d_hat,
        profit_closed: out.profit,
        value_hat: r.value_hat,
        alpha_err,
        profit_gap: r.value_hat - out.profit,
        ok: alpha_err <= BETA_ALPHA_TOL,
    })
}

/// Runs `check` on every point, spreading the work over the available
/// cores. Results come back in input order.
fn run_all<T, F>(items: &[T], check: F) -> Result<Vec<PointCheck>>
where
    T: Sync,
    F: Fn(&T) -> Result<PointCheck> + Sync,
{
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    let check = &check;
    let parts: Vec<Result<Vec<PointCheck>>> = std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(check).collect::<Result<Vec<_>>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(ModelError::Format("verification worker panicked".into())))
            })
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn summarize(label: String, alpha_tol: f64, profit_gap_tol: Option<f64>, rows: &[PointCheck]) -> SuiteSummary {
    SuiteSummary {
        label,
        points: rows.len(),
        alpha_tol,
        profit_gap_tol,
        max_alpha_err: rows.iter().map(|r| r.alpha_err).fold(0.0, f64::max),
        max_profit_gap: rows.iter().map(|r| r.profit_gap).fold(f64::NEG_INFINITY, f64::max),
        failures: rows.iter().filter(|r| !r.ok).count(),
    }
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut suites = Vec::new();
    let mut rows = Vec::new();

    let points = sample_points(&mut rng, config.baseline_points);
    let base = run_all(&points, check_baseline)?;
    suites.push(summarize(
        "baseline".into(),
        BASELINE_ALPHA_TOL,
        Some(BASELINE_PROFIT_GAP),
        &base,
    ));
    rows.extend(base);

    for &beta in &config.beta_values {
        let points = sample_points(&mut rng, config.beta_points);
        let checks = run_all(&points, |p| check_beta(p, beta))?;
        suites.push(summarize(format!("beta={beta}"), BETA_ALPHA_TOL, None, &checks));
        rows.extend(checks);
    }

    let passed = suites.iter().all(SuiteSummary::passed);
    Ok(VerifyReport {
        meta: VerifyMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            suites,
            passed,
        },
        rows,
    })
}

impl Report for VerifyReport {
    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| ModelError::Format(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| ModelError::Format(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| ModelError::Format(e.to_string()))
    }

    fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| ModelError::Format(format!("json: {e}")))
    }

    fn to_svg(&self) -> Result<String> {
        Err(ModelError::Format("svg output is available for sweeps and T5".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_seeded_and_valid() {
        let a = sample_points(&mut ChaCha8Rng::seed_from_u64(7), 200);
        let b = sample_points(&mut ChaCha8Rng::seed_from_u64(7), 200);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.lambda() < p.mu() + 1.0));
        assert!(a.iter().all(|p| (0.2..5.0).contains(&p.theta())));
    }

    #[test]
    fn small_run_passes() {
        let cfg = VerifyConfig {
            seed: 3,
            baseline_points: 8,
            beta_values: vec![1.5],
            beta_points: 3,
        };
        let r = verify(&cfg).unwrap();
        assert_eq!(r.rows.len(), 11);
        assert_eq!(r.meta.suites.len(), 2);
        assert!(r.passed(), "{:#?}", r.meta.suites);
        assert_eq!(verify(&cfg).unwrap(), r);
    }

    #[test]
    fn csv_has_a_row_per_point() {
        let cfg = VerifyConfig {
            seed: 1,
            baseline_points: 2,
            beta_values: vec![],
            beta_points: 0,
        };
        let csv = verify(&cfg).unwrap().to_csv().unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("theta,mu,lambda,beta,"));
    }
}
