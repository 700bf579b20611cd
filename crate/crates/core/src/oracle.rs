//! Brute-force verification tools.
//!
//! Nothing in here knows about the closed forms it is used to check: the
//! maximizers only evaluate objectives on refining grids, and the derivative
//! and root helpers are plain numerics.

use serde::{Deserialize, Serialize};

use crate::error::OracleError;

/// Target coordinate resolution after the last refinement round.
pub const TARGET_RESOLUTION: f64 = 1e-5;

const SHRINK: f64 = 10.0;
const DEFAULT_POINTS: usize = 400;
const DEFAULT_ROUNDS: usize = 3;

/// Nested coarse-grid search box for a two-dimensional `(alpha, d)` problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha_max: f64,
    pub d_max: f64,
    pub coarse_points: usize,
    pub refine_rounds: usize,
}

impl GridSpec {
    /// Default box for a point with no-risk benchmark `alpha0 = theta + mu`:
    /// `[0, 2 alpha0] x [0, 4 alpha0]`, 400 points per axis. Refinement
    /// rounds start at 3 and are added until the final step is at most
    /// [`TARGET_RESOLUTION`].
    pub fn for_benchmark(alpha0: f64) -> Self {
        let alpha_max = 2.0 * alpha0;
        let d_max = 4.0 * alpha0;
        let rounds = rounds_for(alpha_max.max(d_max), DEFAULT_POINTS).max(DEFAULT_ROUNDS);
        GridSpec {
            alpha_max,
            d_max,
            coarse_points: DEFAULT_POINTS,
            refine_rounds: rounds,
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.alpha_max.is_finite() && self.alpha_max > 0.0) {
            return Err(OracleError::Spec(format!(
                "alpha_max must be positive, got {}",
                self.alpha_max
            )));
        }
        if !(self.d_max.is_finite() && self.d_max > 0.0) {
            return Err(OracleError::Spec(format!("d_max must be positive, got {}", self.d_max)));
        }
        if self.coarse_points < 100 {
            return Err(OracleError::Spec(format!(
                "coarse_points must be at least 100, got {}",
                self.coarse_points
            )));
        }
        if self.refine_rounds < 1 {
            return Err(OracleError::Spec("refine_rounds must be at least 1".into()));
        }
        Ok(())
    }

    /// Grid step along the wider axis after the last round.
    pub fn final_resolution(&self) -> f64 {
        final_step(self.alpha_max.max(self.d_max), self.coarse_points, self.refine_rounds)
    }
}

fn final_step(span: f64, points: usize, rounds: usize) -> f64 {
    span / (points - 1) as f64 / SHRINK.powi(rounds as i32)
}

fn rounds_for(span: f64, points: usize) -> usize {
    let mut rounds = 1;
    while final_step(span, points, rounds) > TARGET_RESOLUTION {
        rounds += 1;
    }
    rounds
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub alpha_hat: f64,
    pub d_hat: f64,
    pub value_hat: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
struct Window {
    lo: f64,
    hi: f64,
}

impl Window {
    fn step(&self, points: usize) -> f64 {
        (self.hi - self.lo) / (points - 1) as f64
    }

    fn at(&self, i: usize, points: usize) -> f64 {
        if i + 1 == points {
            self.hi
        } else {
            self.lo + i as f64 * self.step(points)
        }
    }

    /// A window `SHRINK` times narrower, centred on `center` and kept inside
    /// `[floor, ceil]`.
    fn shrink_around(&self, center: f64, floor: f64, ceil: f64) -> Window {
        let half = 0.5 * (self.hi - self.lo) / SHRINK;
        let mut lo = center - half;
        let mut hi = center + half;
        if lo < floor {
            hi += floor - lo;
            lo = floor;
        }
        if hi > ceil {
            lo -= hi - ceil;
            hi = ceil;
        }
        Window { lo: lo.max(floor), hi }
    }
}

fn checked(value: f64, point: &[f64]) -> Result<f64, OracleError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(OracleError::NonFinite {
            point: point.to_vec(),
            value,
        })
    }
}

/// Maximizes `objective(alpha, d)` over `[0, alpha_max] x [0, d_max]`.
///
/// Rows are scanned in increasing `alpha`, columns in increasing `d`, and an
/// incumbent is only replaced by a strictly better point, so ties go to the
/// lowest `alpha` and then the lowest `d`. The incumbent carries over between
/// rounds, which keeps `value_hat` monotone.
pub fn maximize_profit<F>(objective: F, spec: &GridSpec) -> Result<OracleResult, OracleError>
where
    F: Fn(f64, f64) -> f64,
{
    spec.validate()?;
    let n = spec.coarse_points;
    let mut aw = Window {
        lo: 0.0,
        hi: spec.alpha_max,
    };
    let mut dw = Window {
        lo: 0.0,
        hi: spec.d_max,
    };
    let mut best = (0.0, 0.0, checked(objective(0.0, 0.0), &[0.0, 0.0])?);
    let mut evaluations = 1u64;

    for round in 0..=spec.refine_rounds {
        if round > 0 {
            aw = aw.shrink_around(best.0, 0.0, spec.alpha_max);
            dw = dw.shrink_around(best.1, 0.0, spec.d_max);
        }
        for i in 0..n {
            let a = aw.at(i, n);
            for j in 0..n {
                let d = dw.at(j, n);
                let v = checked(objective(a, d), &[a, d])?;
                evaluations += 1;
                let better = v > best.2 || (v == best.2 && (a, d) < (best.0, best.1));
                if better {
                    best = (a, d, v);
                }
            }
        }
    }

    Ok(OracleResult {
        alpha_hat: best.0,
        d_hat: best.1,
        value_hat: best.2,
        evaluations,
    })
}

/// One-dimensional counterpart of [`maximize_profit`] on `[lo, hi]`: 1001
/// points per round, refined until the step is below `1e-9`.
pub fn maximize_1d<F>(objective: F, lo: f64, hi: f64) -> Result<(f64, f64), OracleError>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(OracleError::Spec(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    const POINTS: usize = 1001;
    let mut w = Window { lo, hi };
    let mut best = (lo, checked(objective(lo), &[lo])?);
    loop {
        for i in 0..POINTS {
            let x = w.at(i, POINTS);
            let v = checked(objective(x), &[x])?;
            if v > best.1 || (v == best.1 && x < best.0) {
                best = (x, v);
            }
        }
        if w.step(POINTS) <= 1e-9 {
            break;
        }
        w = w.shrink_around(best.0, lo, hi);
    }
    Ok(best)
}

/// Symmetric difference quotient `(f(x + h) - f(x - h)) / 2h`.
pub fn central_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// One-sided difference quotients `(left, right)` at `x`.
pub fn one_sided_differences<F>(f: F, x: f64, h: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let fx = f(x);
    ((fx - f(x - h)) / h, (f(x + h) - fx) / h)
}

/// Second central difference `(f(x + h) - 2 f(x) + f(x - h)) / h^2`.
pub fn second_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

pub const MAX_BISECTIONS: usize = 200;

/// Bisection on a sign-changing bracket, stopping once the bracket is no
/// wider than `tol`.
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, OracleError>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(OracleError::Bracket { lo, hi, f_lo, f_hi });
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(OracleError::NotConverged {
            iterations: MAX_BISECTIONS,
            lo,
            hi,
        })
    }
}

/// Locates every sign change of `f` on an `n`-interval scan of `[lo, hi]` and
/// refines each by bisection.
pub fn all_roots<F>(f: F, lo: f64, hi: f64, n: usize, tol: f64) -> Result<Vec<f64>, OracleError>
where
    F: Fn(f64) -> f64,
{
    let w = Window { lo, hi };
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    if prev_f == 0.0 {
        roots.push(lo);
    }
    for i in 1..=n {
        let x = w.at(i, n + 1);
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if prev_f != 0.0 && prev_f.signum() != fx.signum() {
            roots.push(bisect(&f, prev_x, x, tol)?);
        }
        prev_x = x;
        prev_f = fx;
    }
    Ok(roots)
}
