//! Parameter sweeps along capability or loss magnitude, and the
//! `(theta, lambda)` paradox map.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::extensions::{Extension, ExtensionConfig};
use crate::model::{ModelParams, Regime};
use crate::welfare;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Theta,
    Lambda,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Theta => "theta",
            Axis::Lambda => "lambda",
        })
    }
}

impl FromStr for Axis {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "theta" => Ok(Axis::Theta),
            "lambda" => Ok(Axis::Lambda),
            _ => Err(ModelError::Format(format!(
                "unknown sweep axis `{s}` (expected theta or lambda)"
            ))),
        }
    }
}

/// Evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(ModelError::Range(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if n < 2 {
        return Err(ModelError::Range(format!("need at least 2 points, got {n}")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub extension: ExtensionConfig,
    /// Adds second-best columns when set.
    pub e: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub x: f64,
    pub alpha_star: f64,
    pub d_star: f64,
    pub p_star: f64,
    pub discount: f64,
    pub firm_value: f64,
    pub regime: Regime,
    pub paradox_active: bool,
    pub clamped: bool,
    pub alpha_sb: Option<f64>,
    pub sb_paradox: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepMinimum {
    pub index: usize,
    pub x: f64,
    pub alpha_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub version: String,
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub theta: f64,
    pub mu: f64,
    pub lambda: f64,
    pub extension: ExtensionConfig,
    pub e: Option<f64>,
    /// Lowest deployment along the sweep (first occurrence).
    pub minimum: Option<SweepMinimum>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub meta: SweepMeta,
    #[serde(rename = "rows")]
    pub points: Vec<SweepPoint>,
}

fn point_at(x: f64, params: &ModelParams, options: &SweepOptions) -> Result<SweepPoint> {
    let variant = options.extension.variant()?;
    let out = options.extension.solve(params)?;
    let alpha = out.deployment.alpha;
    let firm_value = match variant {
        Extension::Beta(_) => out.profit,
        _ => 0.5 * alpha * alpha,
    };
    let (alpha_sb, sb_paradox) = match options.e {
        Some(e) => {
            let a = welfare::assess(params, e)?;
            (Some(a.alpha_sb), Some(a.in_sb_paradox))
        }
        None => (None, None),
    };
    Ok(SweepPoint {
        x,
        alpha_star: alpha,
        d_star: out.defense,
        p_star: out.breach_prob,
        discount: out.alpha0 - alpha,
        firm_value,
        regime: out.regime,
        paradox_active: out.sign_reversal,
        clamped: out.deployment.clamped,
        alpha_sb,
        sb_paradox,
    })
}

/// Solves every point of an evenly spaced sweep. `base` supplies the
/// parameters that stay fixed; points may violate `lambda < mu + 1`, in
/// which case deployment is clamped and flagged.
pub fn sweep(
    axis: Axis,
    lo: f64,
    hi: f64,
    n: usize,
    base: &ModelParams,
    options: &SweepOptions,
) -> Result<SweepResult> {
    options.extension.variant()?;
    if let Some(e) = options.e {
        welfare::Externality::new(e)?;
    }
    if lo <= 0.0 {
        return Err(ModelError::Range(format!(
            "{axis} must stay positive, got lower bound {lo}"
        )));
    }
    let xs = linspace(lo, hi, n)?;
    let points = xs
        .iter()
        .map(|&x| {
            let params = match axis {
                Axis::Theta => base.with_theta(x)?,
                Axis::Lambda => base.with_lambda(x)?,
            };
            point_at(x, &params, options)
        })
        .collect::<Result<Vec<_>>>()?;

    let minimum = points
        .iter()
        .enumerate()
        .fold(None::<SweepMinimum>, |best, (index, p)| match best {
            Some(b) if b.alpha_star <= p.alpha_star => Some(b),
            _ => Some(SweepMinimum {
                index,
                x: p.x,
                alpha_star: p.alpha_star,
            }),
        });

    Ok(SweepResult {
        meta: SweepMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            axis,
            lo,
            hi,
            n,
            theta: base.theta(),
            mu: base.mu(),
            lambda: base.lambda(),
            extension: options.extension,
            e: options.e,
            minimum,
        },
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapCell {
    pub alpha_star: f64,
    pub paradox: bool,
    pub regime: Regime,
}

/// Baseline deployment over a `(theta, lambda)` grid. `cells[i][j]` holds
/// `lambdas[i]`, `thetas[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParadoxMap {
    pub mu: f64,
    pub thetas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub cells: Vec<Vec<MapCell>>,
}

pub fn paradox_map(mu: f64, thetas: (f64, f64, usize), lambdas: (f64, f64, usize)) -> Result<ParadoxMap> {
    let ts = linspace(thetas.0, thetas.1, thetas.2)?;
    let ls = linspace(lambdas.0, lambdas.1, lambdas.2)?;
    let cells = ls
        .iter()
        .map(|&lambda| {
            ts.iter()
                .map(|&theta| {
                    let params = ModelParams::relaxed(theta, mu, lambda)?;
                    Ok(MapCell {
                        alpha_star: crate::model::optimal_deployment(&params).alpha,
                        paradox: crate::model::paradox_status(&params) == crate::model::ParadoxStatus::Active,
                        regime: crate::model::classify_regime(&params),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParadoxMap {
        mu,
        thetas: ts,
        lambdas: ls,
        cells,
    })
}
