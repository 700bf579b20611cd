//! Legacy-versus-frontier capability choice.
//!
//! Firm value at capability `theta_c` is `V = alpha*(theta_c)^2 / 2`. For
//! `lambda > 1` it is U-shaped with its minimum at `theta_c = lambda`, so the
//! best point of any capability interval is one of its endpoints.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::{optimal_deployment, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpgradeDecision {
    pub theta_l: f64,
    pub theta_f: f64,
    pub value_l: f64,
    pub value_f: f64,
    /// Strictly higher frontier value; ties keep the legacy system.
    pub adopt: bool,
    /// `None` when the legacy system sits in the corner regime, where the
    /// closed-form threshold does not apply.
    pub frontier_threshold: Option<f64>,
    /// Rejection even though the frontier is past the turning point.
    pub trap: bool,
}

/// Result of the closed-form frontier threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FrontierThreshold {
    /// Interior-regime upgrades are strictly preferred above this capability.
    Threshold(f64),
    /// Legacy system in the corner regime; compare firm values directly.
    NotApplicable,
}

impl FrontierThreshold {
    pub fn value(self) -> Option<f64> {
        match self {
            FrontierThreshold::Threshold(t) => Some(t),
            FrontierThreshold::NotApplicable => None,
        }
    }
}

pub fn firm_value_at(theta_c: f64, mu: f64, lambda: f64) -> Result<f64> {
    let params = ModelParams::new(theta_c, mu, lambda)?;
    Ok(value_of(&params))
}

fn value_of(params: &ModelParams) -> f64 {
    let alpha = optimal_deployment(params).alpha;
    0.5 * alpha * alpha
}

pub fn frontier_threshold(theta_l: f64, lambda: f64) -> Result<FrontierThreshold> {
    let theta_l = crate::model::check_positive("theta_l", theta_l)?;
    let lambda = crate::model::check_positive("lambda", lambda)?;
    if lambda * theta_l <= 1.0 {
        return Ok(FrontierThreshold::NotApplicable);
    }
    let gap = (2.0 * lambda.sqrt() - theta_l.sqrt()).max(0.0);
    Ok(FrontierThreshold::Threshold(theta_l.max(gap * gap)))
}

pub fn upgrade_decision(theta_l: f64, theta_f: f64, mu: f64, lambda: f64) -> Result<UpgradeDecision> {
    let legacy = ModelParams::new(theta_l, mu, lambda)?;
    let frontier = legacy.with_theta(theta_f)?;
    if theta_f <= theta_l {
        return Err(ModelError::CapabilityOrder { theta_l, theta_f });
    }
    let value_l = value_of(&legacy);
    let value_f = value_of(&frontier);
    let adopt = value_f > value_l;
    Ok(UpgradeDecision {
        theta_l,
        theta_f,
        value_l,
        value_f,
        adopt,
        frontier_threshold: frontier_threshold(theta_l, lambda)?.value(),
        trap: lambda > 1.0 && theta_f > lambda && !adopt,
    })
}
