//! Social benchmarks when part of a breach lands outside the firm.
//!
//! With externality multiplier `e`, social damage is `(1 + e) p L`. The
//! first-best planner picks deployment and defense, which is the private
//! problem at loss magnitude `(1 + e) lambda`. The second-best regulator only
//! picks deployment; the firm still buys defense at its private threshold
//! `lambda theta = 1`, so the two benchmarks switch regime at different points.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::{breach_probability, optimal_defense, optimal_deployment, profit, Deployment, ModelParams, Regime};

/// Breach externality multiplier and its derived composites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Externality {
    e: f64,
}

impl Externality {
    pub fn new(e: f64) -> Result<Self> {
        if e.is_finite() && e >= 0.0 {
            Ok(Externality { e })
        } else {
            Err(ModelError::Domain {
                name: "e",
                value: e,
                reason: "externality must be a finite non-negative number",
            })
        }
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    /// Social loss scale `E = 1 + e`.
    pub fn scale(&self) -> f64 {
        1.0 + self.e
    }

    /// Exposure composite `x = lambda theta` at a parameter point.
    pub fn composite(&self, params: &ModelParams) -> f64 {
        params.exposure()
    }
}

/// Private, first-best and second-best deployment side by side, with the
/// capability thresholds below which each benchmark is in its paradox region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelfareAssessment {
    pub e: f64,
    pub alpha_private: f64,
    pub alpha_fb: f64,
    pub alpha_sb: f64,
    pub fb_clamped: bool,
    pub sb_clamped: bool,
    pub private_threshold: f64,
    pub fb_threshold: f64,
    pub sb_threshold: f64,
    pub in_private_paradox: bool,
    pub in_fb_paradox: bool,
    pub in_sb_paradox: bool,
    /// Whether a social paradox region exists anywhere in capability space.
    pub admits_social_paradox: bool,
    pub welfare_private: f64,
    pub welfare_fb: f64,
    pub welfare_sb: f64,
}

/// Capability thresholds and corner conditions for a given `lambda`, `e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParadoxThresholds {
    pub private_threshold: f64,
    pub fb_threshold: f64,
    pub sb_threshold: f64,
    pub private_corner: bool,
    pub social_corner: bool,
}

fn check_e(e: f64) -> Result<Externality> {
    Externality::new(e)
}

pub fn first_best_deployment(params: &ModelParams, e: f64) -> Result<Deployment> {
    let scale = check_e(e)?.scale();
    let x = scale * params.exposure();
    let raw = match Regime::from_exposure(x) {
        Regime::Corner => params.mu() + params.theta() * (1.0 - scale * params.lambda()),
        Regime::Interior => params.alpha0() + 1.0 - 2.0 * x.sqrt(),
    };
    Ok(Deployment::from_raw(raw))
}

/// Second-best deployment. The regime split stays at the private threshold
/// `lambda theta = 1` for every `e`.
pub fn second_best_deployment(params: &ModelParams, e: f64) -> Result<Deployment> {
    let ext = check_e(e)?;
    let x = params.exposure();
    let raw = match Regime::from_exposure(x) {
        Regime::Corner => params.mu() + params.theta() * (1.0 - ext.scale() * params.lambda()),
        Regime::Interior => params.alpha0() + 1.0 - (2.0 + ext.e()) * x.sqrt(),
    };
    Ok(Deployment::from_raw(raw))
}

/// Social welfare `pi - e p L` at an arbitrary `(alpha, d)`.
pub fn social_welfare(alpha: f64, d: f64, params: &ModelParams, e: f64) -> f64 {
    let loss = params.lambda() * alpha * params.theta();
    profit(alpha, d, params) - e * breach_probability(alpha, d) * loss
}

/// Second-best objective: welfare with the firm's best-response defense
/// substituted in.
pub fn sb_welfare_objective(alpha: f64, params: &ModelParams, e: f64) -> f64 {
    if alpha <= 0.0 {
        return 0.0;
    }
    let x = params.exposure();
    let a0 = params.alpha0();
    match Regime::from_exposure(x) {
        Regime::Corner => a0 * alpha - 0.5 * alpha * alpha - (1.0 + e) * x * alpha,
        Regime::Interior => (a0 + 1.0 - (2.0 + e) * x.sqrt()) * alpha - 0.5 * alpha * alpha,
    }
}

pub fn paradox_thresholds(lambda: f64, e: f64) -> Result<ParadoxThresholds> {
    let lambda = crate::model::check_positive("lambda", lambda)?;
    let ext = check_e(e)?;
    let half = (2.0 + ext.e()) / 2.0;
    Ok(ParadoxThresholds {
        private_threshold: lambda,
        fb_threshold: ext.scale() * lambda,
        sb_threshold: half * half * lambda,
        private_corner: lambda > 1.0,
        social_corner: ext.scale() * lambda > 1.0,
    })
}

/// The discount functions of the ordering argument: private `H(x)`,
/// second-best `S_e(x)` and first-best `H(E x)`.
pub fn discount_functions(x: f64, e: f64) -> Result<(f64, f64, f64)> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(ModelError::Domain {
            name: "x",
            value: x,
            reason: "exposure composite must be non-negative",
        });
    }
    let ext = check_e(e)?;
    let h = |y: f64| if y <= 1.0 { y } else { 2.0 * y.sqrt() - 1.0 };
    let s = if x <= 1.0 {
        ext.scale() * x
    } else {
        (2.0 + ext.e()) * x.sqrt() - 1.0
    };
    Ok((h(x), s, h(ext.scale() * x)))
}

pub fn assess(params: &ModelParams, e: f64) -> Result<WelfareAssessment> {
    let thresholds = paradox_thresholds(params.lambda(), e)?;
    let private = optimal_deployment(params);
    let fb = first_best_deployment(params, e)?;
    let sb = second_best_deployment(params, e)?;
    let theta = params.theta();
    let lambda = params.lambda();
    let scale = 1.0 + e;

    let in_private_paradox = match Regime::from_exposure(params.exposure()) {
        Regime::Corner => thresholds.private_corner,
        Regime::Interior => theta < thresholds.private_threshold,
    };
    let in_fb_paradox = match Regime::from_exposure(scale * params.exposure()) {
        Regime::Corner => thresholds.social_corner,
        Regime::Interior => theta < thresholds.fb_threshold,
    };
    let in_sb_paradox = match Regime::from_exposure(params.exposure()) {
        Regime::Corner => thresholds.social_corner,
        Regime::Interior => theta < thresholds.sb_threshold,
    };
    // The second-best interior region is (1/lambda, sb_threshold).
    let admits_social_paradox = thresholds.social_corner || thresholds.sb_threshold * lambda > 1.0;

    let at_best_defense = |alpha: f64| {
        let d = if alpha > 0.0 {
            optimal_defense(alpha, params).unwrap_or(0.0)
        } else {
            0.0
        };
        social_welfare(alpha, d, params, e)
    };
    let fb_defense = |alpha: f64| {
        if alpha <= 0.0 {
            return 0.0;
        }
        let x = scale * params.exposure();
        match Regime::from_exposure(x) {
            Regime::Corner => 0.0,
            Regime::Interior => alpha * (x.sqrt() - 1.0),
        }
    };

    Ok(WelfareAssessment {
        e,
        alpha_private: private.alpha,
        alpha_fb: fb.alpha,
        alpha_sb: sb.alpha,
        fb_clamped: fb.clamped,
        sb_clamped: sb.clamped,
        private_threshold: thresholds.private_threshold,
        fb_threshold: thresholds.fb_threshold,
        sb_threshold: thresholds.sb_threshold,
        in_private_paradox,
        in_fb_paradox,
        in_sb_paradox,
        admits_social_paradox,
        welfare_private: at_best_defense(private.alpha),
        welfare_fb: social_welfare(fb.alpha, fb_defense(fb.alpha), params, e),
        welfare_sb: at_best_defense(sb.alpha),
    })
}
