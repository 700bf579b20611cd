//! Browser bindings. Each exported function takes plain numbers and returns
//! a JSON string; the page in `www/` draws the results on a canvas.
//!
//! The `*_json` functions hold the logic and are ordinary Rust so they can be
//! tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use govgap::capability::{firm_value_at, upgrade_decision, UpgradeDecision};
use govgap::harness::sweep::{linspace, paradox_map};
use govgap::model::{self, ModelParams};
use govgap::welfare;

#[derive(Debug, Serialize)]
pub struct Curve {
    pub mu: f64,
    pub lambda: f64,
    pub e: f64,
    pub theta: Vec<f64>,
    pub private: Vec<f64>,
    pub first_best: Vec<f64>,
    pub second_best: Vec<f64>,
    /// Capability below which more capability lowers deployment, per benchmark.
    /// Zero when the benchmark has no paradox region.
    pub private_threshold: f64,
    pub fb_threshold: f64,
    pub sb_threshold: f64,
    /// Any point where `lambda >= mu + 1` forced a zero private deployment.
    pub clamped: bool,
}

fn threshold_if_active(t: f64) -> f64 {
    if t > 1.0 {
        t
    } else {
        0.0
    }
}

pub fn deployment_curve_json(mu: f64, lambda: f64, e: f64, theta_max: f64, n: usize) -> Result<String, String> {
    let run = || -> govgap::Result<Curve> {
        let theta = linspace(theta_max / n as f64, theta_max, n)?;
        let mut curve = Curve {
            mu,
            lambda,
            e,
            theta: theta.clone(),
            private: Vec::with_capacity(n),
            first_best: Vec::with_capacity(n),
            second_best: Vec::with_capacity(n),
            private_threshold: 0.0,
            fb_threshold: 0.0,
            sb_threshold: 0.0,
            clamped: false,
        };
        for &t in &theta {
            let p = ModelParams::relaxed(t, mu, lambda)?;
            let private = model::optimal_deployment(&p);
            curve.clamped |= private.clamped;
            curve.private.push(private.alpha);
            curve.first_best.push(welfare::first_best_deployment(&p, e)?.alpha);
            curve.second_best.push(welfare::second_best_deployment(&p, e)?.alpha);
        }
        let th = welfare::paradox_thresholds(lambda, e)?;
        curve.private_threshold = threshold_if_active(th.private_threshold);
        curve.fb_threshold = threshold_if_active(th.fb_threshold);
        curve.sb_threshold = threshold_if_active(th.sb_threshold);
        Ok(curve)
    };
    let curve = run().map_err(|e| e.to_string())?;
    serde_json::to_string(&curve).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct UpgradeView {
    pub decision: UpgradeDecision,
    /// Firm value along capability, for drawing the U-shape.
    pub theta: Vec<f64>,
    pub value: Vec<f64>,
}

pub fn upgrade_json(theta_l: f64, theta_f: f64, mu: f64, lambda: f64) -> Result<String, String> {
    let run = || -> govgap::Result<UpgradeView> {
        let decision = upgrade_decision(theta_l, theta_f, mu, lambda)?;
        let top = 1.25 * theta_f.max(lambda);
        let theta = linspace(top / 200.0, top, 200)?;
        let value = theta
            .iter()
            .map(|&t| firm_value_at(t, mu, lambda))
            .collect::<govgap::Result<Vec<_>>>()?;
        Ok(UpgradeView { decision, theta, value })
    };
    let view = run().map_err(|e| e.to_string())?;
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn paradox_map_json(mu: f64, theta_max: f64, lambda_max: f64, n: usize) -> Result<String, String> {
    let m = paradox_map(
        mu,
        (theta_max / n as f64, theta_max, n),
        (lambda_max / n as f64, lambda_max, n),
    )
    .map_err(|e| e.to_string())?;
    serde_json::to_string(&m).map_err(|e| e.to_string())
}

/// Private, first-best and second-best deployment as capability rises.
#[wasm_bindgen]
pub fn deployment_curve(mu: f64, lambda: f64, e: f64, theta_max: f64, n: usize) -> Result<String, JsValue> {
    deployment_curve_json(mu, lambda, e, theta_max, n).map_err(|e| JsValue::from_str(&e))
}

/// Legacy versus frontier upgrade decision with the firm-value curve.
#[wasm_bindgen]
pub fn upgrade(theta_l: f64, theta_f: f64, mu: f64, lambda: f64) -> Result<String, JsValue> {
    upgrade_json(theta_l, theta_f, mu, lambda).map_err(|e| JsValue::from_str(&e))
}

/// `n x n` grid of deployment and paradox flags over `(theta, lambda)`.
#[wasm_bindgen]
pub fn deployment_map(mu: f64, theta_max: f64, lambda_max: f64, n: usize) -> Result<String, JsValue> {
    paradox_map_json(mu, theta_max, lambda_max, n).map_err(|e| JsValue::from_str(&e))
}
