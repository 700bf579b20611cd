//! Baseline deployment-and-defense problem.
//!
//! A firm picks a deployment intensity `alpha >= 0` and an AI-specific
//! security spend `d >= 0`. Deployment earns `(theta + mu) * alpha - alpha^2 / 2`,
//! exposes a loss `lambda * alpha * theta` under the governance gap, and that
//! loss is realized with the contest probability `alpha / (alpha + d)`.
//!
//! Everything here is closed form. The regime split is on the exposure
//! `x = lambda * theta`: defense is only worth buying when `x > 1`.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// The environment every solver consumes: capability, readiness and loss
/// magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    theta: f64,
    mu: f64,
    lambda: f64,
    positive_deployment_ok: bool,
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::NonPositive { name, value })
    }
}

impl ModelParams {
    /// Builds a parameter point that satisfies `lambda < mu + 1`, the condition
    /// under which optimal deployment is strictly positive at every capability.
    pub fn new(theta: f64, mu: f64, lambda: f64) -> Result<Self> {
        let params = Self::relaxed(theta, mu, lambda)?;
        if params.positive_deployment_ok {
            Ok(params)
        } else {
            Err(ModelError::AssumptionViolated { lambda, mu })
        }
    }

    /// Like [`ModelParams::new`] but accepts `lambda >= mu + 1`. Solvers then
    /// clamp deployment at zero and flag it.
    pub fn relaxed(theta: f64, mu: f64, lambda: f64) -> Result<Self> {
        let theta = check_positive("theta", theta)?;
        let mu = check_positive("mu", mu)?;
        let lambda = check_positive("lambda", lambda)?;
        Ok(Self {
            theta,
            mu,
            lambda,
            positive_deployment_ok: lambda < mu + 1.0,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn positive_deployment_ok(&self) -> bool {
        self.positive_deployment_ok
    }

    /// Same point with a different capability level.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::relaxed(theta, self.mu, self.lambda)
    }

    /// Same point with a different loss magnitude.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::relaxed(self.theta, self.mu, lambda)
    }

    /// Exposure composite `lambda * theta`; the regime threshold sits at 1.
    pub fn exposure(&self) -> f64 {
        self.lambda * self.theta
    }

    /// No-risk deployment benchmark `theta + mu`.
    pub fn alpha0(&self) -> f64 {
        self.theta + self.mu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `lambda * theta <= 1`: no AI-specific defense.
    Corner,
    /// `lambda * theta > 1`: defense scales with deployment.
    Interior,
}

impl Regime {
    /// Classifies an exposure composite. The boundary `x = 1` is a corner.
    pub fn from_exposure(x: f64) -> Self {
        if x <= 1.0 {
            Regime::Corner
        } else {
            Regime::Interior
        }
    }

    pub fn is_corner(self) -> bool {
        self == Regime::Corner
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Corner => "corner",
            Regime::Interior => "interior",
        }
    }
}

/// A deployment level after the `max{0, .}` clamp, with a flag recording
/// whether the clamp was binding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub alpha: f64,
    pub clamped: bool,
}

impl Deployment {
    pub fn from_raw(raw: f64) -> Self {
        if raw < 0.0 {
            Deployment {
                alpha: 0.0,
                clamped: true,
            }
        } else {
            Deployment {
                alpha: raw,
                clamped: false,
            }
        }
    }
}

/// Whether capability currently lowers optimal deployment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParadoxStatus {
    Active,
    /// Exactly at the turning point `theta = lambda`.
    Boundary,
    Inactive,
}

impl ParadoxStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ParadoxStatus::Active => "yes",
            ParadoxStatus::Boundary => "boundary",
            ParadoxStatus::Inactive => "no",
        }
    }
}

/// Everything the firm chooses at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirmSolution {
    pub regime: Regime,
    pub alpha_star: f64,
    pub d_star: f64,
    pub p_star: f64,
    pub expected_loss: f64,
    pub profit: f64,
    pub alpha0: f64,
    pub discount: f64,
    pub firm_value: f64,
    /// Set when `lambda >= mu + 1` pushed the unconstrained optimum below zero.
    pub clamped: bool,
}

pub fn classify_regime(params: &ModelParams) -> Regime {
    Regime::from_exposure(params.exposure())
}

/// Contest breach probability `alpha / (alpha + d)`, zero when nothing is
/// deployed.
pub fn breach_probability(alpha: f64, d: f64) -> f64 {
    if alpha <= 0.0 {
        0.0
    } else {
        alpha / (alpha + d)
    }
}

/// Raw firm profit at an arbitrary `(alpha, d)`.
pub fn profit(alpha: f64, d: f64, params: &ModelParams) -> f64 {
    let loss = params.lambda * alpha * params.theta;
    params.alpha0() * alpha - 0.5 * alpha * alpha - breach_probability(alpha, d) * loss - d
}

/// Best-response security spend for a given deployment level.
pub fn optimal_defense(alpha: f64, params: &ModelParams) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(ModelError::Domain {
            name: "alpha",
            value: alpha,
            reason: "defense is only defined for strictly positive deployment",
        });
    }
    Ok(match classify_regime(params) {
        Regime::Corner => 0.0,
        Regime::Interior => alpha * (params.exposure().sqrt() - 1.0),
    })
}

/// Breach probability once defense is set optimally. Independent of `alpha`.
pub fn equilibrium_breach_prob(params: &ModelParams) -> f64 {
    match classify_regime(params) {
        Regime::Corner => 1.0,
        Regime::Interior => 1.0 / params.exposure().sqrt(),
    }
}

/// Linear coefficient `C` of the reduced profit `C * alpha - alpha^2 / 2`.
fn reduced_coefficient(params: &ModelParams) -> f64 {
    params.alpha0() - security_discount(params)
}

/// Profit with defense already optimized out.
pub fn reduced_profit(alpha: f64, params: &ModelParams) -> f64 {
    reduced_coefficient(params) * alpha - 0.5 * alpha * alpha
}

/// The unclamped closed form; negative only when `lambda >= mu + 1`.
pub fn unclamped_deployment(params: &ModelParams) -> f64 {
    reduced_coefficient(params)
}

pub fn optimal_deployment(params: &ModelParams) -> Deployment {
    Deployment::from_raw(unclamped_deployment(params))
}

/// Gap between the no-risk benchmark and the unclamped optimum. Does not
/// depend on `mu`.
pub fn security_discount(params: &ModelParams) -> f64 {
    let x = params.exposure();
    match Regime::from_exposure(x) {
        Regime::Corner => x,
        Regime::Interior => 2.0 * x.sqrt() - 1.0,
    }
}

/// `d alpha* / d theta`. At the kink both one-sided values are `1 - lambda`,
/// which is what the corner branch returns.
pub fn deployment_slope(params: &ModelParams) -> f64 {
    match classify_regime(params) {
        Regime::Corner => 1.0 - params.lambda,
        Regime::Interior => 1.0 - (params.lambda / params.theta).sqrt(),
    }
}

/// `d alpha* / d lambda`; always negative.
pub fn lambda_slope(params: &ModelParams) -> f64 {
    match classify_regime(params) {
        Regime::Corner => -params.theta,
        Regime::Interior => -(params.theta / params.lambda).sqrt(),
    }
}

/// A paradox region exists somewhere in capability space only when `lambda > 1`.
pub fn admits_paradox(lambda: f64) -> bool {
    lambda > 1.0
}

pub fn paradox_status(params: &ModelParams) -> ParadoxStatus {
    if !admits_paradox(params.lambda) || params.theta > params.lambda {
        ParadoxStatus::Inactive
    } else if params.theta < params.lambda {
        ParadoxStatus::Active
    } else {
        ParadoxStatus::Boundary
    }
}

pub fn solve(params: &ModelParams) -> FirmSolution {
    let regime = classify_regime(params);
    let Deployment { alpha, clamped } = optimal_deployment(params);
    let d_star = if alpha > 0.0 {
        optimal_defense(alpha, params).unwrap_or(0.0)
    } else {
        0.0
    };
    let p_star = equilibrium_breach_prob(params);
    let alpha0 = params.alpha0();
    FirmSolution {
        regime,
        alpha_star: alpha,
        d_star,
        p_star,
        expected_loss: p_star * params.lambda * alpha * params.theta,
        profit: reduced_profit(alpha, params),
        alpha0,
        discount: alpha0 - alpha,
        firm_value: 0.5 * alpha * alpha,
        clamped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(theta: f64, mu: f64, lambda: f64) -> ModelParams {
        ModelParams::new(theta, mu, lambda).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            ModelParams::new(0.0, 1.0, 1.0),
            Err(ModelError::NonPositive { name: "theta", .. })
        ));
        assert!(ModelParams::new(1.0, f64::NAN, 1.0).is_err());
        assert!(matches!(
            ModelParams::new(1.0, 1.0, 2.0),
            Err(ModelError::AssumptionViolated { .. })
        ));
        let relaxed = ModelParams::relaxed(1.0, 1.0, 2.0).unwrap();
        assert!(!relaxed.positive_deployment_ok());
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_regime(&p(2.0, 2.0, 0.71)), Regime::Interior);
        assert_eq!(classify_regime(&p(0.5, 2.0, 2.0)), Regime::Corner);
        assert_eq!(classify_regime(&p(1.0, 1.0, 1.0)), Regime::Corner);
    }

    #[test]
    fn profit_examples() {
        let any = p(1.3, 0.7, 0.4);
        assert_eq!(profit(0.0, 0.0, &any), 0.0);
        assert_eq!(profit(0.0, 2.5, &any), -2.5);
        assert_abs_diff_eq!(profit(1.0, 1.0, &p(2.0, 2.0, 2.0)), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(profit(2.0, 0.0, &p(1.0, 1.0, 1.0)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn defense_examples() {
        let d = optimal_defense(1.8377, &p(2.0, 2.0, 1.25)).unwrap();
        assert!((d - 1.07).abs() <= 0.005);
        assert_eq!(optimal_defense(5.0, &p(0.5, 2.0, 1.0)).unwrap(), 0.0);
        assert_abs_diff_eq!(optimal_defense(1.0, &p(2.0, 2.0, 2.0)).unwrap(), 1.0, epsilon = 1e-12);
        assert!(optimal_defense(0.0, &p(2.0, 2.0, 2.0)).is_err());
        assert!(optimal_defense(-1.0, &p(2.0, 2.0, 2.0)).is_err());
    }

    #[test]
    fn breach_probability_examples() {
        assert_eq!(breach_probability(1.0, 0.0), 1.0);
        assert_eq!(breach_probability(1.0, 1.0), 0.5);
        assert_eq!(breach_probability(0.0, 0.0), 0.0);
        assert!((breach_probability(1.8377, 1.07) - 0.632).abs() < 5e-4);
    }

    #[test]
    fn equilibrium_probability_examples() {
        assert_abs_diff_eq!(equilibrium_breach_prob(&p(2.0, 2.0, 2.0)), 0.5, epsilon = 1e-12);
        assert_eq!(equilibrium_breach_prob(&p(0.5, 2.0, 2.0)), 1.0);
        assert!((equilibrium_breach_prob(&p(2.0, 2.0, 0.71)) - 0.839).abs() < 5e-4);
    }

    #[test]
    fn reduced_profit_examples() {
        assert_eq!(reduced_profit(0.0, &p(1.0, 2.0, 0.3)), 0.0);
        assert_abs_diff_eq!(reduced_profit(1.0, &p(2.0, 2.0, 2.0)), 0.5, epsilon = 1e-12);
        assert!((reduced_profit(2.145, &p(0.5, 2.0, 0.71)) - 2.30).abs() <= 0.005);
    }

    #[test]
    fn deployment_examples() {
        assert!((optimal_deployment(&p(2.0, 2.0, 0.71)).alpha - 2.62).abs() <= 0.005);
        assert_abs_diff_eq!(optimal_deployment(&p(2.0, 2.0, 2.0)).alpha, 1.0, epsilon = 1e-12);
        for &(mu, lambda) in &[(2.0, 1.25), (0.7, 0.4), (3.0, 2.5)] {
            let on_kink = p(1.0 / lambda, mu, lambda);
            let corner = mu + on_kink.theta() * (1.0 - lambda);
            let interior = on_kink.theta() + mu + 1.0 - 2.0 * on_kink.exposure().sqrt();
            assert_abs_diff_eq!(corner, mu + 1.0 / lambda - 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(interior, corner, epsilon = 1e-12);
            assert_abs_diff_eq!(optimal_deployment(&on_kink).alpha, corner, epsilon = 1e-12);
        }
    }

    #[test]
    fn clamped_deployment_is_flagged() {
        let bad = ModelParams::relaxed(1.0, 0.5, 3.0).unwrap();
        let sol = solve(&bad);
        assert_eq!(sol.alpha_star, 0.0);
        assert!(sol.clamped);
        assert_eq!(sol.d_star, 0.0);
        assert!(!solve(&p(1.0, 2.5, 3.0)).clamped);
    }

    #[test]
    fn discount_examples() {
        let fin = p(2.0, 2.0, 1.25);
        assert_abs_diff_eq!(security_discount(&fin), 2.0 * 2.5f64.sqrt() - 1.0, epsilon = 1e-12);
        assert!((security_discount(&fin) / fin.alpha0() - 0.54).abs() <= 0.005);
        assert_abs_diff_eq!(security_discount(&p(0.8, 2.0, 1.25)), 1.0, epsilon = 1e-12);
        let low = p(0.5, 2.0, 1.0);
        assert_abs_diff_eq!(security_discount(&low), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(low.alpha0() - optimal_deployment(&low).alpha, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn slope_examples() {
        assert_abs_diff_eq!(deployment_slope(&p(2.0, 2.0, 2.0)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(deployment_slope(&p(1.0, 2.0, 2.0)), 1.0 - 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(deployment_slope(&p(0.5, 2.0, 0.71)), 0.29, epsilon = 1e-12);
        assert_abs_diff_eq!(lambda_slope(&p(0.8, 2.0, 1.25)), -0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(lambda_slope(&p(2.0, 2.0, 2.0)), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lambda_slope(&p(0.4, 2.0, 2.0)), -0.4, epsilon = 1e-12);
    }

    #[test]
    fn solve_examples() {
        let ind = solve(&p(2.0, 2.0, 1.14));
        assert_eq!(ind.regime, Regime::Interior);
        assert!((ind.alpha_star - 1.98).abs() <= 0.005);
        assert!((ind.p_star - 0.66).abs() <= 0.005);
        // Printed as 1.00; the closed form gives 1.0098.
        assert!((ind.d_star - 1.0098).abs() < 1e-4);

        let hc = solve(&p(2.0, 2.0, 2.0));
        assert_abs_diff_eq!(hc.alpha_star, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hc.d_star, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hc.p_star, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(hc.firm_value, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(hc.profit, hc.firm_value, epsilon = 1e-12);
        assert_abs_diff_eq!(hc.alpha_star + hc.discount, hc.alpha0, epsilon = 0.0);

        assert!((solve(&p(3.0, 2.0, 2.0)).alpha_star - 1.10).abs() <= 0.005);
    }

    #[test]
    fn paradox_status_classification() {
        assert_eq!(paradox_status(&p(2.0, 2.0, 2.0)), ParadoxStatus::Boundary);
        assert_eq!(paradox_status(&p(1.0, 2.0, 2.0)), ParadoxStatus::Active);
        assert_eq!(paradox_status(&p(0.3, 2.0, 2.0)), ParadoxStatus::Active);
        assert_eq!(paradox_status(&p(2.0, 2.0, 1.14)), ParadoxStatus::Inactive);
        assert_eq!(paradox_status(&p(0.5, 2.0, 0.71)), ParadoxStatus::Inactive);
        assert_eq!(paradox_status(&p(1.0, 2.0, 1.0)), ParadoxStatus::Inactive);
    }
}
