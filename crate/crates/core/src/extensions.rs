//! Generalizations of the baseline, one deviation at a time, plus endogenous
//! governance investment.
//!
//! * `gamma`: authority exposure `a(theta) = theta^gamma`, so `L = lambda alpha theta^gamma`.
//! * `beta`: breach probability `alpha^beta / (alpha^beta + d)`.
//! * `eta`: productivity `theta^eta alpha`.
//! * `omega`: readiness spills into damage, `L = lambda alpha (theta + omega mu)`.
//!
//! Governance: the firm can cut `lambda0` to `lambda0 - I` at cost `k I^2 / 2`.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::{Deployment, ModelParams, Regime};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionConfig {
    pub gamma: f64,
    pub beta: f64,
    pub eta: f64,
    pub omega: f64,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        ExtensionConfig {
            gamma: 1.0,
            beta: 1.0,
            eta: 1.0,
            omega: 0.0,
        }
    }
}

/// The single active deviation of an [`ExtensionConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Extension {
    Baseline,
    Gamma(f64),
    Beta(f64),
    Eta(f64),
    Omega(f64),
}

impl ExtensionConfig {
    pub fn new(gamma: f64, beta: f64, eta: f64, omega: f64) -> Result<Self> {
        let cfg = ExtensionConfig {
            gamma,
            beta,
            eta,
            omega,
        };
        cfg.variant()?;
        Ok(cfg)
    }

    /// Validates the ranges and returns the one deviating component.
    pub fn variant(&self) -> Result<Extension> {
        check_gamma(self.gamma)?;
        check_beta(self.beta)?;
        check_eta(self.eta)?;
        check_omega(self.omega)?;
        let base = ExtensionConfig::default();
        let mut active = Vec::new();
        if self.gamma != base.gamma {
            active.push(("gamma", Extension::Gamma(self.gamma)));
        }
        if self.beta != base.beta {
            active.push(("beta", Extension::Beta(self.beta)));
        }
        if self.eta != base.eta {
            active.push(("eta", Extension::Eta(self.eta)));
        }
        if self.omega != base.omega {
            active.push(("omega", Extension::Omega(self.omega)));
        }
        match active.as_slice() {
            [] => Ok(Extension::Baseline),
            [(_, one)] => Ok(*one),
            many => Err(ModelError::MultipleDeviations(
                many.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "),
            )),
        }
    }

    pub fn solve(&self, params: &ModelParams) -> Result<ExtensionOutcome> {
        match self.variant()? {
            Extension::Baseline => alpha_star_gamma(params, 1.0),
            Extension::Gamma(g) => alpha_star_gamma(params, g),
            Extension::Beta(b) => beta_optimal_deployment(params, b),
            Extension::Eta(e) => alpha_star_eta(params, e),
            Extension::Omega(w) => alpha_star_omega(params, w),
        }
    }
}

fn check_gamma(gamma: f64) -> Result<f64> {
    if gamma.is_finite() && gamma >= 0.0 {
        Ok(gamma)
    } else {
        Err(ModelError::Domain {
            name: "gamma",
            value: gamma,
            reason: "exposure elasticity must be non-negative",
        })
    }
}

fn check_beta(beta: f64) -> Result<f64> {
    if beta.is_finite() && beta >= 1.0 {
        Ok(beta)
    } else {
        Err(ModelError::Domain {
            name: "beta",
            value: beta,
            reason: "attack-surface exponent must be at least 1",
        })
    }
}

fn check_eta(eta: f64) -> Result<f64> {
    crate::model::check_positive("eta", eta)
}

fn check_omega(omega: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&omega) {
        Ok(omega)
    } else {
        Err(ModelError::Domain {
            name: "omega",
            value: omega,
            reason: "readiness spillover must lie in [0, 1]",
        })
    }
}

/// Optimum of a generalized model together with its local sign-reversal
/// diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionOutcome {
    pub deployment: Deployment,
    pub regime: Regime,
    pub defense: f64,
    pub breach_prob: f64,
    /// Reduced-form profit at the optimum.
    pub profit: f64,
    /// No-risk benchmark under the same productivity term.
    pub alpha0: f64,
    /// Whether more capability lowers optimal deployment at this point.
    pub sign_reversal: bool,
}

/// Shared closed form for the variants that only move the exposure composite
/// or the productivity term: `alpha* = max{0, prod + mu - H(x)}`.
fn exposure_variant(productivity: f64, mu: f64, x: f64, sign_reversal: bool) -> ExtensionOutcome {
    let regime = Regime::from_exposure(x);
    let alpha0 = productivity + mu;
    let raw = match regime {
        Regime::Corner => alpha0 - x,
        Regime::Interior => alpha0 + 1.0 - 2.0 * x.sqrt(),
    };
    let deployment = Deployment::from_raw(raw);
    let alpha = deployment.alpha;
    let (defense, breach_prob) = match regime {
        Regime::Corner => (0.0, 1.0),
        Regime::Interior => (alpha * (x.sqrt() - 1.0), 1.0 / x.sqrt()),
    };
    ExtensionOutcome {
        deployment,
        regime,
        defense,
        breach_prob,
        profit: 0.5 * alpha * alpha,
        alpha0,
        sign_reversal,
    }
}

pub fn alpha_star_gamma(params: &ModelParams, gamma: f64) -> Result<ExtensionOutcome> {
    let gamma = check_gamma(gamma)?;
    let (theta, lambda) = (params.theta(), params.lambda());
    let x = lambda * theta.powf(gamma);
    let reversal = match Regime::from_exposure(x) {
        Regime::Corner => lambda * gamma * theta.powf(gamma - 1.0) > 1.0,
        Regime::Interior => gamma * lambda.sqrt() * theta.powf(gamma / 2.0 - 1.0) > 1.0,
    };
    Ok(exposure_variant(theta, params.mu(), x, reversal))
}

pub fn alpha_star_eta(params: &ModelParams, eta: f64) -> Result<ExtensionOutcome> {
    let eta = check_eta(eta)?;
    let (theta, lambda) = (params.theta(), params.lambda());
    let x = params.exposure();
    let reversal = match Regime::from_exposure(x) {
        Regime::Corner => eta * theta.powf(eta - 1.0) < lambda,
        Regime::Interior => eta * theta.powf(eta - 0.5) < lambda.sqrt(),
    };
    Ok(exposure_variant(theta.powf(eta), params.mu(), x, reversal))
}

pub fn alpha_star_omega(params: &ModelParams, omega: f64) -> Result<ExtensionOutcome> {
    let omega = check_omega(omega)?;
    let (theta, mu, lambda) = (params.theta(), params.mu(), params.lambda());
    let x = lambda * (theta + omega * mu);
    let reversal = match Regime::from_exposure(x) {
        Regime::Corner => lambda > 1.0,
        Regime::Interior => theta + omega * mu < lambda,
    };
    Ok(exposure_variant(theta, mu, x, reversal))
}

/// Raw profit of the `gamma` variant.
pub fn gamma_profit(alpha: f64, d: f64, params: &ModelParams, gamma: f64) -> f64 {
    let loss = params.lambda() * alpha * params.theta().powf(gamma);
    params.alpha0() * alpha - 0.5 * alpha * alpha - crate::model::breach_probability(alpha, d) * loss - d
}

/// Raw profit of the `eta` variant.
pub fn eta_profit(alpha: f64, d: f64, params: &ModelParams, eta: f64) -> f64 {
    let loss = params.lambda() * alpha * params.theta();
    (params.theta().powf(eta) + params.mu()) * alpha
        - 0.5 * alpha * alpha
        - crate::model::breach_probability(alpha, d) * loss
        - d
}

/// Raw profit of the `omega` variant.
pub fn omega_profit(alpha: f64, d: f64, params: &ModelParams, omega: f64) -> f64 {
    let loss = params.lambda() * alpha * (params.theta() + omega * params.mu());
    params.alpha0() * alpha - 0.5 * alpha * alpha - crate::model::breach_probability(alpha, d) * loss - d
}

/// Raw profit under the generalized breach probability.
pub fn beta_profit(alpha: f64, d: f64, params: &ModelParams, beta: f64) -> f64 {
    let base = params.alpha0() * alpha - 0.5 * alpha * alpha - d;
    if alpha <= 0.0 {
        return base;
    }
    let ab = alpha.powf(beta);
    base - params.lambda() * alpha * ab * params.theta() / (ab + d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaDefense {
    pub defense: f64,
    /// The interior expression was negative and defense was set to zero.
    pub corner: bool,
}

fn check_alpha(alpha: f64) -> Result<f64> {
    crate::model::check_positive("alpha", alpha)
}

/// `alpha^((1 - beta)/2) sqrt(lambda theta) >= 1`: interior defense is
/// non-negative.
fn beta_feasible(alpha: f64, params: &ModelParams, beta: f64) -> bool {
    alpha.powf((1.0 - beta) / 2.0) * params.exposure().sqrt() >= 1.0
}

pub fn beta_defense(alpha: f64, params: &ModelParams, beta: f64) -> Result<BetaDefense> {
    let alpha = check_alpha(alpha)?;
    let beta = check_beta(beta)?;
    let raw = alpha.powf((beta + 1.0) / 2.0) * params.exposure().sqrt() - alpha.powf(beta);
    Ok(if beta_feasible(alpha, params, beta) {
        BetaDefense {
            defense: raw.max(0.0),
            corner: false,
        }
    } else {
        BetaDefense {
            defense: 0.0,
            corner: true,
        }
    })
}

pub fn beta_equilibrium_prob(alpha: f64, params: &ModelParams, beta: f64) -> Result<f64> {
    let alpha = check_alpha(alpha)?;
    let beta = check_beta(beta)?;
    if beta_feasible(alpha, params, beta) {
        Ok((alpha.powf((beta - 1.0) / 2.0) / params.exposure().sqrt()).min(1.0))
    } else {
        Ok(1.0)
    }
}

/// Deployment first-order condition `F(alpha, theta)` of the interior
/// reduced form.
pub fn beta_deployment_foc(alpha: f64, params: &ModelParams, beta: f64) -> f64 {
    params.alpha0() - alpha - (beta + 1.0) * alpha.powf((beta - 1.0) / 2.0) * params.exposure().sqrt()
        + beta * alpha.powf(beta - 1.0)
}

/// Profit with defense optimized out: the interior reduced form where
/// defense is feasible, the `d = 0` profit elsewhere. The two pieces meet
/// with matching slope.
pub fn beta_reduced_profit(alpha: f64, params: &ModelParams, beta: f64) -> f64 {
    if alpha <= 0.0 {
        return 0.0;
    }
    let head = params.alpha0() * alpha - 0.5 * alpha * alpha;
    if beta_feasible(alpha, params, beta) {
        head - 2.0 * alpha.powf((beta + 1.0) / 2.0) * params.exposure().sqrt() + alpha.powf(beta)
    } else {
        head - params.lambda() * alpha * params.theta()
    }
}

fn beta_marginal_profit(alpha: f64, params: &ModelParams, beta: f64) -> f64 {
    if beta_feasible(alpha, params, beta) {
        beta_deployment_foc(alpha, params, beta)
    } else {
        params.alpha0() - alpha - params.exposure()
    }
}

const BETA_LO: f64 = 1e-9;
const BETA_SCAN: usize = 200;
const BETA_TOL: f64 = 1e-10;

/// Optimal deployment under the generalized breach probability.
///
/// Scans the marginal reduced profit on `[1e-9, theta + mu]`, bisects every
/// sign change, and keeps the stationary point with the highest reduced
/// profit. Deployment is zero (and flagged) when no candidate earns a
/// positive profit.
pub fn beta_optimal_deployment(params: &ModelParams, beta: f64) -> Result<ExtensionOutcome> {
    let beta = check_beta(beta)?;
    let hi = params.alpha0();
    let roots = oracle::all_roots(
        |a| beta_marginal_profit(a, params, beta),
        BETA_LO,
        hi,
        BETA_SCAN,
        BETA_TOL,
    )?;
    let best = roots
        .into_iter()
        .map(|a| (a, beta_reduced_profit(a, params, beta)))
        .filter(|&(_, v)| v > 0.0)
        .fold(None::<(f64, f64)>, |acc, cand| match acc {
            Some(b) if b.1 >= cand.1 => Some(b),
            _ => Some(cand),
        });

    let (deployment, profit) = match best {
        Some((a, v)) => (
            Deployment {
                alpha: a,
                clamped: false,
            },
            v,
        ),
        None => (
            Deployment {
                alpha: 0.0,
                clamped: true,
            },
            0.0,
        ),
    };
    let alpha = deployment.alpha;
    let (defense, breach_prob, regime, reversal) = if alpha > 0.0 {
        let d = beta_defense(alpha, params, beta)?;
        let regime = if d.corner { Regime::Corner } else { Regime::Interior };
        let reversal = match regime {
            Regime::Interior => beta_sign_reversal(alpha, params, beta)?,
            Regime::Corner => params.lambda() > 1.0,
        };
        (d.defense, beta_equilibrium_prob(alpha, params, beta)?, regime, reversal)
    } else {
        (0.0, 1.0, Regime::Corner, false)
    };
    Ok(ExtensionOutcome {
        deployment,
        regime,
        defense,
        breach_prob,
        profit,
        alpha0: params.alpha0(),
        sign_reversal: reversal,
    })
}

/// Local condition under which `F_theta < 0` at an interior optimum.
pub fn beta_sign_reversal(alpha: f64, params: &ModelParams, beta: f64) -> Result<bool> {
    let alpha = check_alpha(alpha)?;
    let beta = check_beta(beta)?;
    let lhs = (beta + 1.0) * alpha.powf((beta - 1.0) / 2.0) * params.lambda().sqrt() / (2.0 * params.theta().sqrt());
    Ok(lhs > 1.0)
}

/// `-V'(lambda)`: the marginal value of reducing loss magnitude.
pub fn governance_marginal_value(lambda: f64, theta: f64, mu: f64) -> Result<f64> {
    let params = ModelParams::new(theta, mu, lambda)?;
    Ok(marginal_value(&params))
}

fn marginal_value(params: &ModelParams) -> f64 {
    let alpha = crate::model::unclamped_deployment(params);
    match crate::model::classify_regime(params) {
        Regime::Corner => params.theta() * alpha,
        Regime::Interior => alpha * (params.theta() / params.lambda()).sqrt(),
    }
}

/// Smallest loss magnitude the governance solver will reach.
pub const LAMBDA_FLOOR: f64 = 1e-6;
const GOVERNANCE_SCAN: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GovernanceProblem {
    pub lambda0: f64,
    pub k: f64,
    pub i_star: f64,
    pub lambda_star: f64,
    /// The optimum sits at `lambda* = LAMBDA_FLOOR`.
    pub floor_hit: bool,
    pub welfare: f64,
}

/// `W(I) = V(lambda0 - I) - k I^2 / 2`.
pub fn governance_welfare(i: f64, lambda0: f64, k: f64, theta: f64, mu: f64) -> Result<f64> {
    let params = ModelParams::new(theta, mu, lambda0 - i)?;
    let alpha = crate::model::unclamped_deployment(&params);
    Ok(0.5 * alpha * alpha - 0.5 * k * i * i)
}

/// Optimal governance investment.
///
/// Every crossing of `k I = -V'(lambda0 - I)` on `[0, lambda0 - floor]` is
/// located by bisection; the candidate (crossings and the floor endpoint)
/// with the highest `W` wins.
pub fn solve_governance(lambda0: f64, k: f64, theta: f64, mu: f64) -> Result<GovernanceProblem> {
    let k = crate::model::check_positive("k", k)?;
    let base = ModelParams::new(theta, mu, lambda0)?;
    if lambda0 <= LAMBDA_FLOOR {
        return Err(ModelError::Domain {
            name: "lambda0",
            value: lambda0,
            reason: "inherited loss magnitude must exceed the solver floor",
        });
    }
    let i_max = lambda0 - LAMBDA_FLOOR;
    let residual = |i: f64| {
        let p = base
            .with_lambda(lambda0 - i)
            .expect("lambda stays positive on the bracket");
        k * i - marginal_value(&p)
    };
    let crossings = oracle::all_roots(residual, 0.0, i_max, GOVERNANCE_SCAN, 1e-13)?;

    let mut best: Option<(f64, f64)> = None;
    for i in crossings.into_iter().chain([0.0, i_max]) {
        let w = governance_welfare(i, lambda0, k, theta, mu)?;
        let replace = match best {
            None => true,
            Some((bi, bw)) => w > bw || (w == bw && i < bi),
        };
        if replace {
            best = Some((i, w));
        }
    }
    let (i_star, welfare) = best.expect("candidate set is never empty");
    Ok(GovernanceProblem {
        lambda0,
        k,
        i_star,
        lambda_star: lambda0 - i_star,
        floor_hit: i_star == i_max,
        welfare,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::optimal_deployment;
    use crate::oracle::{central_difference, maximize_profit, GridSpec};
    use approx::assert_abs_diff_eq;

    fn p(theta: f64, mu: f64, lambda: f64) -> ModelParams {
        ModelParams::new(theta, mu, lambda).unwrap()
    }

    #[test]
    fn config_allows_one_deviation() {
        assert_eq!(ExtensionConfig::default().variant().unwrap(), Extension::Baseline);
        assert_eq!(
            ExtensionConfig::new(1.0, 2.0, 1.0, 0.0).unwrap().variant().unwrap(),
            Extension::Beta(2.0)
        );
        assert!(matches!(
            ExtensionConfig::new(2.0, 2.0, 1.0, 0.0),
            Err(ModelError::MultipleDeviations(s)) if s == "gamma, beta"
        ));
        assert!(ExtensionConfig::new(1.0, 0.5, 1.0, 0.0).is_err());
        assert!(ExtensionConfig::new(1.0, 1.0, 1.0, 1.5).is_err());
        assert!(ExtensionConfig::new(-1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ExtensionConfig::new(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn gamma_examples() {
        let base = p(1.3, 2.0, 1.6);
        assert_abs_diff_eq!(
            alpha_star_gamma(&base, 1.0).unwrap().deployment.alpha,
            optimal_deployment(&base).alpha,
            epsilon = 1e-12
        );

        let flat = alpha_star_gamma(&p(2.0, 2.0, 0.8), 0.0).unwrap();
        assert_eq!(flat.regime, Regime::Corner);
        assert_abs_diff_eq!(flat.deployment.alpha, 3.2, epsilon = 1e-12);
        assert!(!flat.sign_reversal);
        let slope = central_difference(
            |t| alpha_star_gamma(&p(t, 2.0, 0.8), 0.0).unwrap().deployment.alpha,
            2.0,
            1e-5,
        );
        assert_abs_diff_eq!(slope, 1.0, epsilon = 1e-6);

        let steep = alpha_star_gamma(&p(2.0, 2.0, 0.3), 2.0).unwrap();
        assert_eq!(steep.regime, Regime::Interior);
        assert_abs_diff_eq!(steep.deployment.alpha, 5.0 - 2.0 * 1.2f64.sqrt(), epsilon = 1e-12);
        assert!(steep.sign_reversal);
        let slope = central_difference(
            |t| alpha_star_gamma(&p(t, 2.0, 0.3), 2.0).unwrap().deployment.alpha,
            2.0,
            1e-5,
        );
        assert!(slope < 0.0);
    }

    #[test]
    fn eta_examples() {
        let out = alpha_star_eta(&p(2.0, 2.0, 2.0), 2.0).unwrap();
        assert_abs_diff_eq!(out.deployment.alpha, 3.0, epsilon = 1e-12);
        let r = maximize_profit(
            |a, d| eta_profit(a, d, &p(2.0, 2.0, 2.0), 2.0),
            &GridSpec::for_benchmark(6.0),
        )
        .unwrap();
        assert!((r.alpha_hat - 3.0).abs() <= 1e-4);

        let params = p(4.0, 2.0, 1.0);
        let out = alpha_star_eta(&params, 0.5).unwrap();
        assert_abs_diff_eq!(out.deployment.alpha, 1.0, epsilon = 1e-12);
        assert!(out.sign_reversal);
        let slope = central_difference(
            |t| alpha_star_eta(&p(t, 2.0, 1.0), 0.5).unwrap().deployment.alpha,
            4.0,
            1e-5,
        );
        assert!(slope < 0.0);
    }

    #[test]
    fn omega_examples() {
        let base = p(0.7, 1.5, 2.2);
        assert_eq!(
            alpha_star_omega(&base, 0.0).unwrap().deployment.alpha,
            optimal_deployment(&base).alpha
        );

        let clamped = alpha_star_omega(&p(1.0, 2.0, 2.0), 1.0).unwrap();
        assert_eq!(clamped.deployment.alpha, 0.0);
        assert!(clamped.deployment.clamped);

        let out = alpha_star_omega(&p(1.0, 2.0, 1.5), 0.5).unwrap();
        assert_abs_diff_eq!(out.deployment.alpha, 4.0 - 2.0 * 3f64.sqrt(), epsilon = 1e-12);
        assert!(!out.sign_reversal);
        let slope = central_difference(
            |t| alpha_star_omega(&p(t, 2.0, 1.5), 0.5).unwrap().deployment.alpha,
            1.0,
            1e-5,
        );
        assert!(slope > 0.0);
    }

    #[test]
    fn beta_defense_examples() {
        let params = p(2.0, 2.0, 1.7);
        let d = beta_defense(1.3, &params, 1.0).unwrap();
        assert_abs_diff_eq!(d.defense, 1.3 * (params.exposure().sqrt() - 1.0), epsilon = 1e-12);

        // lambda theta = 4
        let four = p(2.0, 2.0, 2.0);
        let d = beta_defense(1.0, &four, 2.0).unwrap();
        assert_abs_diff_eq!(d.defense, 1.0, epsilon = 1e-12);
        let lhs = (1.0f64 + d.defense).powi(2);
        assert_abs_diff_eq!(lhs, four.lambda() * four.theta(), epsilon = 1e-12);

        let d = beta_defense(9.0, &four, 2.0).unwrap();
        assert_eq!(d.defense, 0.0);
        assert!(d.corner);
        assert!(beta_defense(0.0, &four, 2.0).is_err());
    }

    #[test]
    fn beta_probability_examples() {
        let params = p(2.0, 2.0, 1.7);
        assert_abs_diff_eq!(
            beta_equilibrium_prob(0.8, &params, 1.0).unwrap(),
            1.0 / params.exposure().sqrt(),
            epsilon = 1e-12
        );
        let four = p(2.0, 2.0, 2.0);
        let prob = beta_equilibrium_prob(1.0, &four, 2.0).unwrap();
        assert_abs_diff_eq!(prob, 0.5, epsilon = 1e-12);
        let d = beta_defense(1.0, &four, 2.0).unwrap().defense;
        assert_abs_diff_eq!(prob, 1.0 / (1.0 + d), epsilon = 1e-12);

        // lambda theta = 100
        let hundred = ModelParams::relaxed(5.0, 2.0, 20.0).unwrap();
        assert_abs_diff_eq!(beta_equilibrium_prob(4.0, &hundred, 3.0).unwrap(), 0.4, epsilon = 1e-12);
        assert_eq!(beta_equilibrium_prob(9.0, &four, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn beta_reduction_to_baseline() {
        let fin = p(2.0, 2.0, 1.25);
        let out = beta_optimal_deployment(&fin, 1.0).unwrap();
        assert_abs_diff_eq!(out.deployment.alpha, 1.8377223398316205, epsilon = 1e-9);
        for params in [p(0.5, 2.0, 0.71), p(0.5, 2.0, 2.0), p(3.0, 0.8, 1.5), p(0.2, 1.0, 1.9)] {
            let out = beta_optimal_deployment(&params, 1.0).unwrap();
            assert_abs_diff_eq!(out.deployment.alpha, optimal_deployment(&params).alpha, epsilon = 1e-9);
        }
    }

    #[test]
    fn beta_matches_grid_oracle() {
        for (params, beta) in [
            (p(2.0, 2.0, 1.25), 1.5),
            (p(2.0, 2.0, 0.2), 2.0),
            (p(1.0, 1.0, 1.5), 1.25),
        ] {
            let out = beta_optimal_deployment(&params, beta).unwrap();
            let r = maximize_profit(
                |a, d| beta_profit(a, d, &params, beta),
                &GridSpec::for_benchmark(params.alpha0()),
            )
            .unwrap();
            assert!(
                (out.deployment.alpha - r.alpha_hat).abs() <= 1e-4,
                "beta = {beta}: {} vs {}",
                out.deployment.alpha,
                r.alpha_hat
            );
            assert!(out.profit >= r.value_hat - 1e-8);
        }
    }

    #[test]
    fn beta_reversal_examples() {
        let unit = p(4.0, 2.0, 1.0);
        assert!(!beta_sign_reversal(1.0, &unit, 2.0).unwrap());
        assert!(beta_sign_reversal(4.0, &unit, 2.0).unwrap());
        for (theta, lambda) in [(1.0, 2.0), (3.0, 2.0), (0.9, 1.1), (1.2, 1.1)] {
            let params = p(theta, 2.0, lambda);
            assert_eq!(beta_sign_reversal(0.7, &params, 1.0).unwrap(), theta < lambda);
        }
    }

    #[test]
    fn governance_marginal_value_examples() {
        assert_abs_diff_eq!(governance_marginal_value(2.0, 2.0, 2.0).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(governance_marginal_value(0.4, 1.0, 2.0).unwrap(), 2.6, epsilon = 1e-12);
        let fd = -central_difference(|l| crate::capability::firm_value_at(2.0, 2.0, l).unwrap(), 2.0, 1e-5);
        assert!((fd - 1.0).abs() <= 1e-4);
        for theta in [0.5, 1.0, 2.5] {
            let params = p(theta, 2.0, 1.0 / theta);
            let alpha = optimal_deployment(&params).alpha;
            let interior = alpha * (theta * theta).sqrt();
            assert_abs_diff_eq!(
                governance_marginal_value(1.0 / theta, theta, 2.0).unwrap(),
                theta * alpha,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(interior, theta * alpha, epsilon = 1e-12);
        }
    }

    #[test]
    fn governance_with_huge_friction_does_nothing() {
        let g = solve_governance(2.0, 1e9, 2.0, 2.0).unwrap();
        assert!(g.i_star < 1e-8);
        assert!((g.lambda_star - 2.0).abs() < 1e-8);
        assert!(!g.floor_hit);
    }

    #[test]
    fn governance_fixed_point() {
        let g = solve_governance(2.0, 10.0, 2.0, 2.0).unwrap();
        let residual = 10.0 * g.i_star - governance_marginal_value(g.lambda_star, 2.0, 2.0).unwrap();
        assert!(residual.abs() < 1e-9);
        let direct = crate::oracle::bisect(
            |i| 10.0 * i - governance_marginal_value(2.0 - i, 2.0, 2.0).unwrap(),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        assert_abs_diff_eq!(g.i_star, direct, epsilon = 1e-10);
        let n = 10_000;
        for j in 0..=n {
            let i = (2.0 - LAMBDA_FLOOR) * j as f64 / n as f64;
            let w = governance_welfare(i, 2.0, 10.0, 2.0, 2.0).unwrap();
            assert!(g.welfare >= w - 1e-8);
        }
    }

    #[test]
    fn governance_reports_floor() {
        let g = solve_governance(1.5, 0.5, 2.0, 2.0).unwrap();
        assert!(g.floor_hit);
        assert_abs_diff_eq!(g.lambda_star, LAMBDA_FLOOR, epsilon = 1e-12);
        let n = 10_000;
        for j in 0..=n {
            let i = (1.5 - LAMBDA_FLOOR) * j as f64 / n as f64;
            assert!(g.welfare >= governance_welfare(i, 1.5, 0.5, 2.0, 2.0).unwrap() - 1e-8);
        }
    }

    #[test]
    fn governance_rejects_bad_inputs() {
        assert!(solve_governance(2.0, 0.0, 2.0, 2.0).is_err());
        assert!(solve_governance(3.5, 1.0, 2.0, 2.0).is_err());
        assert!(solve_governance(-1.0, 1.0, 2.0, 2.0).is_err());
    }
}
