use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use govgap::extensions::{Extension, ExtensionConfig, ExtensionOutcome};
use govgap::harness::emit::{render, Format, Records};
use govgap::harness::sweep::{sweep, Axis, SweepOptions};
use govgap::harness::tables::{check_table, reproduce_table, TableId};
use govgap::harness::verify::{verify, VerifyConfig, DEFAULT_SEED};
use govgap::model::{self, ModelParams, Regime};
use govgap::{capability, extensions, welfare, ModelError};

const ENV_NOTE: &str = "\
Environment:
  GOVGAP_SEED  reserved; not read. Every result is deterministic, and `verify`
               takes its sample seed from --seed only.

Exit status: 0 on success, 1 when verification fails or output cannot be
written, 2 on usage errors (bad flags, missing or out-of-domain parameters).";

#[derive(Parser, Debug)]
#[command(
    name = "govgap",
    version,
    about = "AI deployment under a governance gap: solver, tables and checks"
)]
#[command(after_help = ENV_NOTE)]
struct Cli {
    /// JSON file with parameter values; keys match the flag names.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: ModelError| e.to_string())
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: ModelError| e.to_string())
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|e: ModelError| e.to_string())
}

/// Every model parameter. Unset flags fall back to the config file, then to
/// the subcommand default.
#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    /// AI capability.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    /// Organizational readiness.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    /// Breach loss magnitude.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    /// Breach externality on third parties.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    e: Option<f64>,
    /// Exposure elasticity of capability.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    /// Attack-surface exponent of the breach probability.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    /// Productivity exponent of capability.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    /// Readiness spillover into exposure.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<f64>,
    /// Governance restructuring cost.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<f64>,
    /// Inherited loss magnitude before governance investment.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda0: Option<f64>,
    /// Legacy capability.
    #[arg(long = "theta-l", allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(alias = "theta-l")]
    theta_l: Option<f64>,
    /// Frontier capability.
    #[arg(long = "theta-f", allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(alias = "theta-f")]
    theta_f: Option<f64>,
}

impl Params {
    fn merged_over(self, file: Params) -> Params {
        Params {
            theta: self.theta.or(file.theta),
            mu: self.mu.or(file.mu),
            lambda: self.lambda.or(file.lambda),
            e: self.e.or(file.e),
            gamma: self.gamma.or(file.gamma),
            beta: self.beta.or(file.beta),
            eta: self.eta.or(file.eta),
            omega: self.omega.or(file.omega),
            k: self.k.or(file.k),
            lambda0: self.lambda0.or(file.lambda0),
            theta_l: self.theta_l.or(file.theta_l),
            theta_f: self.theta_f.or(file.theta_f),
        }
    }

    fn need(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
        value.ok_or_else(|| Failure::Usage(format!("missing --{flag} (flag or config file)")))
    }

    fn model(&self) -> Result<ModelParams, Failure> {
        let theta = Self::need(self.theta, "theta")?;
        let mu = Self::need(self.mu, "mu")?;
        let lambda = Self::need(self.lambda, "lambda")?;
        Ok(ModelParams::new(theta, mu, lambda)?)
    }

    fn extension(&self) -> Result<ExtensionConfig, Failure> {
        Ok(ExtensionConfig::new(
            self.gamma.unwrap_or(1.0),
            self.beta.unwrap_or(1.0),
            self.eta.unwrap_or(1.0),
            self.omega.unwrap_or(0.0),
        )?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Private optimum at one parameter point.
    Solve {
        #[command(flatten)]
        params: Params,
    },
    /// Solve along an evenly spaced range of theta or lambda.
    Sweep {
        #[arg(long, value_parser = parse_axis, default_value = "theta")]
        axis: Axis,
        #[arg(long, default_value_t = 0.5)]
        from: f64,
        #[arg(long, default_value_t = 5.0)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Reproduce a calibration table (T3, T4, T5, T6).
    Table {
        #[arg(value_parser = parse_table)]
        id: TableId,
        /// Compare against the published values; exit 1 on any mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Private, first-best and second-best deployment.
    Welfare {
        #[command(flatten)]
        params: Params,
    },
    /// Legacy versus frontier capability.
    Upgrade {
        #[command(flatten)]
        params: Params,
    },
    /// Optimum of a generalized model (set exactly one of gamma, beta, eta, omega).
    Ext {
        #[command(flatten)]
        params: Params,
    },
    /// Optimal investment in reducing loss magnitude.
    Governance {
        #[command(flatten)]
        params: Params,
    },
    /// Closed forms against brute-force maximization on random points.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        points: usize,
        #[arg(long, default_value_t = 50)]
        beta_points: usize,
        /// Also compare every reproduced table cell with the published value.
        #[arg(long)]
        tables: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
    /// Output was produced but a check failed.
    Verification(String),
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Io { .. } => Failure::Runtime(e.into()),
            ModelError::Oracle(_) => Failure::Runtime(e.into()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn load_config(path: &Path) -> Result<Params, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))
        .map_err(|e| Failure::Usage(format!("{e:#}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))
}

fn write_output(body: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Runtime),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| {
                    if body.ends_with('\n') {
                        Ok(())
                    } else {
                        stdout.write_all(b"\n")
                    }
                })
                .context("writing to stdout")
                .map_err(Failure::Runtime)
        }
    }
}

#[derive(Serialize)]
struct OutcomeRow {
    variant: String,
    alpha_star: f64,
    clamped: bool,
    regime: Regime,
    d_star: f64,
    p_star: f64,
    profit: f64,
    alpha0: f64,
    sign_reversal: bool,
}

impl OutcomeRow {
    fn new(variant: String, o: &ExtensionOutcome) -> Self {
        OutcomeRow {
            variant,
            alpha_star: o.deployment.alpha,
            clamped: o.deployment.clamped,
            regime: o.regime,
            d_star: o.defense,
            p_star: o.breach_prob,
            profit: o.profit,
            alpha0: o.alpha0,
            sign_reversal: o.sign_reversal,
        }
    }
}

#[derive(Serialize)]
struct SolveRow {
    regime: Regime,
    alpha_star: f64,
    d_star: f64,
    p_star: f64,
    expected_loss: f64,
    profit: f64,
    alpha0: f64,
    discount: f64,
    firm_value: f64,
    clamped: bool,
    paradox: &'static str,
    deployment_slope: f64,
    lambda_slope: f64,
}

impl SolveRow {
    fn new(p: &ModelParams) -> Self {
        let s = model::solve(p);
        SolveRow {
            regime: s.regime,
            alpha_star: s.alpha_star,
            d_star: s.d_star,
            p_star: s.p_star,
            expected_loss: s.expected_loss,
            profit: s.profit,
            alpha0: s.alpha0,
            discount: s.discount,
            firm_value: s.firm_value,
            clamped: s.clamped,
            paradox: model::paradox_status(p).as_str(),
            deployment_slope: model::deployment_slope(p),
            lambda_slope: model::lambda_slope(p),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => load_config(path)?,
        None => Params::default(),
    };
    let with_file = |p: Params| p.merged_over(file.clone());
    let format_or = |default: Format| cli.format.unwrap_or(default);
    let out = cli.out.as_deref();

    match cli.command {
        Command::Solve { params } => {
            let params = with_file(params);
            let p = params.model()?;
            let r = Records::new("solve", vec![SolveRow::new(&p)]).with_meta("params", &params);
            write_output(&render(&r, format_or(Format::Json))?, out)
        }
        Command::Sweep {
            axis,
            from,
            to,
            n,
            params,
        } => {
            let params = with_file(params);
            // The swept parameter may be omitted; any positive placeholder works.
            let base = ModelParams::relaxed(
                params.theta.unwrap_or(if axis == Axis::Theta { from } else { 1.0 }),
                Params::need(params.mu, "mu")?,
                params.lambda.unwrap_or(if axis == Axis::Lambda { from } else { 1.0 }),
            )?;
            if axis == Axis::Theta {
                Params::need(params.lambda, "lambda")?;
            } else {
                Params::need(params.theta, "theta")?;
            }
            let options = SweepOptions {
                extension: params.extension()?,
                e: params.e,
            };
            let r = sweep(axis, from, to, n, &base, &options)?;
            write_output(&render(&r, format_or(Format::Csv))?, out)
        }
        Command::Table { id, check } => {
            if check {
                let checks = check_table(id)?;
                let bad = checks.iter().filter(|c| !c.ok).count();
                let r = Records::new("table-check", checks).with_meta("table", id.to_string());
                write_output(&render(&r, format_or(Format::Csv))?, out)?;
                if bad > 0 {
                    return Err(Failure::Verification(format!(
                        "{bad} cell(s) of {id} differ from the published values"
                    )));
                }
                Ok(())
            } else {
                let t = reproduce_table(id)?;
                write_output(&render(&t, format_or(Format::Csv))?, out)
            }
        }
        Command::Welfare { params } => {
            let params = with_file(params);
            let p = params.model()?;
            let e = Params::need(params.e, "e")?;
            let r = Records::new("welfare", vec![welfare::assess(&p, e)?]).with_meta("params", &params);
            write_output(&render(&r, format_or(Format::Json))?, out)
        }
        Command::Upgrade { params } => {
            let params = with_file(params);
            let d = capability::upgrade_decision(
                Params::need(params.theta_l, "theta-l")?,
                Params::need(params.theta_f, "theta-f")?,
                Params::need(params.mu, "mu")?,
                Params::need(params.lambda, "lambda")?,
            )?;
            let r = Records::new("upgrade", vec![d]).with_meta("params", &params);
            write_output(&render(&r, format_or(Format::Json))?, out)
        }
        Command::Ext { params } => {
            let params = with_file(params);
            let p = params.model()?;
            let config = params.extension()?;
            let variant = config.variant()?;
            let o = config.solve(&p)?;
            let r = Records::new("ext", vec![OutcomeRow::new(variant_label(variant), &o)]).with_meta("params", &params);
            write_output(&render(&r, format_or(Format::Json))?, out)
        }
        Command::Governance { params } => {
            let params = with_file(params);
            let g = extensions::solve_governance(
                Params::need(params.lambda0, "lambda0")?,
                Params::need(params.k, "k")?,
                Params::need(params.theta, "theta")?,
                Params::need(params.mu, "mu")?,
            )?;
            let r = Records::new("governance", vec![g]).with_meta("params", &params);
            write_output(&render(&r, format_or(Format::Json))?, out)
        }
        Command::Verify {
            seed,
            points,
            beta_points,
            tables,
        } => {
            let config = VerifyConfig {
                seed,
                baseline_points: points,
                beta_points,
                ..VerifyConfig::default()
            };
            let report = verify(&config)?;
            let mut failures: Vec<String> = report
                .meta
                .suites
                .iter()
                .filter(|s| !s.passed())
                .map(|s| format!("{}: {} of {} points outside tolerance", s.label, s.failures, s.points))
                .collect();
            if tables {
                for id in TableId::ALL {
                    for c in check_table(id)?.into_iter().filter(|c| !c.ok) {
                        failures.push(format!(
                            "{id} {}: {:.4} vs published {:.2}",
                            c.label, c.computed, c.published
                        ));
                    }
                }
            }
            let body = match cli.format {
                Some(f) => render(&report, f)?,
                None => summary(&report),
            };
            write_output(&body, out)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification(failures.join("\n")))
            }
        }
    }
}

fn variant_label(v: Extension) -> String {
    match v {
        Extension::Baseline => "baseline".into(),
        Extension::Gamma(x) => format!("gamma={x}"),
        Extension::Beta(x) => format!("beta={x}"),
        Extension::Eta(x) => format!("eta={x}"),
        Extension::Omega(x) => format!("omega={x}"),
    }
}

fn summary(report: &govgap::harness::verify::VerifyReport) -> String {
    let mut s = format!("seed {}\n", report.meta.config.seed);
    for suite in &report.meta.suites {
        s.push_str(&format!(
            "{} {:<10} {:>4} points  max |d alpha| {:.3e} (tol {:.0e})  max profit gap {:.3e}\n",
            if suite.passed() { "PASS" } else { "FAIL" },
            suite.label,
            suite.points,
            suite.max_alpha_err,
            suite.alpha_tol,
            suite.max_profit_gap,
        ));
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed:\n{msg}");
            ExitCode::from(1)
        }
    }
}
