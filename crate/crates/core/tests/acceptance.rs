//! Acceptance gate. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use govgap::capability::firm_value_at;
use govgap::extensions::{
    alpha_star_eta, alpha_star_gamma, alpha_star_omega, beta_optimal_deployment, governance_marginal_value,
    governance_welfare, solve_governance,
};
use govgap::harness::tables::{check_table, welfare_table, CellCheck, TableId};
use govgap::harness::verify::{verify, VerifyConfig};
use govgap::model::{self, ModelParams};
use govgap::oracle::{central_difference, one_sided_differences};
use govgap::welfare;

const TOL: f64 = 0.005 + 1e-9;

type Property = (&'static str, fn() -> Result<(), String>);
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn failing_cells(checks: &[CellCheck]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{} = {:.4} (published {:.2})", c.label, c.computed, c.published))
        .collect()
}

fn table_outcome(id: TableId) -> Outcome {
    match check_table(id) {
        Ok(checks) => {
            let bad = failing_cells(&checks);
            Outcome {
                ok: bad.is_empty(),
                detail: if bad.is_empty() {
                    format!("{} cells match", checks.len())
                } else {
                    format!("{}/{} cells off: {}", bad.len(), checks.len(), bad.join("; "))
                },
            }
        }
        Err(e) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took >= limit {
            out.ok = false;
            out.detail.push_str(&format!("; took {took:.2?}, limit {limit:?}"));
            return out;
        }
    }
    out.detail.push_str(&format!("; {took:.2?}"));
    out
}

fn c1_table4() -> Outcome {
    table_outcome(TableId::T4)
}

fn c2_table3() -> Outcome {
    table_outcome(TableId::T3)
}

fn c3_table5() -> Outcome {
    table_outcome(TableId::T5)
}

fn c4_table6() -> Outcome {
    let mut out = table_outcome(TableId::T6);
    match welfare_table() {
        Ok(rows) if rows[3].sb_clamped => {}
        Ok(_) => {
            out.ok = false;
            out.detail.push_str("; Healthcare clamp flag not set");
        }
        Err(e) => {
            out.ok = false;
            out.detail.push_str(&format!("; {e}"));
        }
    }
    out
}

fn c5_caption_anchors() -> Outcome {
    let p = ModelParams::new(2.0, 2.0, 1.25).unwrap();
    let share = model::security_discount(&p) / p.alpha0();
    let sb = welfare::paradox_thresholds(1.14, 0.5).unwrap().sb_threshold;
    Outcome {
        ok: (share - 0.54).abs() <= TOL && (sb - 1.78).abs() <= TOL,
        detail: format!("discount share {share:.4}, SB threshold {sb:.5}"),
    }
}

fn c6_oracle_equivalence() -> Outcome {
    match verify(&VerifyConfig::default()) {
        Ok(r) => Outcome {
            ok: r.passed(),
            detail: r
                .meta
                .suites
                .iter()
                .map(|s| {
                    format!(
                        "{}: {} pts, max |da| {:.2e}, max gap {:.2e}, {} fail",
                        s.label, s.points, s.max_alpha_err, s.max_profit_gap, s.failures
                    )
                })
                .collect::<Vec<_>>()
                .join("; "),
        },
        Err(e) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn draw(rng: &mut ChaCha8Rng) -> ModelParams {
    loop {
        let lambda = rng.gen_range(0.2..3.0);
        let mu = rng.gen_range(0.5..5.0);
        let theta = rng.gen_range(0.2..5.0);
        if let Ok(p) = ModelParams::new(theta, mu, lambda) {
            return p;
        }
    }
}

/// Each property returns `Err(description)` on the first violation.
fn c7_properties() -> Outcome {
    let props: Vec<Property> = vec![
        ("boundary continuity and C1 of discount", prop_boundary_c1),
        ("mu-invariance of discount", prop_mu_invariance),
        ("p* independent of alpha", prop_p_star_independent),
        ("U-shape with minimum mu+1-lambda at theta=lambda", prop_u_shape),
        ("alpha_SB <= alpha_FB <= alpha*", prop_ordering),
        ("S_e(x) >= H(Ex)", prop_discount_dominance),
        ("extension defaults reduce to baseline", prop_reductions),
        ("governance envelope", prop_envelope),
        ("governance grid optimality", prop_governance_grid),
    ];
    let mut bad = Vec::new();
    for (name, f) in &props {
        if let Err(e) = f() {
            bad.push(format!("{name}: {e}"));
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} properties hold", props.len())
        } else {
            bad.join("; ")
        },
    }
}

fn prop_boundary_c1() -> Result<(), String> {
    for lambda in [0.4, 0.8, 1.0, 1.25, 2.0, 2.9] {
        let theta_b = 1.0 / lambda;
        let mu = 3.0;
        let delta = |t: f64| model::security_discount(&ModelParams::new(t, mu, lambda).unwrap());
        let h = 1e-6;
        if (delta(theta_b - 1e-12) - delta(theta_b + 1e-12)).abs() > 1e-9 {
            return Err(format!("jump at lambda = {lambda}"));
        }
        let (left, right) = one_sided_differences(delta, theta_b, h);
        if (left - right).abs() > 1e-4 * left.abs().max(1.0) {
            return Err(format!("kink at lambda = {lambda}: {left} vs {right}"));
        }
    }
    Ok(())
}

fn prop_mu_invariance() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let p = draw(&mut rng);
        let q = ModelParams::new(p.theta(), p.mu() + 1.7, p.lambda()).unwrap();
        if model::security_discount(&p) != model::security_discount(&q) {
            return Err(format!("{p:?}"));
        }
    }
    Ok(())
}

fn prop_p_star_independent() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let p = draw(&mut rng);
        if p.exposure() <= 1.0 {
            continue;
        }
        let expected = 1.0 / p.exposure().sqrt();
        for alpha in [0.1, 0.7, 2.0, 9.0] {
            let d = model::optimal_defense(alpha, &p).map_err(|e| e.to_string())?;
            let prob = model::breach_probability(alpha, d);
            if (prob - expected).abs() > 1e-12 {
                return Err(format!("{p:?} alpha = {alpha}: {prob} vs {expected}"));
            }
        }
    }
    Ok(())
}

fn prop_u_shape() -> Result<(), String> {
    for (mu, lambda) in [(2.0, 1.14), (2.0, 1.25), (2.0, 2.0), (3.0, 3.5), (0.5, 1.3)] {
        let a = |t: f64| model::optimal_deployment(&ModelParams::new(t, mu, lambda).unwrap()).alpha;
        let min = a(lambda);
        if (min - (mu + 1.0 - lambda)).abs() > 1e-12 {
            return Err(format!("minimum {min} at mu = {mu}, lambda = {lambda}"));
        }
        let n = 400;
        let thetas: Vec<f64> = (1..=n).map(|i| 6.0 * i as f64 / n as f64).collect();
        for w in thetas.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            let rising = a(x1) > a(x0);
            if x1 <= lambda && rising || x0 >= lambda && !rising {
                return Err(format!("shape broken on [{x0}, {x1}] at lambda = {lambda}"));
            }
            if a(x0) < min - 1e-12 {
                return Err(format!("value below minimum at theta = {x0}"));
            }
        }
    }
    Ok(())
}

fn prop_ordering() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let p = draw(&mut rng);
        let e = rng.gen_range(0.0..3.0);
        let a = welfare::assess(&p, e).map_err(|e| e.to_string())?;
        if !(a.alpha_sb <= a.alpha_fb + 1e-12 && a.alpha_fb <= a.alpha_private + 1e-12) {
            return Err(format!(
                "{p:?} e = {e}: {} {} {}",
                a.alpha_sb, a.alpha_fb, a.alpha_private
            ));
        }
    }
    Ok(())
}

fn prop_discount_dominance() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let x = rng.gen_range(0.0..10.0);
        let e = rng.gen_range(0.0..5.0);
        let (_, s, h_ex) = welfare::discount_functions(x, e).map_err(|e| e.to_string())?;
        if s < h_ex - 1e-12 {
            return Err(format!("x = {x}, e = {e}: {s} < {h_ex}"));
        }
    }
    Ok(())
}

fn prop_reductions() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let p = draw(&mut rng);
        let base = model::optimal_deployment(&p).alpha;
        let outs = [
            ("gamma", alpha_star_gamma(&p, 1.0)),
            ("eta", alpha_star_eta(&p, 1.0)),
            ("omega", alpha_star_omega(&p, 0.0)),
            ("beta", beta_optimal_deployment(&p, 1.0)),
        ];
        for (name, out) in outs {
            let alpha = out.map_err(|e| e.to_string())?.deployment.alpha;
            let tol = if name == "beta" { 1e-8 } else { 1e-12 };
            if (alpha - base).abs() > tol {
                return Err(format!("{name} at {p:?}: {alpha} vs {base}"));
            }
        }
    }
    Ok(())
}

fn prop_envelope() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut checked = 0;
    while checked < 200 {
        let p = draw(&mut rng);
        let (theta, mu, lambda) = (p.theta(), p.mu(), p.lambda());
        // Skip points whose finite-difference stencil straddles the regime kink.
        if (lambda * theta - 1.0).abs() < 1e-3 || lambda + 1e-5 >= mu + 1.0 {
            continue;
        }
        let mv = governance_marginal_value(lambda, theta, mu).map_err(|e| e.to_string())?;
        let fd = -central_difference(|l| firm_value_at(theta, mu, l).unwrap(), lambda, 1e-5);
        if (mv - fd).abs() > 1e-4 * mv.abs().max(1e-12) {
            return Err(format!("{p:?}: {mv} vs {fd}"));
        }
        checked += 1;
    }
    Ok(())
}

fn prop_governance_grid() -> Result<(), String> {
    for (lambda0, k, theta, mu) in [
        (2.0, 10.0, 2.0, 2.0),
        (1.25, 3.0, 2.0, 2.0),
        (2.5, 1.0, 1.0, 3.0),
        (1.5, 0.5, 2.0, 2.0),
    ] {
        let g = solve_governance(lambda0, k, theta, mu).map_err(|e| e.to_string())?;
        let n = 10_000;
        let i_max = lambda0 - govgap::extensions::LAMBDA_FLOOR;
        for j in 0..=n {
            let i = i_max * j as f64 / n as f64;
            let w = governance_welfare(i, lambda0, k, theta, mu).map_err(|e| e.to_string())?;
            if w > g.welfare + 1e-12 {
                return Err(format!(
                    "W({i}) = {w} beats W(I*) = {} at lambda0 = {lambda0}, k = {k}",
                    g.welfare
                ));
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 Table 4 reproduction", Some(Duration::from_secs(1)), c1_table4),
        ("2 Table 3 reproduction", Some(Duration::from_secs(1)), c2_table3),
        ("3 Table 5 reproduction", None, c3_table5),
        ("4 Table 6 reproduction", None, c4_table6),
        ("5 caption anchors", None, c5_caption_anchors),
        (
            "6 oracle equivalence",
            Some(Duration::from_secs(60)),
            c6_oracle_equivalence,
        ),
        ("7 property suite", Some(Duration::from_secs(30)), c7_properties),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let out = timed(limit, f);
        if !out.ok {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if out.ok { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
