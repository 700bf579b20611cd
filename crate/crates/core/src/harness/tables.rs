//! Reproduction of the calibration tables and comparison against the values
//! as published (two decimals).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::calibration::{builtin_calibration, IndustryCalibration, ILLUSTRATIVE_MU, ILLUSTRATIVE_THETA};
use crate::capability::upgrade_decision;
use crate::error::{ModelError, Result};
use crate::model::{self, ModelParams, ParadoxStatus, Regime};
use crate::welfare;

/// Tolerance for comparing against a value printed with two decimals.
pub const TABLE_TOLERANCE: f64 = 0.005 + 1e-9;

pub const LEGACY_THETA: f64 = 0.5;
pub const FRONTIER_THETA: f64 = 2.0;
pub const DYNAMICS_THETAS: [f64; 7] = [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    T3,
    T4,
    T5,
    T6,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T3, TableId::T4, TableId::T5, TableId::T6];

    pub fn title(self) -> &'static str {
        match self {
            TableId::T3 => "Capability upgrade decisions (theta_L = 0.5, theta_F = 2, mu = 2)",
            TableId::T4 => "Private optimum across industries (theta = 2, mu = 2)",
            TableId::T5 => "Optimal deployment as capability rises (mu = 2)",
            TableId::T6 => "Second-best social deployment (theta = 2, mu = 2)",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableId::T3 => "T3",
            TableId::T4 => "T4",
            TableId::T5 => "T5",
            TableId::T6 => "T6",
        };
        f.write_str(s)
    }
}

impl FromStr for TableId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T3" | "3" => Ok(TableId::T3),
            "T4" | "4" => Ok(TableId::T4),
            "T5" | "5" => Ok(TableId::T5),
            "T6" | "6" => Ok(TableId::T6),
            _ => Err(ModelError::Format(format!(
                "unknown table `{s}` (expected T3, T4, T5 or T6)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(v) => write!(f, "{v}"),
            Cell::Flag(b) => write!(f, "{b}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub id: String,
    pub title: String,
    pub version: String,
}

/// Column-labelled rows ready for CSV/JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub meta: TableMeta,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(id: impl Into<String>, title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            meta: TableMeta {
                id: id.into(),
                title: title.into(),
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpgradeRow {
    pub industry: String,
    pub lambda: f64,
    pub value_legacy: f64,
    pub value_frontier: f64,
    pub adopt: bool,
    pub trap: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndustryRow {
    pub industry: String,
    pub lambda: f64,
    pub alpha0: f64,
    pub alpha_star: f64,
    pub d_star: f64,
    pub p_star: f64,
    pub admits_paradox: bool,
    pub active_paradox: ParadoxStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicsCell {
    pub theta: f64,
    pub alpha_star: f64,
    /// `theta < lambda`: printed in bold.
    pub paradox: bool,
    /// Corner regime: printed with a dagger.
    pub corner: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicsRow {
    pub industry: String,
    pub lambda: f64,
    pub cells: Vec<DynamicsCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelfareRow {
    pub industry: String,
    pub lambda: f64,
    pub e: f64,
    pub alpha_private: f64,
    pub alpha_sb: f64,
    pub sb_clamped: bool,
    pub social_paradox_region: bool,
    /// Not part of the published table; model-derived.
    pub alpha_fb: f64,
}

fn illustrative(c: &IndustryCalibration, theta: f64) -> Result<ModelParams> {
    ModelParams::new(theta, ILLUSTRATIVE_MU, c.lambda)
}

pub fn upgrade_table() -> Result<Vec<UpgradeRow>> {
    builtin_calibration()
        .into_iter()
        .map(|c| {
            let d = upgrade_decision(LEGACY_THETA, FRONTIER_THETA, ILLUSTRATIVE_MU, c.lambda)?;
            Ok(UpgradeRow {
                industry: c.name,
                lambda: c.lambda,
                value_legacy: d.value_l,
                value_frontier: d.value_f,
                adopt: d.adopt,
                trap: d.trap,
            })
        })
        .collect()
}

pub fn industry_table() -> Result<Vec<IndustryRow>> {
    builtin_calibration()
        .into_iter()
        .map(|c| {
            let params = illustrative(&c, ILLUSTRATIVE_THETA)?;
            let s = model::solve(&params);
            Ok(IndustryRow {
                industry: c.name,
                lambda: c.lambda,
                alpha0: s.alpha0,
                alpha_star: s.alpha_star,
                d_star: s.d_star,
                p_star: s.p_star,
                admits_paradox: model::admits_paradox(c.lambda),
                active_paradox: model::paradox_status(&params),
            })
        })
        .collect()
}

pub fn dynamics_table() -> Result<Vec<DynamicsRow>> {
    builtin_calibration()
        .into_iter()
        .map(|c| {
            let cells = DYNAMICS_THETAS
                .iter()
                .map(|&theta| {
                    let params = illustrative(&c, theta)?;
                    Ok(DynamicsCell {
                        theta,
                        alpha_star: model::optimal_deployment(&params).alpha,
                        paradox: model::paradox_status(&params) == ParadoxStatus::Active,
                        corner: model::classify_regime(&params) == Regime::Corner,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DynamicsRow {
                industry: c.name,
                lambda: c.lambda,
                cells,
            })
        })
        .collect()
}

pub fn welfare_table() -> Result<Vec<WelfareRow>> {
    builtin_calibration()
        .into_iter()
        .map(|c| {
            let params = illustrative(&c, ILLUSTRATIVE_THETA)?;
            let a = welfare::assess(&params, c.default_e)?;
            Ok(WelfareRow {
                industry: c.name,
                lambda: c.lambda,
                e: c.default_e,
                alpha_private: a.alpha_private,
                alpha_sb: a.alpha_sb,
                sb_clamped: a.sb_clamped,
                social_paradox_region: a.admits_social_paradox,
                alpha_fb: a.alpha_fb,
            })
        })
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn reproduce_table(id: TableId) -> Result<Table> {
    let mut t;
    match id {
        TableId::T3 => {
            t = Table::new(
                "T3",
                id.title(),
                &["industry", "lambda", "v_legacy", "v_frontier", "upgrade", "trap"],
            );
            for r in upgrade_table()? {
                t.push(vec![
                    r.industry.into(),
                    r.lambda.into(),
                    r.value_legacy.into(),
                    r.value_frontier.into(),
                    yes_no(r.adopt).into(),
                    r.trap.into(),
                ]);
            }
        }
        TableId::T4 => {
            t = Table::new(
                "T4",
                id.title(),
                &[
                    "industry",
                    "lambda",
                    "alpha0",
                    "alpha_star",
                    "d_star",
                    "p_star",
                    "admits_paradox",
                    "active_paradox",
                ],
            );
            for r in industry_table()? {
                t.push(vec![
                    r.industry.into(),
                    r.lambda.into(),
                    r.alpha0.into(),
                    r.alpha_star.into(),
                    r.d_star.into(),
                    r.p_star.into(),
                    yes_no(r.admits_paradox).into(),
                    r.active_paradox.as_str().into(),
                ]);
            }
        }
        TableId::T5 => {
            t = Table::new(
                "T5",
                id.title(),
                &["industry", "lambda", "theta", "alpha_star", "paradox", "corner"],
            );
            for r in dynamics_table()? {
                for c in &r.cells {
                    t.push(vec![
                        r.industry.clone().into(),
                        r.lambda.into(),
                        c.theta.into(),
                        c.alpha_star.into(),
                        c.paradox.into(),
                        c.corner.into(),
                    ]);
                }
            }
        }
        TableId::T6 => {
            t = Table::new(
                "T6",
                id.title(),
                &[
                    "industry",
                    "lambda",
                    "e",
                    "alpha_star",
                    "alpha_sb",
                    "sb_clamped",
                    "social_paradox_region",
                    "alpha_fb_derived",
                ],
            );
            for r in welfare_table()? {
                t.push(vec![
                    r.industry.into(),
                    r.lambda.into(),
                    r.e.into(),
                    r.alpha_private.into(),
                    r.alpha_sb.into(),
                    r.sb_clamped.into(),
                    yes_no(r.social_paradox_region).into(),
                    r.alpha_fb.into(),
                ]);
            }
        }
    }
    Ok(t)
}

/// Values exactly as printed in the published tables, in calibration order.
pub mod published {
    /// `(V(0.5), V(2), upgrade)`
    pub const T3: [(f64, f64, bool); 4] = [
        (2.30, 3.42, true),
        (1.86, 1.96, true),
        (1.76, 1.69, false),
        (1.13, 0.50, false),
    ];

    /// `(alpha*, d*, p*)`
    pub const T4: [(f64, f64, f64); 4] = [
        (2.62, 0.50, 0.84),
        (1.98, 1.00, 0.66),
        (1.84, 1.07, 0.63),
        (1.00, 1.00, 0.50),
    ];

    pub const T5: [[f64; 7]; 4] = [
        [2.15, 2.29, 2.44, 2.62, 3.08, 3.63, 4.23],
        [1.93, 1.87, 1.88, 1.98, 2.30, 2.73, 3.22],
        [1.88, 1.76, 1.76, 1.84, 2.13, 2.53, 3.00],
        [1.50, 1.17, 1.04, 1.00, 1.10, 1.34, 1.68],
    ];

    /// Bold entries.
    pub const T5_PARADOX: [[bool; 7]; 4] = [
        [false, false, false, false, false, false, false],
        [true, true, false, false, false, false, false],
        [true, true, false, false, false, false, false],
        [true, true, true, false, false, false, false],
    ];

    /// Daggered entries.
    pub const T5_CORNER: [[bool; 7]; 4] = [
        [true, true, false, false, false, false, false],
        [true, false, false, false, false, false, false],
        [true, false, false, false, false, false, false],
        [true, false, false, false, false, false, false],
    ];

    pub const T6_SB: [f64; 4] = [2.26, 1.22, 0.26, 0.0];

    /// "Has paradox region? (social)"
    pub const T6_SOCIAL: [bool; 4] = [false, true, true, true];
}

/// One published cell against its reproduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCheck {
    pub table: TableId,
    pub label: String,
    pub computed: f64,
    pub published: f64,
    pub ok: bool,
}

impl CellCheck {
    fn numeric(table: TableId, label: String, computed: f64, published: f64) -> Self {
        CellCheck {
            table,
            label,
            computed,
            published,
            ok: (computed - published).abs() <= TABLE_TOLERANCE,
        }
    }

    fn exact(table: TableId, label: String, computed: bool, published: bool) -> Self {
        CellCheck {
            table,
            label,
            computed: f64::from(u8::from(computed)),
            published: f64::from(u8::from(published)),
            ok: computed == published,
        }
    }
}

/// Compares every published number and flag of a table with its
/// reproduction. Boolean cells are encoded as 0/1 and must match exactly.
pub fn check_table(id: TableId) -> Result<Vec<CellCheck>> {
    let mut out = Vec::new();
    match id {
        TableId::T3 => {
            for (r, &(vl, vf, adopt)) in upgrade_table()?.iter().zip(published::T3.iter()) {
                out.push(CellCheck::numeric(
                    id,
                    format!("{} V(theta_L)", r.industry),
                    r.value_legacy,
                    vl,
                ));
                out.push(CellCheck::numeric(
                    id,
                    format!("{} V(theta_F)", r.industry),
                    r.value_frontier,
                    vf,
                ));
                out.push(CellCheck::exact(id, format!("{} upgrade", r.industry), r.adopt, adopt));
            }
        }
        TableId::T4 => {
            for (r, &(a, d, p)) in industry_table()?.iter().zip(published::T4.iter()) {
                out.push(CellCheck::numeric(
                    id,
                    format!("{} alpha*", r.industry),
                    r.alpha_star,
                    a,
                ));
                out.push(CellCheck::numeric(id, format!("{} d*", r.industry), r.d_star, d));
                out.push(CellCheck::numeric(id, format!("{} p*", r.industry), r.p_star, p));
            }
        }
        TableId::T5 => {
            for (i, r) in dynamics_table()?.iter().enumerate() {
                for (j, c) in r.cells.iter().enumerate() {
                    let at = format!("{} theta={}", r.industry, c.theta);
                    out.push(CellCheck::numeric(
                        id,
                        format!("{at} alpha*"),
                        c.alpha_star,
                        published::T5[i][j],
                    ));
                    out.push(CellCheck::exact(
                        id,
                        format!("{at} bold"),
                        c.paradox,
                        published::T5_PARADOX[i][j],
                    ));
                    out.push(CellCheck::exact(
                        id,
                        format!("{at} dagger"),
                        c.corner,
                        published::T5_CORNER[i][j],
                    ));
                }
            }
        }
        TableId::T6 => {
            let published = published::T6_SB.iter().zip(published::T6_SOCIAL.iter());
            for (r, (&sb, &social)) in welfare_table()?.iter().zip(published) {
                out.push(CellCheck::numeric(
                    id,
                    format!("{} alpha_SB", r.industry),
                    r.alpha_sb,
                    sb,
                ));
                out.push(CellCheck::exact(
                    id,
                    format!("{} social paradox region", r.industry),
                    r.social_paradox_region,
                    social,
                ));
            }
        }
    }
    Ok(out)
}
