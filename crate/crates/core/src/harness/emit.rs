//! CSV, JSON and SVG output.
//!
//! CSV is a header row followed by data rows, `.` as the decimal separator.
//! JSON is one object with `meta` and `rows`. SVG draws one polyline per
//! series; all numbers it shows come from the result being rendered.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sweep::SweepResult;
use super::tables::{Cell, Table};
use crate::error::{ModelError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(ModelError::Format(format!(
                "unknown format `{s}` (expected csv, json or svg)"
            ))),
        }
    }
}

pub trait Report {
    fn to_csv(&self) -> Result<String>;
    fn to_json(&self) -> Result<String>;
    fn to_svg(&self) -> Result<String>;
}

pub fn render<R: Report + ?Sized>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
        Format::Svg => report.to_svg(),
    }
}

pub fn emit<R: Report + ?Sized>(report: &R, format: Format, path: &Path) -> Result<()> {
    let body = render(report, format)?;
    std::fs::write(path, body).map_err(|source| ModelError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_from_records(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| ModelError::Format(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| ModelError::Format(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| ModelError::Format(e.to_string()))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| ModelError::Format(format!("json: {e}")))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl Report for SweepResult {
    fn to_csv(&self) -> Result<String> {
        let social = self.meta.e.is_some();
        let mut header: Vec<String> = [
            &self.meta.axis.to_string()[..],
            "alpha_star",
            "d_star",
            "p_star",
            "discount",
            "firm_value",
            "regime",
            "paradox_active",
            "clamped",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        if social {
            header.push("alpha_sb".into());
            header.push("sb_paradox".into());
        }
        let rows = self.points.iter().map(|p| {
            let mut r = vec![
                p.x.to_string(),
                p.alpha_star.to_string(),
                p.d_star.to_string(),
                p.p_star.to_string(),
                p.discount.to_string(),
                p.firm_value.to_string(),
                p.regime.as_str().to_string(),
                p.paradox_active.to_string(),
                p.clamped.to_string(),
            ];
            if social {
                r.push(opt(p.alpha_sb));
                r.push(opt(p.sb_paradox));
            }
            r
        });
        csv_from_records(&header, rows)
    }

    fn to_json(&self) -> Result<String> {
        json(self)
    }

    fn to_svg(&self) -> Result<String> {
        let xs = || self.points.iter().map(|p| p.x);
        let mut series = vec![Series {
            name: "alpha*".into(),
            points: xs().zip(self.points.iter().map(|p| p.alpha_star)).collect(),
        }];
        if self.meta.e.is_some() {
            series.push(Series {
                name: "alpha_SB".into(),
                points: xs()
                    .zip(self.points.iter().map(|p| p.alpha_sb.unwrap_or(0.0)))
                    .collect(),
            });
        }
        let title = format!(
            "Optimal deployment vs {} (mu = {}, {})",
            self.meta.axis,
            self.meta.mu,
            match self.meta.axis {
                super::sweep::Axis::Theta => format!("lambda = {}", self.meta.lambda),
                super::sweep::Axis::Lambda => format!("theta = {}", self.meta.theta),
            }
        );
        Ok(LineChart {
            title,
            x_label: self.meta.axis.to_string(),
            y_label: "deployment".into(),
            series,
        }
        .render())
    }
}

impl Report for Table {
    fn to_csv(&self) -> Result<String> {
        let rows = self.rows.iter().map(|r| r.iter().map(Cell::to_string).collect());
        csv_from_records(&self.columns, rows)
    }

    fn to_json(&self) -> Result<String> {
        json(self)
    }

    /// Only tables with `industry`, `theta` and `alpha_star` columns have a
    /// natural chart: one series per industry.
    fn to_svg(&self) -> Result<String> {
        let (Some(ci), Some(ct), Some(ca)) = (self.column("industry"), self.column("theta"), self.column("alpha_star"))
        else {
            return Err(ModelError::Format(format!(
                "table {} has no theta axis; svg output is available for sweeps and T5",
                self.meta.id
            )));
        };
        let mut series: Vec<Series> = Vec::new();
        for row in &self.rows {
            let name = row[ci].to_string();
            let (Some(x), Some(y)) = (row[ct].as_f64(), row[ca].as_f64()) else {
                continue;
            };
            match series.iter_mut().find(|s| s.name == name) {
                Some(s) => s.points.push((x, y)),
                None => series.push(Series {
                    name,
                    points: vec![(x, y)],
                }),
            }
        }
        Ok(LineChart {
            title: self.meta.title.clone(),
            x_label: "theta".into(),
            y_label: "alpha*".into(),
            series,
        }
        .render())
    }
}

/// Flat records with free-form metadata, for results that are not sweeps or
/// tables. `T` must serialize to a flat record for CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Records<T> {
    pub meta: serde_json::Map<String, serde_json::Value>,
    pub rows: Vec<T>,
}

impl<T> Records<T> {
    /// Metadata starts with `kind` and the crate version.
    pub fn new(kind: &str, rows: Vec<T>) -> Self {
        let mut meta = serde_json::Map::new();
        meta.insert("kind".into(), kind.into());
        meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        Records { meta, rows }
    }

    pub fn with_meta(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.meta.insert(key.into(), v);
        self
    }
}

impl<T: Serialize> Report for Records<T> {
    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| ModelError::Format(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| ModelError::Format(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| ModelError::Format(e.to_string()))
    }

    fn to_json(&self) -> Result<String> {
        json(self)
    }

    fn to_svg(&self) -> Result<String> {
        let kind = self.meta.get("kind").and_then(|k| k.as_str()).unwrap_or("this result");
        Err(ModelError::Format(format!(
            "no chart for {kind}; svg output is available for sweeps and T5"
        )))
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Minimal line chart: axes, five ticks per axis, a legend and one polyline
/// per series.
#[derive(Debug, Clone)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl LineChart {
    pub fn render(&self) -> String {
        let (w, h) = (640.0, 400.0);
        let (left, right, top, bottom) = (60.0, 150.0, 40.0, 50.0);
        let all = self.series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        y0 = y0.min(0.0);
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        if y1 <= y0 {
            y1 = y0 + 1.0;
        }
        let pw = w - left - right;
        let ph = h - top - bottom;
        let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            left + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="{left}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#,
            b = top + ph,
            r = left + pw
        );
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="{left}" y1="{top}" x2="{left}" y2="{b}" stroke="black"/>"#,
            b = top + ph
        );
        for i in 0..=4 {
            let fx = x0 + (x1 - x0) * i as f64 / 4.0;
            let fy = y0 + (y1 - y0) * i as f64 / 4.0;
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{:.2}</text>"#,
                sx(fx),
                top + ph + 16.0,
                fx
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{:.2}</text>"#,
                left - 6.0,
                sy(fy) + 4.0,
                fy
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            left + pw / 2.0,
            h - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
            top + ph / 2.0,
            top + ph / 2.0,
            escape(&self.y_label)
        );
        for (k, series) in self.series.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            let pts: Vec<String> = series
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"><title>{}</title></polyline>"#,
                pts.join(" "),
                escape(&series.name)
            );
            let ly = top + 14.0 + 18.0 * k as f64;
            let lx = left + pw + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 18.0,
                lx + 24.0,
                ly + 4.0,
                escape(&series.name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
