//! Industry calibration.
//!
//! Loss magnitudes are breach costs relative to the 2024 global average of
//! $4.88M. The values are kept at the two decimals they are published with;
//! the derived tables are computed from the rounded numbers.

use serde::{Deserialize, Serialize};

/// Global average breach cost (million USD) that maps to `lambda = 1`.
pub const GLOBAL_AVERAGE_BREACH_COST: f64 = 4.88;

/// Common capability and readiness used across the industry tables.
pub const ILLUSTRATIVE_THETA: f64 = 2.0;
pub const ILLUSTRATIVE_MU: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndustryCalibration {
    pub name: String,
    pub breach_cost_musd: f64,
    pub lambda: f64,
    pub default_e: f64,
}

impl IndustryCalibration {
    fn new(name: &str, breach_cost_musd: f64, lambda: f64, default_e: f64) -> Self {
        IndustryCalibration {
            name: name.to_string(),
            breach_cost_musd,
            lambda,
            default_e,
        }
    }

    /// Unrounded `breach cost / 4.88`.
    pub fn implied_lambda(&self) -> f64 {
        self.breach_cost_musd / GLOBAL_AVERAGE_BREACH_COST
    }
}

pub fn builtin_calibration() -> Vec<IndustryCalibration> {
    vec![
        IndustryCalibration::new("Retail", 3.48, 0.71, 0.3),
        IndustryCalibration::new("Industrial", 5.56, 1.14, 0.5),
        IndustryCalibration::new("Financial Services", 6.08, 1.25, 1.0),
        IndustryCalibration::new("Healthcare", 9.77, 2.00, 1.5),
    ]
}

/// Case-insensitive lookup by name or first word (`"financial"` works).
pub fn find_industry(name: &str) -> Option<IndustryCalibration> {
    let needle = name.to_ascii_lowercase();
    builtin_calibration().into_iter().find(|c| {
        let full = c.name.to_ascii_lowercase();
        full == needle || full.split_whitespace().next() == Some(needle.as_str())
    })
}
