use serde::{Deserialize, Serialize};

use super::decile::DecileTable;
use crate::error::{Result, UpliftError};

/// Cumulative incremental outcome by targeted bin against the random-targeting line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QiniCurve {
    pub cumulative: Vec<f64>,
    /// `R_d = (d / B) · C_B`, the straight line from the origin to the curve's end.
    pub baseline: Vec<f64>,
    pub per_person: bool,
    pub scaled: bool,
    pub n: usize,
}

pub fn qini_curve(table: &DecileTable, per_person: bool, scaled: bool) -> QiniCurve {
    let div = if per_person { table.n as f64 } else { 1.0 };
    let mut acc = 0.0;
    let cumulative: Vec<f64> = table
        .bins
        .iter()
        .map(|b| {
            acc += b.incremental;
            acc / div
        })
        .collect();
    let bins = cumulative.len();
    let end = cumulative.last().copied().unwrap_or(0.0);
    let baseline = (1..=bins).map(|d| d as f64 / bins as f64 * end).collect();
    QiniCurve {
        cumulative,
        baseline,
        per_person,
        scaled,
        n: table.n,
    }
}

/// Discrete area between the curve and the random-targeting line; negative
/// when the ranking is worse than random.
pub fn qini_coefficient(curve: &QiniCurve) -> f64 {
    let area: f64 = curve
        .cumulative
        .iter()
        .zip(&curve.baseline)
        .map(|(c, r)| c - r)
        .sum();
    if curve.scaled {
        area / curve.n as f64
    } else {
        area
    }
}

/// Decile-weighted aggregate of ten curve values with weights 0.9, 0.8, ..,
/// 0.1 for deciles 1..9 and 0 for decile 10. `normalized` divides by the sum
/// of all ten values.
pub fn weighted_qini(values: &[f64], normalized: bool) -> Result<f64> {
    if values.len() != 10 {
        return Err(UpliftError::InvalidInput(format!(
            "weighted Qini needs exactly 10 decile values, got {}",
            values.len()
        )));
    }
    let numerator: f64 = values
        .iter()
        .enumerate()
        .map(|(i, v)| (9 - i) as f64 / 10.0 * v)
        .sum();
    if !normalized {
        return Ok(numerator);
    }
    let total: f64 = values.iter().sum();
    if total == 0.0 {
        return Err(UpliftError::InvalidInput(
            "normalized weighted Qini is undefined for a zero curve sum".into(),
        ));
    }
    Ok(numerator / total)
}
