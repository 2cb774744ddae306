use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dataset::UpliftSummary;
use crate::error::{Result, UpliftError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquaredTest {
    pub statistic: f64,
    pub p_value: f64,
}

/// Pearson chi-squared test (no continuity correction, one degree of
/// freedom) of independence between group membership and conversion.
pub fn conversion_significance(summary: &UpliftSummary) -> Result<ChiSquaredTest> {
    let t = &summary.treatment;
    let c = &summary.control;
    let cells = [
        [t.purchasers as f64, (t.sessions - t.purchasers) as f64],
        [c.purchasers as f64, (c.sessions - c.purchasers) as f64],
    ];
    let rows = [cells[0][0] + cells[0][1], cells[1][0] + cells[1][1]];
    let cols = [cells[0][0] + cells[1][0], cells[0][1] + cells[1][1]];
    let total = rows[0] + rows[1];
    if rows.iter().chain(&cols).any(|&m| m == 0.0) {
        return Err(UpliftError::InvalidInput(
            "chi-squared test needs non-zero row and column totals".into(),
        ));
    }
    let mut statistic = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let expected = rows[i] * cols[j] / total;
            statistic += (cells[i][j] - expected).powi(2) / expected;
        }
    }
    let dist = ChiSquared::new(1.0).expect("one degree of freedom");
    Ok(ChiSquaredTest { statistic, p_value: dist.sf(statistic) })
}
