//! Ranking-based evaluation: decile tables, Qini curves and coefficients,
//! weighted Qini, campaign profit and conversion significance.

mod decile;
mod profit;
mod qini;
mod significance;

pub use decile::{bin_sizes, decile_table, decile_table_for, ranking, DecileBin, DecileTable};
pub use profit::{campaign_profit, profit_report, CostModel, ProfitComponents, ProfitInputs, ProfitReport, ProfitRow};
pub use qini::{qini_coefficient, qini_curve, weighted_qini, QiniCurve};
pub use significance::{conversion_significance, ChiSquaredTest};

use crate::dataset::UpliftDataset;
use crate::error::Result;

/// Unscaled revenue Qini coefficient of `scores` on `data`.
pub fn revenue_qini(scores: &[f64], data: &UpliftDataset, bins: usize) -> Result<f64> {
    let table = decile_table(scores, data, bins)?;
    Ok(qini_coefficient(&qini_curve(&table, false, false)))
}
