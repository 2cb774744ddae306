// Descriptive uplift statistics and the chi-squared test for a campaign
// given only group sizes and purchaser counts.

use revuplift::dataset::{GroupStats, UpliftSummary};
use revuplift::evaluation::conversion_significance;

pub fn run_example() -> revuplift::Result<f64> {
    let treatment = GroupStats::from_counts(2_210_190, 162_570, 0.0)?;
    let control = GroupStats::from_counts(741_123, 53_340, 0.0)?;
    let summary = UpliftSummary::from_groups(treatment, control);
    let test = conversion_significance(&summary)?;
    println!(
        "conversion {:.2}% vs {:.2}%, uplift {:.2} pp",
        100.0 * summary.treatment.conversion_rate,
        100.0 * summary.control.conversion_rate,
        summary.conversion_uplift_pp()
    );
    println!("chi-squared {:.3}, p = {:.3e}", test.statistic, test.p_value);
    Ok(test.p_value)
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
