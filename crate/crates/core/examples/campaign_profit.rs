// Incremental campaign profit: a per-person calculation and a cumulative
// profit-by-depth report for a ranked synthetic campaign.

use revuplift::dataset::{partition, SplitSpec};
use revuplift::evaluation::{campaign_profit, decile_table, profit_report, CostModel, ProfitInputs};
use revuplift::learners::LearnerSpec;
use revuplift::synthgen::{generate, GeneratorSpec};
use revuplift::{fit_strategy, score, StrategyKind, StrategySpec};

pub fn run_example() -> revuplift::Result<f64> {
    let costs = CostModel { discount: 0.1, contact_cost: 0.0 };
    let per_person = campaign_profit(&ProfitInputs::per_person(14.24, 4.48, costs))?;
    println!("per-person profit {:.2}", per_person.profit);

    let mut spec = GeneratorSpec::no_effect(20_000, 3, 5);
    spec.treatment_purchase_weights = vec![0.8, 0.0, 0.0];
    spec.treatment_revenue_intercept = 0.1;
    let parts = partition(&generate(&spec)?, &SplitSpec::with_seed(5))?;
    let model = fit_strategy(&StrategySpec::one_stage(StrategyKind::Crvtw, LearnerSpec::ridge(1.0)), &parts.train)?;
    let table = decile_table(&score(&model, &parts.test)?, &parts.test, 10)?;
    let report = profit_report(&table, &CostModel { discount: 0.1, contact_cost: 0.5 })?;
    println!("depth targeted incremental  contact  incentive    profit");
    for r in &report.rows {
        let c = &r.components;
        println!(
            "{:>5} {:>8} {:>11.1} {:>8.1} {:>10.1} {:>9.1}",
            r.depth, r.targeted, c.incremental_revenue, c.contact_cost, c.incentive_cost, c.profit
        );
    }
    Ok(per_person.profit)
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
