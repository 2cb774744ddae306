// Fit every uplift strategy on the same campaign and compare test Qini
// coefficients with the true-uplift oracle.

use revuplift::dataset::{partition, SplitSpec};
use revuplift::evaluation::revenue_qini;
use revuplift::learners::{ErtConfig, LearnerSpec};
use revuplift::synthgen::{generate, true_uplift, GeneratorSpec};
use revuplift::{fit_strategy, score, Stage, StrategyKind, StrategySpec};

pub fn run_example() -> revuplift::Result<Vec<(String, f64)>> {
    let mut spec = GeneratorSpec::no_effect(20_000, 4, 3);
    spec.treatment_purchase_intercept = 0.2;
    spec.treatment_purchase_weights = vec![0.8, 0.0, -0.3, 0.0];
    spec.treatment_revenue_weights = vec![0.3, 0.0, 0.0, 0.0];
    let parts = partition(&generate(&spec)?, &SplitSpec::with_seed(3))?;

    let ert = LearnerSpec::Ert(ErtConfig { n_trees: 50, min_samples_leaf: 50, ..ErtConfig::default() });
    let strategies = [
        StrategySpec::one_stage_classifier(StrategyKind::Rdt, ert.clone()),
        StrategySpec::new(StrategyKind::Rdt, Stage::TwoStageSmote, Some(LearnerSpec::logistic(1e-2)), None),
        StrategySpec::one_stage(StrategyKind::Crvtw, LearnerSpec::ridge(1.0)),
        StrategySpec::two_stage(StrategyKind::Crvtw, LearnerSpec::Lda, LearnerSpec::ridge(1.0)),
        StrategySpec::one_stage(StrategyKind::Itm, LearnerSpec::ridge(1.0)),
        StrategySpec::two_stage(StrategyKind::Itm, LearnerSpec::logistic(1e-2), LearnerSpec::ridge(1.0)),
        StrategySpec::one_stage(StrategyKind::Indirect, ert),
        StrategySpec::two_stage(StrategyKind::Indirect, LearnerSpec::logistic(1e-2), LearnerSpec::ridge(1.0)),
        StrategySpec::one_stage(StrategyKind::Response, LearnerSpec::ridge(1.0)),
    ];
    let mut results = Vec::new();
    for s in &strategies {
        let model = fit_strategy(s, &parts.train)?;
        let q = revenue_qini(&score(&model, &parts.test)?, &parts.test, 10)?;
        println!("{:<55} Q_r = {q:>10.1}", s.label());
        results.push((s.label(), q));
    }
    let oracle: Vec<f64> = parts
        .test
        .records()
        .iter()
        .map(|r| true_uplift(&spec, &r.covariates))
        .collect::<revuplift::Result<_>>()?;
    let q = revenue_qini(&oracle, &parts.test, 10)?;
    println!("{:<55} Q_r = {q:>10.1}", "true uplift");
    results.push(("oracle".into(), q));
    Ok(results)
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
