// Grid search with the 40/30/30 protocol: fit each candidate on the
// training split, rank by validation Qini, refit the winner on training
// plus validation rows and report its test Qini.

use revuplift::dataset::{partition, SplitSpec};
use revuplift::evaluation::revenue_qini;
use revuplift::strategies::default_grid;
use revuplift::synthgen::{generate, GeneratorSpec};
use revuplift::{score, select_model, Stage, StrategyKind};

pub fn run_example() -> revuplift::Result<usize> {
    let mut spec = GeneratorSpec::no_effect(10_000, 3, 11);
    spec.treatment_purchase_weights = vec![0.7, 0.0, 0.0];
    spec.treatment_revenue_weights = vec![0.0, 0.3, 0.0];
    let parts = partition(&generate(&spec)?, &SplitSpec::with_seed(11))?;

    let grid = default_grid(StrategyKind::Crvtw, Stage::OneStage, 11);
    let selection = select_model(&grid, &parts.train, &parts.valid, 10)?;
    for c in &selection.candidates {
        println!("{:<40} validation Q_r {:?}", c.label, c.validation_qini);
    }
    let test = revenue_qini(&score(&selection.model, &parts.test)?, &parts.test, 10)?;
    println!("selected {} with test Q_r {test:.1}", selection.best_spec.label());
    Ok(selection.best_index)
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
