// Each base learner on one synthetic problem: ridge and trees for revenue,
// logistic regression, LDA, trees and SMOTE for purchase incidence.

use revuplift::learners::{
    fit_ert, fit_lda, fit_linear, fit_logistic, smote_with, DesignMatrix, ErtConfig, LogisticConfig, SmoteConfig,
    TreeTask,
};
use revuplift::synthgen::{generate, GeneratorSpec};

pub fn run_example() -> revuplift::Result<()> {
    let mut spec = GeneratorSpec::no_effect(5_000, 3, 7);
    spec.purchase_weights = vec![1.0, -0.5, 0.0];
    spec.revenue_weights = vec![0.3, 0.0, 0.1];
    let data = generate(&spec)?;
    let x = data.covariates();
    let buy: Vec<f64> = data.records().iter().map(|r| f64::from(u8::from(r.is_buyer()))).collect();

    let accuracy = |p: &[f64]| p.iter().zip(&buy).filter(|(p, y)| (**p > 0.5) == (**y == 1.0)).count() as f64 / buy.len() as f64;
    let logistic = fit_logistic(&x, &buy, LogisticConfig::default())?;
    println!("logistic: {} Newton steps, accuracy {:.3}", logistic.report.iterations, accuracy(&logistic.predict_proba(&x)?));
    let lda = fit_lda(&x, &buy)?;
    println!("LDA: accuracy {:.3}", accuracy(&lda.predict_proba(&x)?));
    let trees = fit_ert(&x, &buy, TreeTask::Classification, ErtConfig { n_trees: 50, ..ErtConfig::default() })?;
    println!("ERT classifier: accuracy {:.3}", accuracy(&trees.predict(&x)?));

    let (balanced_x, balanced_y) = smote_with(&x, &buy, &SmoteConfig::default())?;
    let ones = balanced_y.iter().filter(|&&v| v == 1.0).count();
    println!("SMOTE: {} -> {} rows, {ones} purchasers", x.n_rows(), balanced_x.n_rows());

    let buyers: Vec<usize> = (0..data.len()).filter(|&i| buy[i] == 1.0).collect();
    let bx: DesignMatrix = x.select_rows(&buyers);
    let by: Vec<f64> = buyers.iter().map(|&i| data.records()[i].revenue.ln()).collect();
    let ridge = fit_linear(&bx, &by, 1.0)?;
    println!("ridge on log basket: coefficients {:.3?}", ridge.coefficients);
    Ok(())
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example()
}
