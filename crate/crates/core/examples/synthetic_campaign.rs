// Generate a synthetic campaign with a heterogeneous treatment effect and
// compare the empirical revenue uplift with the closed-form oracle.

use revuplift::synthgen::{generate_with_uplift, GeneratorSpec};

pub fn run_example() -> revuplift::Result<(f64, f64)> {
    let mut spec = GeneratorSpec::no_effect(50_000, 3, 42);
    spec.treatment_purchase_intercept = 0.2;
    spec.treatment_purchase_weights = vec![0.6, 0.0, 0.0];
    spec.treatment_revenue_weights = vec![0.2, 0.0, 0.0];

    let (data, tau) = generate_with_uplift(&spec)?;
    let mean = |treated: bool| {
        let v: Vec<f64> = data.records().iter().filter(|r| r.treatment == treated).map(|r| r.revenue).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let empirical = mean(true) - mean(false);
    let oracle = tau.iter().sum::<f64>() / tau.len() as f64;
    println!("{} customers, {} treated", data.len(), data.n_treatment());
    println!("empirical revenue uplift {empirical:.3}, mean true uplift {oracle:.3}");
    Ok((empirical, oracle))
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
