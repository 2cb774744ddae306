//! Two-class linear discriminant analysis with a shared covariance matrix.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::logistic::sigmoid;
use super::matrix::{DesignMatrix, Standardizer};
use crate::error::{Result, UpliftError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    /// Class means on the standardized scale, `[class 0, class 1]`.
    pub means: [Vec<f64>; 2],
    pub priors: [f64; 2],
    /// Ridge added to the pooled covariance diagonal (0 when it was invertible).
    pub covariance_jitter: f64,
    /// Discriminant direction `Σ⁻¹(μ₁ − μ₀)`.
    pub weights: Vec<f64>,
    /// Log-odds offset, including the prior ratio.
    pub offset: f64,
    pub standardizer: Standardizer,
}

impl LdaModel {
    pub fn predict_proba_row(&self, row: &[f64]) -> f64 {
        let z = self.standardizer.transform_row(row);
        let t = self.offset + self.weights.iter().zip(&z).map(|(w, v)| w * v).sum::<f64>();
        sigmoid(t)
    }

    pub fn predict_proba(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        x.check_cols(self.weights.len())?;
        Ok(x.rows().map(|r| self.predict_proba_row(r)).collect())
    }
}

pub fn fit_lda(x: &DesignMatrix, y: &[f64]) -> Result<LdaModel> {
    let n = x.n_rows();
    if y.len() != n {
        return Err(UpliftError::DimensionMismatch { expected: n, got: y.len() });
    }
    if y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(UpliftError::InvalidInput("LDA labels must be 0 or 1".into()));
    }
    let n1 = y.iter().filter(|&&v| v == 1.0).count();
    let n0 = n - n1;
    if n0 < 2 || n1 < 2 {
        return Err(UpliftError::Fit(format!(
            "LDA needs at least 2 rows per class, got {n0} and {n1}"
        )));
    }
    let m = x.n_cols();
    let standardizer = Standardizer::fit(x);
    let z = standardizer.transform(x);

    let mut means = [vec![0.0; m], vec![0.0; m]];
    for (row, &label) in z.rows().zip(y) {
        let c = label as usize;
        for (mu, v) in means[c].iter_mut().zip(row) {
            *mu += v;
        }
    }
    means[0].iter_mut().for_each(|v| *v /= n0 as f64);
    means[1].iter_mut().for_each(|v| *v /= n1 as f64);

    let mut cov = DMatrix::<f64>::zeros(m, m);
    for (row, &label) in z.rows().zip(y) {
        let mu = &means[label as usize];
        let d = DVector::from_iterator(m, row.iter().zip(mu).map(|(a, b)| a - b));
        cov += &d * d.transpose();
    }
    cov /= (n - 2) as f64;

    let trace = cov.trace();
    let base = if trace > 0.0 { 1e-8 * trace / m.max(1) as f64 } else { 1e-8 };
    let mut jitter = 0.0;
    let chol = loop {
        let mut c = cov.clone();
        for j in 0..m {
            c[(j, j)] += jitter;
        }
        if invertible(&c) {
            if let Some(ch) = c.cholesky() {
                break ch;
            }
        }
        jitter = if jitter == 0.0 { base } else { jitter * 10.0 };
        if jitter > 1e6 * base.max(1.0) {
            return Err(UpliftError::Fit("pooled covariance could not be regularized".into()));
        }
    };

    let mu0 = DVector::from_column_slice(&means[0]);
    let mu1 = DVector::from_column_slice(&means[1]);
    let w = chol.solve(&(&mu1 - &mu0));
    let priors = [n0 as f64 / n as f64, n1 as f64 / n as f64];
    let offset = -0.5 * (mu1.dot(&chol.solve(&mu1)) - mu0.dot(&chol.solve(&mu0)))
        + (priors[1] / priors[0]).ln();

    Ok(LdaModel {
        means,
        priors,
        covariance_jitter: jitter,
        weights: w.iter().copied().collect(),
        offset,
        standardizer,
    })
}

fn invertible(c: &DMatrix<f64>) -> bool {
    if c.nrows() == 0 {
        return true;
    }
    let eig = c.clone().symmetric_eigenvalues();
    let max = eig.max();
    max > 0.0 && eig.min() > 1e-12 * max
}
