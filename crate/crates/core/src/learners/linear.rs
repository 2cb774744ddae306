//! Ordinary least squares and ridge regression via the normal equations.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::matrix::{DesignMatrix, Standardizer};
use crate::error::{Result, UpliftError};

/// Fitted linear model in the original covariate scale.
///
/// The ridge penalty acts on coefficients of the standardized covariates;
/// the intercept is never penalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    pub alpha: f64,
    pub standardizer: Standardizer,
    /// True when the normal equations were singular and the minimum-norm
    /// least-squares solution was used instead.
    pub pseudo_inverse: bool,
}

impl LinearModel {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        self.intercept
            + self
                .coefficients
                .iter()
                .zip(row)
                .map(|(b, v)| b * v)
                .sum::<f64>()
    }

    pub fn predict(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        x.check_cols(self.coefficients.len())?;
        Ok(x.rows().map(|r| self.predict_row(r)).collect())
    }

    /// Coefficients on the standardized scale (the ones the penalty sees).
    pub fn standardized_coefficients(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&self.standardizer.scales)
            .map(|(b, s)| b * s)
            .collect()
    }
}

pub(crate) fn to_dmatrix(x: &DesignMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(x.n_rows(), x.n_cols(), |i, j| x.get(i, j))
}

/// Minimizes `‖y − Xβ − b‖² + α‖β‖²` over standardized covariates.
pub fn fit_linear(x: &DesignMatrix, y: &[f64], alpha: f64) -> Result<LinearModel> {
    let n = x.n_rows();
    if n == 0 {
        return Err(UpliftError::Fit("linear model needs at least one row".into()));
    }
    if y.len() != n {
        return Err(UpliftError::DimensionMismatch { expected: n, got: y.len() });
    }
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(UpliftError::InvalidConfig(format!("ridge penalty must be >= 0, got {alpha}")));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(UpliftError::InvalidInput("non-finite regression target".into()));
    }
    let standardizer = Standardizer::fit(x);
    let z = to_dmatrix(&standardizer.transform(x));
    let y_mean = y.iter().sum::<f64>() / n as f64;
    let yc = DVector::from_iterator(n, y.iter().map(|v| v - y_mean));

    let m = x.n_cols();
    let mut gram = z.tr_mul(&z);
    for j in 0..m {
        gram[(j, j)] += alpha;
    }
    let rhs = z.tr_mul(&yc);

    let (beta, pseudo_inverse) = match gram.clone().cholesky() {
        Some(chol) if well_conditioned(&gram) => {
            let mut beta = chol.solve(&rhs);
            // one step of iterative refinement
            let resid = &rhs - &gram * &beta;
            beta += chol.solve(&resid);
            (beta, false)
        }
        _ => {
            let svd = z.clone().svd(true, true);
            let tol = 1e-10 * svd.singular_values.max().max(1.0);
            let beta = if alpha == 0.0 {
                svd.solve(&yc, tol)
            } else {
                gram.clone().svd(true, true).solve(&rhs, tol)
            }
            .map_err(|e| UpliftError::Fit(e.to_string()))?;
            (beta, true)
        }
    };

    let coefficients: Vec<f64> = beta
        .iter()
        .zip(&standardizer.scales)
        .map(|(b, s)| b / s)
        .collect();
    let intercept = y_mean
        - coefficients
            .iter()
            .zip(&standardizer.means)
            .map(|(b, mu)| b * mu)
            .sum::<f64>();
    if coefficients.iter().any(|b| !b.is_finite()) || !intercept.is_finite() {
        return Err(UpliftError::Fit("linear model produced non-finite coefficients".into()));
    }
    Ok(LinearModel {
        coefficients,
        intercept,
        alpha,
        standardizer,
        pseudo_inverse,
    })
}

fn well_conditioned(gram: &DMatrix<f64>) -> bool {
    if gram.nrows() == 0 {
        return true;
    }
    let eig = gram.clone().symmetric_eigenvalues();
    let max = eig.max();
    let min = eig.min();
    max > 0.0 && min > 1e-12 * max
}
