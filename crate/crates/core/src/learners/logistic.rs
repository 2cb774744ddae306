//! Penalized logistic regression.
//!
//! L2 is solved by damped Newton steps. L1 uses proximal Newton: each outer
//! step minimizes the local quadratic model plus the L1 term by coordinate
//! descent, followed by a backtracking line search on the full objective.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::matrix::{DesignMatrix, Standardizer};
use crate::error::{Result, UpliftError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Penalty {
    L1,
    #[default]
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticConfig {
    pub lambda: f64,
    pub penalty: Penalty,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig {
            lambda: 1e-2,
            penalty: Penalty::L2,
            max_iter: 100,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub iterations: usize,
    pub gradient_norm: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    /// Weights on standardized covariates.
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    pub standardizer: Standardizer,
    pub config: LogisticConfig,
    pub report: ConvergenceReport,
}

pub(crate) fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `log(1 + exp(t))` without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

const PROBA_FLOOR: f64 = 1e-15;

impl LogisticModel {
    pub fn predict_proba_row(&self, row: &[f64]) -> f64 {
        let z = self.standardizer.transform_row(row);
        let eta = self.intercept + self.coefficients.iter().zip(&z).map(|(w, v)| w * v).sum::<f64>();
        sigmoid(eta).clamp(PROBA_FLOOR, 1.0 - PROBA_FLOOR)
    }

    pub fn predict_proba(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        x.check_cols(self.coefficients.len())?;
        Ok(x.rows().map(|r| self.predict_proba_row(r)).collect())
    }
}

/// Mean negative log-likelihood plus penalty over standardized covariates.
///
/// Parameters are laid out as `[intercept, w_1, .., w_m]`.
pub struct LogisticObjective<'a> {
    z: &'a DesignMatrix,
    y: &'a [f64],
    lambda: f64,
    penalty: Penalty,
}

impl<'a> LogisticObjective<'a> {
    pub fn new(z: &'a DesignMatrix, y: &'a [f64], lambda: f64, penalty: Penalty) -> Self {
        LogisticObjective { z, y, lambda, penalty }
    }

    fn eta(&self, theta: &[f64], row: &[f64]) -> f64 {
        theta[0] + theta[1..].iter().zip(row).map(|(w, v)| w * v).sum::<f64>()
    }

    fn nll(&self, theta: &[f64]) -> f64 {
        let n = self.z.n_rows() as f64;
        self.z
            .rows()
            .zip(self.y)
            .map(|(row, &y)| {
                let eta = self.eta(theta, row);
                softplus(eta) - y * eta
            })
            .sum::<f64>()
            / n
    }

    fn penalty_value(&self, theta: &[f64]) -> f64 {
        let w = &theta[1..];
        match self.penalty {
            Penalty::L2 => 0.5 * self.lambda * w.iter().map(|v| v * v).sum::<f64>(),
            Penalty::L1 => self.lambda * w.iter().map(|v| v.abs()).sum::<f64>(),
        }
    }

    pub fn value(&self, theta: &[f64]) -> f64 {
        self.nll(theta) + self.penalty_value(theta)
    }

    /// Gradient of the smooth part: the likelihood term, plus the penalty when it is L2.
    pub fn smooth_gradient(&self, theta: &[f64]) -> Vec<f64> {
        let n = self.z.n_rows() as f64;
        let mut g = vec![0.0; theta.len()];
        for (row, &y) in self.z.rows().zip(self.y) {
            let r = sigmoid(self.eta(theta, row)) - y;
            g[0] += r;
            for (gj, v) in g[1..].iter_mut().zip(row) {
                *gj += r * v;
            }
        }
        g.iter_mut().for_each(|v| *v /= n);
        if self.penalty == Penalty::L2 {
            for (gj, w) in g[1..].iter_mut().zip(&theta[1..]) {
                *gj += self.lambda * w;
            }
        }
        g
    }

    /// Hessian of the likelihood term (no penalty).
    fn nll_hessian(&self, theta: &[f64]) -> DMatrix<f64> {
        let k = theta.len();
        let n = self.z.n_rows() as f64;
        let mut h = DMatrix::zeros(k, k);
        let mut ext = vec![1.0; k];
        for row in self.z.rows() {
            let p = sigmoid(self.eta(theta, row));
            let w = p * (1.0 - p);
            ext[1..].copy_from_slice(row);
            for a in 0..k {
                let wa = w * ext[a];
                for b in a..k {
                    h[(a, b)] += wa * ext[b];
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                h[(a, b)] /= n;
                h[(b, a)] = h[(a, b)];
            }
        }
        h
    }

    /// Norm of the (sub)gradient optimality residual.
    pub fn optimality_residual(&self, theta: &[f64]) -> f64 {
        let g = self.smooth_gradient(theta);
        let mut sq = g[0] * g[0];
        for (gj, w) in g[1..].iter().zip(&theta[1..]) {
            let r = match self.penalty {
                Penalty::L2 => *gj,
                Penalty::L1 if *w != 0.0 => gj + self.lambda * w.signum(),
                Penalty::L1 => (gj.abs() - self.lambda).max(0.0),
            };
            sq += r * r;
        }
        sq.sqrt()
    }
}

pub fn fit_logistic(x: &DesignMatrix, y: &[f64], config: LogisticConfig) -> Result<LogisticModel> {
    let n = x.n_rows();
    if n == 0 {
        return Err(UpliftError::Fit("logistic regression needs at least one row".into()));
    }
    if y.len() != n {
        return Err(UpliftError::DimensionMismatch { expected: n, got: y.len() });
    }
    if y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(UpliftError::InvalidInput("logistic labels must be 0 or 1".into()));
    }
    if !(config.lambda.is_finite() && config.lambda >= 0.0) {
        return Err(UpliftError::InvalidConfig(format!(
            "logistic penalty must be >= 0, got {}",
            config.lambda
        )));
    }
    let standardizer = Standardizer::fit(x);
    let z = standardizer.transform(x);
    let obj = LogisticObjective::new(&z, y, config.lambda, config.penalty);

    let k = x.n_cols() + 1;
    let mut theta = vec![0.0; k];
    let mean_y = y.iter().sum::<f64>() / n as f64;
    if mean_y > 0.0 && mean_y < 1.0 {
        theta[0] = (mean_y / (1.0 - mean_y)).ln();
    }

    let mut iterations = 0;
    let mut residual = obj.optimality_residual(&theta);
    while residual > config.tol && iterations < config.max_iter {
        let direction = match config.penalty {
            Penalty::L2 => newton_direction(&obj, &theta, config.lambda),
            Penalty::L1 => proximal_newton_direction(&obj, &theta, config.lambda),
        };
        theta = line_search(&obj, &theta, &direction, config.penalty, config.lambda);
        iterations += 1;
        residual = obj.optimality_residual(&theta);
    }
    let report = ConvergenceReport {
        iterations,
        gradient_norm: residual,
        converged: residual <= config.tol,
    };
    if !report.converged {
        return Err(UpliftError::NotConverged {
            iterations,
            gradient_norm: residual,
        });
    }
    Ok(LogisticModel {
        intercept: theta[0],
        coefficients: theta[1..].to_vec(),
        standardizer,
        config,
        report,
    })
}

fn newton_direction(obj: &LogisticObjective, theta: &[f64], lambda: f64) -> Vec<f64> {
    let g = obj.smooth_gradient(theta);
    let mut h = obj.nll_hessian(theta);
    for j in 1..theta.len() {
        h[(j, j)] += lambda;
    }
    let gv = DVector::from_column_slice(&g);
    // guard against a flat intercept direction when every probability saturates
    let jitter = 1e-12;
    for j in 0..theta.len() {
        h[(j, j)] += jitter;
    }
    match h.cholesky() {
        Some(chol) => (-chol.solve(&gv)).iter().copied().collect(),
        None => g.iter().map(|v| -v).collect(),
    }
}

fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

fn proximal_newton_direction(obj: &LogisticObjective, theta: &[f64], lambda: f64) -> Vec<f64> {
    let k = theta.len();
    let g = obj.smooth_gradient(theta);
    let mut h = obj.nll_hessian(theta);
    for j in 0..k {
        h[(j, j)] += 1e-12;
    }
    let mut next = theta.to_vec();
    // h_delta = H (next - theta)
    let mut h_delta = vec![0.0; k];
    for _sweep in 0..500 {
        let mut max_change: f64 = 0.0;
        for j in 0..k {
            let a = h[(j, j)];
            let r = g[j] + h_delta[j];
            let updated = if j == 0 {
                next[j] - r / a
            } else {
                soft_threshold(next[j] - r / a, lambda / a)
            };
            let delta = updated - next[j];
            if delta != 0.0 {
                for (i, hd) in h_delta.iter_mut().enumerate() {
                    *hd += h[(i, j)] * delta;
                }
                next[j] = updated;
                max_change = max_change.max(delta.abs());
            }
        }
        if max_change < 1e-12 {
            break;
        }
    }
    next.iter().zip(theta).map(|(a, b)| a - b).collect()
}

fn line_search(
    obj: &LogisticObjective,
    theta: &[f64],
    direction: &[f64],
    penalty: Penalty,
    lambda: f64,
) -> Vec<f64> {
    let f0 = obj.value(theta);
    let g = obj.smooth_gradient(theta);
    let mut decrease: f64 = g.iter().zip(direction).map(|(a, b)| a * b).sum();
    if penalty == Penalty::L1 {
        let l1 = |t: &[f64]| lambda * t[1..].iter().map(|v| v.abs()).sum::<f64>();
        let moved: Vec<f64> = theta.iter().zip(direction).map(|(a, b)| a + b).collect();
        decrease += l1(&moved) - l1(theta);
    }
    let mut step = 1.0;
    for _ in 0..60 {
        let candidate: Vec<f64> = theta.iter().zip(direction).map(|(a, d)| a + step * d).collect();
        if obj.value(&candidate) <= f0 + 1e-4 * step * decrease.min(0.0) {
            return candidate;
        }
        step *= 0.5;
    }
    theta.to_vec()
}
