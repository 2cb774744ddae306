//! Synthetic minority over-sampling.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{DesignMatrix, Standardizer};
use crate::error::{Result, UpliftError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SmoteConfig {
    pub k: usize,
    /// Desired minority count; `None` balances the two classes.
    pub target_minority_count: Option<usize>,
    pub seed: u64,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        SmoteConfig {
            k: 5,
            target_minority_count: None,
            seed: 0,
        }
    }
}

/// Minority label of a 0/1 vector; ties resolve to 1.
pub fn minority_label(y: &[f64]) -> f64 {
    let ones = y.iter().filter(|&&v| v == 1.0).count();
    if ones <= y.len() - ones {
        1.0
    } else {
        0.0
    }
}

/// Returns the input rows followed by synthetic minority rows. Each synthetic
/// row lies on the segment between a minority row and one of its `k` nearest
/// minority neighbours (Euclidean distance on standardized covariates).
pub fn smote(
    x: &DesignMatrix,
    y: &[f64],
    k: usize,
    target_minority_count: usize,
    seed: u64,
) -> Result<(DesignMatrix, Vec<f64>)> {
    if y.len() != x.n_rows() {
        return Err(UpliftError::DimensionMismatch { expected: x.n_rows(), got: y.len() });
    }
    if y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(UpliftError::InvalidInput("SMOTE labels must be 0 or 1".into()));
    }
    if k == 0 {
        return Err(UpliftError::InvalidConfig("SMOTE needs k >= 1".into()));
    }
    let label = minority_label(y);
    let minority: Vec<usize> = (0..y.len()).filter(|&i| y[i] == label).collect();
    if minority.len() < k + 1 {
        return Err(UpliftError::InvalidInput(format!(
            "minority class has {} rows, SMOTE with k={k} needs at least {}",
            minority.len(),
            k + 1
        )));
    }
    if target_minority_count < minority.len() {
        return Err(UpliftError::InvalidConfig(format!(
            "target minority count {target_minority_count} is below the current {}",
            minority.len()
        )));
    }

    let z = Standardizer::fit(x).transform(x);
    let neighbours: Vec<Vec<usize>> = minority
        .iter()
        .map(|&i| {
            let mut d: Vec<(f64, usize)> = minority
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| {
                    let dist = z.row(i).iter().zip(z.row(j)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
                    (dist, j)
                })
                .collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d.into_iter().take(k).map(|(_, j)| j).collect()
        })
        .collect();

    let mut out_x = x.clone();
    let mut out_y = y.to_vec();
    let mut rng = crate::rng::stream(seed, crate::rng::SMOTE);
    let mut row = vec![0.0; x.n_cols()];
    for _ in minority.len()..target_minority_count {
        let s = rng.random_range(0..minority.len());
        let nb = neighbours[s][rng.random_range(0..k)];
        let u: f64 = rng.random();
        for ((r, a), b) in row.iter_mut().zip(x.row(minority[s])).zip(x.row(nb)) {
            *r = a + u * (b - a);
        }
        out_x.push_row(&row);
        out_y.push(label);
    }
    Ok((out_x, out_y))
}

/// Applies [`smote`] with the config's target (balanced by default).
pub fn smote_with(x: &DesignMatrix, y: &[f64], config: &SmoteConfig) -> Result<(DesignMatrix, Vec<f64>)> {
    let label = minority_label(y);
    let majority = y.iter().filter(|&&v| v != label).count();
    let target = config.target_minority_count.unwrap_or(majority);
    smote(x, y, config.k, target, config.seed)
}
