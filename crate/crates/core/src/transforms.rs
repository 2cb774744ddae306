//! Target and covariate transformations that turn uplift estimation into
//! ordinary supervised learning.

use serde::{Deserialize, Serialize};

use crate::dataset::{group_shares, GroupShares, Outcome, UpliftDataset};
use crate::error::{Result, UpliftError};
use crate::learners::DesignMatrix;

/// Share-weighted signed target: treated buyers get `+Y/q_T`, control buyers
/// `−Y/q_C`, everyone else zero. Its mean equals the difference in group
/// mean outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousTarget {
    pub values: Vec<f64>,
    pub shares: GroupShares,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryTarget {
    pub values: Vec<f64>,
    pub threshold: f64,
}

impl BinaryTarget {
    pub fn ones(&self) -> usize {
        self.values.iter().filter(|&&v| v == 1.0).count()
    }
}

pub fn crvtw(dataset: &UpliftDataset, target: Outcome) -> ContinuousTarget {
    let shares = group_shares(dataset);
    let values = dataset
        .records()
        .iter()
        .map(|r| {
            let y = target.value(r);
            if !r.is_buyer() {
                0.0
            } else if r.treatment {
                y / shares.q_t
            } else {
                -y / shares.q_c
            }
        })
        .collect();
    ContinuousTarget { values, shares }
}

/// Maps values at or below `threshold` to 0 and values above it to 1.
pub fn discretize(values: &[f64], threshold: f64) -> Result<BinaryTarget> {
    if !threshold.is_finite() || values.iter().any(|v| !v.is_finite()) {
        return Err(UpliftError::InvalidInput("cannot discretize non-finite values".into()));
    }
    Ok(BinaryTarget {
        values: values.iter().map(|&v| f64::from(u8::from(v > threshold))).collect(),
        threshold,
    })
}

/// Binary target that is 1 exactly for treated purchasers.
pub fn rdt(dataset: &UpliftDataset) -> BinaryTarget {
    rdt_for(dataset, Outcome::Revenue)
}

pub fn rdt_for(dataset: &UpliftDataset, target: Outcome) -> BinaryTarget {
    discretize(&crvtw(dataset, target).values, 0.0).expect("weighted targets are finite")
}

/// Covariates augmented with the treatment flag and treatment interactions,
/// columns ordered `[X, T, X·T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedMatrix {
    pub matrix: DesignMatrix,
    pub column_names: Vec<String>,
}

pub fn augment_row(x: &[f64], treatment: bool) -> Vec<f64> {
    let t = f64::from(u8::from(treatment));
    let mut row = Vec::with_capacity(2 * x.len() + 1);
    row.extend_from_slice(x);
    row.push(t);
    row.extend(x.iter().map(|v| v * t));
    row
}

/// Augments an arbitrary covariate matrix with a constant treatment flag.
pub fn augment_matrix(x: &DesignMatrix, treatment: bool) -> DesignMatrix {
    let rows: Vec<Vec<f64>> = x.rows().map(|r| augment_row(r, treatment)).collect();
    DesignMatrix::from_rows(rows.iter().map(Vec::as_slice), 2 * x.n_cols() + 1)
}

pub fn augmented_names(feature_names: &[String]) -> Vec<String> {
    let mut names = feature_names.to_vec();
    names.push("treatment".into());
    names.extend(feature_names.iter().map(|f| format!("{f}:treatment")));
    names
}

/// Interaction-term design for `dataset`. With `force_treatment`, every row
/// uses that flag instead of its own (counterfactual scoring).
pub fn itm_augment(dataset: &UpliftDataset, force_treatment: Option<bool>) -> AugmentedMatrix {
    let rows: Vec<Vec<f64>> = dataset
        .records()
        .iter()
        .map(|r| augment_row(&r.covariates, force_treatment.unwrap_or(r.treatment)))
        .collect();
    AugmentedMatrix {
        matrix: DesignMatrix::from_rows(rows.iter().map(Vec::as_slice), 2 * dataset.n_features() + 1),
        column_names: augmented_names(dataset.feature_names()),
    }
}
