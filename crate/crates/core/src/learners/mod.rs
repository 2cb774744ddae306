//! Native supervised learners used as base models by the uplift strategies.

mod ert;
mod lda;
mod linear;
mod logistic;
mod matrix;
mod smote;

pub use ert::{fit_ert, ErtConfig, ErtEnsemble, MaxFeatures, Node, Tree, TreeTask};
pub use lda::{fit_lda, LdaModel};
pub use linear::{fit_linear, LinearModel};
pub use logistic::{fit_logistic, ConvergenceReport, LogisticConfig, LogisticModel, LogisticObjective, Penalty};
pub use matrix::{DesignMatrix, Standardizer};
pub use smote::{minority_label, smote, smote_with, SmoteConfig};

use serde::{Deserialize, Serialize};

use crate::error::{Result, UpliftError};

/// A base learner and its hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "learner", rename_all = "snake_case")]
pub enum LearnerSpec {
    /// OLS when `alpha` is zero, ridge otherwise.
    Linear { alpha: f64 },
    Logistic {
        lambda: f64,
        #[serde(default)]
        penalty: Penalty,
    },
    Lda,
    Ert(ErtConfig),
}

impl LearnerSpec {
    pub fn ols() -> Self {
        LearnerSpec::Linear { alpha: 0.0 }
    }

    pub fn ridge(alpha: f64) -> Self {
        LearnerSpec::Linear { alpha }
    }

    pub fn logistic(lambda: f64) -> Self {
        LearnerSpec::Logistic { lambda, penalty: Penalty::L2 }
    }

    pub fn can_regress(&self) -> bool {
        matches!(self, LearnerSpec::Linear { .. } | LearnerSpec::Ert(_))
    }

    pub fn can_classify(&self) -> bool {
        matches!(self, LearnerSpec::Logistic { .. } | LearnerSpec::Lda | LearnerSpec::Ert(_))
    }

    /// Short label used in reports, e.g. `ridge(1)` or `ert(leaf=10)`.
    pub fn label(&self) -> String {
        match self {
            LearnerSpec::Linear { alpha } if *alpha == 0.0 => "ols".into(),
            LearnerSpec::Linear { alpha } => format!("ridge({alpha})"),
            LearnerSpec::Logistic { lambda, penalty } => format!("logr({penalty:?},{lambda})"),
            LearnerSpec::Lda => "lda".into(),
            LearnerSpec::Ert(c) => format!("ert(trees={},leaf={})", c.n_trees, c.min_samples_leaf),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum FittedRegressor {
    Linear(LinearModel),
    Ert(ErtEnsemble),
}

impl FittedRegressor {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        match self {
            FittedRegressor::Linear(m) => m.predict_row(row),
            FittedRegressor::Ert(m) => m.predict_row(row),
        }
    }

    pub fn predict(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        match self {
            FittedRegressor::Linear(m) => m.predict(x),
            FittedRegressor::Ert(m) => m.predict(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum FittedClassifier {
    Logistic(LogisticModel),
    Lda(LdaModel),
    Ert(ErtEnsemble),
}

impl FittedClassifier {
    /// Probability of class 1.
    pub fn predict_proba_row(&self, row: &[f64]) -> f64 {
        match self {
            FittedClassifier::Logistic(m) => m.predict_proba_row(row),
            FittedClassifier::Lda(m) => m.predict_proba_row(row),
            FittedClassifier::Ert(m) => m.predict_row(row),
        }
    }

    pub fn predict_proba(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        match self {
            FittedClassifier::Logistic(m) => m.predict_proba(x),
            FittedClassifier::Lda(m) => m.predict_proba(x),
            FittedClassifier::Ert(m) => m.predict(x),
        }
    }
}

pub fn fit_regressor(spec: &LearnerSpec, x: &DesignMatrix, y: &[f64]) -> Result<FittedRegressor> {
    match spec {
        LearnerSpec::Linear { alpha } => fit_linear(x, y, *alpha).map(FittedRegressor::Linear),
        LearnerSpec::Ert(cfg) => fit_ert(x, y, TreeTask::Regression, *cfg).map(FittedRegressor::Ert),
        other => Err(UpliftError::InvalidConfig(format!("{} is not a regressor", other.label()))),
    }
}

pub fn fit_classifier(spec: &LearnerSpec, x: &DesignMatrix, y: &[f64]) -> Result<FittedClassifier> {
    match spec {
        LearnerSpec::Logistic { lambda, penalty } => fit_logistic(
            x,
            y,
            LogisticConfig { lambda: *lambda, penalty: *penalty, ..Default::default() },
        )
        .map(FittedClassifier::Logistic),
        LearnerSpec::Lda => fit_lda(x, y).map(FittedClassifier::Lda),
        LearnerSpec::Ert(cfg) => fit_ert(x, y, TreeTask::Classification, *cfg).map(FittedClassifier::Ert),
        other => Err(UpliftError::InvalidConfig(format!("{} is not a classifier", other.label()))),
    }
}
