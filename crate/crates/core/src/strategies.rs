//! Revenue uplift strategies built from target transformations and base
//! learners, in one-stage and two-stage (purchase × amount) variants, plus
//! validation-driven model selection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{group_shares, GroupShares, Outcome, UpliftDataset};
use crate::error::{Result, UpliftError};
use crate::evaluation::revenue_qini;
use crate::learners::{
    fit_classifier, fit_regressor, smote_with, DesignMatrix, ErtConfig, FittedClassifier, FittedRegressor,
    LearnerSpec, SmoteConfig,
};
use crate::transforms::{augment_row, crvtw, rdt_for};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StrategyKind {
    /// Classifier on the discretized weighted target.
    Rdt,
    /// Regressor on the share-weighted signed target.
    Crvtw,
    /// Single model on covariates, treatment flag and interactions.
    Itm,
    /// Separate treatment and control outcome models.
    Indirect,
    /// Outcome model on treated customers only (not an uplift model).
    Response,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    #[default]
    OneStage,
    TwoStage,
    TwoStageSmote,
}

/// Target of the CRVTW second-stage regression on buyers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondStageTarget {
    #[default]
    Transformed,
    Raw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySpec {
    pub kind: StrategyKind,
    #[serde(default)]
    pub stage: Stage,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classifier: Option<LearnerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regressor: Option<LearnerSpec>,
    #[serde(default)]
    pub target: Outcome,
    #[serde(default)]
    pub smote: SmoteConfig,
    #[serde(default)]
    pub second_stage_target: SecondStageTarget,
}

impl StrategySpec {
    pub fn one_stage_classifier(kind: StrategyKind, classifier: LearnerSpec) -> Self {
        Self::new(kind, Stage::OneStage, Some(classifier), None)
    }

    pub fn one_stage(kind: StrategyKind, regressor: LearnerSpec) -> Self {
        Self::new(kind, Stage::OneStage, None, Some(regressor))
    }

    pub fn two_stage(kind: StrategyKind, classifier: LearnerSpec, regressor: LearnerSpec) -> Self {
        Self::new(kind, Stage::TwoStage, Some(classifier), Some(regressor))
    }

    pub fn new(kind: StrategyKind, stage: Stage, classifier: Option<LearnerSpec>, regressor: Option<LearnerSpec>) -> Self {
        StrategySpec {
            kind,
            stage,
            classifier,
            regressor,
            target: Outcome::Revenue,
            smote: SmoteConfig::default(),
            second_stage_target: SecondStageTarget::Transformed,
        }
    }

    pub fn label(&self) -> String {
        let learners: Vec<String> = self
            .classifier
            .iter()
            .chain(&self.regressor)
            .map(LearnerSpec::label)
            .collect();
        format!("{:?}/{:?}[{}]", self.kind, self.stage, learners.join(","))
    }

    fn classifier(&self) -> Result<&LearnerSpec> {
        self.classifier
            .as_ref()
            .ok_or_else(|| UpliftError::InvalidConfig(format!("{} needs a classifier", self.label())))
    }

    fn regressor(&self) -> Result<&LearnerSpec> {
        self.regressor
            .as_ref()
            .ok_or_else(|| UpliftError::InvalidConfig(format!("{} needs a regressor", self.label())))
    }

    pub fn validate(&self) -> Result<()> {
        use Stage::*;
        use StrategyKind::*;
        let needs_classifier = matches!((self.kind, self.stage), (Rdt, _) | (_, TwoStage));
        let needs_regressor = !matches!((self.kind, self.stage), (Rdt, OneStage) | (Rdt, TwoStageSmote));
        if self.stage == TwoStageSmote && self.kind != Rdt {
            return Err(UpliftError::InvalidConfig("SMOTE is only available for RDT".into()));
        }
        if self.kind == Response && self.stage != OneStage {
            return Err(UpliftError::InvalidConfig("the response model is one-stage only".into()));
        }
        if needs_classifier && !self.classifier()?.can_classify() {
            return Err(UpliftError::InvalidConfig(format!("{} cannot classify", self.classifier()?.label())));
        }
        if needs_regressor && !self.regressor()?.can_regress() {
            return Err(UpliftError::InvalidConfig(format!("{} cannot regress", self.regressor()?.label())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
// fitted once per strategy; boxing the larger variants buys nothing
#[allow(clippy::large_enum_variant)]
pub enum FittedModel {
    Rdt { classifier: FittedClassifier },
    RdtTwoStage { classifier: FittedClassifier, regressor: FittedRegressor },
    Crvtw { regressor: FittedRegressor },
    CrvtwTwoStage { classifier: FittedClassifier, regressor: FittedRegressor },
    /// Regressor over `[X, T, X·T]`.
    Itm { regressor: FittedRegressor },
    ItmTwoStage { classifier: FittedClassifier, regressor: FittedRegressor },
    Indirect { treatment: FittedRegressor, control: FittedRegressor },
    IndirectTwoStage {
        treatment_classifier: FittedClassifier,
        treatment_regressor: FittedRegressor,
        control_classifier: FittedClassifier,
        control_regressor: FittedRegressor,
    },
    Response { regressor: FittedRegressor },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedStrategy {
    pub spec: StrategySpec,
    pub model: FittedModel,
    pub shares: GroupShares,
    pub n_features: usize,
}

fn itm_difference(regressor: &FittedRegressor, row: &[f64]) -> f64 {
    regressor.predict_row(&augment_row(row, true)) - regressor.predict_row(&augment_row(row, false))
}

impl FittedStrategy {
    /// Uplift score for one covariate vector.
    pub fn score_row(&self, row: &[f64]) -> f64 {
        match &self.model {
            FittedModel::Rdt { classifier } => classifier.predict_proba_row(row),
            FittedModel::RdtTwoStage { classifier, regressor }
            | FittedModel::CrvtwTwoStage { classifier, regressor } => {
                classifier.predict_proba_row(row) * regressor.predict_row(row)
            }
            FittedModel::Crvtw { regressor } | FittedModel::Response { regressor } => regressor.predict_row(row),
            FittedModel::Itm { regressor } => itm_difference(regressor, row),
            FittedModel::ItmTwoStage { classifier, regressor } => {
                classifier.predict_proba_row(row) * itm_difference(regressor, row)
            }
            FittedModel::Indirect { treatment, control } => treatment.predict_row(row) - control.predict_row(row),
            FittedModel::IndirectTwoStage {
                treatment_classifier,
                treatment_regressor,
                control_classifier,
                control_regressor,
            } => {
                treatment_classifier.predict_proba_row(row) * treatment_regressor.predict_row(row)
                    - control_classifier.predict_proba_row(row) * control_regressor.predict_row(row)
            }
        }
    }

    pub fn score_matrix(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        x.check_cols(self.n_features)?;
        let scores: Vec<f64> = x.rows().map(|r| self.score_row(r)).collect();
        if scores.iter().any(|s| !s.is_finite()) {
            return Err(UpliftError::Fit(format!("{} produced non-finite scores", self.spec.label())));
        }
        Ok(scores)
    }
}

/// Scores every record of `data`, aligned with record order.
pub fn score(model: &FittedStrategy, data: &UpliftDataset) -> Result<Vec<f64>> {
    if data.n_features() != model.n_features {
        return Err(UpliftError::DimensionMismatch { expected: model.n_features, got: data.n_features() });
    }
    model.score_matrix(&data.covariates())
}

struct Rows<'a> {
    data: &'a UpliftDataset,
    x: DesignMatrix,
}

impl<'a> Rows<'a> {
    fn new(data: &'a UpliftDataset) -> Self {
        Rows { data, x: data.covariates() }
    }

    fn select(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.data.len()).filter(|&i| keep(i)).collect()
    }

    fn buyers(&self) -> Vec<usize> {
        self.select(|i| self.data.records()[i].is_buyer())
    }

    fn group(&self, treated: bool) -> Vec<usize> {
        self.select(|i| self.data.records()[i].treatment == treated)
    }

    fn purchase_labels(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .map(|&i| f64::from(u8::from(self.data.records()[i].is_buyer())))
            .collect()
    }

    /// `[X, T, X·T]` rows for `idx`, each with its own treatment flag.
    fn augmented(&self, idx: &[usize]) -> DesignMatrix {
        let aug: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| augment_row(self.x.row(i), self.data.records()[i].treatment))
            .collect();
        DesignMatrix::from_rows(aug.iter().map(Vec::as_slice), 2 * self.x.n_cols() + 1)
    }

    fn outcomes(&self, idx: &[usize], outcome: Outcome) -> Vec<f64> {
        idx.iter().map(|&i| outcome.value(&self.data.records()[i])).collect()
    }
}

fn non_empty(idx: Vec<usize>, what: &str) -> Result<Vec<usize>> {
    if idx.is_empty() {
        return Err(UpliftError::Fit(format!("no {what} rows for the second stage")));
    }
    Ok(idx)
}

fn pick(values: &[f64], idx: &[usize]) -> Vec<f64> {
    idx.iter().map(|&i| values[i]).collect()
}

pub fn fit_strategy(spec: &StrategySpec, train: &UpliftDataset) -> Result<FittedStrategy> {
    spec.validate()?;
    let rows = Rows::new(train);
    let all: Vec<usize> = (0..train.len()).collect();
    let outcome = spec.target;

    let model = match (spec.kind, spec.stage) {
        (StrategyKind::Rdt, Stage::OneStage) => {
            let z = rdt_for(train, outcome);
            FittedModel::Rdt { classifier: fit_classifier(spec.classifier()?, &rows.x, &z.values)? }
        }
        (StrategyKind::Rdt, Stage::TwoStageSmote) => {
            let z = rdt_for(train, outcome);
            let (xs, ys) = smote_with(&rows.x, &z.values, &spec.smote)?;
            FittedModel::Rdt { classifier: fit_classifier(spec.classifier()?, &xs, &ys)? }
        }
        (StrategyKind::Rdt, Stage::TwoStage) => {
            let z = rdt_for(train, outcome);
            let classifier = fit_classifier(spec.classifier()?, &rows.x, &z.values)?;
            let buyers = non_empty(rows.buyers(), "buyer")?;
            let regressor = fit_regressor(spec.regressor()?, &rows.x.select_rows(&buyers), &rows.outcomes(&buyers, outcome))?;
            FittedModel::RdtTwoStage { classifier, regressor }
        }
        (StrategyKind::Crvtw, Stage::OneStage) => {
            let z = crvtw(train, outcome);
            FittedModel::Crvtw { regressor: fit_regressor(spec.regressor()?, &rows.x, &z.values)? }
        }
        (StrategyKind::Crvtw, Stage::TwoStage) => {
            let classifier = fit_classifier(spec.classifier()?, &rows.x, &rows.purchase_labels(&all))?;
            let buyers = non_empty(rows.buyers(), "buyer")?;
            let target = match spec.second_stage_target {
                SecondStageTarget::Transformed => pick(&crvtw(train, outcome).values, &buyers),
                SecondStageTarget::Raw => rows.outcomes(&buyers, outcome),
            };
            let regressor = fit_regressor(spec.regressor()?, &rows.x.select_rows(&buyers), &target)?;
            FittedModel::CrvtwTwoStage { classifier, regressor }
        }
        (StrategyKind::Itm, Stage::OneStage) => {
            let aug = rows.augmented(&all);
            FittedModel::Itm { regressor: fit_regressor(spec.regressor()?, &aug, &rows.outcomes(&all, outcome))? }
        }
        (StrategyKind::Itm, Stage::TwoStage) => {
            let classifier = fit_classifier(spec.classifier()?, &rows.x, &rows.purchase_labels(&all))?;
            let buyers = non_empty(rows.buyers(), "buyer")?;
            let aug = rows.augmented(&buyers);
            let regressor = fit_regressor(spec.regressor()?, &aug, &rows.outcomes(&buyers, outcome))?;
            FittedModel::ItmTwoStage { classifier, regressor }
        }
        (StrategyKind::Indirect, Stage::OneStage) => {
            let fit_group = |treated: bool| {
                let idx = rows.group(treated);
                fit_regressor(spec.regressor()?, &rows.x.select_rows(&idx), &rows.outcomes(&idx, outcome))
            };
            FittedModel::Indirect { treatment: fit_group(true)?, control: fit_group(false)? }
        }
        (StrategyKind::Indirect, Stage::TwoStage) => {
            let fit_group = |treated: bool| -> Result<(FittedClassifier, FittedRegressor)> {
                let idx = rows.group(treated);
                let classifier = fit_classifier(spec.classifier()?, &rows.x.select_rows(&idx), &rows.purchase_labels(&idx))?;
                let group = if treated { "treatment buyer" } else { "control buyer" };
                let buyers = non_empty(
                    idx.iter().copied().filter(|&i| train.records()[i].is_buyer()).collect(),
                    group,
                )?;
                let regressor = fit_regressor(spec.regressor()?, &rows.x.select_rows(&buyers), &rows.outcomes(&buyers, outcome))?;
                Ok((classifier, regressor))
            };
            let (treatment_classifier, treatment_regressor) = fit_group(true)?;
            let (control_classifier, control_regressor) = fit_group(false)?;
            FittedModel::IndirectTwoStage { treatment_classifier, treatment_regressor, control_classifier, control_regressor }
        }
        (StrategyKind::Response, Stage::OneStage) => {
            let idx = rows.group(true);
            FittedModel::Response {
                regressor: fit_regressor(spec.regressor()?, &rows.x.select_rows(&idx), &rows.outcomes(&idx, outcome))?,
            }
        }
        (kind, stage) => {
            return Err(UpliftError::InvalidConfig(format!("{kind:?} does not support {stage:?}")));
        }
    };

    Ok(FittedStrategy {
        spec: spec.clone(),
        model,
        shares: group_shares(train),
        n_features: train.n_features(),
    })
}

/// Anything that maps a covariate vector to an uplift score.
pub trait UpliftScorer {
    fn score_row(&self, row: &[f64]) -> f64;
}

impl UpliftScorer for FittedStrategy {
    fn score_row(&self, row: &[f64]) -> f64 {
        FittedStrategy::score_row(self, row)
    }
}

/// Per-candidate outcome of model selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateResult {
    pub spec: StrategySpec,
    pub label: String,
    pub validation_qini: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub best_index: usize,
    pub best_spec: StrategySpec,
    pub candidates: Vec<CandidateResult>,
    /// The winner refitted on training plus validation rows.
    pub model: FittedStrategy,
}

/// Result of [`select_with`]: validation Qini (or error) per candidate, the
/// winning index and the winner refitted on `train ∪ valid`.
pub struct GenericSelection<M> {
    pub best_index: usize,
    pub validation: Vec<Result<f64>>,
    pub model: M,
}

/// Model selection over any candidate type. Candidates are fitted on
/// `train` in parallel, scored by revenue Qini on `valid`, and collected in
/// grid order so the first of several equal maxima wins.
pub fn select_with<C, M, F>(
    grid: &[C],
    fit: F,
    train: &UpliftDataset,
    valid: &UpliftDataset,
    bins: usize,
) -> Result<GenericSelection<M>>
where
    C: Sync,
    M: UpliftScorer,
    F: Fn(&C, &UpliftDataset) -> Result<M> + Sync,
{
    if grid.is_empty() {
        return Err(UpliftError::InvalidConfig("empty strategy grid".into()));
    }
    let x_valid = valid.covariates();
    let validation: Vec<Result<f64>> = grid
        .par_iter()
        .map(|candidate| {
            let model = fit(candidate, train)?;
            let scores: Vec<f64> = x_valid.rows().map(|r| model.score_row(r)).collect();
            revenue_qini(&scores, valid, bins)
        })
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (i, q) in validation.iter().enumerate() {
        if let Ok(q) = q {
            if best.is_none_or(|(_, b)| *q > b) {
                best = Some((i, *q));
            }
        }
    }
    let Some((best_index, _)) = best else {
        return Err(UpliftError::AllCandidatesFailed(
            validation
                .iter()
                .enumerate()
                .map(|(i, r)| format!("candidate {i}: {}", r.as_ref().err().map_or(String::new(), |e| e.to_string())))
                .collect(),
        ));
    };
    let union = train.concat(valid)?;
    let model = fit(&grid[best_index], &union)?;
    Ok(GenericSelection { best_index, validation, model })
}

/// Fits every candidate on `train`, ranks them by revenue Qini on `valid`
/// (first in grid order wins ties) and refits the winner on `train ∪ valid`.
pub fn select_model(grid: &[StrategySpec], train: &UpliftDataset, valid: &UpliftDataset, bins: usize) -> Result<Selection> {
    if let Some(kind) = grid.first().map(|s| s.kind) {
        if grid.iter().any(|s| s.kind != kind) {
            return Err(UpliftError::InvalidConfig("a selection grid must share one strategy kind".into()));
        }
    }
    let sel = select_with(grid, fit_strategy, train, valid, bins).map_err(|e| match e {
        UpliftError::AllCandidatesFailed(msgs) => UpliftError::AllCandidatesFailed(
            msgs.into_iter().zip(grid).map(|(m, s)| format!("{} ({m})", s.label())).collect(),
        ),
        other => other,
    })?;
    let candidates = grid
        .iter()
        .zip(&sel.validation)
        .map(|(spec, r)| CandidateResult {
            spec: spec.clone(),
            label: spec.label(),
            validation_qini: r.as_ref().ok().copied(),
            error: r.as_ref().err().map(ToString::to_string),
        })
        .collect();
    Ok(Selection {
        best_index: sel.best_index,
        best_spec: grid[sel.best_index].clone(),
        candidates,
        model: sel.model,
    })
}

/// Regressors of the trimmed default grid: ridge α ∈ {0.01, 1, 100} and ERT leaf ∈ {10, 50}.
pub fn default_regressors(seed: u64) -> Vec<LearnerSpec> {
    let mut v: Vec<LearnerSpec> = [0.01, 1.0, 100.0].into_iter().map(LearnerSpec::ridge).collect();
    v.extend(default_erts(seed));
    v
}

/// Classifiers of the trimmed default grid: L2 logistic λ ∈ {1e-4, 1e-2, 1}, LDA and ERT leaf ∈ {10, 50}.
pub fn default_classifiers(seed: u64) -> Vec<LearnerSpec> {
    let mut v: Vec<LearnerSpec> = [1e-4, 1e-2, 1.0].into_iter().map(LearnerSpec::logistic).collect();
    v.push(LearnerSpec::Lda);
    v.extend(default_erts(seed));
    v
}

fn default_erts(seed: u64) -> Vec<LearnerSpec> {
    [10, 50]
        .into_iter()
        .map(|leaf| LearnerSpec::Ert(ErtConfig { min_samples_leaf: leaf, seed, ..Default::default() }))
        .collect()
}

/// Default candidate grid for a strategy kind and stage.
pub fn default_grid(kind: StrategyKind, stage: Stage, seed: u64) -> Vec<StrategySpec> {
    let classifiers = default_classifiers(seed);
    let regressors = default_regressors(seed);
    match (kind, stage) {
        (StrategyKind::Rdt, Stage::OneStage | Stage::TwoStageSmote) => classifiers
            .into_iter()
            .map(|c| {
                let mut s = StrategySpec::new(kind, stage, Some(c), None);
                s.smote.seed = seed;
                s
            })
            .collect(),
        (_, Stage::OneStage) => regressors.into_iter().map(|r| StrategySpec::one_stage(kind, r)).collect(),
        (_, _) => {
            // first stage: LDA and a mid-penalty logistic regression
            let firsts = [LearnerSpec::Lda, LearnerSpec::logistic(1e-2)];
            firsts
                .iter()
                .flat_map(|c| regressors.iter().map(move |r| StrategySpec::two_stage(kind, c.clone(), r.clone())))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::CustomerRecord;

    fn linear_itm_data() -> UpliftDataset {
        // y = 1 + 2x + 3T + 4xT, noise free (revenue must be non-negative so x >= 0)
        let mut records = Vec::new();
        for i in 0..40 {
            let x = i as f64 / 4.0;
            let t = i % 3 != 0;
            let tf = f64::from(u8::from(t));
            let y = 1.0 + 2.0 * x + 3.0 * tf + 4.0 * x * tf;
            records.push(CustomerRecord::new(vec![x], t, true, y));
        }
        UpliftDataset::from_records(records).unwrap()
    }

    #[test]
    fn itm_recovers_interaction() {
        let ds = linear_itm_data();
        let m = fit_strategy(&StrategySpec::one_stage(StrategyKind::Itm, LearnerSpec::ols()), &ds).unwrap();
        for (r, s) in ds.records().iter().zip(score(&m, &ds).unwrap()) {
            assert!((s - (3.0 + 4.0 * r.covariates[0])).abs() < 1e-6);
        }
    }

    #[test]
    fn spec_validation_rules() {
        let ok = StrategySpec::one_stage_classifier(StrategyKind::Rdt, LearnerSpec::Lda);
        assert!(ok.validate().is_ok());
        let bad = StrategySpec::one_stage(StrategyKind::Rdt, LearnerSpec::ols());
        assert!(bad.validate().is_err());
        let bad = StrategySpec::one_stage(StrategyKind::Crvtw, LearnerSpec::Lda);
        assert!(bad.validate().is_err());
        let bad = StrategySpec::new(StrategyKind::Crvtw, Stage::TwoStageSmote, Some(LearnerSpec::Lda), Some(LearnerSpec::ols()));
        assert!(bad.validate().is_err());
        let bad = StrategySpec::new(StrategyKind::Itm, Stage::TwoStage, None, Some(LearnerSpec::ols()));
        assert!(bad.validate().is_err());
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = StrategySpec::two_stage(StrategyKind::Indirect, LearnerSpec::Lda, LearnerSpec::ridge(1.0));
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<StrategySpec>(&text).unwrap(), spec);
        let parsed: StrategySpec = serde_json::from_str(
            r#"{"kind":"CRVTW","stage":"one_stage","regressor":{"learner":"linear","alpha":0.01}}"#,
        )
        .unwrap();
        assert_eq!(parsed, StrategySpec::one_stage(StrategyKind::Crvtw, LearnerSpec::ridge(0.01)));
    }

    #[test]
    fn missing_buyers_fail_second_stage() {
        let records = (0..10).map(|i| CustomerRecord::new(vec![i as f64], i % 2 == 0, false, 0.0)).collect();
        let ds = UpliftDataset::from_records(records).unwrap();
        let spec = StrategySpec::two_stage(StrategyKind::Rdt, LearnerSpec::Ert(ErtConfig { min_samples_leaf: 1, n_trees: 2, ..Default::default() }), LearnerSpec::ols());
        assert!(matches!(fit_strategy(&spec, &ds), Err(UpliftError::Fit(_))));
    }

    #[test]
    fn default_grids_validate() {
        for kind in [StrategyKind::Rdt, StrategyKind::Crvtw, StrategyKind::Itm, StrategyKind::Indirect, StrategyKind::Response] {
            for spec in default_grid(kind, Stage::OneStage, 0) {
                spec.validate().unwrap();
            }
        }
        for kind in [StrategyKind::Rdt, StrategyKind::Crvtw, StrategyKind::Itm, StrategyKind::Indirect] {
            let grid = default_grid(kind, Stage::TwoStage, 0);
            assert!(!grid.is_empty());
            grid.iter().for_each(|s| s.validate().unwrap());
        }
        default_grid(StrategyKind::Rdt, Stage::TwoStageSmote, 0).iter().for_each(|s| s.validate().unwrap());
    }
}
