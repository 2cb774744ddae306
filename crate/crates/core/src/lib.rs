//! Revenue uplift modeling.
//!
//! The crate ranks customers by the revenue a marketing treatment is
//! expected to add, rather than by conversion probability alone:
//!
//! * [`dataset`]: customer records, CSV input, descriptive statistics, partitioning;
//! * [`synthgen`]: zero-inflated synthetic campaigns with known uplift;
//! * [`transforms`]: share-weighted signed targets, their discretization, interaction designs;
//! * [`learners`]: ridge/OLS, logistic regression, LDA, extremely randomized trees, SMOTE;
//! * [`strategies`]: one- and two-stage uplift strategies and model selection;
//! * [`evaluation`]: decile tables, Qini curves, weighted Qini, campaign profit, chi-squared test;
//! * [`pipeline`]: the batch workflow behind the `revuplift` binary.

pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod learners;
pub mod pipeline;
mod rng;
pub mod strategies;
pub mod synthgen;
pub mod transforms;

pub use dataset::{CustomerRecord, GroupShares, Outcome, SplitSpec, UpliftDataset, UpliftSummary};
pub use error::{Result, UpliftError};
pub use strategies::{fit_strategy, score, select_model, select_with, FittedStrategy, Stage, StrategyKind, StrategySpec, UpliftScorer};
