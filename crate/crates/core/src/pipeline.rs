//! Batch workflow: generate → split → select/fit → score → evaluate → profit,
//! driven by a JSON run configuration and writing JSON/CSV reports.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::dataset::{
    load_csv, partition, read_column, summarize, write_csv, CsvSchema, SplitSpec, UpliftDataset, UpliftSummary,
};
use crate::error::{Result, UpliftError};
use crate::evaluation::{
    conversion_significance, decile_table, profit_report, qini_coefficient, qini_curve, weighted_qini,
    ChiSquaredTest, CostModel, DecileTable, ProfitReport, QiniCurve,
};
use crate::learners::LearnerSpec;
use crate::strategies::{default_grid, score, select_model, CandidateResult, Stage, StrategyKind, StrategySpec};
use crate::synthgen::{generate_with_uplift, GeneratorSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_FIT: i32 = 3;

const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvaluationOptions {
    pub bins: usize,
    pub per_person: bool,
    pub scaled: bool,
    pub normalized_weighted_qini: bool,
}

impl Default for EvaluationOptions {
    fn default() -> Self {
        EvaluationOptions { bins: 10, per_person: false, scaled: false, normalized_weighted_qini: false }
    }
}

/// One strategy to run. Without an explicit `grid`, the default grid for
/// `kind` and `stage` is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyEntry {
    #[serde(default)]
    pub name: Option<String>,
    pub kind: StrategyKind,
    #[serde(default)]
    pub stage: Stage,
    #[serde(default)]
    pub grid: Option<Vec<StrategySpec>>,
}

impl StrategyEntry {
    pub fn name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("{:?}_{:?}", self.kind, self.stage).to_lowercase())
    }

    /// Candidate specs with `seed` applied to every stochastic component.
    pub fn resolved_grid(&self, seed: u64) -> Vec<StrategySpec> {
        let grid = self.grid.clone().unwrap_or_else(|| default_grid(self.kind, self.stage, seed));
        grid.into_iter().map(|s| reseed(s, seed)).collect()
    }
}

fn reseed(mut spec: StrategySpec, seed: u64) -> StrategySpec {
    spec.smote.seed = seed;
    for learner in spec.classifier.iter_mut().chain(spec.regressor.iter_mut()) {
        if let LearnerSpec::Ert(cfg) = learner {
            cfg.seed = seed;
        }
    }
    spec
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    #[serde(default)]
    pub schema: CsvSchema,
    #[serde(default)]
    pub split: SplitSpec,
    pub strategies: Vec<StrategyEntry>,
    #[serde(default)]
    pub costs: CostModel,
    #[serde(default)]
    pub evaluation: EvaluationOptions,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("report")
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| UpliftError::io(path, e))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)?;
        // relative paths are relative to the config file
        if let Some(dir) = path.parent() {
            if cfg.input.is_relative() {
                cfg.input = dir.join(&cfg.input);
            }
            if cfg.output_dir.is_relative() {
                cfg.output_dir = dir.join(&cfg.output_dir);
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QiniReport {
    pub curve: QiniCurve,
    pub qini_coefficient: f64,
    pub weighted_qini: Option<f64>,
    pub weighted_qini_normalized: bool,
}

/// Evaluation of one score vector against observed outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub table: DecileTable,
    pub qini: QiniReport,
    pub profit: ProfitReport,
}

pub fn evaluate_scores(scores: &[f64], data: &UpliftDataset, options: &EvaluationOptions, costs: &CostModel) -> Result<Evaluation> {
    let table = decile_table(scores, data, options.bins)?;
    let curve = qini_curve(&table, options.per_person, options.scaled);
    let weighted = if options.bins == 10 {
        Some(weighted_qini(&curve.cumulative, options.normalized_weighted_qini)?)
    } else {
        None
    };
    let qini = QiniReport {
        qini_coefficient: qini_coefficient(&curve),
        curve,
        weighted_qini: weighted,
        weighted_qini_normalized: options.normalized_weighted_qini,
    };
    let profit = profit_report(&table, costs)?;
    Ok(Evaluation { table, qini, profit })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(|e| UpliftError::io(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::write_all(&mut w, b"\n").map_err(|e| UpliftError::io(path, e))?;
    Ok(())
}

fn create_file(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| UpliftError::io(path, e))
}

fn write_evaluation(dir: &Path, eval: &Evaluation) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| UpliftError::io(dir, e))?;
    write_json(&dir.join("qini.json"), &eval.qini)?;
    eval.table.write_csv(create_file(&dir.join("deciles.csv"))?)?;
    eval.profit.write_csv(create_file(&dir.join("profit.csv"))?)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct Meta {
    report_version: u32,
    crate_version: &'static str,
}

fn meta() -> Meta {
    Meta { report_version: REPORT_VERSION, crate_version: env!("CARGO_PKG_VERSION") }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryReport {
    pub summary: UpliftSummary,
    pub conversion_uplift_pp: f64,
    pub significance: Option<ChiSquaredTest>,
}

pub fn summary_report(data: &UpliftDataset) -> SummaryReport {
    let summary = summarize(data);
    SummaryReport {
        conversion_uplift_pp: summary.conversion_uplift_pp(),
        significance: conversion_significance(&summary).ok(),
        summary,
    }
}

#[derive(Debug, Clone, Serialize)]
struct SelectionReport<'a> {
    meta: Meta,
    strategy: String,
    best_index: usize,
    best_spec: &'a StrategySpec,
    candidates: &'a [CandidateResult],
    test_qini: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrategyOutcome {
    pub name: String,
    pub best_spec: StrategySpec,
    pub validation_qini: f64,
    pub test_qini: f64,
}

/// Runs the full protocol for every configured strategy and writes the
/// report directory. Returns one outcome per strategy in config order.
pub fn run(config: &RunConfig) -> Result<Vec<StrategyOutcome>> {
    if config.strategies.is_empty() {
        return Err(UpliftError::InvalidConfig("no strategies configured".into()));
    }
    config.costs.validate()?;
    let data = load_csv(&config.input, &config.schema)?;
    let split = SplitSpec { seed: config.seed, ..config.split };
    let parts = partition(&data, &split)?;

    let out = &config.output_dir;
    fs::create_dir_all(out).map_err(|e| UpliftError::io(out, e))?;
    write_json(&out.join("summary.json"), &summary_report(&data))?;

    let mut outcomes = Vec::new();
    for entry in &config.strategies {
        let name = entry.name();
        let grid = entry.resolved_grid(config.seed);
        let selection = select_model(&grid, &parts.train, &parts.valid, config.evaluation.bins)?;
        let scores = score(&selection.model, &parts.test)?;
        let eval = evaluate_scores(&scores, &parts.test, &config.evaluation, &config.costs)?;
        let dir = out.join(&name);
        write_evaluation(&dir, &eval)?;
        write_json(
            &dir.join("selection.json"),
            &SelectionReport {
                meta: meta(),
                strategy: name.clone(),
                best_index: selection.best_index,
                best_spec: &selection.best_spec,
                candidates: &selection.candidates,
                test_qini: eval.qini.qini_coefficient,
            },
        )?;
        write_json(&dir.join("model.json"), &ModelDocument::new(selection.model.clone()))?;
        outcomes.push(StrategyOutcome {
            name,
            validation_qini: selection.candidates[selection.best_index].validation_qini.unwrap_or(f64::NAN),
            best_spec: selection.best_spec,
            test_qini: eval.qini.qini_coefficient,
        });
    }
    write_json(&out.join("strategies.json"), &outcomes)?;
    Ok(outcomes)
}

/// Versioned JSON wrapper for a fitted strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub version: u32,
    pub strategy: crate::strategies::FittedStrategy,
}

impl ModelDocument {
    pub const VERSION: u32 = 1;

    pub fn new(strategy: crate::strategies::FittedStrategy) -> Self {
        ModelDocument { version: Self::VERSION, strategy }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        if doc.version != Self::VERSION {
            return Err(UpliftError::InvalidInput(format!("unsupported model document version {}", doc.version)));
        }
        Ok(doc)
    }
}

#[derive(Debug, Parser)]
#[command(name = "revuplift", version, about = "Revenue uplift modeling and campaign evaluation")]
pub struct Cli {
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic campaign as CSV.
    Generate {
        /// Generator spec (JSON).
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Append the oracle `true_uplift` column.
        #[arg(long)]
        with_uplift: bool,
        /// Override the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Descriptive uplift statistics and a chi-squared test, as JSON.
    Summarize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomly partition a CSV into train/valid/test files.
    Split {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Split fractions (JSON `SplitSpec`); defaults to 0.4/0.3/0.3.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Model selection, test evaluation and profit for every configured strategy.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Qini and profit reports for externally produced scores.
    Evaluate {
        #[arg(long)]
        input: PathBuf,
        /// CSV file holding one score per input row.
        #[arg(long)]
        scores: PathBuf,
        #[arg(long, default_value = "score")]
        score_column: String,
        #[arg(long)]
        out_dir: PathBuf,
        /// Evaluation options and costs (JSON with optional `evaluation` and `costs`).
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(default)]
struct EvaluateConfig {
    evaluation: EvaluationOptions,
    costs: CostModel,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| UpliftError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn execute(cli: Cli) -> Result<()> {
    let log = |msg: String| {
        if cli.verbose {
            eprintln!("{msg}");
        }
    };
    match cli.command {
        Command::Generate { spec, out, with_uplift, seed } => {
            let mut spec: GeneratorSpec = read_json(&spec)?;
            if let Some(seed) = seed {
                spec.seed = seed;
            }
            let (data, tau) = generate_with_uplift(&spec)?;
            let extra: Vec<(&str, &[f64])> = if with_uplift {
                vec![(crate::dataset::TRUE_UPLIFT_COLUMN, tau.as_slice())]
            } else {
                vec![]
            };
            write_csv(&data, &extra, create_file(&out)?)?;
            log(format!("wrote {} records to {}", data.len(), out.display()));
        }
        Command::Summarize { input, out } => {
            let data = load_csv(&input, &CsvSchema::default())?;
            let report = summary_report(&data);
            match out {
                Some(path) => write_json(&path, &report)?,
                None => println!("{}", serde_json::to_string_pretty(&report)?),
            }
        }
        Command::Split { input, out_dir, spec, seed } => {
            let mut split: SplitSpec = match spec {
                Some(p) => read_json(&p)?,
                None => SplitSpec::default(),
            };
            if let Some(seed) = seed {
                split.seed = seed;
            }
            let data = load_csv(&input, &CsvSchema::default())?;
            let parts = partition(&data, &split)?;
            fs::create_dir_all(&out_dir).map_err(|e| UpliftError::io(&out_dir, e))?;
            for (name, part) in [("train", &parts.train), ("valid", &parts.valid), ("test", &parts.test)] {
                write_csv(part, &[], create_file(&out_dir.join(format!("{name}.csv")))?)?;
            }
            log(format!(
                "split {} records into {}/{}/{}",
                data.len(),
                parts.train.len(),
                parts.valid.len(),
                parts.test.len()
            ));
        }
        Command::Run { config, seed } => {
            let mut cfg = RunConfig::from_file(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            for o in run(&cfg)? {
                log(format!("{}: {} test Q_r = {:.4}", o.name, o.best_spec.label(), o.test_qini));
            }
        }
        Command::Evaluate { input, scores, score_column, out_dir, config } => {
            let data = load_csv(&input, &CsvSchema::default())?;
            let scores = read_column(&scores, &score_column)?;
            let cfg: EvaluateConfig = match config {
                Some(p) => read_json(&p)?,
                None => EvaluateConfig::default(),
            };
            let eval = evaluate_scores(&scores, &data, &cfg.evaluation, &cfg.costs)?;
            write_evaluation(&out_dir, &eval)?;
            write_json(&out_dir.join("summary.json"), &summary_report(&data))?;
        }
    }
    Ok(())
}

pub fn exit_code(err: &UpliftError) -> i32 {
    match err {
        e if e.is_fit_error() => EXIT_FIT,
        UpliftError::InvalidConfig(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

/// Machine-readable error document printed on failure.
pub fn error_json(err: &UpliftError, code: i32) -> serde_json::Value {
    let path = match err {
        UpliftError::Io { path, .. } => Some(path.display().to_string()),
        _ => None,
    };
    serde_json::json!({
        "error": {
            "message": err.to_string(),
            "exit_code": code,
            "path": path,
        }
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("{}", error_json(&err, code));
            code
        }
    }
}
