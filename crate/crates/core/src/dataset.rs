//! Customer records, CSV ingestion, descriptive uplift statistics and
//! randomized train/validation/test partitioning.

use std::collections::HashMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UpliftError};
use crate::learners::DesignMatrix;

/// One session: covariates, treatment assignment, purchase flag and revenue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomerRecord {
    pub covariates: Vec<f64>,
    pub treatment: bool,
    pub conversion: bool,
    pub revenue: f64,
}

impl CustomerRecord {
    pub fn new(covariates: Vec<f64>, treatment: bool, conversion: bool, revenue: f64) -> Self {
        CustomerRecord {
            covariates,
            treatment,
            conversion,
            revenue,
        }
    }

    /// Checks the record-level invariants, returning a human-readable reason on failure.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if !self.revenue.is_finite() || self.revenue < 0.0 {
            return Err(format!("revenue must be a non-negative number, got {}", self.revenue));
        }
        if self.revenue > 0.0 && !self.conversion {
            return Err(format!(
                "revenue {} recorded without conversion",
                self.revenue
            ));
        }
        if let Some(j) = self.covariates.iter().position(|v| !v.is_finite()) {
            return Err(format!("covariate {j} is not finite"));
        }
        Ok(())
    }

    /// Whether the record is a purchaser in the sense used by the target
    /// transformations (strictly positive revenue).
    pub fn is_buyer(&self) -> bool {
        self.revenue > 0.0
    }
}

/// Which observed outcome a transformation or regression works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    #[default]
    Revenue,
    Conversion,
}

impl Outcome {
    pub fn value(self, record: &CustomerRecord) -> f64 {
        match self {
            Outcome::Revenue => record.revenue,
            Outcome::Conversion => f64::from(u8::from(record.conversion)),
        }
    }
}

/// Validated, immutable collection of customer records.
///
/// Record order is significant: downstream ranking breaks score ties by
/// the position of a record in this collection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpliftDataset {
    records: Vec<CustomerRecord>,
    feature_names: Vec<String>,
}

impl UpliftDataset {
    pub fn new(records: Vec<CustomerRecord>, feature_names: Vec<String>) -> Result<Self> {
        let p = feature_names.len();
        for (i, r) in records.iter().enumerate() {
            if r.covariates.len() != p {
                return Err(UpliftError::InvalidRow {
                    row: i,
                    message: format!("expected {p} covariates, got {}", r.covariates.len()),
                });
            }
            r.validate()
                .map_err(|message| UpliftError::InvalidRow { row: i, message })?;
        }
        if !records.iter().any(|r| r.treatment) {
            return Err(UpliftError::EmptyGroup("treatment"));
        }
        if !records.iter().any(|r| !r.treatment) {
            return Err(UpliftError::EmptyGroup("control"));
        }
        Ok(UpliftDataset {
            records,
            feature_names,
        })
    }

    /// Builds a dataset with generated feature names `x0..x{p-1}`.
    pub fn from_records(records: Vec<CustomerRecord>) -> Result<Self> {
        let p = records.first().map_or(0, |r| r.covariates.len());
        Self::new(records, default_feature_names(p))
    }

    pub fn records(&self) -> &[CustomerRecord] {
        &self.records
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn n_treatment(&self) -> usize {
        self.records.iter().filter(|r| r.treatment).count()
    }

    pub fn n_control(&self) -> usize {
        self.len() - self.n_treatment()
    }

    pub fn covariates(&self) -> DesignMatrix {
        DesignMatrix::from_rows(self.records.iter().map(|r| r.covariates.as_slice()), self.n_features())
    }

    pub fn outcomes(&self, outcome: Outcome) -> Vec<f64> {
        self.records.iter().map(|r| outcome.value(r)).collect()
    }

    pub fn revenues(&self) -> Vec<f64> {
        self.outcomes(Outcome::Revenue)
    }

    /// Records at `indices` (in the given order), re-validated.
    pub fn subset(&self, indices: &[usize]) -> Result<UpliftDataset> {
        let records = indices.iter().map(|&i| self.records[i].clone()).collect();
        UpliftDataset::new(records, self.feature_names.clone())
    }

    /// Concatenation of `self` followed by `other`.
    pub fn concat(&self, other: &UpliftDataset) -> Result<UpliftDataset> {
        if self.feature_names != other.feature_names {
            return Err(UpliftError::InvalidInput(
                "cannot concatenate datasets with different features".into(),
            ));
        }
        let mut records = self.records.clone();
        records.extend(other.records.iter().cloned());
        UpliftDataset::new(records, self.feature_names.clone())
    }
}

pub(crate) fn default_feature_names(p: usize) -> Vec<String> {
    (0..p).map(|j| format!("x{j}")).collect()
}

/// Column mapping for [`load_csv`].
///
/// Every column not named here and not listed in `ignore` is read as a
/// numeric covariate, in header order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CsvSchema {
    pub treatment: String,
    pub conversion: String,
    pub revenue: String,
    pub ignore: Vec<String>,
}

impl Default for CsvSchema {
    fn default() -> Self {
        CsvSchema {
            treatment: "treatment".into(),
            conversion: "conversion".into(),
            revenue: "revenue".into(),
            ignore: vec![TRUE_UPLIFT_COLUMN.into()],
        }
    }
}

/// Name of the optional oracle column written by the synthetic generator.
pub const TRUE_UPLIFT_COLUMN: &str = "true_uplift";

fn parse_flag(raw: &str, column: &str, row: usize) -> Result<bool> {
    match raw.trim().parse::<f64>() {
        Ok(0.0) => Ok(false),
        Ok(1.0) => Ok(true),
        _ => Err(UpliftError::InvalidRow {
            row,
            message: format!("column `{column}` must be 0 or 1, got `{raw}`"),
        }),
    }
}

fn parse_number(raw: &str, column: &str, row: usize) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| UpliftError::InvalidRow {
            row,
            message: format!("column `{column}` is not a finite number: `{raw}`"),
        })
}

/// Reads a dataset from a comma-separated file with a header row.
///
/// Row numbers in errors are 1-based data rows (the header is not counted).
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<UpliftDataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| UpliftError::io(path, e))?;
    read_csv(file, schema)
}

/// Same as [`load_csv`] over any reader.
pub fn read_csv<R: std::io::Read>(reader: R, schema: &CsvSchema) -> Result<UpliftDataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let position = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| UpliftError::MissingColumn(name.to_string()))
    };
    let t_col = position(&schema.treatment)?;
    let c_col = position(&schema.conversion)?;
    let r_col = position(&schema.revenue)?;
    let covariate_cols: Vec<usize> = (0..headers.len())
        .filter(|&j| j != t_col && j != c_col && j != r_col && !schema.ignore.contains(&headers[j]))
        .collect();
    let feature_names = covariate_cols.iter().map(|&j| headers[j].clone()).collect();

    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 1;
        let treatment = parse_flag(&row[t_col], &schema.treatment, line)?;
        let conversion = parse_flag(&row[c_col], &schema.conversion, line)?;
        let revenue = parse_number(&row[r_col], &schema.revenue, line)?;
        let covariates = covariate_cols
            .iter()
            .map(|&j| parse_number(&row[j], &headers[j], line))
            .collect::<Result<Vec<_>>>()?;
        let record = CustomerRecord::new(covariates, treatment, conversion, revenue);
        record
            .validate()
            .map_err(|message| UpliftError::InvalidRow { row: line, message })?;
        records.push(record);
    }
    UpliftDataset::new(records, feature_names)
}

/// Reads one named numeric column from a CSV file.
pub fn read_column(path: impl AsRef<Path>, column: &str) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| UpliftError::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let idx = rdr
        .headers()?
        .iter()
        .position(|h| h.trim() == column)
        .ok_or_else(|| UpliftError::MissingColumn(column.to_string()))?;
    rdr.records()
        .enumerate()
        .map(|(i, row)| parse_number(&row?[idx], column, i + 1))
        .collect()
}

/// Writes the dataset in the standard schema. Extra columns (for example a
/// transformed target or the generator's true uplift) are appended in order.
pub fn write_csv<W: Write>(
    dataset: &UpliftDataset,
    extra: &[(&str, &[f64])],
    writer: W,
) -> Result<()> {
    for (name, values) in extra {
        if values.len() != dataset.len() {
            return Err(UpliftError::InvalidInput(format!(
                "extra column `{name}` has {} values for {} records",
                values.len(),
                dataset.len()
            )));
        }
    }
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = dataset.feature_names.iter().map(String::as_str).collect();
    header.extend(["treatment", "conversion", "revenue"]);
    header.extend(extra.iter().map(|(n, _)| *n));
    w.write_record(&header)?;
    for (i, r) in dataset.records.iter().enumerate() {
        let mut row: Vec<String> = r.covariates.iter().map(|v| v.to_string()).collect();
        row.push(u8::from(r.treatment).to_string());
        row.push(u8::from(r.conversion).to_string());
        row.push(r.revenue.to_string());
        row.extend(extra.iter().map(|(_, v)| v[i].to_string()));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| UpliftError::io("<csv writer>", e))?;
    Ok(())
}

/// Fractions of treatment and control customers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupShares {
    pub q_t: f64,
    pub q_c: f64,
    pub n_t: usize,
    pub n_c: usize,
    pub n: usize,
}

impl GroupShares {
    pub fn from_counts(n_t: usize, n_c: usize) -> Result<Self> {
        if n_t == 0 {
            return Err(UpliftError::EmptyGroup("treatment"));
        }
        if n_c == 0 {
            return Err(UpliftError::EmptyGroup("control"));
        }
        let n = n_t + n_c;
        Ok(GroupShares {
            q_t: n_t as f64 / n as f64,
            q_c: n_c as f64 / n as f64,
            n_t,
            n_c,
            n,
        })
    }
}

pub fn group_shares(dataset: &UpliftDataset) -> GroupShares {
    GroupShares::from_counts(dataset.n_treatment(), dataset.n_control())
        .expect("dataset invariants guarantee both groups")
}

/// Descriptive statistics for one experimental group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    pub sessions: u64,
    pub purchasers: u64,
    pub conversion_rate: f64,
    pub revenue_total: f64,
    pub revenue_per_person: f64,
}

impl GroupStats {
    pub fn from_counts(sessions: u64, purchasers: u64, revenue_total: f64) -> Result<Self> {
        if sessions == 0 {
            return Err(UpliftError::InvalidInput("group has no sessions".into()));
        }
        if purchasers > sessions {
            return Err(UpliftError::InvalidInput(format!(
                "{purchasers} purchasers exceed {sessions} sessions"
            )));
        }
        Ok(GroupStats {
            sessions,
            purchasers,
            conversion_rate: purchasers as f64 / sessions as f64,
            revenue_total,
            revenue_per_person: revenue_total / sessions as f64,
        })
    }
}

/// Treatment-versus-control comparison of conversion and revenue.
///
/// Rates and uplifts are fractions; use the `_pp` accessors for percentage points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpliftSummary {
    pub treatment: GroupStats,
    pub control: GroupStats,
    pub conversion_uplift: f64,
    pub revenue_uplift: f64,
}

impl UpliftSummary {
    pub fn from_groups(treatment: GroupStats, control: GroupStats) -> Self {
        UpliftSummary {
            treatment,
            control,
            conversion_uplift: treatment.conversion_rate - control.conversion_rate,
            revenue_uplift: treatment.revenue_per_person - control.revenue_per_person,
        }
    }

    pub fn conversion_uplift_pp(&self) -> f64 {
        100.0 * self.conversion_uplift
    }

    pub fn total_purchasers(&self) -> u64 {
        self.treatment.purchasers + self.control.purchasers
    }
}

pub fn summarize(dataset: &UpliftDataset) -> UpliftSummary {
    let mut acc: HashMap<bool, (u64, u64, f64)> = HashMap::new();
    for r in dataset.records() {
        let e = acc.entry(r.treatment).or_default();
        e.0 += 1;
        e.1 += u64::from(r.conversion);
        e.2 += r.revenue;
    }
    let stats = |key: bool| {
        let (s, p, rev) = acc[&key];
        GroupStats::from_counts(s, p, rev).expect("non-empty group")
    };
    UpliftSummary::from_groups(stats(true), stats(false))
}

/// Fractions for [`partition`]. Rows left over after flooring go to training.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_frac: f64,
    pub valid_frac: f64,
    pub test_frac: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_frac: 0.4,
            valid_frac: 0.3,
            test_frac: 0.3,
            seed: 0,
        }
    }
}

impl SplitSpec {
    pub fn with_seed(seed: u64) -> Self {
        SplitSpec {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fr = [self.train_frac, self.valid_frac, self.test_frac];
        if fr.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
            return Err(UpliftError::InvalidConfig(
                "split fractions must be positive".into(),
            ));
        }
        if (fr.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(UpliftError::InvalidConfig(
                "split fractions must sum to 1".into(),
            ));
        }
        Ok(())
    }
}

/// Index sets of a three-way partition, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionIndices {
    pub train: Vec<usize>,
    pub valid: Vec<usize>,
    pub test: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub train: UpliftDataset,
    pub valid: UpliftDataset,
    pub test: UpliftDataset,
}

/// Seeded uniform permutation of `0..n` cut into train/valid/test.
pub fn partition_indices(n: usize, spec: &SplitSpec) -> Result<PartitionIndices> {
    spec.validate()?;
    if n < 3 {
        return Err(UpliftError::InvalidInput(format!(
            "need at least 3 records to partition, got {n}"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut crate::rng::stream(spec.seed, crate::rng::SPLIT));
    let n_valid = (spec.valid_frac * n as f64).floor() as usize;
    let n_test = (spec.test_frac * n as f64).floor() as usize;
    let n_train = n - n_valid - n_test;
    let take = |range: std::ops::Range<usize>| {
        let mut v = perm[range].to_vec();
        v.sort_unstable();
        v
    };
    Ok(PartitionIndices {
        train: take(0..n_train),
        valid: take(n_train..n_train + n_valid),
        test: take(n_train + n_valid..n),
    })
}

pub fn partition(dataset: &UpliftDataset, spec: &SplitSpec) -> Result<Partition> {
    let idx = partition_indices(dataset.len(), spec)?;
    let build = |name: &'static str, indices: &[usize]| {
        dataset.subset(indices).map_err(|e| match e {
            UpliftError::EmptyGroup(group) => UpliftError::DegenerateSplit { split: name, group },
            other => other,
        })
    };
    Ok(Partition {
        train: build("train", &idx.train)?,
        valid: build("valid", &idx.valid)?,
        test: build("test", &idx.test)?,
    })
}
