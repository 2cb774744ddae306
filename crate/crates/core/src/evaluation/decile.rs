use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dataset::{Outcome, UpliftDataset};
use crate::error::{Result, UpliftError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecileBin {
    pub n_treatment: usize,
    pub n_control: usize,
    pub outcome_treatment: f64,
    pub outcome_control: f64,
    pub mean_treatment: f64,
    pub mean_control: f64,
    pub conversions_treatment: usize,
    pub conversions_control: usize,
    /// `(mean_treatment − mean_control) · (n_treatment + n_control)`.
    pub incremental: f64,
}

impl DecileBin {
    pub fn size(&self) -> usize {
        self.n_treatment + self.n_control
    }
}

/// Score-ranked bins of the scored population, best scores first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecileTable {
    pub bins: Vec<DecileBin>,
    pub outcome: Outcome,
    pub n: usize,
}

/// Record indices sorted by descending score, ties by ascending index.
pub fn ranking(scores: &[f64]) -> Result<Vec<usize>> {
    if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
        return Err(UpliftError::InvalidInput(format!("score {i} is not finite")));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    Ok(order)
}

/// Sizes of `bins` near-equal groups; the first `n mod bins` get one extra.
pub fn bin_sizes(n: usize, bins: usize) -> Vec<usize> {
    let base = n / bins;
    let extra = n % bins;
    (0..bins).map(|d| base + usize::from(d < extra)).collect()
}

pub fn decile_table(scores: &[f64], data: &UpliftDataset, bins: usize) -> Result<DecileTable> {
    decile_table_for(scores, data, bins, Outcome::Revenue)
}

pub fn decile_table_for(
    scores: &[f64],
    data: &UpliftDataset,
    bins: usize,
    outcome: Outcome,
) -> Result<DecileTable> {
    if scores.len() != data.len() {
        return Err(UpliftError::DimensionMismatch { expected: data.len(), got: scores.len() });
    }
    if bins < 2 {
        return Err(UpliftError::InvalidConfig("at least 2 bins are required".into()));
    }
    if bins > data.len() {
        return Err(UpliftError::InvalidConfig(format!(
            "{bins} bins for only {} records",
            data.len()
        )));
    }
    let order = ranking(scores)?;
    let records = data.records();
    let mut out = Vec::with_capacity(bins);
    let mut start = 0;
    for (d, size) in bin_sizes(data.len(), bins).into_iter().enumerate() {
        let (mut nt, mut nc, mut yt, mut yc, mut ct, mut cc) = (0, 0, 0.0, 0.0, 0, 0);
        for &i in &order[start..start + size] {
            let r = &records[i];
            let y = outcome.value(r);
            if r.treatment {
                nt += 1;
                yt += y;
                ct += usize::from(r.conversion);
            } else {
                nc += 1;
                yc += y;
                cc += usize::from(r.conversion);
            }
        }
        start += size;
        if nt == 0 {
            return Err(UpliftError::EmptyBin { bin: d + 1, group: "treatment" });
        }
        if nc == 0 {
            return Err(UpliftError::EmptyBin { bin: d + 1, group: "control" });
        }
        let mean_t = yt / nt as f64;
        let mean_c = yc / nc as f64;
        out.push(DecileBin {
            n_treatment: nt,
            n_control: nc,
            outcome_treatment: yt,
            outcome_control: yc,
            mean_treatment: mean_t,
            mean_control: mean_c,
            conversions_treatment: ct,
            conversions_control: cc,
            incremental: (mean_t - mean_c) * (nt + nc) as f64,
        });
    }
    Ok(DecileTable { bins: out, outcome, n: data.len() })
}

impl DecileTable {
    pub fn incremental(&self) -> Vec<f64> {
        self.bins.iter().map(|b| b.incremental).collect()
    }

    /// One row per bin with full-precision numbers.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "bin",
            "n_treatment",
            "n_control",
            "outcome_treatment",
            "outcome_control",
            "mean_treatment",
            "mean_control",
            "conversions_treatment",
            "conversions_control",
            "incremental",
        ])?;
        for (d, b) in self.bins.iter().enumerate() {
            w.write_record([
                (d + 1).to_string(),
                b.n_treatment.to_string(),
                b.n_control.to_string(),
                b.outcome_treatment.to_string(),
                b.outcome_control.to_string(),
                b.mean_treatment.to_string(),
                b.mean_control.to_string(),
                b.conversions_treatment.to_string(),
                b.conversions_control.to_string(),
                b.incremental.to_string(),
            ])?;
        }
        w.flush().map_err(|e| UpliftError::io("<csv writer>", e))?;
        Ok(())
    }
}
