//! Incremental campaign profit: incremental revenue of the targeted
//! customers minus contact costs and the discount handed to treated buyers.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::decile::DecileTable;
use crate::error::{Result, UpliftError};

/// Per-campaign cost parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CostModel {
    /// Relative discount ρ granted on a responder's basket.
    pub discount: f64,
    /// Cost of contacting one customer.
    pub contact_cost: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel { discount: 0.1, contact_cost: 0.0 }
    }
}

impl CostModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.discount >= 0.0 && self.discount < 1.0) {
            return Err(UpliftError::InvalidConfig(format!(
                "discount must lie in [0, 1), got {}",
                self.discount
            )));
        }
        if !(self.contact_cost.is_finite() && self.contact_cost >= 0.0) {
            return Err(UpliftError::InvalidConfig("contact cost must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfitInputs {
    /// Targeted (treated) customers N_τ.
    pub n_treatment: f64,
    /// Matched control customers N_ζ.
    pub n_control: f64,
    pub response_treatment: f64,
    pub response_control: f64,
    /// Mean revenue per responder.
    pub basket_treatment: f64,
    pub basket_control: f64,
    pub costs: CostModel,
    /// Sum of treated responders' basket values; defaults to `N_τ·π_τ·δ_τ`.
    pub responder_basket_sum: Option<f64>,
}

impl ProfitInputs {
    /// Single-customer form: each side is one person with response 1 and the
    /// given average spend.
    pub fn per_person(spend_treatment: f64, spend_control: f64, costs: CostModel) -> Self {
        ProfitInputs {
            n_treatment: 1.0,
            n_control: 1.0,
            response_treatment: 1.0,
            response_control: 1.0,
            basket_treatment: spend_treatment,
            basket_control: spend_control,
            costs,
            responder_basket_sum: None,
        }
    }

    fn validate(&self) -> Result<()> {
        self.costs.validate()?;
        for (name, p) in [("treatment", self.response_treatment), ("control", self.response_control)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(UpliftError::InvalidInput(format!("{name} response rate {p} outside [0, 1]")));
            }
        }
        if self.basket_treatment < 0.0 || self.basket_control < 0.0 {
            return Err(UpliftError::InvalidInput("basket values must be >= 0".into()));
        }
        if self.n_treatment < 0.0 || self.n_control < 0.0 {
            return Err(UpliftError::InvalidInput("group sizes must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfitComponents {
    pub incremental_revenue: f64,
    pub contact_cost: f64,
    pub incentive_cost: f64,
    pub profit: f64,
}

impl ProfitComponents {
    fn new(incremental_revenue: f64, contact_cost: f64, incentive_cost: f64) -> Self {
        ProfitComponents {
            incremental_revenue,
            contact_cost,
            incentive_cost,
            profit: incremental_revenue - contact_cost - incentive_cost,
        }
    }
}

/// Evaluates the profit decomposition for one targeted group. The control
/// term is rescaled by `N_τ / N_ζ` so both sides describe populations of the
/// same size.
pub fn campaign_profit(inputs: &ProfitInputs) -> Result<ProfitComponents> {
    inputs.validate()?;
    let treated = inputs.n_treatment * inputs.response_treatment * inputs.basket_treatment;
    let control = if inputs.n_control > 0.0 {
        inputs.n_control * inputs.response_control * inputs.basket_control * (inputs.n_treatment / inputs.n_control)
    } else {
        0.0
    };
    let contact = inputs.n_treatment * inputs.costs.contact_cost;
    let incentive = inputs.costs.discount * inputs.responder_basket_sum.unwrap_or(treated);
    Ok(ProfitComponents::new(treated - control, contact, incentive))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfitRow {
    /// Number of top bins targeted.
    pub depth: usize,
    pub targeted: usize,
    #[serde(flatten)]
    pub components: ProfitComponents,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfitReport {
    pub costs: CostModel,
    pub rows: Vec<ProfitRow>,
}

/// Cumulative profit when targeting the top `d` bins, for every `d`.
///
/// Each bin contributes as if all of its customers were contacted: its
/// treated members estimate the treated response and basket, its control
/// members the untreated ones. With zero costs the last row equals the
/// endpoint of the (unnormalized) Qini curve.
pub fn profit_report(table: &DecileTable, costs: &CostModel) -> Result<ProfitReport> {
    costs.validate()?;
    let mut rows = Vec::with_capacity(table.bins.len());
    let (mut inc, mut contact, mut incentive, mut targeted) = (0.0, 0.0, 0.0, 0);
    for (d, bin) in table.bins.iter().enumerate() {
        let size = bin.size() as f64;
        let rate = |conv: usize, n: usize| conv as f64 / n as f64;
        let basket = |total: f64, conv: usize| if conv > 0 { total / conv as f64 } else { 0.0 };
        let inputs = ProfitInputs {
            n_treatment: size,
            n_control: bin.n_control as f64,
            response_treatment: rate(bin.conversions_treatment, bin.n_treatment),
            response_control: rate(bin.conversions_control, bin.n_control),
            basket_treatment: basket(bin.outcome_treatment, bin.conversions_treatment),
            basket_control: basket(bin.outcome_control, bin.conversions_control),
            costs: *costs,
            responder_basket_sum: None,
        };
        let c = campaign_profit(&inputs)?;
        inc += c.incremental_revenue;
        contact += c.contact_cost;
        incentive += c.incentive_cost;
        targeted += bin.size();
        rows.push(ProfitRow {
            depth: d + 1,
            targeted,
            components: ProfitComponents::new(inc, contact, incentive),
        });
    }
    Ok(ProfitReport { costs: *costs, rows })
}

impl ProfitReport {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["depth", "targeted", "incremental_revenue", "contact_cost", "incentive_cost", "profit"])?;
        for r in &self.rows {
            let c = &r.components;
            w.write_record([
                r.depth.to_string(),
                r.targeted.to_string(),
                c.incremental_revenue.to_string(),
                c.contact_cost.to_string(),
                c.incentive_cost.to_string(),
                c.profit.to_string(),
            ])?;
        }
        w.flush().map_err(|e| UpliftError::io("<csv writer>", e))?;
        Ok(())
    }
}
