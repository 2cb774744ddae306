//! Extremely randomized trees.
//!
//! Every tree sees the full training sample. At each node a random subset
//! of features is drawn, a handful of uniform cut points per feature are
//! tried between the node-local minimum and maximum, and the best cut by
//! impurity decrease wins. Each tree owns a ChaCha stream derived from the
//! master seed, so results do not depend on how trees are scheduled.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::DesignMatrix;
use crate::error::{Result, UpliftError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeTask {
    #[default]
    Regression,
    Classification,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxFeatures {
    #[default]
    Sqrt,
    All,
    Count(usize),
}

impl MaxFeatures {
    fn resolve(self, m: usize) -> Result<usize> {
        let k = match self {
            MaxFeatures::Sqrt => ((m as f64).sqrt().round() as usize).max(1),
            MaxFeatures::All => m,
            MaxFeatures::Count(k) => k,
        };
        if k == 0 || k > m {
            return Err(UpliftError::InvalidConfig(format!(
                "max_features {k} not in 1..={m}"
            )));
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ErtConfig {
    pub n_trees: usize,
    pub max_features: MaxFeatures,
    pub min_samples_leaf: usize,
    pub n_random_cuts: usize,
    pub seed: u64,
}

impl Default for ErtConfig {
    fn default() -> Self {
        ErtConfig {
            n_trees: 100,
            max_features: MaxFeatures::Sqrt,
            min_samples_leaf: 20,
            n_random_cuts: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
        n_samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Split { feature, threshold, left, right } => {
                    i = if row[*feature] <= *threshold { *left } else { *right };
                }
                Node::Leaf { value, .. } => return *value,
            }
        }
    }

    pub fn leaves(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.nodes.iter().filter_map(|n| match n {
            Node::Leaf { value, n_samples } => Some((*value, *n_samples)),
            Node::Split { .. } => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErtEnsemble {
    pub trees: Vec<Tree>,
    pub config: ErtConfig,
    pub task: TreeTask,
    pub n_features: usize,
}

impl ErtEnsemble {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.predict_row(row)).sum::<f64>() / self.trees.len() as f64
    }

    pub fn predict(&self, x: &DesignMatrix) -> Result<Vec<f64>> {
        x.check_cols(self.n_features)?;
        Ok(x.rows().map(|r| self.predict_row(r)).collect())
    }
}

pub fn fit_ert(x: &DesignMatrix, y: &[f64], task: TreeTask, config: ErtConfig) -> Result<ErtEnsemble> {
    let n = x.n_rows();
    if y.len() != n {
        return Err(UpliftError::DimensionMismatch { expected: n, got: y.len() });
    }
    if config.n_trees == 0 || config.n_random_cuts == 0 || config.min_samples_leaf == 0 {
        return Err(UpliftError::InvalidConfig(
            "n_trees, n_random_cuts and min_samples_leaf must be positive".into(),
        ));
    }
    let max_features = config.max_features.resolve(x.n_cols())?;
    if n < config.min_samples_leaf {
        return Err(UpliftError::Fit(format!(
            "{n} rows cannot fill a leaf of {}",
            config.min_samples_leaf
        )));
    }
    if task == TreeTask::Classification && y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(UpliftError::InvalidInput("classification labels must be 0 or 1".into()));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(UpliftError::InvalidInput("non-finite tree target".into()));
    }

    let trees = (0..config.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = crate::rng::stream(config.seed, crate::rng::TREES + t as u64);
            TreeBuilder { x, y, task, config, max_features }.build(&mut rng)
        })
        .collect();

    Ok(ErtEnsemble {
        trees,
        config,
        task,
        n_features: x.n_cols(),
    })
}

struct TreeBuilder<'a> {
    x: &'a DesignMatrix,
    y: &'a [f64],
    task: TreeTask,
    config: ErtConfig,
    max_features: usize,
}

/// Impurity of a node summarized by count and target sum (and sum of squares).
fn impurity(task: TreeTask, n: f64, sum: f64, sum_sq: f64) -> f64 {
    match task {
        // total squared error
        TreeTask::Regression => sum_sq - sum * sum / n,
        // n · Gini, with p the class-1 fraction
        TreeTask::Classification => {
            let p = sum / n;
            2.0 * n * p * (1.0 - p)
        }
    }
}

impl TreeBuilder<'_> {
    fn build(&self, rng: &mut ChaCha8Rng) -> Tree {
        let mut nodes = vec![Node::Leaf { value: 0.0, n_samples: 0 }];
        let mut indices: Vec<usize> = (0..self.x.n_rows()).collect();
        // (node slot, start, end) ranges into `indices`
        let mut stack = vec![(0usize, 0usize, indices.len())];
        let mut features: Vec<usize> = (0..self.x.n_cols()).collect();

        while let Some((slot, start, end)) = stack.pop() {
            let rows = &mut indices[start..end];
            let count = rows.len();
            let (sum, sum_sq) = rows
                .iter()
                .fold((0.0, 0.0), |(s, q), &i| (s + self.y[i], q + self.y[i] * self.y[i]));
            let leaf = Node::Leaf { value: sum / count as f64, n_samples: count };
            let parent_impurity = impurity(self.task, count as f64, sum, sum_sq);

            if count < 2 * self.config.min_samples_leaf || parent_impurity <= 1e-12 * sum_sq.max(1.0) {
                nodes[slot] = leaf;
                continue;
            }

            match self.best_split(rows, &mut features, rng, parent_impurity) {
                Some((feature, threshold)) => {
                    // stable in-place partition: left block first
                    let mut left: Vec<usize> = Vec::with_capacity(count);
                    let mut right: Vec<usize> = Vec::with_capacity(count);
                    for &i in rows.iter() {
                        if self.x.get(i, feature) <= threshold {
                            left.push(i);
                        } else {
                            right.push(i);
                        }
                    }
                    let n_left = left.len();
                    rows[..n_left].copy_from_slice(&left);
                    rows[n_left..].copy_from_slice(&right);

                    let left_slot = nodes.len();
                    nodes.push(Node::Leaf { value: 0.0, n_samples: 0 });
                    let right_slot = nodes.len();
                    nodes.push(Node::Leaf { value: 0.0, n_samples: 0 });
                    nodes[slot] = Node::Split { feature, threshold, left: left_slot, right: right_slot };
                    stack.push((right_slot, start + n_left, end));
                    stack.push((left_slot, start, start + n_left));
                }
                None => nodes[slot] = leaf,
            }
        }
        Tree { nodes }
    }

    fn best_split(
        &self,
        rows: &[usize],
        features: &mut [usize],
        rng: &mut ChaCha8Rng,
        parent_impurity: f64,
    ) -> Option<(usize, f64)> {
        features.shuffle(rng);
        let min_leaf = self.config.min_samples_leaf;
        let mut best: Option<(f64, usize, f64)> = None;
        let mut visited = 0;
        for &f in features.iter() {
            if visited == self.max_features {
                break;
            }
            let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                let v = self.x.get(i, f);
                (lo.min(v), hi.max(v))
            });
            if hi <= lo {
                continue;
            }
            visited += 1;
            for _ in 0..self.config.n_random_cuts {
                let threshold = rng.random_range(lo..hi);
                let (mut nl, mut sl, mut ql) = (0usize, 0.0, 0.0);
                let (mut sr, mut qr) = (0.0, 0.0);
                for &i in rows {
                    let yi = self.y[i];
                    if self.x.get(i, f) <= threshold {
                        nl += 1;
                        sl += yi;
                        ql += yi * yi;
                    } else {
                        sr += yi;
                        qr += yi * yi;
                    }
                }
                let nr = rows.len() - nl;
                if nl < min_leaf || nr < min_leaf {
                    continue;
                }
                let child = impurity(self.task, nl as f64, sl, ql) + impurity(self.task, nr as f64, sr, qr);
                let gain = parent_impurity - child;
                if gain > 0.0 && best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, f, threshold));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(n: usize) -> (DesignMatrix, Vec<f64>) {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64, ((i * 13) % 7) as f64]).collect();
        let y = rows.iter().map(|r| if r[0] > n as f64 / 2.0 { 5.0 } else { 1.0 } + 0.1 * r[1]).collect();
        (DesignMatrix::from_vecs(&rows).unwrap(), y)
    }

    #[test]
    fn constant_target_predicts_constant() {
        let (x, _) = toy(60);
        let y = vec![3.25; 60];
        let cfg = ErtConfig { n_trees: 5, min_samples_leaf: 2, ..Default::default() };
        let m = fit_ert(&x, &y, TreeTask::Regression, cfg).unwrap();
        assert!(m.predict(&x).unwrap().iter().all(|&p| p == 3.25));
    }

    #[test]
    fn predictions_stay_within_target_range() {
        let (x, y) = toy(100);
        let cfg = ErtConfig { n_trees: 10, min_samples_leaf: 3, max_features: MaxFeatures::All, ..Default::default() };
        let m = fit_ert(&x, &y, TreeTask::Regression, cfg).unwrap();
        let lo = y.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let probe = DesignMatrix::from_vecs(&[vec![-100.0, 0.0], vec![1e6, 9.0], vec![50.0, 3.0]]).unwrap();
        for p in m.predict(&x).unwrap().into_iter().chain(m.predict(&probe).unwrap()) {
            assert!(p >= lo - 1e-12 && p <= hi + 1e-12);
        }
    }

    #[test]
    fn root_only_tree_predicts_mean() {
        let (x, y) = toy(30);
        let mean = y.iter().sum::<f64>() / 30.0;
        let cfg = ErtConfig { n_trees: 1, min_samples_leaf: 30, ..Default::default() };
        let m = fit_ert(&x, &y, TreeTask::Regression, cfg).unwrap();
        assert_eq!(m.trees[0].nodes.len(), 1);
        assert!((m.predict_row(&[1.0, 2.0]) - mean).abs() < 1e-12);
    }

    #[test]
    fn leaves_respect_minimum_size() {
        let (x, y) = toy(200);
        let cfg = ErtConfig { n_trees: 8, min_samples_leaf: 7, max_features: MaxFeatures::All, ..Default::default() };
        let m = fit_ert(&x, &y, TreeTask::Regression, cfg).unwrap();
        for t in &m.trees {
            assert!(t.nodes.len() > 1);
            let total: usize = t.leaves().map(|(_, n)| n).sum();
            assert_eq!(total, 200);
            assert!(t.leaves().all(|(_, n)| n >= 7));
        }
    }

    #[test]
    fn classification_outputs_fractions() {
        let (x, y) = toy(80);
        let labels: Vec<f64> = y.iter().map(|&v| f64::from(u8::from(v > 3.0))).collect();
        let cfg = ErtConfig { n_trees: 20, min_samples_leaf: 5, ..Default::default() };
        let m = fit_ert(&x, &labels, TreeTask::Classification, cfg).unwrap();
        let p = m.predict(&x).unwrap();
        assert!(p.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert!(p[79] > 0.5 && p[0] < 0.5);
    }

    #[test]
    fn rejects_too_many_features() {
        let (x, y) = toy(20);
        let cfg = ErtConfig { max_features: MaxFeatures::Count(3), ..Default::default() };
        assert!(matches!(
            fit_ert(&x, &y, TreeTask::Regression, cfg),
            Err(UpliftError::InvalidConfig(_))
        ));
    }
}
