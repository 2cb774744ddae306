use serde::{Deserialize, Serialize};

use crate::error::{Result, UpliftError};

/// Dense row-major matrix of covariates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignMatrix {
    data: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
}

impl DesignMatrix {
    pub fn new(data: Vec<f64>, n_rows: usize, n_cols: usize) -> Result<Self> {
        if data.len() != n_rows * n_cols {
            return Err(UpliftError::DimensionMismatch {
                expected: n_rows * n_cols,
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(UpliftError::InvalidInput("design matrix has non-finite entries".into()));
        }
        Ok(DesignMatrix { data, n_rows, n_cols })
    }

    /// Builds from row slices, all of which must have length `n_cols`.
    pub fn from_rows<'a>(rows: impl IntoIterator<Item = &'a [f64]>, n_cols: usize) -> Self {
        let mut data = Vec::new();
        let mut n_rows = 0;
        for row in rows {
            assert_eq!(row.len(), n_cols, "ragged rows");
            data.extend_from_slice(row);
            n_rows += 1;
        }
        DesignMatrix { data, n_rows, n_cols }
    }

    pub fn from_vecs(rows: &[Vec<f64>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(UpliftError::DimensionMismatch {
                expected: n_cols,
                got: bad.len(),
            });
        }
        Self::new(rows.concat(), rows.len(), n_cols)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        // chunks_exact panics on a zero chunk size
        (0..self.n_rows).map(move |i| self.row(i))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_cols + j]
    }

    pub fn select_rows(&self, indices: &[usize]) -> DesignMatrix {
        DesignMatrix::from_rows(indices.iter().map(|&i| self.row(i)), self.n_cols)
    }

    pub fn push_row(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.n_cols);
        self.data.extend_from_slice(row);
        self.n_rows += 1;
    }

    pub(crate) fn check_cols(&self, expected: usize) -> Result<()> {
        if self.n_cols != expected {
            return Err(UpliftError::DimensionMismatch {
                expected,
                got: self.n_cols,
            });
        }
        Ok(())
    }
}

/// Per-column centering and scaling learned on training rows.
///
/// Constant columns keep scale 1 so they map to zero rather than NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub scales: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &DesignMatrix) -> Self {
        let n = x.n_rows().max(1) as f64;
        let m = x.n_cols();
        let mut means = vec![0.0; m];
        for row in x.rows() {
            for (mu, v) in means.iter_mut().zip(row) {
                *mu += v;
            }
        }
        means.iter_mut().for_each(|mu| *mu /= n);
        let mut vars = vec![0.0; m];
        for row in x.rows() {
            for ((s, v), mu) in vars.iter_mut().zip(row).zip(&means) {
                *s += (v - mu) * (v - mu);
            }
        }
        let scales = vars
            .into_iter()
            .map(|s| {
                let sd = (s / n).sqrt();
                if sd > 1e-12 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { means, scales }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(&self.means)
            .zip(&self.scales)
            .map(|((v, mu), s)| (v - mu) / s)
            .collect()
    }

    pub fn transform(&self, x: &DesignMatrix) -> DesignMatrix {
        let data = x.rows().flat_map(|r| self.transform_row(r)).collect();
        DesignMatrix {
            data,
            n_rows: x.n_rows(),
            n_cols: x.n_cols(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardizer_centers_and_scales() {
        let x = DesignMatrix::from_vecs(&[vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        let s = Standardizer::fit(&x);
        assert_eq!(s.means, vec![2.0, 5.0]);
        assert_eq!(s.scales, vec![1.0, 1.0]);
        let z = s.transform(&x);
        assert_eq!(z.row(0), &[-1.0, 0.0]);
        assert_eq!(z.row(1), &[1.0, 0.0]);
    }

    #[test]
    fn rejects_ragged_and_non_finite() {
        assert!(DesignMatrix::from_vecs(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(DesignMatrix::new(vec![f64::NAN], 1, 1).is_err());
    }
}
