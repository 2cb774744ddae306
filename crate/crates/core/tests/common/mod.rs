#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revuplift::synthgen::GeneratorSpec;
use revuplift::{CustomerRecord, UpliftDataset};

/// Random dataset with both groups present and heavy-tailed revenues.
pub fn random_dataset(n: usize, p: usize, seed: u64) -> UpliftDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records: Vec<CustomerRecord> = (0..n)
        .map(|_| {
            let x = (0..p).map(|_| rng.random_range(-3.0..3.0)).collect();
            let t = rng.random_bool(0.6);
            let buys = rng.random_bool(0.3);
            let rev = if buys { (rng.random_range(0.0..5.0f64)).exp() } else { 0.0 };
            CustomerRecord::new(x, t, buys, rev)
        })
        .collect();
    records[0].treatment = true;
    records[1].treatment = false;
    UpliftDataset::from_records(records).unwrap()
}

/// Campaign with a heterogeneous effect driven mostly by the first covariate.
pub fn effect_spec(n: usize, seed: u64) -> GeneratorSpec {
    let mut spec = GeneratorSpec::no_effect(n, 5, seed);
    spec.purchase_weights = vec![0.3, 0.2, 0.0, 0.0, 0.0];
    spec.treatment_purchase_intercept = 0.3;
    spec.treatment_purchase_weights = vec![0.8, 0.0, 0.0, 0.0, 0.0];
    spec.revenue_weights = vec![0.1, 0.0, 0.2, 0.0, 0.0];
    spec.treatment_revenue_intercept = 0.1;
    spec.treatment_revenue_weights = vec![0.3, 0.0, 0.0, 0.0, 0.0];
    spec
}

pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Spearman rank correlation (average ranks for ties).
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let (ma, _) = mean_and_se(&ra);
    let (mb, _) = mean_and_se(&rb);
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

/// Small random fixture (4..=8 records) with at least two records per group.
pub fn small_fixture(seed: u64) -> UpliftDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=8);
    let records = (0..n)
        .map(|i| {
            let t = if i < 4 { i % 2 == 0 } else { rng.random_bool(0.5) };
            let rev = if rng.random_bool(0.6) { rng.random_range(1..50) as f64 } else { 0.0 };
            CustomerRecord::new(vec![], t, rev > 0.0, rev)
        })
        .collect();
    UpliftDataset::from_records(records).unwrap()
}

/// Two-bin Qini computed directly: `(inc_top − inc_bottom) / 2`, or `None`
/// when either bin lacks a group.
pub fn two_bin_qini(ds: &UpliftDataset, top: &[bool]) -> Option<f64> {
    let inc = |want: bool| {
        let (mut st, mut nt, mut sc, mut nc) = (0.0, 0usize, 0.0, 0usize);
        for (r, &t) in ds.records().iter().zip(top) {
            if t != want {
                continue;
            }
            if r.treatment {
                st += r.revenue;
                nt += 1;
            } else {
                sc += r.revenue;
                nc += 1;
            }
        }
        (nt > 0 && nc > 0).then(|| (st / nt as f64 - sc / nc as f64) * (nt + nc) as f64)
    };
    Some((inc(true)? - inc(false)?) / 2.0)
}

/// Every assignment of `ceil(n/2)` records to the top bin, with its Qini.
pub fn enumerate_two_bin(ds: &UpliftDataset) -> Vec<(Vec<bool>, Option<f64>)> {
    let n = ds.len();
    let k = n.div_ceil(2);
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| {
            let top: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            let q = two_bin_qini(ds, &top);
            (top, q)
        })
        .collect()
}
