// Decile table, Qini curve, Qini coefficient and weighted Qini for a small
// hand-checkable ranking, plus the weighted Qini of a published curve row.

use revuplift::dataset::{CustomerRecord, UpliftDataset};
use revuplift::evaluation::{decile_table, qini_coefficient, qini_curve, weighted_qini};

pub fn run_example() -> revuplift::Result<(f64, f64)> {
    let rec = |t: bool, rev: f64| CustomerRecord::new(vec![], t, rev > 0.0, rev);
    let data = UpliftDataset::from_records(vec![
        rec(true, 10.0),
        rec(true, 6.0),
        rec(false, 2.0),
        rec(false, 0.0),
        rec(true, 0.0),
        rec(true, 2.0),
        rec(false, 3.0),
        rec(false, 5.0),
    ])?;
    let scores = [8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0];
    let table = decile_table(&scores, &data, 2)?;
    let curve = qini_curve(&table, false, false);
    let q = qini_coefficient(&curve);
    println!("incremental per bin {:?}", table.incremental());
    println!("cumulative {:?}, random line {:?}, Q_r = {q}", curve.cumulative, curve.baseline);

    let row = [1469.8, 1199.5, 1504.8, 1637.5, 1396.2, 1668.2, 1906.6, 1891.9, 1716.6, 1682.8];
    let w = weighted_qini(&row, false)?;
    println!("weighted Qini {w:.2} (normalized {:.4})", weighted_qini(&row, true)?);
    Ok((q, w))
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
