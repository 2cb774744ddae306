// The revenue target transformations on a tiny hand-made campaign: the
// share-weighted signed target, its discretized version and the
// interaction design.

use revuplift::dataset::{CustomerRecord, Outcome, UpliftDataset};
use revuplift::transforms::{crvtw, itm_augment, rdt};

pub fn run_example() -> revuplift::Result<Vec<f64>> {
    let data = UpliftDataset::from_records(vec![
        CustomerRecord::new(vec![1.0], true, true, 30.0),
        CustomerRecord::new(vec![2.0], true, false, 0.0),
        CustomerRecord::new(vec![3.0], true, true, 12.0),
        CustomerRecord::new(vec![4.0], false, true, 20.0),
    ])?;
    let z = crvtw(&data, Outcome::Revenue);
    let labels = rdt(&data);
    let design = itm_augment(&data, None);
    println!("weighted target   {:?}", z.values);
    println!("discretized       {:?}", labels.values);
    println!("interaction cols  {:?}", design.column_names);
    for i in 0..data.len() {
        println!("  row {i}: {:?}", design.matrix.row(i));
    }
    Ok(z.values)
}

#[allow(dead_code)]
fn main() -> revuplift::Result<()> {
    run_example().map(|_| ())
}
