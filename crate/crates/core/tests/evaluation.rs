mod common;

use proptest::prelude::*;
use revuplift::dataset::{CustomerRecord, UpliftDataset};
use revuplift::evaluation::{
    bin_sizes, campaign_profit, conversion_significance, decile_table, profit_report, qini_coefficient, qini_curve,
    ranking, revenue_qini, weighted_qini, CostModel, ProfitInputs,
};
use revuplift::dataset::{GroupStats, UpliftSummary};
use revuplift::UpliftError;

fn rec(t: bool, rev: f64) -> CustomerRecord {
    CustomerRecord::new(vec![], t, rev > 0.0, rev)
}

fn eight_records() -> UpliftDataset {
    UpliftDataset::from_records(vec![
        rec(true, 10.0),
        rec(true, 6.0),
        rec(false, 2.0),
        rec(false, 0.0),
        rec(true, 0.0),
        rec(true, 2.0),
        rec(false, 3.0),
        rec(false, 5.0),
    ])
    .unwrap()
}

#[test]
fn eight_record_hand_computation() {
    let ds = eight_records();
    let scores = [8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0];
    let table = decile_table(&scores, &ds, 2).unwrap();
    assert_eq!(table.incremental(), vec![28.0, -12.0]);
    let curve = qini_curve(&table, false, false);
    assert_eq!(curve.cumulative, vec![28.0, 16.0]);
    assert_eq!(curve.baseline, vec![8.0, 16.0]);
    assert_eq!(qini_coefficient(&curve), 20.0);
    let reversed: Vec<f64> = scores.iter().map(|s| -s).collect();
    assert_eq!(revenue_qini(&reversed, &ds, 2).unwrap(), -20.0);
    assert_eq!(qini_coefficient(&qini_curve(&table, false, true)), 2.5);
    assert_eq!(qini_curve(&table, true, false).cumulative, vec![3.5, 2.0]);
}

#[test]
fn ranking_breaks_ties_by_index() {
    assert_eq!(ranking(&[1.0, 2.0, 2.0, 0.5]).unwrap(), vec![1, 2, 0, 3]);
    assert!(ranking(&[1.0, f64::NAN]).is_err());
    assert_eq!(bin_sizes(23, 10), vec![3, 3, 3, 2, 2, 2, 2, 2, 2, 2]);
}

#[test]
fn bin_without_control_is_an_error() {
    let ds = eight_records();
    let scores = [8.0, 7.0, 1.0, 1.0, 6.0, 5.0, 1.0, 1.0];
    let err = decile_table(&scores, &ds, 2).unwrap_err();
    assert!(matches!(err, UpliftError::EmptyBin { bin: 1, group: "control" }));
}

#[test]
fn brute_force_oracle_attains_enumerated_maximum() {
    for seed in 0..20 {
        let ds = common::small_fixture(seed);
        let all = common::enumerate_two_bin(&ds);
        let (best_top, best_q) = all
            .iter()
            .filter_map(|(top, q)| q.map(|q| (top, q)))
            .fold(None::<(&Vec<bool>, f64)>, |acc, (t, q)| match acc {
                Some((_, b)) if b >= q => acc,
                _ => Some((t, q)),
            })
            .expect("fixture has a valid assignment");
        for (top, q) in &all {
            let scores: Vec<f64> = top.iter().map(|&t| f64::from(u8::from(t))).collect();
            match q {
                Some(q) => assert!((revenue_qini(&scores, &ds, 2).unwrap() - q).abs() < 1e-9),
                None => assert!(revenue_qini(&scores, &ds, 2).is_err()),
            }
        }
        let oracle: Vec<f64> = best_top.iter().map(|&t| f64::from(u8::from(t))).collect();
        let q = revenue_qini(&oracle, &ds, 2).unwrap();
        assert!((q - best_q).abs() < 1e-9, "seed {seed}");
    }
}

#[test]
fn random_scores_have_zero_mean_qini() {
    use rand::{Rng, SeedableRng};
    let ds = common::random_dataset(1000, 1, 2024);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let qs: Vec<f64> = (0..200)
        .map(|_| {
            let scores: Vec<f64> = (0..1000).map(|_| rng.random()).collect();
            revenue_qini(&scores, &ds, 10).unwrap()
        })
        .collect();
    let (mean, se) = common::mean_and_se(&qs);
    assert!(mean.abs() < 3.0 * se, "mean {mean}, se {se}");
}

#[test]
fn weighted_qini_published_rows() {
    let rdt = [1469.8, 1199.5, 1504.8, 1637.5, 1396.2, 1668.2, 1906.6, 1891.9, 1716.6, 1682.8];
    let itm = [1034.2, 1618.0, 1430.7, 1637.6, 1468.0, 1279.8, 1397.2, 1436.4, 1512.4, 1682.8];
    assert!((weighted_qini(&rdt, false).unwrap() - 6806.0).abs() <= 1.0);
    assert!((weighted_qini(&itm, false).unwrap() - 6313.0).abs() <= 1.0);
    let total: f64 = rdt.iter().sum();
    assert!((weighted_qini(&rdt, true).unwrap() - 6805.68 / total).abs() < 1e-6);
    assert!(weighted_qini(&rdt[..9], false).is_err());
}

#[test]
fn chi_squared_published_p_values() {
    let summary = |t: (u64, u64), c: (u64, u64)| {
        UpliftSummary::from_groups(
            GroupStats::from_counts(t.0, t.1, 0.0).unwrap(),
            GroupStats::from_counts(c.0, c.1, 0.0).unwrap(),
        )
    };
    let main = conversion_significance(&summary((2_210_190, 162_570), (741_123, 53_340))).unwrap();
    assert!((main.p_value / 5.93e-6 - 1.0).abs() < 0.05);
    let bat = conversion_significance(&summary((111_729, 17_890), (37_570, 5_745))).unwrap();
    assert!((bat.p_value / 9.34e-4 - 1.0).abs() < 0.05);
}

#[test]
fn per_person_profit() {
    let costs = CostModel { discount: 0.1, contact_cost: 0.0 };
    let p = campaign_profit(&ProfitInputs::per_person(14.24, 4.48, costs)).unwrap();
    assert!((p.profit - 8.34).abs() < 0.01);

    let inputs = ProfitInputs {
        n_treatment: 300.0,
        n_control: 300.0,
        response_treatment: 1.0,
        response_control: 1.0,
        basket_treatment: 18.89,
        basket_control: 0.0,
        costs: CostModel { discount: 0.0, contact_cost: 0.0 },
        responder_basket_sum: None,
    };
    assert!((campaign_profit(&inputs).unwrap().profit - 5668.0).abs() <= 2.0);
}

#[test]
fn control_side_rescaled_to_treated_population() {
    let inputs = ProfitInputs {
        n_treatment: 100.0,
        n_control: 25.0,
        response_treatment: 0.2,
        response_control: 0.1,
        basket_treatment: 50.0,
        basket_control: 40.0,
        costs: CostModel { discount: 0.1, contact_cost: 0.5 },
        responder_basket_sum: None,
    };
    let c = campaign_profit(&inputs).unwrap();
    assert!((c.incremental_revenue - (1000.0 - 400.0)).abs() < 1e-9);
    assert!((c.contact_cost - 50.0).abs() < 1e-9);
    assert!((c.incentive_cost - 100.0).abs() < 1e-9);
    assert!((c.profit - 450.0).abs() < 1e-9);
}

proptest! {
    #[test]
    fn monotone_score_transform_keeps_qini(seed in any::<u64>(), a in 0.1f64..10.0, b in -5.0f64..5.0) {
        let ds = common::random_dataset(400, 1, seed);
        let scores: Vec<f64> = ds.records().iter().map(|r| r.covariates[0]).collect();
        let moved: Vec<f64> = scores.iter().map(|s| (a * s + b).exp()).collect();
        prop_assume!(revenue_qini(&scores, &ds, 10).is_ok());
        prop_assert_eq!(revenue_qini(&scores, &ds, 10).unwrap(), revenue_qini(&moved, &ds, 10).unwrap());
    }

    #[test]
    fn profit_rows_are_consistent(seed in any::<u64>(), discount in 0.0f64..0.9, contact in 0.0f64..2.0) {
        let ds = common::random_dataset(500, 1, seed);
        let scores: Vec<f64> = ds.records().iter().map(|r| r.covariates[0]).collect();
        let table = decile_table(&scores, &ds, 5);
        prop_assume!(table.is_ok());
        let table = table.unwrap();
        let report = profit_report(&table, &CostModel { discount, contact_cost: contact }).unwrap();
        for r in &report.rows {
            let c = &r.components;
            prop_assert!((c.profit - (c.incremental_revenue - c.contact_cost - c.incentive_cost)).abs() < 1e-6);
        }
        let last = report.rows.last().unwrap();
        prop_assert_eq!(last.targeted, 500);
        let endpoint = *qini_curve(&table, false, false).cumulative.last().unwrap();
        prop_assert!((last.components.incremental_revenue - endpoint).abs() < 1e-6 * (1.0 + endpoint.abs()));
        prop_assert!((last.components.contact_cost - 500.0 * contact).abs() < 1e-6);
    }
}
