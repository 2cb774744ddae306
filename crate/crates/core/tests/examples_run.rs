mod synthetic_campaign {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/synthetic_campaign.rs"));
}
mod descriptive_statistics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/descriptive_statistics.rs"));
}
mod target_transforms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/target_transforms.rs"));
}
mod learners_tour {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/learners_tour.rs"));
}
mod strategy_comparison {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/strategy_comparison.rs"));
}
mod model_selection {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/model_selection.rs"));
}
mod qini_and_weighted {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/qini_and_weighted.rs"));
}
mod campaign_profit {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/campaign_profit.rs"));
}

#[test]
fn synthetic_campaign_uplift_is_close_to_oracle() {
    let (empirical, oracle) = synthetic_campaign::run_example().unwrap();
    assert!(oracle > 0.0);
    assert!((empirical - oracle).abs() < 0.5 * oracle);
}

#[test]
fn descriptive_statistics_p_value() {
    let p = descriptive_statistics::run_example().unwrap();
    assert!((p / 5.93e-6 - 1.0).abs() < 0.05);
}

#[test]
fn target_transforms_values() {
    // shares 3/4 and 1/4
    assert_eq!(target_transforms::run_example().unwrap(), vec![40.0, 0.0, 16.0, -80.0]);
}

#[test]
fn learners_tour_runs() {
    learners_tour::run_example().unwrap();
}

#[test]
fn strategy_comparison_oracle_is_competitive() {
    let results = strategy_comparison::run_example().unwrap();
    let oracle = results.last().unwrap().1;
    assert!(oracle > 0.0);
    assert_eq!(results.len(), 10);
}

#[test]
fn model_selection_picks_a_candidate() {
    assert!(model_selection::run_example().unwrap() < 5);
}

#[test]
fn qini_example_values() {
    let (q, w) = qini_and_weighted::run_example().unwrap();
    assert_eq!(q, 20.0);
    assert!((w - 6805.68).abs() < 1e-6);
}

#[test]
fn campaign_profit_example() {
    assert!((campaign_profit::run_example().unwrap() - 8.336).abs() < 1e-9);
}
