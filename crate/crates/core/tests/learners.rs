mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use revuplift::learners::{
    fit_ert, fit_lda, fit_linear, fit_logistic, smote, DesignMatrix, ErtConfig, LogisticConfig, LogisticObjective,
    MaxFeatures, Penalty, Standardizer, TreeTask,
};

fn gaussian_design(n: usize, p: usize, seed: u64) -> DesignMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..p).map(|j| rng.sample::<f64, _>(StandardNormal) * (1.0 + j as f64) + j as f64).collect())
        .collect();
    DesignMatrix::from_vecs(&rows).unwrap()
}

fn linear_target(x: &DesignMatrix, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    x.rows()
        .map(|r| 2.0 - r[0] + 0.5 * r.get(1).copied().unwrap_or(0.0) + rng.sample::<f64, _>(StandardNormal))
        .collect()
}

fn binary_target(x: &DesignMatrix, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    x.rows()
        .map(|r| {
            let p = 1.0 / (1.0 + (-(0.3 + 0.8 * r[0] - 0.4 * r[1])).exp());
            if rng.random::<f64>() < p { 1.0 } else { 0.0 }
        })
        .collect()
}

#[test]
fn least_squares_residual_is_orthogonal_to_design() {
    let x = gaussian_design(300, 4, 1);
    let y = linear_target(&x, 2);
    let m = fit_linear(&x, &y, 0.0).unwrap();
    let resid: Vec<f64> = x.rows().zip(&y).map(|(r, v)| v - m.predict_row(r)).collect();
    let scale: f64 = y.iter().map(|v| v.abs()).sum();
    assert!(resid.iter().sum::<f64>().abs() < 1e-9 * scale);
    for j in 0..x.n_cols() {
        let dot: f64 = x.rows().zip(&resid).map(|(r, e)| r[j] * e).sum();
        assert!(dot.abs() < 1e-9 * scale, "column {j}: {dot}");
    }
    assert!(!m.pseudo_inverse);
}

#[test]
fn ridge_gradient_vanishes_on_standardized_scale() {
    let x = gaussian_design(200, 5, 3);
    let y = linear_target(&x, 4);
    for alpha in [0.01, 1.0, 100.0] {
        let m = fit_linear(&x, &y, alpha).unwrap();
        let z = Standardizer::fit(&x).transform(&x);
        let beta = m.standardized_coefficients();
        let b = m.intercept
            + m.coefficients.iter().zip(&m.standardizer.means).map(|(c, mu)| c * mu).sum::<f64>();
        let resid: Vec<f64> = z
            .rows()
            .zip(&y)
            .map(|(r, v)| v - b - r.iter().zip(&beta).map(|(a, c)| a * c).sum::<f64>())
            .collect();
        let n = x.n_rows() as f64;
        assert!(resid.iter().sum::<f64>().abs() / n < 1e-8);
        for j in 0..x.n_cols() {
            let g = -2.0 * z.rows().zip(&resid).map(|(r, e)| r[j] * e).sum::<f64>() + 2.0 * alpha * beta[j];
            assert!(g.abs() / n < 1e-8, "alpha {alpha}, coordinate {j}: {g}");
        }
    }
}

#[test]
fn ridge_shrinks_towards_zero() {
    let x = gaussian_design(100, 3, 5);
    let y = linear_target(&x, 6);
    let norm = |a: f64| fit_linear(&x, &y, a).unwrap().standardized_coefficients().iter().map(|b| b * b).sum::<f64>();
    assert!(norm(1000.0) < norm(1.0));
    assert!(norm(1.0) < norm(0.0));
}

#[test]
fn collinear_design_uses_minimum_norm_solution() {
    let base = gaussian_design(50, 1, 7);
    let rows: Vec<Vec<f64>> = base.rows().map(|r| vec![r[0], 2.0 * r[0]]).collect();
    let x = DesignMatrix::from_vecs(&rows).unwrap();
    let y: Vec<f64> = base.rows().map(|r| 3.0 * r[0] + 1.0).collect();
    let m = fit_linear(&x, &y, 0.0).unwrap();
    assert!(m.pseudo_inverse);
    for (r, v) in x.rows().zip(&y) {
        assert!((m.predict_row(r) - v).abs() < 1e-8);
    }
}

#[test]
fn logistic_gradient_matches_finite_differences() {
    for seed in 0..10u64 {
        let x = gaussian_design(150, 3, seed);
        let y = binary_target(&x, seed + 100);
        let z = Standardizer::fit(&x).transform(&x);
        let obj = LogisticObjective::new(&z, &y, 0.05, Penalty::L2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let g = obj.smooth_gradient(&theta);
        let h = 1e-6;
        for k in 0..theta.len() {
            let mut up = theta.clone();
            let mut down = theta.clone();
            up[k] += h;
            down[k] -= h;
            let fd = (obj.value(&up) - obj.value(&down)) / (2.0 * h);
            assert!((fd - g[k]).abs() < 1e-5, "seed {seed}, coordinate {k}: {fd} vs {}", g[k]);
        }
    }
}

#[test]
fn logistic_fit_reaches_stationarity() {
    for seed in 0..10u64 {
        let x = gaussian_design(200, 3, seed);
        let y = binary_target(&x, seed + 50);
        for penalty in [Penalty::L2, Penalty::L1] {
            let config = LogisticConfig { lambda: 0.01, penalty, ..LogisticConfig::default() };
            let m = fit_logistic(&x, &y, config).unwrap();
            assert!(m.report.converged);
            let z = Standardizer::fit(&x).transform(&x);
            let obj = LogisticObjective::new(&z, &y, 0.01, penalty);
            let mut theta = vec![m.intercept];
            theta.extend(&m.coefficients);
            assert!(obj.optimality_residual(&theta) < 1e-5, "seed {seed} {penalty:?}");
        }
    }
}

#[test]
fn strong_l1_penalty_zeroes_weights() {
    let x = gaussian_design(200, 3, 9);
    let y = binary_target(&x, 10);
    let config = LogisticConfig { lambda: 10.0, penalty: Penalty::L1, ..LogisticConfig::default() };
    let m = fit_logistic(&x, &y, config).unwrap();
    assert!(m.coefficients.iter().all(|&w| w == 0.0));
    let rate = y.iter().sum::<f64>() / y.len() as f64;
    assert!((m.predict_proba_row(x.row(0)) - rate).abs() < 1e-6);
}

#[test]
fn lda_matches_closed_form_in_one_dimension() {
    let rows: Vec<Vec<f64>> = [0.0, 1.0, 2.0, 4.0, 5.0, 6.0].iter().map(|&v| vec![v]).collect();
    let x = DesignMatrix::from_vecs(&rows).unwrap();
    let y = [0.0, 0.0, 0.0, 1.0, 1.0, 1.0];
    let m = fit_lda(&x, &y).unwrap();
    // raw scale: means 1 and 5, pooled variance (2 + 2) / 4 = 1, equal priors
    let expected = |v: f64| 1.0 / (1.0 + (-(4.0 * v - 12.0)).exp());
    for v in [0.0, 2.5, 3.0, 3.7, 6.0] {
        assert!((m.predict_proba_row(&[v]) - expected(v)).abs() < 1e-9, "at {v}");
    }
}

#[test]
fn trees_are_identical_across_thread_pools() {
    let x = gaussian_design(400, 4, 11);
    let y = linear_target(&x, 12);
    let config = ErtConfig { n_trees: 16, min_samples_leaf: 10, seed: 5, ..ErtConfig::default() };
    let fit_in = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| fit_ert(&x, &y, TreeTask::Regression, config).unwrap())
    };
    assert_eq!(fit_in(1), fit_in(4));
}

#[test]
fn trees_respect_minimum_leaf_size() {
    let x = gaussian_design(500, 3, 13);
    let y = binary_target(&x, 14);
    let config = ErtConfig { n_trees: 10, min_samples_leaf: 25, max_features: MaxFeatures::All, ..ErtConfig::default() };
    let forest = fit_ert(&x, &y, TreeTask::Classification, config).unwrap();
    for tree in &forest.trees {
        let leaves: Vec<_> = tree.leaves().collect();
        assert!(leaves.len() > 1);
        assert_eq!(leaves.iter().map(|l| l.1).sum::<usize>(), 500);
        assert!(leaves.iter().all(|&(v, n)| n >= 25 && (0.0..=1.0).contains(&v)));
    }
}

#[test]
fn constant_target_gives_constant_forest() {
    let x = gaussian_design(100, 2, 15);
    let forest = fit_ert(&x, &[3.5; 100], TreeTask::Regression, ErtConfig { n_trees: 5, ..ErtConfig::default() }).unwrap();
    assert!(forest.predict(&x).unwrap().iter().all(|&v| v == 3.5));
}

#[test]
fn smote_points_lie_between_neighbours() {
    let x = gaussian_design(60, 3, 17);
    let y: Vec<f64> = (0..60).map(|i| if i % 6 == 0 { 1.0 } else { 0.0 }).collect();
    let (ox, oy) = smote(&x, &y, 3, 30, 21).unwrap();
    assert_eq!(ox.n_rows(), 80);
    assert_eq!(oy.iter().filter(|&&v| v == 1.0).count(), 30);
    for i in 0..60 {
        assert_eq!(ox.row(i), x.row(i));
    }

    // Independent neighbour search on the standardized design.
    let z = Standardizer::fit(&x).transform(&x);
    let minority: Vec<usize> = (0..60).filter(|&i| y[i] == 1.0).collect();
    let neighbours = |i: usize| {
        let mut d: Vec<(f64, usize)> = minority
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| (z.row(i).iter().zip(z.row(j)).map(|(a, b)| (a - b).powi(2)).sum::<f64>(), j))
            .collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        d.into_iter().take(3).map(|p| p.1).collect::<Vec<_>>()
    };
    for s in 60..80 {
        let p = ox.row(s);
        let on_segment = minority.iter().any(|&i| {
            neighbours(i).into_iter().any(|j| {
                let (a, b) = (x.row(i), x.row(j));
                let k = (0..3).max_by(|&u, &v| (b[u] - a[u]).abs().total_cmp(&(b[v] - a[v]).abs())).unwrap();
                let u = (p[k] - a[k]) / (b[k] - a[k]);
                (0.0..=1.0).contains(&u) && (0..3).all(|c| (a[c] + u * (b[c] - a[c]) - p[c]).abs() < 1e-9)
            })
        });
        assert!(on_segment, "synthetic row {s} is not between minority neighbours");
    }
}
