use logit_priors::inference::{logistic_mle, mh_sample, summarize, Dataset, McmcConfig};
use logit_priors::prior::{logistic_matched_priors, vague_priors};
use logit_priors::sim::{generate_scenario, run_study, PriorChoice, ScenarioSpec};
use logit_priors::stats::mean;

#[test]
fn calibration_under_the_generating_prior() {
    let mut spec = ScenarioSpec::scenario1(50, 400, 77);
    spec.priors = vec![PriorChoice::Logistic];
    spec.truth_prior = Some(PriorChoice::Logistic);
    spec.mcmc = McmcConfig {
        chains: 2,
        iterations: 3000,
        burnin: 1000,
    };
    let report = run_study(&spec).unwrap();
    for c in &report.priors[0].coefficients {
        assert!((c.coverage - 0.95).abs() <= 0.05, "coverage {}", c.coverage);
    }
}

#[test]
fn study_reports_are_byte_identical() {
    let mut spec = ScenarioSpec::scenario23(30, 3, 5);
    spec.mcmc = McmcConfig {
        chains: 2,
        iterations: 1500,
        burnin: 500,
    };
    let a = run_study(&spec).unwrap();
    let b = run_study(&spec).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.priors.len(), 3);
    assert_eq!(a.truth.len(), 4);
}

#[test]
fn rhat_on_scenario1_dataset() {
    let spec = ScenarioSpec::scenario1(100, 1, 3);
    let data = generate_scenario(&spec, 0).unwrap();
    let chains = mh_sample(&data, &logistic_matched_priors(1), &McmcConfig::default(), 4).unwrap();
    let s = summarize(&chains).unwrap();
    assert!(s.max_rhat() < 1.01, "{}", s.max_rhat());
    for a in &chains.acceptance {
        assert!((0.15..0.5).contains(a), "acceptance {a}");
    }
}

fn relabel(data: &Dataset, flip_x: bool, flip_y: bool) -> Dataset {
    let cols = data
        .columns
        .iter()
        .map(|c| c.iter().map(|x| if flip_x { -x } else { *x }).collect())
        .collect();
    let y = data.y.iter().map(|&y| if flip_y { 1 - y } else { y }).collect();
    Dataset::new(cols, y).unwrap()
}

#[test]
fn relabeling_symmetry() {
    let spec = ScenarioSpec::scenario1(50, 1, 8);
    let data = generate_scenario(&spec, 0).unwrap();
    let prior = logistic_matched_priors(1);
    let cfg = McmcConfig {
        chains: 4,
        iterations: 22_000,
        burnin: 2000,
    };
    let base = summarize(&mh_sample(&data, &prior, &cfg, 1).unwrap()).unwrap();
    let fx = summarize(&mh_sample(&relabel(&data, true, false), &prior, &cfg, 1).unwrap()).unwrap();
    let fxy = summarize(&mh_sample(&relabel(&data, true, true), &prior, &cfg, 1).unwrap()).unwrap();
    let tol = |s: f64| 4.0 * s / 2000f64.sqrt();
    let (b0, b1) = (&base.coefficients[0], &base.coefficients[1]);
    assert!((fx.coefficients[1].mean + b1.mean).abs() < tol(b1.sd));
    assert!((fx.coefficients[0].mean - b0.mean).abs() < tol(b0.sd));
    assert!((fxy.coefficients[0].mean + b0.mean).abs() < tol(b0.sd));
    assert!((fxy.coefficients[1].mean - b1.mean).abs() < tol(b1.sd));
}

#[test]
fn small15_dataset_fit() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/small15.csv")).unwrap();
    let data = Dataset::from_csv(&text).unwrap();
    assert_eq!((data.n(), data.successes()), (15, 12));
    let mle = logistic_mle(&data).unwrap();
    assert!((mle.coefficients[0] - 1.66731702).abs() < 1e-6);
    assert!((mle.coefficients[1] - 1.05091127).abs() < 1e-6);
    let s = summarize(&mh_sample(&data, &logistic_matched_priors(1), &McmcConfig::default(), 1).unwrap()).unwrap();
    assert!(s.coefficients[1].covers(0.3));
    // shrinkage: the posterior means sit between 0 and the MLE
    for (c, m) in s.coefficients.iter().zip(&mle.coefficients) {
        assert!(c.mean > 0.0 && c.mean < *m);
    }
    let vague = summarize(&mh_sample(&data, &vague_priors(1, 1000.0).unwrap(), &McmcConfig::default(), 1).unwrap()).unwrap();
    assert!(vague.coefficients[1].sd > s.coefficients[1].sd);
}

#[test]
fn vague_mse_shrinks_with_n() {
    let mut mses = Vec::new();
    for n in [15, 100] {
        let mut spec = ScenarioSpec::scenario1(n, 30, 4);
        spec.priors = vec![PriorChoice::Vague { sd: 1000.0 }];
        spec.mcmc = McmcConfig {
            chains: 2,
            iterations: 2500,
            burnin: 1000,
        };
        let r = run_study(&spec).unwrap();
        mses.push(mean(&r.priors[0].coefficients.iter().map(|c| c.mse).collect::<Vec<_>>()));
    }
    assert!(mses[1] < mses[0], "{mses:?}");
}
