use modbounds_core::bounds::u3;
use modbounds_core::generators::Norm;
use modbounds_core::harness::{run_experiment, ExperimentConfig, MethodConfig, ModelConfig};
use modbounds_core::partition::TieRule;

fn config(model: ModelConfig, method: MethodConfig, trials: usize) -> ExperimentConfig {
    ExperimentConfig {
        model,
        method,
        trials,
        base_seed: 1,
        csv: None,
        json: None,
    }
}

#[test]
fn regular_average_degree_partition() {
    let cfg = config(
        ModelConfig::Regular {
            n: 10_000,
            d: 3,
            simple: true,
        },
        MethodConfig::Avgdeg,
        4,
    );
    let r = run_experiment(&cfg).unwrap();
    assert!(r.all_pass, "{:?}", r.trials[0].checks);
    assert!(r.q.mean >= 2.0 / 3.0 * 0.95, "{}", r.q.mean);
    assert!(r.q.mean <= u3(3, 1e-10).unwrap() + 0.01);
    let names: Vec<&str> = r.trials[0].checks.iter().map(|c| c.name.as_str()).collect();
    for want in ["avg_degree_lower", "lambda_over_d", "u3"] {
        assert!(names.contains(&want), "{names:?}");
    }
}

#[test]
fn pa_majority_within_table_band() {
    let cfg = config(
        ModelConfig::Pa { n: 50_000, m: 8 },
        MethodConfig::Majority {
            eps: 0.05,
            tie: TieRule::Fair,
        },
        6,
    );
    let r = run_experiment(&cfg).unwrap();
    assert!((0.116..=0.156).contains(&r.q.mean), "{}", r.q.mean);
    assert!(r.all_pass);
}

#[test]
fn spa_rows_carry_omega() {
    let cfg = config(
        ModelConfig::Spa {
            n: 5000,
            dim: 2,
            p: 0.7,
            a1: 1.0,
            a2: 1.0,
            norm: Norm::LInf,
        },
        MethodConfig::Strips {
            omega: None,
            max_omega: Some(12),
        },
        3,
    );
    let r = run_experiment(&cfg).unwrap();
    assert!(r.trials.iter().all(|t| t.omega.is_some() && t.q > 0.5));
    assert!(r.trials[0].checks.iter().any(|c| c.name == "spa_rate"));
}

#[test]
fn result_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    // The config, output paths included, is part of the JSON.
    let run = |tag: &str| {
        let mut cfg = config(
            ModelConfig::Pa { n: 4000, m: 3 },
            MethodConfig::Majority {
                eps: 0.05,
                tie: TieRule::Fair,
            },
            5,
        );
        cfg.csv = Some(dir.path().join(format!("{tag}.csv")));
        cfg.json = Some(dir.path().join(format!("{tag}.json")));
        run_experiment(&cfg).unwrap();
        (
            std::fs::read(cfg.csv.unwrap()).unwrap(),
            std::fs::read(cfg.json.unwrap()).unwrap(),
        )
    };
    let (a, b) = (run("same"), run("same"));
    assert_eq!(a, b);
    let csv = String::from_utf8(a.0).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.starts_with("trial,seed,n,edges,parts,q,"));
    let json: serde_json::Value = serde_json::from_slice(&a.1).unwrap();
    assert_eq!(json["trials"].as_array().unwrap().len(), 5);
}

#[test]
fn violated_bounds_are_reported_not_raised() {
    // h below the maximum degree: some vertex alone exceeds h.
    let cfg = config(
        ModelConfig::Pa { n: 2000, m: 3 },
        MethodConfig::Tree { h: 2.0 },
        2,
    );
    let r = run_experiment(&cfg).unwrap();
    assert!(!r.all_pass);
    assert!(r.trials.iter().all(|t| t.error.is_none()));
    assert!(r.trials[0]
        .checks
        .iter()
        .any(|c| c.name == "part_volume_max" && !c.pass));
}
