use rayon::prelude::*;

use modbounds_core::generators::{
    gen_pa, gen_pairing, gen_spa, sphere_volume, undirect, Norm, PaParams, RegularParams, SpaParams,
};
use modbounds_core::harness::{
    component_count_check, degree_growth_check, expected_components, linear_fit, martingale_check,
    power_law_check,
};
use modbounds_core::modularity;
use modbounds_core::partition::best_strip_partition;

fn spa(n: usize, seed: u64) -> SpaParams {
    SpaParams {
        n,
        dim: 2,
        p: 0.7,
        a1: 1.0,
        a2: 1.0,
        norm: Norm::LInf,
        seed,
    }
}

#[test]
fn simple_two_regular_classes_follow_labelled_counts() {
    // Labelled 2-regular graphs on 6 vertices: 60 hexagons, 10 triangle pairs.
    let draws = 10_000;
    let hexagons = (0..draws as u64)
        .into_par_iter()
        .filter(|&seed| {
            let g = gen_pairing(&RegularParams::new(6, 2, seed).simple()).unwrap();
            g.is_connected()
        })
        .count();
    let p = 60.0 / 70.0;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    let z = (hexagons as f64 - draws as f64 * p) / sigma;
    assert!(z.abs() < 3.0, "hexagons {hexagons}, z {z:.2}");
}

#[test]
fn simple_fraction_near_e_minus_two() {
    let simple = (0..10_000u64)
        .into_par_iter()
        .filter(|&s| {
            gen_pairing(&RegularParams::new(100, 3, s))
                .unwrap()
                .is_simple()
        })
        .count();
    assert!((simple as f64 / 1e4 - (-2f64).exp()).abs() < 0.02);
}

#[test]
fn pa_tail_slope() {
    for m in [1, 2] {
        let r = power_law_check(m, 100_000, 10, 40).unwrap();
        assert!(
            (-2.25..=-1.75).contains(&r.tail_slope),
            "m {m}: slope {} over [{}, {}]",
            r.tail_slope,
            r.k_min,
            r.k_max
        );
    }
    assert!(power_law_check(2, 99, 1, 0).is_err());
}

#[test]
fn component_variance_matches_indicator_sum() {
    let r = component_count_check(1, 20_000, 400, 5).unwrap();
    let (mean, var) = expected_components(20_000);
    let se = (var / 400.0).sqrt();
    assert!((r.summary.mean - mean).abs() < 4.0 * se);
    // Sample variance of 400 draws: relative error about sqrt(2/399).
    let ratio = r.summary.std_dev.powi(2) / var;
    assert!(
        (ratio - 1.0).abs() < 3.0 * (2.0f64 / 399.0).sqrt(),
        "ratio {ratio}"
    );
    assert_eq!(component_count_check(1, 1, 3, 0).unwrap().summary.mean, 1.0);
}

#[test]
fn martingale_pass_fraction() {
    let r = martingale_check(2, 0.25, 100_000, 50, 100).unwrap();
    assert!(r.pass_fraction >= 0.95, "{}", r.pass_fraction);
}

#[test]
fn spa_expected_links_per_step() {
    // E[out-degree of v_t] = p sum_u |S(u, t-1)|, so edges minus that sum
    // over the run is a mean-zero martingale.
    let runs = 200;
    let diffs: Vec<f64> = (0..runs as u64)
        .into_par_iter()
        .map(|seed| {
            let params = spa(2000, seed);
            let sg = gen_spa(&params).unwrap();
            let mut indeg = vec![0usize; params.n];
            let mut next = 0;
            let mut expected = 0.0;
            for t in 0..params.n {
                for &k in &indeg[..t] {
                    expected += params.p * sphere_volume(k, t, params.a1, params.a2).unwrap();
                }
                while next < sg.edges.len() && sg.edges[next].0 == t {
                    indeg[sg.edges[next].1] += 1;
                    next += 1;
                }
            }
            sg.edges.len() as f64 - expected
        })
        .collect();
    let mean = diffs.iter().sum::<f64>() / runs as f64;
    let sd = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (runs - 1) as f64).sqrt();
    let z = mean / (sd / (runs as f64).sqrt());
    assert!(z.abs() < 4.0, "mean {mean}, sd {sd}, z {z}");
}

#[test]
fn spa_edges_per_vertex_are_stable() {
    let ratios: Vec<f64> = [1_000usize, 10_000, 100_000]
        .iter()
        .map(|&n| gen_spa(&spa(n, 9)).unwrap().edges.len() as f64 / n as f64)
        .collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(lo > 1.0 && hi / lo < 1.3, "{ratios:?}");
}

#[test]
fn spa_in_degree_growth() {
    let r = degree_growth_check(&spa(10_000, 2), 10).unwrap();
    assert!(
        (r.fitted_exponent - 0.7).abs() <= 0.15,
        "{}",
        r.fitted_exponent
    );
    let flat = degree_growth_check(
        &SpaParams {
            a1: 1e-9,
            ..spa(10_000, 2)
        },
        10,
    );
    // With A1 -> 0 the shift A2/A1 dominates and the slope vanishes.
    assert!(flat.unwrap().fitted_exponent.abs() < 0.05);
}

#[test]
fn spa_out_degree_is_polylog() {
    let c: Vec<f64> = [10_000usize, 100_000]
        .iter()
        .map(|&n| {
            degree_growth_check(&spa(n, 3), 8)
                .unwrap()
                .out_degree_constant
        })
        .collect();
    assert!(c.iter().all(|&x| x < 1.0), "{c:?}");
    assert!(c[0] / c[1] < 2.0 && c[1] / c[0] < 2.0, "{c:?}");
}

#[test]
fn strip_deficit_follows_rate() {
    let ns = [1_000usize, 10_000, 100_000];
    let deficits: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let qs: Vec<f64> = (0..6u64)
                .into_par_iter()
                .map(|s| {
                    best_strip_partition(&gen_spa(&spa(n, s)).unwrap(), 20)
                        .unwrap()
                        .1
                })
                .collect();
            1.0 - qs.iter().sum::<f64>() / qs.len() as f64
        })
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = deficits.iter().map(|d| d.ln()).collect();
    let (slope, _) = linear_fit(&xs, &ys).unwrap();
    let predicted = (-1.0f64 / 2.0).max(0.7 - 1.0) / 2.0;
    assert!(
        (slope - predicted).abs() <= 0.2,
        "slope {slope}, deficits {deficits:?}"
    );
}

#[test]
fn pa_majority_close_to_table() {
    let runs: Vec<f64> = (0..6u64)
        .into_par_iter()
        .map(|seed| {
            let g = gen_pa(&PaParams {
                n: 50_000,
                m: 8,
                seed,
            })
            .unwrap();
            let p = modbounds_core::partition::majority_color_pa(&g, 0.05, seed).unwrap();
            modularity(&g, &p).unwrap().q
        })
        .collect();
    let mean = runs.iter().sum::<f64>() / runs.len() as f64;
    assert!((mean - 0.136).abs() < 0.02, "{mean}");
}

#[test]
fn undirected_spa_is_simple() {
    let g = undirect(&gen_spa(&spa(5000, 1)).unwrap());
    assert!(g.is_simple());
}
