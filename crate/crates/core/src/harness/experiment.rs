//! Seeded Monte Carlo experiments: generate, partition, score, compare with
//! the theoretical bounds.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{summarize, Summary};
use crate::bounds;
use crate::error::{invalid, Result};
use crate::generators::{
    gen_pa, gen_pairing, gen_spa, undirect, Norm, PaParams, RegularParams, SpaGraph, SpaParams,
};
use crate::graph::{Graph, Partition};
use crate::modularity::modularity_with_resolution;
use crate::partition::{
    best_strip_partition, decompose_connected, default_omega, local_search_refine,
    majority_colouring, partition_avg_degree, partition_forest, strip_partition, TieRule,
};
use crate::spectral;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelConfig {
    Regular {
        n: usize,
        d: usize,
        #[serde(default)]
        simple: bool,
    },
    Pa {
        n: usize,
        m: usize,
    },
    Spa {
        n: usize,
        dim: usize,
        p: f64,
        a1: f64,
        a2: f64,
        #[serde(default = "default_norm")]
        norm: Norm,
    },
}

fn default_norm() -> Norm {
    Norm::LInf
}

fn default_eps() -> f64 {
    0.05
}

fn default_passes() -> usize {
    20
}

fn default_gamma() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MethodConfig {
    /// Connected decomposition with a fixed `h`.
    Tree {
        h: f64,
    },
    Forest,
    Avgdeg,
    Majority {
        #[serde(default = "default_eps")]
        eps: f64,
        #[serde(default)]
        tie: TieRule,
    },
    /// Fixed `omega`, the best of `1..=max_omega`, or the default formula.
    Strips {
        omega: Option<usize>,
        max_omega: Option<usize>,
    },
    /// Local search starting from singletons.
    Refine {
        #[serde(default = "default_passes")]
        passes: usize,
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub method: MethodConfig,
    pub trials: usize,
    /// Trial `i` uses seed `base_seed + i`.
    pub base_seed: u64,
    pub csv: Option<std::path::PathBuf>,
    pub json: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// Asserted: `q >= bound`.
    Lower,
    /// Asserted: `q <= bound`.
    Upper,
    /// Reported only.
    Reference,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub kind: BoundKind,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub parts: usize,
    pub q: f64,
    pub edge_contribution: f64,
    pub degree_tax: f64,
    pub omega: Option<usize>,
    pub checks: Vec<BoundCheck>,
    /// Set when the trial could not be scored; such a trial fails.
    pub error: Option<String>,
}

impl TrialResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialResult>,
    pub q: Summary,
    pub edge_contribution: Summary,
    pub degree_tax: Summary,
    pub all_pass: bool,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    if cfg.trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let model = model_bounds(&cfg.model)?;
    let trials: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, &model, i))
        .collect::<Result<_>>()?;
    let scored: Vec<&TrialResult> = trials.iter().filter(|t| t.error.is_none()).collect();
    let pick =
        |f: fn(&TrialResult) -> f64| summarize(&scored.iter().map(|t| f(t)).collect::<Vec<_>>());
    let result = ExperimentResult {
        config: cfg.clone(),
        q: pick(|t| t.q),
        edge_contribution: pick(|t| t.edge_contribution),
        degree_tax: pick(|t| t.degree_tax),
        all_pass: trials.iter().all(TrialResult::pass),
        trials,
    };
    if let Some(path) = &cfg.csv {
        write_trials_csv(std::fs::File::create(path)?, &result)?;
    }
    if let Some(path) = &cfg.json {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        serde_json::to_writer_pretty(&mut w, &result).map_err(std::io::Error::other)?;
        writeln!(w)?;
    }
    Ok(result)
}

/// One row per trial; failed checks are listed by name, separated by `;`.
pub fn write_trials_csv<W: Write>(w: W, result: &ExperimentResult) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "trial",
        "seed",
        "n",
        "edges",
        "parts",
        "q",
        "edge_contribution",
        "degree_tax",
        "omega",
        "pass",
        "failed_checks",
        "error",
    ])
    .map_err(std::io::Error::from)?;
    for t in &result.trials {
        let failed: Vec<&str> = t
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        out.write_record([
            t.trial.to_string(),
            t.seed.to_string(),
            t.n.to_string(),
            t.edges.to_string(),
            t.parts.to_string(),
            t.q.to_string(),
            t.edge_contribution.to_string(),
            t.degree_tax.to_string(),
            t.omega.map(|w| w.to_string()).unwrap_or_default(),
            t.pass().to_string(),
            failed.join(";"),
            t.error.clone().unwrap_or_default(),
        ])
        .map_err(std::io::Error::from)?;
    }
    out.flush()?;
    Ok(())
}

enum Sample {
    Plain(Graph),
    Spatial(SpaGraph, Graph),
}

impl Sample {
    fn graph(&self) -> &Graph {
        match self {
            Sample::Plain(g) | Sample::Spatial(_, g) => g,
        }
    }
}

/// Generation failures are configuration errors; partitioning failures are
/// recorded on the trial.
fn run_trial(
    cfg: &ExperimentConfig,
    model: &[(&'static str, BoundKind, f64)],
    trial: usize,
) -> Result<TrialResult> {
    let seed = cfg.base_seed.wrapping_add(trial as u64);
    let sample = match cfg.model {
        ModelConfig::Regular { n, d, simple } => {
            let mut p = RegularParams::new(n, d, seed);
            p.require_simple = simple;
            Sample::Plain(gen_pairing(&p)?)
        }
        ModelConfig::Pa { n, m } => Sample::Plain(gen_pa(&PaParams { n, m, seed })?),
        ModelConfig::Spa {
            n,
            dim,
            p,
            a1,
            a2,
            norm,
        } => {
            let sg = gen_spa(&SpaParams {
                n,
                dim,
                p,
                a1,
                a2,
                norm,
                seed,
            })?;
            let g = undirect(&sg);
            Sample::Spatial(sg, g)
        }
    };
    let g = sample.graph();
    let mut result = TrialResult {
        trial,
        seed,
        n: g.n(),
        edges: g.edge_count(),
        parts: 0,
        q: f64::NAN,
        edge_contribution: f64::NAN,
        degree_tax: f64::NAN,
        omega: None,
        checks: Vec::new(),
        error: None,
    };
    let gamma = match cfg.method {
        MethodConfig::Refine { gamma, .. } => gamma,
        _ => 1.0,
    };
    let outcome = partition(cfg, &sample, seed).and_then(|(p, omega)| {
        let b = modularity_with_resolution(g, &p, gamma)?;
        Ok((p, omega, b))
    });
    match outcome {
        Ok((p, omega, b)) => {
            result.parts = p.part_count();
            result.q = b.q;
            result.edge_contribution = b.edge_contribution;
            result.degree_tax = b.degree_tax;
            result.omega = omega;
            result.checks = checks(cfg, model, g, &p, b.q)?;
        }
        Err(e) => result.error = Some(e.to_string()),
    }
    Ok(result)
}

/// Bounds that depend only on the model parameters.
fn model_bounds(model: &ModelConfig) -> Result<Vec<(&'static str, BoundKind, f64)>> {
    Ok(match *model {
        ModelConfig::Regular { d, .. } if d >= 3 => vec![
            ("u1", BoundKind::Upper, bounds::u1(d)?),
            ("u3", BoundKind::Upper, bounds::u3(d, 1e-10)?),
            ("friedman", BoundKind::Upper, bounds::friedman_upper(d)?),
            ("two_over_d", BoundKind::Reference, 2.0 / d as f64),
        ],
        ModelConfig::Pa { m, .. } => {
            let mut v = Vec::new();
            if m >= 2 {
                v.push(("pa_upper", BoundKind::Upper, bounds::pa_upper(m)?));
            }
            v.push(("l1", BoundKind::Reference, bounds::pa_lower_l1(m)?));
            v.push(("l2", BoundKind::Reference, bounds::pa_lower_l2(m)?));
            v
        }
        _ => Vec::new(),
    })
}

fn partition(
    cfg: &ExperimentConfig,
    sample: &Sample,
    seed: u64,
) -> Result<(Partition, Option<usize>)> {
    let g = sample.graph();
    Ok(match &cfg.method {
        MethodConfig::Tree { h } => (decompose_connected(g, *h)?, None),
        MethodConfig::Forest => (partition_forest(g)?, None),
        MethodConfig::Avgdeg => (partition_avg_degree(g)?, None),
        MethodConfig::Majority { eps, tie } => {
            (majority_colouring(g, *eps, *tie, seed)?.partition, None)
        }
        MethodConfig::Strips { omega, max_omega } => {
            let Sample::Spatial(sg, _) = sample else {
                return Err(invalid("strip partitions need an SPA model"));
            };
            let omega = match (omega, max_omega) {
                (Some(w), _) => *w,
                (None, Some(max)) => best_strip_partition(sg, *max)?.0,
                (None, None) => {
                    let ModelConfig::Spa { dim, p, a1, .. } = cfg.model else {
                        unreachable!("spatial sample");
                    };
                    default_omega(sg.n(), dim, p * a1)?
                }
            };
            (strip_partition(sg, omega)?, Some(omega))
        }
        MethodConfig::Refine { passes, gamma } => (
            local_search_refine(g, &Partition::singletons(g.n()), *passes, *gamma, seed)?,
            None,
        ),
    })
}

fn check(name: &str, kind: BoundKind, bound: f64, pass: bool) -> BoundCheck {
    BoundCheck {
        name: name.into(),
        kind,
        bound,
        pass,
    }
}

fn checks(
    cfg: &ExperimentConfig,
    model: &[(&'static str, BoundKind, f64)],
    g: &Graph,
    p: &Partition,
    q: f64,
) -> Result<Vec<BoundCheck>> {
    let score = |name: &str, kind: BoundKind, bound: f64| {
        let pass = match kind {
            BoundKind::Lower => q >= bound - 1e-12,
            BoundKind::Upper => q <= bound + 1e-12,
            BoundKind::Reference => true,
        };
        check(name, kind, bound, pass)
    };
    let mut out = Vec::new();
    let n = g.n();
    let delta = g.max_degree();
    match &cfg.method {
        MethodConfig::Avgdeg => out.push(score(
            "avg_degree_lower",
            BoundKind::Lower,
            bounds::avg_degree_lower(n, delta.max(1), g.average_degree())?,
        )),
        MethodConfig::Forest => {
            let active = g.degrees().iter().filter(|&&d| d > 0).count();
            if active > 0 {
                out.push(score(
                    "forest_lower",
                    BoundKind::Lower,
                    bounds::forest_lower(active, delta)?,
                ));
            }
        }
        MethodConfig::Tree { h } => {
            // Part volumes, not modularity, are compared here.
            let vols = p.volumes(g);
            let max = vols.iter().copied().max().unwrap_or(0) as f64;
            let min = vols.iter().copied().min().unwrap_or(0) as f64;
            out.push(check("part_volume_max", BoundKind::Upper, *h, max <= *h));
            if p.part_count() > 1 {
                let floor = h / delta as f64 - 1.0;
                out.push(check(
                    "part_volume_min",
                    BoundKind::Lower,
                    floor,
                    min >= floor,
                ));
            }
        }
        _ => {}
    }
    if let ModelConfig::Spa { dim, p, a1, .. } = cfg.model {
        if p * a1 < 1.0 && n >= 2 {
            out.push(score(
                "spa_rate",
                BoundKind::Reference,
                bounds::spa_rate(n, dim, p * a1)?,
            ));
        }
    }
    if let ModelConfig::Regular { d, .. } = cfg.model {
        if d >= 3 && g.is_simple() && g.is_connected() {
            let s = spectral::second_eigenvalue(g, 1e-6, 100_000, 0)?;
            out.push(score(
                "lambda_over_d",
                BoundKind::Upper,
                s.lambda / d as f64,
            ));
        }
    }
    for &(name, kind, bound) in model {
        out.push(score(name, kind, bound));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(model: ModelConfig, method: MethodConfig) -> ExperimentConfig {
        ExperimentConfig {
            model,
            method,
            trials: 3,
            base_seed: 11,
            csv: None,
            json: None,
        }
    }

    #[test]
    fn regular_avgdeg_passes() {
        let r = run_experiment(&cfg(
            ModelConfig::Regular {
                n: 2000,
                d: 3,
                simple: false,
            },
            MethodConfig::Avgdeg,
        ))
        .unwrap();
        assert_eq!(r.trials.len(), 3);
        assert!(r.all_pass, "{:?}", r.trials);
        assert_eq!(r.trials[1].seed, 12);
    }

    #[test]
    fn deterministic() {
        let c = cfg(
            ModelConfig::Pa { n: 3000, m: 4 },
            MethodConfig::Majority {
                eps: 0.05,
                tie: TieRule::DriftCorrected,
            },
        );
        let a = run_experiment(&c).unwrap();
        let b = run_experiment(&c).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failures_are_flags() {
        // A 2-regular pairing is usually a union of cycles.
        let r = run_experiment(&cfg(
            ModelConfig::Regular {
                n: 200,
                d: 2,
                simple: false,
            },
            MethodConfig::Forest,
        ))
        .unwrap();
        assert!(!r.all_pass);
        assert!(r.trials.iter().all(|t| t.error.is_some()));
    }

    #[test]
    fn strips_need_positions() {
        let r = run_experiment(&cfg(
            ModelConfig::Pa { n: 100, m: 2 },
            MethodConfig::Strips {
                omega: Some(2),
                max_omega: None,
            },
        ))
        .unwrap();
        assert!(r.trials[0].error.is_some());
    }

    #[test]
    fn config_from_toml_shape() {
        let c = cfg(
            ModelConfig::Spa {
                n: 100,
                dim: 2,
                p: 0.7,
                a1: 1.0,
                a2: 1.0,
                norm: Norm::L2,
            },
            MethodConfig::Strips {
                omega: None,
                max_omega: Some(5),
            },
        );
        let r = run_experiment(&c).unwrap();
        assert!(r.trials.iter().all(|t| t.omega.is_some()));
    }
}
