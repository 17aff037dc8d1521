mod args;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;
use serde_json::json;

use args::{
    BoundsArgs, CheckKind, Cli, Command, ExperimentArgs, FileConfig, Merge, MethodArgs, MethodKind,
    ModelArgs, ModelKind, ModularityArgs, PartitionArgs, VerifyArgs,
};
use modbounds_core::bounds::{self, bound_table, write_bound_csv};
use modbounds_core::generators::{
    gen_pa, gen_pairing, gen_spa, undirect, Norm, PaParams, RegularParams, SpaGraph, SpaParams,
};
use modbounds_core::graph::{read_edge_list, read_partition, write_edge_list, write_partition};
use modbounds_core::harness::{
    component_count_check, component_counts, degree_growth_check, martingale_check,
    power_law_check, run_experiment, ExperimentConfig, MethodConfig, ModelConfig,
};
use modbounds_core::oracle::exact_modularity;
use modbounds_core::partition::{
    best_strip_partition, decompose_connected, local_search_refine, majority_colouring,
    partition_avg_degree, partition_forest, strip_partition,
};
use modbounds_core::{modularity_with_resolution, Graph, Partition};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Settings shared by every subcommand after the config file is applied.
struct Common {
    seed: u64,
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<bool> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let common = Common {
        seed: cli.seed.or(file.seed).unwrap_or(0),
        out: cli.out.or(file.out),
    };
    match cli.command {
        Command::Gen(a) => gen(&common, a.merge(file.gen)),
        Command::Bounds(a) => bounds_cmd(&common, a.merge(file.bounds)),
        Command::Partition(a) => partition_cmd(&common, a.merge(file.partition)),
        Command::Modularity(a) => modularity_cmd(&common, a.merge(file.modularity)),
        Command::Experiment(a) => experiment(&common, a.merge(file.experiment)),
        Command::Verify(a) => verify(&common, a.merge(file.verify)),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("opening {}", path.display()))?,
    ))
}

/// JSON to `path` if given, else to stdout.
fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn pos_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".pos");
    PathBuf::from(s)
}

fn model_config(a: &ModelArgs) -> Result<ModelConfig> {
    let n = a.n.unwrap_or(1000);
    Ok(match a.model {
        Some(ModelKind::Regular) => ModelConfig::Regular {
            n,
            d: a.d.unwrap_or(3),
            simple: a.simple,
        },
        Some(ModelKind::Pa) => ModelConfig::Pa {
            n,
            m: a.m.unwrap_or(2),
        },
        Some(ModelKind::Spa) => ModelConfig::Spa {
            n,
            dim: a.dim.unwrap_or(2),
            p: a.p.unwrap_or(0.7),
            a1: a.a1.unwrap_or(1.0),
            a2: a.a2.unwrap_or(1.0),
            norm: a.norm.map(Norm::from).unwrap_or(Norm::LInf),
        },
        None => bail!("--model is required"),
    })
}

fn spa_params(model: &ModelConfig, seed: u64) -> Option<SpaParams> {
    match *model {
        ModelConfig::Spa {
            n,
            dim,
            p,
            a1,
            a2,
            norm,
        } => Some(SpaParams {
            n,
            dim,
            p,
            a1,
            a2,
            norm,
            seed,
        }),
        _ => None,
    }
}

fn gen(common: &Common, a: ModelArgs) -> Result<bool> {
    let model = model_config(&a)?;
    let seed = common.seed;
    let (g, positions) = match model {
        ModelConfig::Regular { n, d, simple } => {
            let mut p = RegularParams::new(n, d, seed);
            p.require_simple = simple;
            (gen_pairing(&p)?, None)
        }
        ModelConfig::Pa { n, m } => (gen_pa(&PaParams { n, m, seed })?, None),
        ModelConfig::Spa { .. } => {
            let sg = gen_spa(&spa_params(&model, seed).expect("spa model"))?;
            (undirect(&sg), Some(sg))
        }
    };
    match &common.out {
        Some(path) => {
            let mut w = create(path)?;
            write_edge_list(&mut w, &g)?;
            w.flush()?;
            if let Some(sg) = positions {
                let mut w = create(&pos_path(path))?;
                sg.write_positions(&mut w)?;
                w.flush()?;
            }
        }
        None => {
            if positions.is_some() {
                bail!("SPA output needs --out, since positions go to <out>.pos");
            }
            write_edge_list(io::stdout().lock(), &g)?;
        }
    }
    Ok(true)
}

/// `3..=10`, `3..11` or a comma list.
fn parse_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..=") {
        return Ok((lo.trim().parse()?..=hi.trim().parse()?).collect());
    }
    if let Some((lo, hi)) = s.split_once("..") {
        return Ok((lo.trim().parse()?..hi.trim().parse()?).collect());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("bad range item {t:?}"))
        })
        .collect()
}

fn bounds_cmd(common: &Common, a: BoundsArgs) -> Result<bool> {
    let d = parse_range(a.d_range.as_deref().unwrap_or("3..=10"))?;
    let m = parse_range(a.m_range.as_deref().unwrap_or("7,8,9,10,100,1000"))?;
    let rows = bound_table(&d, &m, a.tol.unwrap_or(1e-10))?;
    match a.csv.as_ref().or(common.out.as_ref()) {
        Some(path) => {
            let mut w = create(path)?;
            write_bound_csv(&mut w, &rows)?;
            w.flush()?;
        }
        None => write_bound_csv(io::stdout().lock(), &rows)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct BoundReport {
    name: &'static str,
    kind: &'static str,
    bound: f64,
    pass: bool,
}

fn lower(name: &'static str, bound: f64, value: f64) -> BoundReport {
    BoundReport {
        name,
        kind: "lower",
        bound,
        pass: value >= bound - 1e-12,
    }
}

fn upper(name: &'static str, bound: f64, value: f64) -> BoundReport {
    BoundReport {
        name,
        kind: "upper",
        bound,
        pass: value <= bound + 1e-12,
    }
}

fn read_graph(path: Option<&PathBuf>) -> Result<(PathBuf, Graph)> {
    let path = path.context("--in is required")?.clone();
    let g = read_edge_list(open(&path)?).with_context(|| format!("reading {}", path.display()))?;
    Ok((path, g))
}

fn partition_cmd(common: &Common, a: PartitionArgs) -> Result<bool> {
    let (path, g) = read_graph(a.input.as_ref())?;
    let m: &MethodArgs = &a.method;
    let method = m.method.context("--method is required")?;
    let mut omega = None;
    let mut checks = Vec::new();
    let p = match method {
        MethodKind::Tree => {
            let h = m.h.context("--h is required for tree")?;
            decompose_connected(&g, h)?
        }
        MethodKind::Forest => partition_forest(&g)?,
        MethodKind::Avgdeg => partition_avg_degree(&g)?,
        MethodKind::Majority => {
            let tie = m.tie.map(Into::into).unwrap_or_default();
            majority_colouring(&g, m.eps.unwrap_or(0.05), tie, common.seed)?.partition
        }
        MethodKind::Strips => {
            let pos = pos_path(&path);
            let sg = SpaGraph::from_parts(open(&pos)?, g.edges())
                .with_context(|| format!("reading {}", pos.display()))?;
            let w = match (m.omega, m.max_omega) {
                (Some(w), _) => w,
                (None, max) => best_strip_partition(&sg, max.unwrap_or(20))?.0,
            };
            omega = Some(w);
            strip_partition(&sg, w)?
        }
        MethodKind::Refine => local_search_refine(
            &g,
            &Partition::singletons(g.n()),
            m.passes.unwrap_or(20),
            m.gamma.unwrap_or(1.0),
            common.seed,
        )?,
    };
    let gamma = if method == MethodKind::Refine {
        m.gamma.unwrap_or(1.0)
    } else {
        1.0
    };
    let b = modularity_with_resolution(&g, &p, gamma)?;
    let delta = g.max_degree();
    match method {
        MethodKind::Forest => {
            let active = g.degrees().iter().filter(|&&d| d > 0).count();
            if active >= 1 {
                checks.push(lower(
                    "forest_lower",
                    bounds::forest_lower(active, delta)?,
                    b.q,
                ));
            }
        }
        MethodKind::Avgdeg if delta > 0 => {
            let bound = bounds::avg_degree_lower(g.n(), delta, g.average_degree())?;
            checks.push(lower("avg_degree_lower", bound, b.q));
        }
        MethodKind::Tree => {
            let h = m.h.expect("checked above");
            let vols = p.volumes(&g);
            let max = vols.iter().copied().max().unwrap_or(0) as f64;
            checks.push(upper("part_volume_max", h, max));
            if p.part_count() > 1 {
                let min = vols.iter().copied().min().unwrap_or(0) as f64;
                checks.push(lower("part_volume_min", h / delta as f64 - 1.0, min));
            }
        }
        _ => {}
    }
    if let Some(out) = a.partition_out.as_ref().or(common.out.as_ref()) {
        let mut w = create(out)?;
        write_partition(&mut w, &p)?;
        w.flush()?;
    }
    let pass = checks.iter().all(|c| c.pass);
    emit(
        &json!({
            "method": format!("{method:?}").to_lowercase(),
            "n": g.n(),
            "edges": g.edge_count(),
            "parts": p.part_count(),
            "omega": omega,
            "q": b.q,
            "edge_contribution": b.edge_contribution,
            "degree_tax": b.degree_tax,
            "gamma": b.gamma,
            "checks": checks,
            "pass": pass,
        }),
        None,
    )?;
    Ok(pass)
}

fn modularity_cmd(common: &Common, a: ModularityArgs) -> Result<bool> {
    let (_, g) = read_graph(a.input.as_ref())?;
    let ppath = a.partition.context("--partition is required")?;
    let p =
        read_partition(open(&ppath)?).with_context(|| format!("reading {}", ppath.display()))?;
    let b = modularity_with_resolution(&g, &p, a.gamma.unwrap_or(1.0))?;
    let mut report = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "parts": p.part_count(),
        "q": b.q,
        "edge_contribution": b.edge_contribution,
        "degree_tax": b.degree_tax,
        "gamma": b.gamma,
    });
    let mut pass = true;
    if a.exact {
        let (best, _) = exact_modularity(&g)?;
        pass = b.gamma != 1.0 || b.q <= best + 1e-12;
        report["exact"] = json!(best);
    }
    report["pass"] = json!(pass);
    emit(&report, common.out.as_deref())?;
    Ok(pass)
}

fn method_config(m: &MethodArgs) -> Result<MethodConfig> {
    Ok(match m.method.context("--method is required")? {
        MethodKind::Tree => MethodConfig::Tree {
            h: m.h.context("--h is required for tree")?,
        },
        MethodKind::Forest => MethodConfig::Forest,
        MethodKind::Avgdeg => MethodConfig::Avgdeg,
        MethodKind::Majority => MethodConfig::Majority {
            eps: m.eps.unwrap_or(0.05),
            tie: m.tie.map(Into::into).unwrap_or_default(),
        },
        MethodKind::Strips => MethodConfig::Strips {
            omega: m.omega,
            max_omega: m.max_omega,
        },
        MethodKind::Refine => MethodConfig::Refine {
            passes: m.passes.unwrap_or(20),
            gamma: m.gamma.unwrap_or(1.0),
        },
    })
}

fn experiment(common: &Common, a: ExperimentArgs) -> Result<bool> {
    let cfg = ExperimentConfig {
        model: model_config(&a.model)?,
        method: method_config(&a.method)?,
        trials: a.trials.unwrap_or(10),
        base_seed: common.seed,
        csv: a.csv,
        json: a.json.or_else(|| common.out.clone()),
    };
    let r = run_experiment(&cfg)?;
    let failed: Vec<usize> = r
        .trials
        .iter()
        .filter(|t| !t.pass())
        .map(|t| t.trial)
        .collect();
    emit(
        &json!({
            "trials": r.trials.len(),
            "q": r.q,
            "edge_contribution": r.edge_contribution,
            "degree_tax": r.degree_tax,
            "failed_trials": failed,
            "pass": r.all_pass,
        }),
        None,
    )?;
    Ok(r.all_pass)
}

fn verify(common: &Common, a: VerifyArgs) -> Result<bool> {
    let check = a.check.context("--check is required")?;
    let seed = common.seed;
    let (pass, report) = match check {
        CheckKind::Martingale => {
            let r = martingale_check(
                a.model.m.unwrap_or(2),
                a.c.unwrap_or(0.25),
                a.model.n.unwrap_or(100_000),
                a.trials.unwrap_or(50),
                seed,
            )?;
            (r.pass_fraction >= 0.95, serde_json::to_value(&r)?)
        }
        CheckKind::Growth => {
            let mut model = a.model.clone();
            model.model = Some(ModelKind::Spa);
            model.n = Some(model.n.unwrap_or(10_000));
            let cfg = model_config(&model)?;
            let params = spa_params(&cfg, seed).expect("spa model");
            let r = degree_growth_check(&params, a.bins.unwrap_or(10))?;
            let target = params.p * params.a1;
            let mut v = serde_json::to_value(&r)?;
            v["target"] = json!(target);
            ((r.fitted_exponent - target).abs() <= 0.15, v)
        }
        CheckKind::Components => {
            let m = a.model.m.unwrap_or(1);
            let n = a.model.n.unwrap_or(100_000);
            let trials = a.trials.unwrap_or(30);
            if m == 1 {
                let r = component_count_check(1, n, trials, seed)?;
                let se = (r.expected_variance / trials as f64).sqrt();
                let centre = (n as f64).ln() / 2.0;
                let mut v = serde_json::to_value(&r)?;
                v["log_band_pass"] = json!((r.summary.mean - centre).abs() <= 1.0);
                ((r.summary.mean - r.expected).abs() <= 3.0 * se, v)
            } else {
                let counts = component_counts(m, n, trials, seed)?;
                let connected = counts.iter().filter(|&&c| c == 1).count();
                let fraction = connected as f64 / trials as f64;
                (
                    fraction >= 0.95,
                    json!({ "counts": counts, "connected_fraction": fraction }),
                )
            }
        }
        CheckKind::PowerLaw => {
            let r = power_law_check(
                a.model.m.unwrap_or(2),
                a.model.n.unwrap_or(100_000),
                a.trials.unwrap_or(10),
                seed,
            )?;
            (
                (-2.25..=-1.75).contains(&r.tail_slope),
                serde_json::to_value(&r)?,
            )
        }
    };
    let mut report = report;
    report["check"] = json!(format!("{check:?}"));
    report["pass"] = json!(pass);
    emit(&report, common.out.as_deref())?;
    Ok(pass)
}
