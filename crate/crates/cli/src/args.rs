//! Command-line flags and the matching config file sections. Every section
//! uses the flag names as keys; a flag given on the command line wins.
//! Sections that embed model or method keys accept unknown keys silently,
//! since serde cannot reject them through a flattened struct.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use modbounds_core::generators::Norm;
use modbounds_core::partition::TieRule;

#[derive(Debug, Parser)]
#[command(
    name = "modbounds",
    version,
    about = "Modularity of random graphs: generators, partitions and bounds"
)]
pub struct Cli {
    /// Base seed (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Primary output file of the subcommand.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with top-level `seed`/`out` and one section per subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a graph and write it as an edge list.
    Gen(ModelArgs),
    /// Tabulate the numerical bounds.
    Bounds(BoundsArgs),
    /// Partition a graph read from an edge list.
    Partition(PartitionArgs),
    /// Modularity of a given partition.
    Modularity(ModularityArgs),
    /// Repeated generate, partition and score runs against the bounds.
    Experiment(ExperimentArgs),
    /// Distributional checks of the random models.
    Verify(VerifyArgs),
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub gen: ModelArgs,
    pub bounds: BoundsArgs,
    pub partition: PartitionArgs,
    pub modularity: ModularityArgs,
    pub experiment: ExperimentArgs,
    pub verify: VerifyArgs,
}

/// Fills every unset field of `self` from `file`.
pub trait Merge {
    fn merge(self, file: Self) -> Self;
}

macro_rules! merge_fields {
    ($t:ty { $($opt:ident),* } flags { $($flag:ident),* } nested { $($nested:ident),* }) => {
        impl Merge for $t {
            fn merge(self, file: Self) -> Self {
                Self {
                    $($opt: self.$opt.or(file.$opt),)*
                    $($flag: self.$flag || file.$flag,)*
                    $($nested: self.$nested.merge(file.$nested),)*
                }
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Regular,
    Pa,
    Spa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    Linf,
    L2,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Linf => Norm::LInf,
            NormArg::L2 => Norm::L2,
        }
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Number of vertices (default 1000).
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree of the regular model (default 3).
    #[arg(long)]
    pub d: Option<usize>,
    /// Redraw pairings until the graph is simple.
    #[arg(long)]
    pub simple: bool,
    /// Edges per vertex in the preferential attachment model (default 2).
    #[arg(long)]
    pub m: Option<usize>,
    /// SPA dimension (default 2).
    #[arg(long)]
    pub dim: Option<usize>,
    /// SPA link probability (default 0.7).
    #[arg(long)]
    pub p: Option<f64>,
    /// SPA sphere coefficients (default 1 and 1).
    #[arg(long)]
    pub a1: Option<f64>,
    #[arg(long)]
    pub a2: Option<f64>,
    #[arg(long, value_enum)]
    pub norm: Option<NormArg>,
}

merge_fields!(ModelArgs { model, n, d, m, dim, p, a1, a2, norm } flags { simple } nested {});

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct BoundsArgs {
    /// Degrees, as `3..=10`, `3..11` or `3,4,5` (default 3..=10).
    #[arg(long)]
    pub d_range: Option<String>,
    /// PA parameters, same syntax (default 7,8,9,10,100,1000).
    #[arg(long)]
    pub m_range: Option<String>,
    /// Root-finding tolerance (default 1e-10).
    #[arg(long)]
    pub tol: Option<f64>,
    /// CSV destination; falls back to --out, then stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

merge_fields!(BoundsArgs { d_range, m_range, tol, csv } flags {} nested {});

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    Tree,
    Forest,
    Avgdeg,
    Majority,
    Strips,
    Refine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieArg {
    Fair,
    DriftCorrected,
}

impl From<TieArg> for TieRule {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::Fair => TieRule::Fair,
            TieArg::DriftCorrected => TieRule::DriftCorrected,
        }
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct MethodArgs {
    #[arg(long, value_enum)]
    pub method: Option<MethodKind>,
    /// Volume cap for `tree`.
    #[arg(long)]
    pub h: Option<f64>,
    /// Fixed strip count for `strips`.
    #[arg(long)]
    pub omega: Option<usize>,
    /// Try every strip count up to this one and keep the best.
    #[arg(long)]
    pub max_omega: Option<usize>,
    /// Seed fraction for `majority` (default 0.05).
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum)]
    pub tie: Option<TieArg>,
    /// Local search passes for `refine` (default 20).
    #[arg(long)]
    pub passes: Option<usize>,
    /// Resolution for `refine` (default 1).
    #[arg(long)]
    pub gamma: Option<f64>,
}

merge_fields!(MethodArgs { method, h, omega, max_omega, eps, tie, passes, gamma } flags {} nested {});

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct PartitionArgs {
    /// Edge list; for `strips`, positions are read from `<in>.pos`.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub method: MethodArgs,
    /// Partition destination; falls back to --out.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
}

merge_fields!(PartitionArgs { input, partition_out } flags {} nested { method });

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ModularityArgs {
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Partition file with `vertex part_id` lines.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Also report the exact optimum (n <= 12).
    #[arg(long)]
    pub exact: bool,
}

merge_fields!(ModularityArgs { input, partition, gamma } flags { exact } nested {});

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ExperimentArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub method: MethodArgs,
    /// Number of trials (default 10).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Per-trial CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Full JSON dump; falls back to --out.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

merge_fields!(ExperimentArgs { trials, csv, json } flags {} nested { model, method });

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Martingale,
    Growth,
    Components,
    PowerLaw,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: Option<CheckKind>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Martingale start fraction (default 0.25).
    #[arg(long)]
    pub c: Option<f64>,
    /// Trials (defaults: martingale 50, components 30, power-law 10).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Age bins for the growth check (default 10).
    #[arg(long)]
    pub bins: Option<usize>,
}

merge_fields!(VerifyArgs { check, c, trials, bins } flags {} nested { model });
