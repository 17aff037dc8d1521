//! Experiment orchestration and distributional checks.

mod checks;
mod experiment;
mod stats;

pub use checks::{
    component_count_check, component_counts, degree_growth_check, expected_components,
    martingale_check, martingale_checkpoints, power_law_check, ComponentReport, GrowthBin,
    GrowthReport, MartingaleReport, PowerLawReport,
};
pub use experiment::{
    run_experiment, write_trials_csv, BoundCheck, BoundKind, ExperimentConfig, ExperimentResult,
    MethodConfig, ModelConfig, TrialResult,
};
pub use stats::{linear_fit, summarize, Summary};
