//! Scenario files, random fleets, Monte Carlo experiments and parameter sweeps.

mod generate;
mod scenario;
mod sweep;
mod trial;

pub use generate::{
    generate_scenario, trial_seed, CapacityPolicy, DeadlinePolicy, GeneratorParams,
};
pub use scenario::Scenario;
pub use sweep::{sweep_curves, Grid, SweepKind, SweepSpec, SweepTable};
pub use trial::{
    run_experiment, run_trial, trial_scenario, write_experiment_csv, ExperimentRow, Improvement,
    TrialReport, EXPERIMENT_COLUMNS,
};
