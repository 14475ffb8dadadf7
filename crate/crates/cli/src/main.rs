//! `uavhitch`: plan single hitches, match fleets, run experiments and sweeps.
//!
//! Exit codes: 0 success, 2 invalid input, 3 instance too large for the
//! exhaustive solver.

mod commands;
mod number;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uav_hitch::HitchError;

#[derive(Debug, Parser)]
#[command(
    name = "uavhitch",
    version,
    about = "Energy-aware UAV hitching on ground vehicles"
)]
struct Cli {
    /// Progress and summaries on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Best ride for one UAV on one vehicle.
    Plan(PlanArgs),
    /// Assign the UAVs of a scenario file to its vehicles.
    Match(MatchArgs),
    /// Monte Carlo comparison of fly-direct, greedy and optimal matching.
    Simulate(SimulateArgs),
    /// Optimal consumption over a parameter grid.
    Sweep(SweepArgs),
    /// Check scenario files.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct PlanArgs {
    /// Distance to the destination (km).
    #[arg(long)]
    x: f64,
    /// UAV flight speed (km/h).
    #[arg(long, default_value_t = 60.0)]
    u: f64,
    /// Vehicle speed (km/h).
    #[arg(long)]
    v: f64,
    /// Charging rate; 0 for hitching only, `inf` for a battery swap.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Heading deviation of the vehicle from the destination.
    #[arg(long)]
    theta: f64,
    /// Energy weight in [0, 1].
    #[arg(long, default_value_t = 0.8)]
    omega: f64,
    /// Arrival deadline (h).
    #[arg(long, default_value_t = f64::INFINITY)]
    deadline: f64,
    #[arg(long, default_value_t = f64::INFINITY)]
    battery_capacity: f64,
    #[arg(long, default_value_t = 0.0)]
    battery_level: f64,
    #[arg(long, default_value_t = uav_hitch::PlannerConfigF64::DEFAULT_TOL)]
    tol: f64,
    /// Read `--theta` in degrees.
    #[arg(long)]
    degrees: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Solver {
    Msa,
    Greedy,
    Brute,
}

#[derive(Debug, Args)]
struct MatchArgs {
    scenario: PathBuf,
    #[arg(long, value_enum, default_value_t = Solver::Msa)]
    solver: Solver,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Preset parameters: 1 (headings in [0, pi]) or 2 (headings in [0, pi/2]).
    #[arg(long, default_value_t = 1, conflicts_with = "params")]
    case: u8,
    /// Generator parameters as JSON, instead of a preset.
    #[arg(long)]
    params: Option<PathBuf>,
    /// UAV populations, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [5, 10, 15, 20, 25, 30, 35, 40])]
    uavs: Vec<usize>,
    /// Number of vehicles; defaults to 40 for presets.
    #[arg(long)]
    vehicles: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, env = "UAVHITCH_SEED", default_value_t = 42)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Also write every trial's scenario file into this directory.
    #[arg(long)]
    emit_scenarios: Option<PathBuf>,
    /// CSV destination; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Speed,
    Gamma,
    Surface,
    Battery,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Vehicle speed when not swept.
    #[arg(long)]
    v: Option<f64>,
    /// Charging rate when not swept.
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    deadline: Option<f64>,
    /// Speed grid as `start:stop:steps`.
    #[arg(long)]
    v_grid: Option<String>,
    /// Charging-rate grid as `start:stop:steps`.
    #[arg(long)]
    gamma_grid: Option<String>,
    /// Free battery room grid as `start:stop:steps`.
    #[arg(long)]
    headroom_grid: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Plan(a) => commands::plan(a),
        Command::Match(a) => commands::match_fleet(a),
        Command::Simulate(a) => commands::simulate(a, cli.verbose),
        Command::Sweep(a) => commands::sweep(a),
        Command::Validate(a) => commands::validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let guard = e.chain().any(|c| {
        matches!(
            c.downcast_ref::<HitchError>(),
            Some(HitchError::SizeGuard { .. })
        )
    });
    if guard {
        3
    } else {
        2
    }
}
