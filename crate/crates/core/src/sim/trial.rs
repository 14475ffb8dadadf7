//! Monte Carlo comparison of fly-direct, greedy matching and optimal matching.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate_scenario, trial_seed, GeneratorParams};
use super::scenario::Scenario;
use crate::error::{invalid, Result};
use crate::matching::{build_saving_matrix, greedy_match, msa_match};

/// Outcome of one random fleet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub n_uavs: usize,
    pub n_vehicles: usize,
    /// Expanded vehicle slots.
    pub n_slots: usize,
    pub seed: u64,
    /// Sum of fly-direct consumptions.
    pub total_direct: f64,
    pub total_greedy: f64,
    pub total_msa: f64,
    pub saving_msa: f64,
    pub saving_greedy: f64,
    /// `100 (saving_msa - saving_greedy) / total_direct`.
    pub improvement_pct: f64,
    pub iterations: usize,
}

impl TrialReport {
    /// Worst-case iteration count of the primal-dual loop, `I x slots`.
    pub fn iteration_bound(&self) -> usize {
        self.n_uavs * self.n_slots
    }
}

/// Plans every pair, matches with both solvers and totals the consumption.
///
/// A UAV left unmatched flies direct.
pub fn run_trial(s: &Scenario) -> Result<TrialReport> {
    s.validate()?;
    let limited = s.tasks.iter().any(|t| t.has_finite_battery());
    let m = build_saving_matrix(&s.config, &s.tasks, &s.offers, &s.geoms, limited)?;
    let msa = msa_match(&m);
    let greedy = greedy_match(&m);

    let total_direct: f64 = s.tasks.iter().map(|t| t.direct_time()).sum();
    let saving_msa = msa.result.total_saving;
    let saving_greedy = greedy.total_saving;
    let improvement_pct = if total_direct > 0.0 {
        (100.0 * (saving_msa - saving_greedy) / total_direct).max(0.0)
    } else {
        0.0
    };
    Ok(TrialReport {
        n_uavs: s.n_uavs(),
        n_vehicles: s.n_vehicles(),
        n_slots: m.n_columns(),
        seed: s.seed,
        total_direct,
        total_greedy: total_direct - saving_greedy,
        total_msa: total_direct - saving_msa,
        saving_msa,
        saving_greedy,
        improvement_pct,
        iterations: msa.iterations,
    })
}

/// Trials of one population size, aggregated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub uav_count: usize,
    pub n_trials: usize,
    pub mean_direct: f64,
    pub mean_greedy: f64,
    pub mean_msa: f64,
    /// Sample standard deviation of the optimal-matching total.
    pub std_msa: f64,
    pub mean_saving_msa: f64,
    pub mean_saving_greedy: f64,
    pub mean_iterations: f64,
    #[serde(skip)]
    pub trials: Vec<TrialReport>,
}

/// The extra reduction of optimal over greedy matching, under three normalisations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Improvement {
    /// Relative to the fly-direct total.
    pub vs_direct: f64,
    /// Relative to the greedy saving.
    pub vs_greedy_saving: f64,
    /// Relative to the greedy total consumption.
    pub vs_greedy_total: f64,
}

impl ExperimentRow {
    fn aggregate(uav_count: usize, trials: Vec<TrialReport>) -> Self {
        let n = trials.len() as f64;
        let mean = |f: fn(&TrialReport) -> f64| trials.iter().map(f).sum::<f64>() / n;
        let mean_msa = mean(|t| t.total_msa);
        let std_msa = if trials.len() > 1 {
            let ss: f64 = trials
                .iter()
                .map(|t| (t.total_msa - mean_msa).powi(2))
                .sum();
            (ss / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            uav_count,
            n_trials: trials.len(),
            mean_direct: mean(|t| t.total_direct),
            mean_greedy: mean(|t| t.total_greedy),
            mean_msa,
            std_msa,
            mean_saving_msa: mean(|t| t.saving_msa),
            mean_saving_greedy: mean(|t| t.saving_greedy),
            mean_iterations: mean(|t| t.iterations as f64),
            trials,
        }
    }

    /// Ratios of the mean extra saving; zero where the denominator vanishes.
    pub fn improvement(&self) -> Improvement {
        let extra = self.mean_saving_msa - self.mean_saving_greedy;
        let ratio = |d: f64| if d > 0.0 { extra / d } else { 0.0 };
        Improvement {
            vs_direct: ratio(self.mean_direct),
            vs_greedy_saving: ratio(self.mean_saving_greedy),
            vs_greedy_total: ratio(self.mean_greedy),
        }
    }

    pub fn max_iterations(&self) -> usize {
        self.trials.iter().map(|t| t.iterations).max().unwrap_or(0)
    }
}

/// Scenario of trial `trial` at population `uav_count`; `params.n_uavs` is overridden.
pub fn trial_scenario(
    params: &GeneratorParams,
    uav_count: usize,
    trial: usize,
    master_seed: u64,
) -> Result<Scenario> {
    let p = GeneratorParams {
        n_uavs: uav_count,
        label: format!("{}-i{uav_count}-t{trial}", params.label),
        ..params.clone()
    };
    generate_scenario(&p, trial_seed(master_seed, uav_count, trial))
}

/// Runs `n_trials` seeded trials for every population in `uav_counts`.
///
/// Trials run on the current rayon pool; results do not depend on its size.
pub fn run_experiment(
    params: &GeneratorParams,
    n_trials: usize,
    uav_counts: &[usize],
    master_seed: u64,
) -> Result<Vec<ExperimentRow>> {
    if n_trials == 0 {
        return Err(invalid("n_trials", "need at least one trial"));
    }
    params.validate()?;
    uav_counts
        .iter()
        .map(|&count| {
            let trials = (0..n_trials)
                .into_par_iter()
                .map(|t| run_trial(&trial_scenario(params, count, t, master_seed)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(ExperimentRow::aggregate(count, trials))
        })
        .collect()
}

/// Writes the aggregated rows as CSV with a header line.
pub fn write_experiment_csv<W: Write>(rows: &[ExperimentRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(EXPERIMENT_COLUMNS)?;
    }
    w.flush()?;
    Ok(())
}

pub const EXPERIMENT_COLUMNS: [&str; 9] = [
    "uav_count",
    "n_trials",
    "mean_direct",
    "mean_greedy",
    "mean_msa",
    "std_msa",
    "mean_saving_msa",
    "mean_saving_greedy",
    "mean_iterations",
];
