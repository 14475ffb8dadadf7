//! Seeded random fleets.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::scenario::Scenario;
use crate::error::{invalid, Result};
use crate::model::{PairGeometry, PlannerConfig, UavTask, VehicleOffer};

/// How deadlines are assigned to generated UAVs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeadlinePolicy {
    Unbounded,
    /// `D_i = kappa * x_i / u`, with `kappa >= 1`.
    Slack {
        kappa: f64,
    },
}

/// How many UAVs each generated vehicle can carry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityPolicy {
    Fixed {
        capacity: u32,
    },
    /// Uniform over `min..=max`.
    Uniform {
        min: u32,
        max: u32,
    },
}

/// Everything [`generate_scenario`] needs besides the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub n_uavs: usize,
    pub n_vehicles: usize,
    /// Heading deviations are uniform on this closed range (radians).
    pub theta_range: (f64, f64),
    /// Trip lengths are uniform on `(0, x_max]` (km).
    pub x_max: f64,
    pub u: f64,
    pub v: f64,
    pub gamma: f64,
    pub omega: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "unbounded")]
    pub deadline: DeadlinePolicy,
    #[serde(default = "single_seat")]
    pub capacity: CapacityPolicy,
    /// Per-vehicle speed range; `None` keeps every vehicle at `v`.
    #[serde(default)]
    pub v_range: Option<(f64, f64)>,
    /// Per-vehicle charging-rate range; `None` keeps every vehicle at `gamma`.
    #[serde(default)]
    pub gamma_range: Option<(f64, f64)>,
    #[serde(default)]
    pub label: String,
}

fn default_tol() -> f64 {
    PlannerConfig::<f64>::DEFAULT_TOL
}

fn unbounded() -> DeadlinePolicy {
    DeadlinePolicy::Unbounded
}

fn single_seat() -> CapacityPolicy {
    CapacityPolicy::Fixed { capacity: 1 }
}

impl GeneratorParams {
    /// Reference setting with vehicles heading anywhere in `[0, pi]`.
    pub fn case1(n_uavs: usize, n_vehicles: usize) -> Self {
        Self {
            n_uavs,
            n_vehicles,
            theta_range: (0.0, PI),
            x_max: 20.0,
            u: 60.0,
            v: 40.0,
            gamma: 0.3,
            omega: 0.8,
            tol: default_tol(),
            deadline: DeadlinePolicy::Unbounded,
            capacity: single_seat(),
            v_range: None,
            gamma_range: None,
            label: "case1".into(),
        }
    }

    /// Reference setting with vehicles heading within `[0, pi/2]`.
    pub fn case2(n_uavs: usize, n_vehicles: usize) -> Self {
        Self {
            theta_range: (0.0, FRAC_PI_2),
            label: "case2".into(),
            ..Self::case1(n_uavs, n_vehicles)
        }
    }

    /// Preset by case number, 1 or 2.
    pub fn case(number: u8, n_uavs: usize, n_vehicles: usize) -> Result<Self> {
        match number {
            1 => Ok(Self::case1(n_uavs, n_vehicles)),
            2 => Ok(Self::case2(n_uavs, n_vehicles)),
            n => Err(invalid("case", format!("expected 1 or 2, got {n}"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.theta_range;
        if !(0.0 <= lo && lo <= hi && hi <= PI) {
            return Err(invalid(
                "theta_range",
                format!("need 0 <= lo <= hi <= pi, got [{lo}, {hi}]"),
            ));
        }
        positive("x_max", self.x_max)?;
        positive("u", self.u)?;
        positive("v", self.v)?;
        PlannerConfig::with_tol(self.omega, self.tol)?;
        VehicleOffer::new(self.v, self.gamma)?;
        if let DeadlinePolicy::Slack { kappa } = self.deadline {
            if !(kappa.is_finite() && kappa >= 1.0) {
                return Err(invalid(
                    "deadline",
                    format!("kappa must be finite and >= 1, got {kappa}"),
                ));
            }
        }
        if let CapacityPolicy::Uniform { min, max } = self.capacity {
            if min == 0 || min > max {
                return Err(invalid(
                    "capacity",
                    format!("need 1 <= min <= max, got {min}..={max}"),
                ));
            }
        }
        if let CapacityPolicy::Fixed { capacity: 0 } = self.capacity {
            return Err(invalid("capacity", "a vehicle must carry at least one UAV"));
        }
        if let Some((lo, hi)) = self.v_range {
            if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                return Err(invalid(
                    "v_range",
                    format!("need 0 < lo <= hi, got [{lo}, {hi}]"),
                ));
            }
        }
        if let Some((lo, hi)) = self.gamma_range {
            if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
                return Err(invalid(
                    "gamma_range",
                    format!("need 0 <= lo <= hi, got [{lo}, {hi}]"),
                ));
            }
        }
        Ok(())
    }
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

/// Seed of one trial, mixed from the master seed and the trial's coordinates.
///
/// Depends only on its arguments, so trials can run in any order.
pub fn trial_seed(master: u64, uav_count: usize, trial: usize) -> u64 {
    let mut h = splitmix(master);
    h = splitmix(h ^ uav_count as u64);
    splitmix(h ^ trial as u64)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Draws one fleet. Identical `(params, seed)` give identical scenarios.
pub fn generate_scenario(params: &GeneratorParams, seed: u64) -> Result<Scenario> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let config = PlannerConfig::with_tol(params.omega, params.tol)?;

    let mut tasks = Vec::with_capacity(params.n_uavs);
    for _ in 0..params.n_uavs {
        // 1 - [0, 1) keeps zero out of the range
        let x = params.x_max * (1.0 - rng.gen::<f64>());
        let task = UavTask::new(x, params.u)?;
        let task = match params.deadline {
            DeadlinePolicy::Unbounded => task,
            DeadlinePolicy::Slack { kappa } => task.with_deadline(kappa * task.direct_time())?,
        };
        tasks.push(task);
    }

    let mut offers = Vec::with_capacity(params.n_vehicles);
    for _ in 0..params.n_vehicles {
        let v = params.v_range.map_or(params.v, |r| uniform(&mut rng, r));
        let gamma = params
            .gamma_range
            .map_or(params.gamma, |r| uniform(&mut rng, r));
        let capacity = match params.capacity {
            CapacityPolicy::Fixed { capacity } => capacity,
            CapacityPolicy::Uniform { min, max } => rng.gen_range(min..=max),
        };
        offers.push(VehicleOffer::with_capacity(v, gamma, capacity)?);
    }

    let mut geoms = Vec::with_capacity(params.n_uavs);
    for _ in 0..params.n_uavs {
        let row = (0..params.n_vehicles)
            .map(|_| PairGeometry::new(uniform(&mut rng, params.theta_range)))
            .collect::<Result<Vec<_>>>()?;
        geoms.push(row);
    }

    Ok(Scenario {
        config,
        tasks,
        offers,
        geoms,
        seed,
        label: params.label.clone(),
    })
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    (lo + (hi - lo) * rng.gen::<f64>()).min(hi)
}
