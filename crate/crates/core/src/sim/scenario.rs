//! Scenario files: one fleet instance in a JSON document.
//!
//! ```json
//! {
//!   "label": "demo",
//!   "seed": 7,
//!   "config": { "omega": 0.8, "tol": 1e-9 },
//!   "uavs": [ { "x": 5.0, "u": 60.0, "deadline": "inf",
//!               "battery_capacity": "inf", "battery_level": 0.0 } ],
//!   "vehicles": [ { "v": 40.0, "gamma": 0.3, "capacity": 1 } ],
//!   "theta": [ [0.5] ]
//! }
//! ```
//!
//! Unbounded values are written as the string `"inf"`. `theta` holds one
//! row per UAV; a flat row-major array is accepted on input.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, HitchError, Result};
use crate::model::{PairGeometry, PlannerConfig, UavTask, VehicleOffer};

/// A fleet instance: UAVs, vehicles and every pairwise heading deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: PlannerConfig,
    pub tasks: Vec<UavTask>,
    pub offers: Vec<VehicleOffer>,
    /// `geoms[i][j]`: deviation of vehicle `j` from UAV `i`'s heading.
    pub geoms: Vec<Vec<PairGeometry>>,
    pub seed: u64,
    pub label: String,
}

impl Scenario {
    pub fn n_uavs(&self) -> usize {
        self.tasks.len()
    }

    pub fn n_vehicles(&self) -> usize {
        self.offers.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        for t in &self.tasks {
            t.validate()?;
        }
        for o in &self.offers {
            o.validate()?;
        }
        if self.geoms.len() != self.tasks.len() {
            return Err(HitchError::DimensionMismatch(format!(
                "{} UAVs but {} theta rows",
                self.tasks.len(),
                self.geoms.len()
            )));
        }
        for (i, row) in self.geoms.iter().enumerate() {
            if row.len() != self.offers.len() {
                return Err(HitchError::DimensionMismatch(format!(
                    "theta row {i} has {} entries, expected {}",
                    row.len(),
                    self.offers.len()
                )));
            }
            for g in row {
                g.validate()?;
            }
        }
        Ok(())
    }

    /// Parses and validates a scenario document.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| invalid("scenario", e.to_string()))?;
        file.into_scenario()
    }

    /// Pretty-printed document; identical scenarios give identical bytes.
    pub fn to_json(&self) -> String {
        let file = ScenarioFile::from(self);
        let mut out = serde_json::to_string_pretty(&file).expect("scenario serializes");
        out.push('\n');
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default)]
    label: String,
    #[serde(default)]
    seed: u64,
    config: ConfigFile,
    #[serde(default)]
    uavs: Vec<UavFile>,
    #[serde(default)]
    vehicles: Vec<VehicleFile>,
    #[serde(default)]
    theta: ThetaFile,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    omega: f64,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_tol() -> f64 {
    PlannerConfig::<f64>::DEFAULT_TOL
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UavFile {
    x: f64,
    u: f64,
    #[serde(default = "unbounded", with = "maybe_inf")]
    deadline: f64,
    #[serde(default = "unbounded", with = "maybe_inf")]
    battery_capacity: f64,
    #[serde(default)]
    battery_level: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VehicleFile {
    v: f64,
    #[serde(default, with = "maybe_inf")]
    gamma: f64,
    #[serde(default = "one")]
    capacity: u32,
}

fn unbounded() -> f64 {
    f64::INFINITY
}

fn one() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThetaFile {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

impl Default for ThetaFile {
    fn default() -> Self {
        ThetaFile::Rows(Vec::new())
    }
}

impl ScenarioFile {
    fn into_scenario(self) -> Result<Scenario> {
        let config = PlannerConfig::with_tol(self.config.omega, self.config.tol)?;
        let tasks = self
            .uavs
            .into_iter()
            .map(|u| {
                UavTask::new(u.x, u.u)?
                    .with_deadline(u.deadline)?
                    .with_battery(u.battery_capacity, u.battery_level)
            })
            .collect::<Result<Vec<_>>>()?;
        let offers = self
            .vehicles
            .into_iter()
            .map(|v| VehicleOffer::with_capacity(v.v, v.gamma, v.capacity))
            .collect::<Result<Vec<_>>>()?;
        let (ni, nj) = (tasks.len(), offers.len());
        let rows = match self.theta {
            ThetaFile::Rows(rows) if rows.is_empty() && ni * nj == 0 => vec![Vec::new(); ni],
            ThetaFile::Rows(rows) => rows,
            ThetaFile::Flat(flat) => {
                if flat.len() != ni * nj {
                    return Err(HitchError::DimensionMismatch(format!(
                        "flat theta has {} entries, expected {ni} x {nj}",
                        flat.len()
                    )));
                }
                flat.chunks(nj.max(1)).map(<[f64]>::to_vec).collect()
            }
        };
        let geoms = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(PairGeometry::new)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let scenario = Scenario {
            config,
            tasks,
            offers,
            geoms,
            seed: self.seed,
            label: self.label,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        Self {
            label: s.label.clone(),
            seed: s.seed,
            config: ConfigFile {
                omega: s.config.omega,
                tol: s.config.tol,
            },
            uavs: s
                .tasks
                .iter()
                .map(|t| UavFile {
                    x: t.x,
                    u: t.u,
                    deadline: t.deadline,
                    battery_capacity: t.battery_capacity,
                    battery_level: t.battery_level,
                })
                .collect(),
            vehicles: s
                .offers
                .iter()
                .map(|o| VehicleFile {
                    v: o.v,
                    gamma: o.gamma,
                    capacity: o.capacity,
                })
                .collect(),
            theta: ThetaFile::Rows(
                s.geoms
                    .iter()
                    .map(|row| row.iter().map(|g| g.theta).collect())
                    .collect(),
            ),
        }
    }
}

/// `f64` fields where `+inf` travels as the string `"inf"`.
pub(crate) mod maybe_inf {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if *value == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*value)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) if matches!(t.trim(), "inf" | "+inf" | "Infinity") => Ok(f64::INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {t:?}"
            ))),
        }
    }
}
