//! Optimal consumption over parameter grids, for plotting.

use std::f64::consts::FRAC_PI_4;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::{PairGeometry, PlannerConfig, UavTask, VehicleOffer};
use crate::planner::{optimal_distance, optimal_distance_limited};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Optimal consumption against vehicle speed.
    Speed,
    /// Optimal consumption against charging rate.
    Gamma,
    /// Optimal consumption over a speed x charging-rate grid.
    Surface,
    /// Optimal consumption against the free battery room.
    Battery,
}

/// Evenly spaced values from `start` to `stop`, both included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, steps: usize) -> Self {
        Self { start, stop, steps }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.start],
            n => {
                let h = (self.stop - self.start) / (n - 1) as f64;
                (0..n)
                    .map(|k| {
                        if k + 1 == n {
                            self.stop
                        } else {
                            self.start + h * k as f64
                        }
                    })
                    .collect()
            }
        }
    }

    fn validate(&self, field: &'static str) -> Result<()> {
        if !(self.start.is_finite()
            && self.stop.is_finite()
            && self.start <= self.stop
            && self.steps >= 1)
        {
            return Err(invalid(
                field,
                format!("need finite start <= stop and steps >= 1, got {self:?}"),
            ));
        }
        Ok(())
    }
}

/// Fixed pair parameters and the grids to sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub x: f64,
    pub u: f64,
    pub omega: f64,
    pub theta: f64,
    /// Vehicle speed when it is not swept.
    pub v: f64,
    /// Charging rate when it is not swept.
    pub gamma: f64,
    /// Infinite for no deadline.
    pub deadline: f64,
    pub v_grid: Grid,
    pub gamma_grid: Grid,
    pub headroom_grid: Grid,
}

impl SweepSpec {
    /// Defaults per kind.
    ///
    /// The surface uses a deadline: without one the optimum over speed
    /// always sits at an end of the speed range, while a binding deadline
    /// makes a mid-range vehicle the best choice at high charging rates.
    pub fn new(kind: SweepKind) -> Self {
        let base = Self {
            kind,
            x: 5.0,
            u: 60.0,
            omega: 0.8,
            theta: 0.0,
            v: 40.0,
            gamma: 0.0,
            deadline: f64::INFINITY,
            v_grid: Grid::new(1.0, 80.0, 80),
            gamma_grid: Grid::new(0.0, 0.5, 51),
            headroom_grid: Grid::new(0.0, 0.1, 101),
        };
        match kind {
            SweepKind::Speed | SweepKind::Gamma => base,
            SweepKind::Surface => Self {
                v_grid: Grid::new(20.0, 80.0, 61),
                gamma_grid: Grid::new(0.0, 0.5, 11),
                deadline: 0.125,
                ..base
            },
            SweepKind::Battery => Self {
                v: 30.0,
                gamma: 0.3,
                theta: FRAC_PI_4,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        PlannerConfig::new(self.omega)?;
        let task = self.task()?;
        PairGeometry::new(self.theta)?;
        VehicleOffer::new(self.v, self.gamma)?;
        match self.kind {
            SweepKind::Speed => self.v_grid.validate("v_grid"),
            SweepKind::Gamma => self.gamma_grid.validate("gamma_grid"),
            SweepKind::Surface => {
                self.v_grid.validate("v_grid")?;
                self.gamma_grid.validate("gamma_grid")
            }
            SweepKind::Battery => {
                self.headroom_grid.validate("headroom_grid")?;
                if self.headroom_grid.start < 0.0 {
                    return Err(invalid("headroom_grid", "battery room must be >= 0"));
                }
                task.validate()
            }
        }
    }

    fn task(&self) -> Result<UavTask> {
        UavTask::new(self.x, self.u)?.with_deadline(self.deadline)
    }
}

/// Rows of `param1[,param2],value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Optimal consumption at every point of the sweep's grid.
pub fn sweep_curves(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let cfg = PlannerConfig::new(spec.omega)?;
    let task = spec.task()?;
    let geom = PairGeometry::new(spec.theta)?;
    let best = |v: f64, gamma: f64| -> Result<f64> {
        let offer = VehicleOffer::new(v, gamma)?;
        Ok(optimal_distance(&cfg, &task, &offer, &geom)?.consumption)
    };

    let (headers, rows): (&[&str], Vec<Vec<f64>>) = match spec.kind {
        SweepKind::Speed => (
            &["v", "value"],
            spec.v_grid
                .values()
                .into_iter()
                .map(|v| Ok(vec![v, best(v, spec.gamma)?]))
                .collect::<Result<_>>()?,
        ),
        SweepKind::Gamma => (
            &["gamma", "value"],
            spec.gamma_grid
                .values()
                .into_iter()
                .map(|g| Ok(vec![g, best(spec.v, g)?]))
                .collect::<Result<_>>()?,
        ),
        SweepKind::Surface => {
            let mut rows = Vec::new();
            for v in spec.v_grid.values() {
                for g in spec.gamma_grid.values() {
                    rows.push(vec![v, g, best(v, g)?]);
                }
            }
            (&["v", "gamma", "value"], rows)
        }
        SweepKind::Battery => {
            let offer = VehicleOffer::new(spec.v, spec.gamma)?;
            let capacity = spec.headroom_grid.stop.max(1.0);
            let rows = spec
                .headroom_grid
                .values()
                .into_iter()
                .map(|room| {
                    let t = task.with_battery(capacity, capacity - room)?;
                    Ok(vec![
                        room,
                        optimal_distance_limited(&cfg, &t, &offer, &geom)?.consumption,
                    ])
                })
                .collect::<Result<_>>()?;
            (&["headroom", "value"], rows)
        }
    };
    Ok(SweepTable {
        headers: headers.iter().map(|h| h.to_string()).collect(),
        rows,
    })
}
