//! Fleet-level assignment of UAVs to vehicles.
//!
//! Each UAV-vehicle pair is first planned on its own; the resulting
//! savings become edge weights of a bipartite graph, and the assignment
//! maximising the total saving is found by a primal-dual method. A
//! vehicle that carries `z` UAVs appears as `z` identical columns.

mod brute;
mod duals;
mod greedy;
mod msa;

pub use brute::{brute_force_match, BRUTE_FORCE_LIMIT};
pub use duals::verify_duals;
pub use greedy::greedy_match;
pub use msa::{msa_match, DualState, MsaSolution};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, HitchError, Result};
use crate::model::{HitchPlan, PairGeometry, PlannerConfig, UavTask, VehicleOffer};
use crate::planner::{battery_swap_plan, optimal_distance, plan_pair};
use crate::scalar::Scalar;

/// Savings of every UAV on every vehicle slot.
#[derive(Debug, Clone, PartialEq)]
pub struct SavingMatrix<T = f64> {
    n_uavs: usize,
    n_vehicles: usize,
    /// Row-major, `n_uavs x column_origin.len()`.
    weights: Vec<T>,
    column_origin: Vec<usize>,
    /// Row-major, `n_uavs x n_vehicles`; absent for matrices built from raw weights.
    plans: Option<Vec<HitchPlan<T>>>,
}

impl<T: Scalar> SavingMatrix<T> {
    /// One column per row entry, every vehicle carrying a single UAV.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n_vehicles = rows.first().map_or(0, Vec::len);
        Self::with_capacities(rows, &vec![1; n_vehicles])
    }

    /// Expands vehicle `j` into `capacities[j]` identical columns.
    pub fn with_capacities(rows: &[Vec<T>], capacities: &[u32]) -> Result<Self> {
        let n_vehicles = capacities.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_vehicles {
                return Err(HitchError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n_vehicles}",
                    row.len()
                )));
            }
            if let Some(w) = row.iter().find(|w| !(w.is_finite() && **w >= T::zero())) {
                return Err(invalid(
                    "weights",
                    format!("savings must be finite and >= 0, got {w}"),
                ));
            }
        }
        if capacities.contains(&0) {
            return Err(invalid("capacity", "a vehicle must carry at least one UAV"));
        }
        let column_origin: Vec<usize> = capacities
            .iter()
            .enumerate()
            .flat_map(|(j, &z)| std::iter::repeat_n(j, z as usize))
            .collect();
        let weights = rows
            .iter()
            .flat_map(|row| column_origin.iter().map(move |&j| row[j]))
            .collect();
        Ok(Self {
            n_uavs: rows.len(),
            n_vehicles,
            weights,
            column_origin,
            plans: None,
        })
    }

    pub fn n_uavs(&self) -> usize {
        self.n_uavs
    }

    /// Vehicles before slot expansion.
    pub fn n_vehicles(&self) -> usize {
        self.n_vehicles
    }

    /// Vehicle slots after expansion.
    pub fn n_columns(&self) -> usize {
        self.column_origin.len()
    }

    #[inline]
    pub fn weight(&self, uav: usize, column: usize) -> T {
        self.weights[uav * self.column_origin.len() + column]
    }

    /// Original vehicle behind an expanded column.
    pub fn vehicle_of(&self, column: usize) -> usize {
        self.column_origin[column]
    }

    pub fn column_origin(&self) -> &[usize] {
        &self.column_origin
    }

    pub fn capacity(&self, vehicle: usize) -> usize {
        self.column_origin.iter().filter(|&&j| j == vehicle).count()
    }

    /// Plan behind the weight of `(uav, vehicle)`, when the matrix was built from plans.
    pub fn plan(&self, uav: usize, vehicle: usize) -> Option<&HitchPlan<T>> {
        self.plans
            .as_ref()
            .map(|plans| &plans[uav * self.n_vehicles + vehicle])
    }

    pub fn max_weight(&self) -> T {
        self.weights.iter().copied().fold(T::zero(), T::max)
    }

    /// Saving of `uav` on each original vehicle.
    pub fn vehicle_row(&self, uav: usize) -> Vec<T> {
        let mut row = vec![T::zero(); self.n_vehicles];
        for (c, &j) in self.column_origin.iter().enumerate() {
            row[j] = self.weight(uav, c);
        }
        row
    }
}

/// Plans every UAV-vehicle pair and collects the savings.
///
/// `geoms[i][j]` is the heading deviation of vehicle `j` for UAV `i`. With
/// `limited` each task's own battery caps the collected charge (see
/// [`plan_pair`]); otherwise batteries are treated as unbounded and swap
/// vehicles use the swap plan.
pub fn build_saving_matrix<T: Scalar>(
    cfg: &PlannerConfig<T>,
    tasks: &[UavTask<T>],
    offers: &[VehicleOffer<T>],
    geoms: &[Vec<PairGeometry<T>>],
    limited: bool,
) -> Result<SavingMatrix<T>> {
    if geoms.len() != tasks.len() {
        return Err(HitchError::DimensionMismatch(format!(
            "{} UAVs but {} geometry rows",
            tasks.len(),
            geoms.len()
        )));
    }
    let n_vehicles = offers.len();
    let mut plans = Vec::with_capacity(tasks.len() * n_vehicles);
    let mut rows = Vec::with_capacity(tasks.len());
    for (i, (task, row)) in tasks.iter().zip(geoms).enumerate() {
        if row.len() != n_vehicles {
            return Err(HitchError::DimensionMismatch(format!(
                "geometry row {i} has {} entries, expected {n_vehicles}",
                row.len()
            )));
        }
        let mut savings = Vec::with_capacity(n_vehicles);
        for (offer, geom) in offers.iter().zip(row) {
            let plan = if limited {
                plan_pair(cfg, task, offer, geom)?
            } else if offer.is_battery_swap() {
                battery_swap_plan(cfg, task, offer, geom)?
            } else {
                optimal_distance(cfg, task, offer, geom)?
            };
            savings.push(plan.saving.max(T::zero()));
            plans.push(plan);
        }
        rows.push(savings);
    }
    let capacities: Vec<u32> = offers.iter().map(|o| o.capacity).collect();
    let mut matrix = SavingMatrix::with_capacities(&rows, &capacities)?;
    matrix.plans = Some(plans);
    Ok(matrix)
}

/// One UAV riding one vehicle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair<T = f64> {
    pub uav: usize,
    pub vehicle: usize,
    /// Expanded slot the UAV occupies.
    pub column: usize,
    pub saving: T,
    pub plan: Option<HitchPlan<T>>,
}

/// An assignment of UAVs to vehicles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult<T = f64> {
    /// Vehicle ridden by each UAV; `None` flies direct.
    pub assignment: Vec<Option<usize>>,
    /// Expanded slot per UAV.
    pub columns: Vec<Option<usize>>,
    pub total_saving: T,
    pub per_pair: Vec<MatchedPair<T>>,
}

impl<T: Scalar> MatchResult<T> {
    /// Builds the result from a slot per UAV, dropping zero-saving pairs.
    pub(crate) fn from_columns(m: &SavingMatrix<T>, columns: Vec<Option<usize>>) -> Self {
        let columns: Vec<Option<usize>> = columns
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.filter(|&c| m.weight(i, c) > T::zero()))
            .collect();
        let mut total_saving = T::zero();
        let mut per_pair = Vec::new();
        let mut assignment = vec![None; columns.len()];
        for (uav, column) in columns.iter().enumerate() {
            if let Some(column) = *column {
                let vehicle = m.vehicle_of(column);
                let saving = m.weight(uav, column);
                total_saving = total_saving + saving;
                assignment[uav] = Some(vehicle);
                per_pair.push(MatchedPair {
                    uav,
                    vehicle,
                    column,
                    saving,
                    plan: m.plan(uav, vehicle).copied(),
                });
            }
        }
        Self {
            assignment,
            columns,
            total_saving,
            per_pair,
        }
    }

    pub fn matched_count(&self) -> usize {
        self.per_pair.len()
    }

    /// Checks one-vehicle-per-UAV, slot capacities and the reported total.
    pub fn is_consistent(&self, m: &SavingMatrix<T>, tol: T) -> bool {
        if self.columns.len() != m.n_uavs() || self.assignment.len() != m.n_uavs() {
            return false;
        }
        let mut used = vec![false; m.n_columns()];
        let mut total = T::zero();
        for (i, c) in self.columns.iter().enumerate() {
            let Some(c) = *c else {
                if self.assignment[i].is_some() {
                    return false;
                }
                continue;
            };
            if c >= m.n_columns() || used[c] || self.assignment[i] != Some(m.vehicle_of(c)) {
                return false;
            }
            if m.weight(i, c) <= T::zero() {
                return false;
            }
            used[c] = true;
            total = total + m.weight(i, c);
        }
        (total - self.total_saving).abs() <= tol
    }
}
