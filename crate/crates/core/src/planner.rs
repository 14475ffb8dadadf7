//! Optimal hitch distance for one UAV-vehicle pair, and the UAV's choice
//! among several vehicles.
//!
//! Consumption is convex along the vehicle ray, so the constrained optimum
//! is the unconstrained stationary point clipped to the deadline limit.
//! With `phi` the eligibility threshold, the stationary point sits at
//! `x cos(theta) - x sin(theta) cot(phi)` and costs `(x/u) cos(phi - theta)`.

use crate::deadline::largest_feasible;
use crate::eligibility::{gate, Gate};
use crate::error::{HitchError, Result};
use crate::kinematics::{capped_charge, flight_energy, uncapped_charge, weigh};
use crate::model::{Binding, HitchPlan, PairGeometry, PlannerConfig, UavTask, VehicleOffer};
use crate::scalar::Scalar;

/// Optimal plan on a hitching-only vehicle.
pub fn optimal_distance_ho<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<HitchPlan<T>> {
    validate(cfg, task, offer, geom)?;
    if !offer.is_hitching_only() {
        return Err(HitchError::Contract(
            "optimal_distance_ho applies to hitching-only vehicles; use optimal_distance",
        ));
    }
    unbounded_battery(cfg, task, offer, geom)
}

/// Optimal plan for a finite charging rate, ignoring the battery capacity.
///
/// Fails with [`HitchError::UnboundedHitch`] when charging pays off in every
/// direction and the UAV has no deadline.
pub fn optimal_distance<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<HitchPlan<T>> {
    validate(cfg, task, offer, geom)?;
    if offer.is_battery_swap() {
        return Err(HitchError::Contract(
            "battery-swap vehicles are planned with battery_swap_plan or optimal_distance_limited",
        ));
    }
    unbounded_battery(cfg, task, offer, geom)
}

/// Optimal plan when the collected charge is capped by the battery headroom.
///
/// Riding past the point where the battery fills is worth it only up to
/// the hitching-only optimum, so the answer is one of three distances:
/// the unbounded-battery optimum, the hitching-only optimum, or the
/// distance at which the battery becomes full. Swap vehicles are planned
/// by [`battery_swap_plan`].
pub fn optimal_distance_limited<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<HitchPlan<T>> {
    validate(cfg, task, offer, geom)?;
    if offer.is_hitching_only() {
        return unbounded_battery(cfg, task, offer, geom);
    }
    if offer.is_battery_swap() {
        // the battery is full after the swap whatever it held before
        return battery_swap_plan(cfg, task, offer, geom);
    }
    if !task.has_finite_battery() {
        return optimal_distance(cfg, task, offer, geom);
    }

    let ho_target = ray_optimum(cfg, task, &offer.hitching_only(), geom);
    let full_at = task.battery_headroom() * offer.v / offer.gamma;
    let charged_target = ray_optimum(cfg, task, offer, geom);
    let (target, binding) = if full_at >= charged_target {
        (charged_target, Binding::Interior)
    } else if full_at <= ho_target {
        (ho_target, Binding::Interior)
    } else {
        (full_at, Binding::BatteryFull)
    };
    let (y, binding) = apply_deadline(task, offer, geom, target, binding)?;
    evaluate(cfg, task, offer, geom, y, binding, true)
}

/// Plan on a vehicle that swaps in a full battery at pickup.
///
/// Every heading is acceptable for the swap. The UAV keeps riding to the
/// hitching-only optimum when the vehicle would be worth riding anyway and
/// leaves right after the swap otherwise. The reported trajectory starts
/// with the fresh battery.
pub fn battery_swap_plan<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<HitchPlan<T>> {
    validate(cfg, task, offer, geom)?;
    if !offer.is_battery_swap() {
        return Err(HitchError::Contract(
            "battery_swap_plan needs an infinite charging rate",
        ));
    }
    let mut plan = unbounded_battery(cfg, task, &offer.hitching_only(), geom)?;
    plan.departs_after_swap = !plan.hitches();
    Ok(plan)
}

/// Best plan for this pair under the task's own battery model.
///
/// Swap vehicles use [`battery_swap_plan`], finite batteries
/// [`optimal_distance_limited`] and everything else [`optimal_distance`].
pub fn plan_pair<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<HitchPlan<T>> {
    if offer.is_battery_swap() {
        battery_swap_plan(cfg, task, offer, geom)
    } else if task.has_finite_battery() {
        optimal_distance_limited(cfg, task, offer, geom)
    } else {
        optimal_distance(cfg, task, offer, geom)
    }
}

/// Picks the vehicle with the lowest optimal consumption.
///
/// Ties go to the lowest index.
pub fn select_vehicle<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offers: &[(VehicleOffer<T>, PairGeometry<T>)],
) -> Result<(usize, HitchPlan<T>)> {
    let mut best: Option<(usize, HitchPlan<T>)> = None;
    for (idx, (offer, geom)) in offers.iter().enumerate() {
        let plan = plan_pair(cfg, task, offer, geom)?;
        match best {
            Some((_, ref b)) if plan.consumption >= b.consumption => {}
            _ => best = Some((idx, plan)),
        }
    }
    best.ok_or(HitchError::EmptyOffers)
}

fn unbounded_battery<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<HitchPlan<T>> {
    let target = ray_optimum(cfg, task, offer, geom);
    let (y, binding) = apply_deadline(task, offer, geom, target, Binding::Interior)?;
    evaluate(cfg, task, offer, geom, y, binding, false)
}

/// Unconstrained minimiser along the ray: zero when ineligible, infinite
/// when consumption keeps falling forever.
fn ray_optimum<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> T {
    let g = gate(cfg, task, offer);
    if !g.admits(cfg, geom) {
        return T::zero();
    }
    match g {
        Gate::Angle { cosine, .. } => {
            let sine = (T::one() - cosine * cosine).sqrt();
            if sine == T::zero() {
                return T::infinity();
            }
            let (s, c) = geom.theta.sin_cos();
            (task.x * c - task.x * s * (cosine / sine)).max(T::zero())
        }
        Gate::Open => T::infinity(),
        Gate::Closed(_) => T::zero(),
    }
}

fn apply_deadline<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    target: T,
    binding: Binding,
) -> Result<(T, Binding)> {
    if target <= T::zero() {
        return Ok((T::zero(), Binding::NoHitch));
    }
    if task.has_deadline() {
        let limit = largest_feasible(task, offer, geom);
        if limit < target {
            return Ok((limit, Binding::Deadline));
        }
    } else if target.is_infinite() {
        return Err(HitchError::UnboundedHitch);
    }
    Ok((target, binding))
}

fn evaluate<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
    binding: Binding,
    limited: bool,
) -> Result<HitchPlan<T>> {
    let direct = HitchPlan::fly_direct(task);
    if binding == Binding::NoHitch || y <= T::zero() {
        return Ok(direct);
    }
    let flight = flight_energy(task, geom, y);
    let total_time = y / offer.v + flight;
    let charge = if limited {
        capped_charge(task, offer, y)?
    } else {
        uncapped_charge(offer, y)?
    };
    let energy = flight - charge;
    let consumption = weigh(cfg.omega, energy, total_time);
    let saving = direct.consumption - consumption;
    if saving <= cfg.tol * direct.consumption {
        // never worse than flying direct
        return Ok(direct);
    }
    Ok(HitchPlan {
        y_star: y,
        total_time,
        energy,
        consumption,
        baseline: direct.consumption,
        saving,
        binding,
        departs_after_swap: false,
    })
}

fn validate<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<()> {
    cfg.validate()?;
    task.validate()?;
    offer.validate()?;
    geom.validate()
}
