//! Travel time, energy and weighted consumption of a UAV that rides a
//! vehicle for `y` km and then flies straight to its destination.

use crate::error::{HitchError, Result};
use crate::model::{PairGeometry, PlannerConfig, UavTask, VehicleOffer};
use crate::scalar::Scalar;

/// Length of the flight leg from the drop-off point to the destination.
///
/// Written as a hypotenuse so that `theta = 0` gives exactly `|x - y|`.
pub fn flight_leg<T: Scalar>(x: T, theta: T, y: T) -> T {
    (x * theta.cos() - y).hypot(x * theta.sin())
}

fn check_pair<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
) -> Result<()> {
    task.validate()?;
    offer.validate()?;
    geom.validate()?;
    if !(y.is_finite() && y >= T::zero()) {
        return Err(HitchError::NegativeDistance(y.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// Ride time plus flight time, `y / v + F(y) / u`.
pub fn travel_time<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
) -> Result<T> {
    check_pair(task, offer, geom, y)?;
    Ok(raw_time(task, offer, geom, y))
}

/// Flight energy minus the charge collected on board, with no battery cap.
pub fn energy<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
) -> Result<T> {
    check_pair(task, offer, geom, y)?;
    Ok(flight_energy(task, geom, y) - uncapped_charge(offer, y)?)
}

/// Like [`energy`], but the collected charge never exceeds the battery headroom.
pub fn energy_limited<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
) -> Result<T> {
    check_pair(task, offer, geom, y)?;
    Ok(flight_energy(task, geom, y) - capped_charge(task, offer, y)?)
}

/// Weighted consumption `omega E + (1 - omega) T`.
///
/// `limited` selects the capped-battery energy model.
pub fn consumption<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
    limited: bool,
) -> Result<T> {
    cfg.validate()?;
    let e = if limited {
        energy_limited(task, offer, geom, y)?
    } else {
        energy(task, offer, geom, y)?
    };
    let t = raw_time(task, offer, geom, y);
    Ok(weigh(cfg.omega, e, t))
}

#[inline]
pub(crate) fn weigh<T: Scalar>(omega: T, energy: T, time: T) -> T {
    omega * energy + (T::one() - omega) * time
}

#[inline]
pub(crate) fn raw_time<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
    y: T,
) -> T {
    y / offer.v + flight_energy(task, geom, y)
}

#[inline]
pub(crate) fn flight_energy<T: Scalar>(task: &UavTask<T>, geom: &PairGeometry<T>, y: T) -> T {
    flight_leg(task.x, geom.theta, y) / task.u
}

pub(crate) fn uncapped_charge<T: Scalar>(offer: &VehicleOffer<T>, y: T) -> Result<T> {
    if offer.is_battery_swap() {
        return Err(HitchError::Contract(
            "an infinite charging rate is only meaningful with a finite battery",
        ));
    }
    Ok((offer.gamma / offer.v) * y)
}

pub(crate) fn capped_charge<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    y: T,
) -> Result<T> {
    let headroom = task.battery_headroom();
    if offer.is_battery_swap() {
        if headroom.is_infinite() {
            return Err(HitchError::Contract(
                "an infinite charging rate is only meaningful with a finite battery",
            ));
        }
        return Ok(if y > T::zero() { headroom } else { T::zero() });
    }
    Ok(headroom.min((offer.gamma / offer.v) * y))
}
