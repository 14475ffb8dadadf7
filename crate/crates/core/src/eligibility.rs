//! Whether a vehicle is worth hitching on, and the widest heading
//! deviation at which it still is.
//!
//! Consumption along the vehicle ray is `F(y)/u + k y / v` with
//! `k = 1 - omega (1 + gamma)`. Its slope at the stationary point fixes the
//! drop-off angle: `cos(phi) = k u / v`. The vehicle helps only when that
//! cosine is below one, and helps in every direction once it reaches minus one.

use crate::error::{HitchError, Result};
use crate::model::{
    Eligibility, EligibilityReason, PairGeometry, PlannerConfig, UavTask, VehicleOffer,
};
use crate::scalar::Scalar;

/// Slowest useful hitching-only vehicle, `(1 - omega) u`.
pub fn speed_threshold<T: Scalar>(cfg: &PlannerConfig<T>, task: &UavTask<T>) -> T {
    // u - omega u avoids the rounding of 1 - omega, e.g. 0.2 * 60 != 12
    task.u - cfg.omega * task.u
}

/// `cos(phi)` for the given charging rate, unclamped.
pub(crate) fn threshold_cosine<T: Scalar>(omega: T, u: T, v: T, gamma: T) -> T {
    (T::one() - (T::one() + gamma) * omega) * u / v
}

/// Outcome of the speed/charging precondition, before looking at the angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Gate<T> {
    Closed(EligibilityReason),
    /// Eligible below `phi`; `cosine` is `cos(phi)` before rounding through `acos`.
    Angle {
        phi: T,
        cosine: T,
    },
    /// Eligible in every direction.
    Open,
}

impl<T: Scalar> Gate<T> {
    pub(crate) fn admits(&self, cfg: &PlannerConfig<T>, geom: &PairGeometry<T>) -> bool {
        match *self {
            Gate::Closed(_) => false,
            Gate::Angle { phi, .. } => geom.theta < phi - cfg.tol,
            Gate::Open => true,
        }
    }

    fn to_eligibility(self, cfg: &PlannerConfig<T>, geom: &PairGeometry<T>) -> Eligibility<T> {
        let eligible = self.admits(cfg, geom);
        let (threshold_angle, reason) = match self {
            Gate::Closed(reason) => (None, reason),
            Gate::Angle { phi, .. } if !eligible => (Some(phi), EligibilityReason::AngleTooWide),
            Gate::Angle { phi, .. } => (Some(phi), EligibilityReason::Eligible),
            Gate::Open => (Some(T::PI()), EligibilityReason::Eligible),
        };
        Eligibility {
            eligible,
            threshold_angle,
            reason,
        }
    }
}

/// Precondition and threshold for a finite charging rate (zero included).
pub(crate) fn gate<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
) -> Gate<T> {
    let omega = cfg.omega;
    if offer.is_hitching_only() {
        // speeds within tol of the threshold gain less than rounding noise
        if offer.v <= speed_threshold(cfg, task) * (T::one() + cfg.tol) {
            return Gate::Closed(EligibilityReason::SpeedTooLow);
        }
    } else {
        let ratio = offer.v / task.u;
        let charge = omega * offer.gamma;
        if charge <= T::one() - omega - ratio {
            return Gate::Closed(EligibilityReason::ChargeTooLow);
        }
        if charge >= T::one() - omega + ratio {
            // charging outweighs any detour
            return Gate::Open;
        }
    }
    let cosine = threshold_cosine(omega, task.u, offer.v, offer.gamma)
        .max(-T::one())
        .min(T::one());
    Gate::Angle {
        phi: cosine.acos(),
        cosine,
    }
}

/// Eligibility of a hitching-only vehicle.
pub fn eligibility_ho<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<Eligibility<T>> {
    validate(cfg, task, offer, geom)?;
    if !offer.is_hitching_only() {
        return Err(HitchError::Contract(
            "eligibility_ho applies to hitching-only vehicles; use eligibility",
        ));
    }
    Ok(gate(cfg, task, offer).to_eligibility(cfg, geom))
}

/// Eligibility for any finite charging rate, including zero.
pub fn eligibility<T: Scalar>(
    cfg: &PlannerConfig<T>,
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<Eligibility<T>> {
    validate(cfg, task, offer, geom)?;
    if offer.is_battery_swap() {
        return Err(HitchError::Contract(
            "battery-swap vehicles are planned with battery_swap_plan",
        ));
    }
    Ok(gate(cfg, task, offer).to_eligibility(cfg, geom))
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
