//! Domain types for a single UAV trip, a supporting vehicle and the
//! resolved hitching decision between them.
//!
//! Unbounded quantities (deadline, battery capacity, battery-swap charging
//! rate) are represented by positive infinity.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::{lit, Scalar};

/// One UAV's trip to its destination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UavTask<T = f64> {
    /// Straight-line distance to the destination (km).
    pub x: T,
    /// Flight speed (km/h).
    pub u: T,
    /// Latest arrival time (h); infinite when unbounded.
    pub deadline: T,
    /// Battery capacity in flight-hour equivalents; infinite when unbounded.
    pub battery_capacity: T,
    /// Charge when hitching starts, same units as `battery_capacity`.
    pub battery_level: T,
}

impl<T: Scalar> UavTask<T> {
    /// Task with no deadline and an unbounded battery.
    pub fn new(x: T, u: T) -> Result<Self> {
        let task = Self {
            x,
            u,
            deadline: T::infinity(),
            battery_capacity: T::infinity(),
            battery_level: T::zero(),
        };
        task.validate()?;
        Ok(task)
    }

    pub fn with_deadline(mut self, deadline: T) -> Result<Self> {
        self.deadline = deadline;
        self.validate()?;
        Ok(self)
    }

    pub fn with_battery(mut self, capacity: T, level: T) -> Result<Self> {
        self.battery_capacity = capacity;
        self.battery_level = level;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.x > T::zero()) {
            return Err(invalid(
                "x",
                format!("distance must be finite and > 0, got {}", self.x),
            ));
        }
        if !(self.u.is_finite() && self.u > T::zero()) {
            return Err(invalid(
                "u",
                format!("flight speed must be finite and > 0, got {}", self.u),
            ));
        }
        if self.deadline.is_nan() || self.deadline <= T::zero() {
            return Err(invalid(
                "deadline",
                format!("must be > 0 or unbounded, got {}", self.deadline),
            ));
        }
        if self.deadline.is_finite() && self.deadline < self.direct_time() {
            return Err(invalid(
                "deadline",
                format!(
                    "direct flight needs {} h but the deadline is {} h",
                    self.direct_time(),
                    self.deadline
                ),
            ));
        }
        if self.battery_capacity.is_nan() || self.battery_capacity <= T::zero() {
            return Err(invalid(
                "battery_capacity",
                format!("must be > 0 or unbounded, got {}", self.battery_capacity),
            ));
        }
        if !self.battery_level.is_finite() || self.battery_level < T::zero() {
            return Err(invalid(
                "battery_level",
                format!("must be finite and >= 0, got {}", self.battery_level),
            ));
        }
        if self.battery_level > self.battery_capacity {
            return Err(invalid(
                "battery_level",
                format!(
                    "level {} exceeds capacity {}",
                    self.battery_level, self.battery_capacity
                ),
            ));
        }
        Ok(())
    }

    /// Direct-flight time `x / u`, which is also the fly-direct consumption.
    pub fn direct_time(&self) -> T {
        self.x / self.u
    }

    pub fn has_deadline(&self) -> bool {
        self.deadline.is_finite()
    }

    pub fn has_finite_battery(&self) -> bool {
        self.battery_capacity.is_finite()
    }

    /// Room left in the battery, `e_full - e_i`; infinite for an unbounded battery.
    pub fn battery_headroom(&self) -> T {
        self.battery_capacity - self.battery_level
    }
}

/// A ground vehicle offering rides (and possibly charging).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleOffer<T = f64> {
    /// Ground speed (km/h).
    pub v: T,
    /// Charge gained per hour of hitching; 0 is hitching-only, infinite is a battery swap.
    pub gamma: T,
    /// Number of UAVs the vehicle can carry.
    pub capacity: u32,
}

impl<T: Scalar> VehicleOffer<T> {
    pub fn new(v: T, gamma: T) -> Result<Self> {
        Self::with_capacity(v, gamma, 1)
    }

    pub fn with_capacity(v: T, gamma: T, capacity: u32) -> Result<Self> {
        let offer = Self { v, gamma, capacity };
        offer.validate()?;
        Ok(offer)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v.is_finite() && self.v > T::zero()) {
            return Err(invalid(
                "v",
                format!("vehicle speed must be finite and > 0, got {}", self.v),
            ));
        }
        if self.gamma.is_nan() || self.gamma < T::zero() {
            return Err(invalid(
                "gamma",
                format!("charging rate must be >= 0, got {}", self.gamma),
            ));
        }
        if self.capacity < 1 {
            return Err(invalid("capacity", "a vehicle must carry at least one UAV"));
        }
        Ok(())
    }

    pub fn is_hitching_only(&self) -> bool {
        self.gamma == T::zero()
    }

    pub fn is_battery_swap(&self) -> bool {
        self.gamma.is_infinite()
    }

    /// Same vehicle without charging.
    pub(crate) fn hitching_only(&self) -> Self {
        Self {
            gamma: T::zero(),
            ..*self
        }
    }
}

/// Angle between the vehicle's heading and the UAV's destination bearing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairGeometry<T = f64> {
    /// Radians in `[0, pi]`.
    pub theta: T,
}

impl<T: Scalar> PairGeometry<T> {
    pub fn new(theta: T) -> Result<Self> {
        let geom = Self { theta };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta >= T::zero() && self.theta <= T::PI()) {
            return Err(invalid(
                "theta",
                format!("angle must lie in [0, pi], got {}", self.theta),
            ));
        }
        Ok(())
    }
}

/// Weighting and numeric tolerance shared by all pairs of one problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig<T = f64> {
    /// Weight on energy against travel time, in `[0, 1]`.
    pub omega: T,
    /// Dimensionless boundary tolerance: radians for angle tests, relative to
    /// the fly-direct consumption for savings.
    pub tol: T,
}

impl<T: Scalar> PlannerConfig<T> {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(omega: T) -> Result<Self> {
        Self::with_tol(omega, lit(Self::DEFAULT_TOL))
    }

    pub fn with_tol(omega: T, tol: T) -> Result<Self> {
        let cfg = Self { omega, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega >= T::zero() && self.omega <= T::one()) {
            return Err(invalid(
                "omega",
                format!("weight must lie in [0, 1], got {}", self.omega),
            ));
        }
        if !(self.tol.is_finite() && self.tol > T::zero()) {
            return Err(invalid(
                "tol",
                format!("tolerance must be finite and > 0, got {}", self.tol),
            ));
        }
        Ok(())
    }
}

/// Why a vehicle is or is not worth hitching on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EligibilityReason {
    /// Hitching-only vehicle no faster than `(1 - omega) u`.
    SpeedTooLow,
    /// Charging too slow to compensate for the ride.
    ChargeTooLow,
    /// Heading deviates by at least the threshold angle.
    AngleTooWide,
    Eligible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eligibility<T = f64> {
    pub eligible: bool,
    /// Largest heading deviation that still pays off; absent when the
    /// speed or charging precondition fails.
    pub threshold_angle: Option<T>,
    pub reason: EligibilityReason,
}

/// Which constraint fixed the hitch distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Binding {
    /// Stationary point of the consumption.
    Interior,
    /// Latest distance that still meets the deadline.
    Deadline,
    /// Battery becomes full; riding further only costs time.
    BatteryFull,
    NoHitch,
}

/// Resolved decision for one UAV-vehicle pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HitchPlan<T = f64> {
    /// Distance ridden on the vehicle (km).
    pub y_star: T,
    /// Arrival time (h).
    pub total_time: T,
    /// Net energy in flight-hour equivalents; negative when net-charged.
    pub energy: T,
    /// Weighted consumption `omega E + (1 - omega) T`.
    pub consumption: T,
    /// Fly-direct consumption `x / u`.
    pub baseline: T,
    /// `baseline - consumption`, never negative.
    pub saving: T,
    pub binding: Binding,
    /// Battery swapped at pickup and the UAV leaves the vehicle immediately.
    #[serde(default)]
    pub departs_after_swap: bool,
}

impl<T: Scalar> HitchPlan<T> {
    /// Fly directly without hitching.
    pub fn fly_direct(task: &UavTask<T>) -> Self {
        let baseline = task.direct_time();
        Self {
            y_star: T::zero(),
            total_time: baseline,
            energy: baseline,
            consumption: baseline,
            baseline,
            saving: T::zero(),
            binding: Binding::NoHitch,
            departs_after_swap: false,
        }
    }

    pub fn hitches(&self) -> bool {
        self.binding != Binding::NoHitch
    }
}
