//! Longest ride that still meets the UAV's deadline.
//!
//! `T(y) = y / v + F(y) / u` is convex and eventually increasing, and the
//! task invariant guarantees `T(0) <= D`, so `{y >= 0 : T(y) <= D}` is an
//! interval `[0, y_max]`. Squaring `F(y) = u (D - y / v)` gives
//!
//! ```text
//! (1 - u^2/v^2) y^2 + (2 D u^2 / v - 2 x cos(theta)) y + (x^2 - u^2 D^2) = 0
//! ```
//!
//! whose roots with `y <= v D` are the genuine solutions of `T(y) = D`.

use crate::error::{HitchError, Result};
use crate::model::{PairGeometry, UavTask, VehicleOffer};
use crate::scalar::{lit, Scalar};

/// Largest `y >= 0` with `travel_time(y) <= deadline`.
///
/// Fails with a contract error when the deadline is unbounded.
pub fn max_hitch_distance<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> Result<T> {
    task.validate()?;
    offer.validate()?;
    geom.validate()?;
    if !task.has_deadline() {
        return Err(HitchError::Contract(
            "max_hitch_distance needs a bounded deadline",
        ));
    }
    Ok(largest_feasible(task, offer, geom))
}

pub(crate) fn largest_feasible<T: Scalar>(
    task: &UavTask<T>,
    offer: &VehicleOffer<T>,
    geom: &PairGeometry<T>,
) -> T {
    let (x, u, v, d) = (task.x, task.u, offer.v, task.deadline);
    let two = lit::<T>(2.0);
    let cos = geom.theta.cos();
    let speed_ratio = u / v;
    let reach = v * d;

    let a = T::one() - speed_ratio * speed_ratio;
    let b = two * (d * u * speed_ratio - x * cos);
    let c = (x - u * d) * (x + u * d);

    let mut roots = [T::nan(); 2];
    if a == T::zero() {
        if b == T::zero() {
            // theta = 0, u = v, D = x/u: the ride costs no time up to the destination
            if c == T::zero() {
                roots[0] = x.min(reach);
            }
        } else {
            roots[0] = -c / b;
        }
    } else {
        let disc = (b * b - lit::<T>(4.0) * a * c).max(T::zero());
        let q = -(b + b.signum() * disc.sqrt()) / two;
        if q != T::zero() {
            roots[0] = q / a;
            roots[1] = c / q;
        } else {
            roots[0] = T::zero();
        }
    }

    // genuine roots keep D - y/v >= 0; allow rounding slack at the apex
    let slack = reach * lit::<T>(64.0) * T::epsilon();
    let best = roots
        .iter()
        .copied()
        .filter(|r| r.is_finite() && *r >= T::zero() && *r <= reach + slack)
        .fold(T::neg_infinity(), T::max);
    if best == T::neg_infinity() {
        return T::zero();
    }
    best.min(reach)
}
