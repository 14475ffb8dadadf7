#![allow(dead_code)]
//! Numeric references for the closed forms. Everything here is recomputed
//! from the trip geometry and found by search, never by the library's
//! formulas.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uav_hitch::{plan_pair, PairGeometry, PlannerConfig, UavTask, VehicleOffer};

#[derive(Debug, Clone, Copy)]
pub struct Pair {
    pub cfg: PlannerConfig,
    pub task: UavTask,
    pub offer: VehicleOffer,
    pub geom: PairGeometry,
}

impl Pair {
    pub fn direct(&self) -> f64 {
        self.task.x / self.task.u
    }

    pub fn time(&self, y: f64) -> f64 {
        y / self.offer.v + self.flight(y) / self.task.u
    }

    fn flight(&self, y: f64) -> f64 {
        let (s, c) = self.geom.theta.sin_cos();
        (self.task.x * c - y).hypot(self.task.x * s)
    }

    /// Weighted consumption after riding `y`, under the planner's battery
    /// model: charge capped by the free battery room, and swap vehicles
    /// accounted from the fresh battery onwards.
    pub fn consumption(&self, y: f64) -> f64 {
        let (u, v) = (self.task.u, self.offer.v);
        let flight_time = self.flight(y) / u;
        let charge = if self.offer.gamma.is_infinite() {
            0.0
        } else {
            let c = self.offer.gamma * y / v;
            if self.task.battery_capacity.is_finite() {
                c.min(self.task.battery_capacity - self.task.battery_level)
            } else {
                c
            }
        };
        let energy = flight_time - charge;
        let time = y / v + flight_time;
        self.cfg.omega * energy + (1.0 - self.cfg.omega) * time
    }
}

/// Largest `y` in `[0, vD]` with `T(y) <= D`, by bisection.
pub fn deadline_limit(p: &Pair) -> f64 {
    let d = p.task.deadline;
    let hi0 = p.offer.v * d;
    if p.time(hi0) <= d {
        return hi0;
    }
    // T is convex with T(0) <= D, so the feasible set is [0, y_max]
    let (mut lo, mut hi) = (0.0, hi0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p.time(mid) <= d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Minimum of `f` on `[lo, hi]`: `n`-point grid, then golden-section search
/// inside the best grid cell and its neighbours.
pub fn grid_golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    let h = (hi - lo) / (n - 1) as f64;
    let at = |k: usize| if k + 1 == n { hi } else { lo + h * k as f64 };
    let (mut best_k, mut best) = (0, f(lo));
    for k in 1..n {
        let c = f(at(k));
        if c < best {
            best = c;
            best_k = k;
        }
    }
    let (mut a, mut b) = (at(best_k.saturating_sub(1)), at((best_k + 1).min(n - 1)));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let y_mid = 0.5 * (a + b);
    let candidates = [(at(best_k), best), (c, fc), (d, fd), (y_mid, f(y_mid))];
    candidates
        .into_iter()
        .min_by(|l, r| l.1.partial_cmp(&r.1).unwrap())
        .unwrap()
}

pub struct OracleMin {
    pub y: f64,
    pub consumption: f64,
    /// Upper end of the searched interval.
    pub hi: f64,
}

/// Numeric optimum over the feasible distances: `[0, T^-1(D)]` under a
/// deadline, `[0, 3x]` otherwise.
pub fn oracle_min(p: &Pair, n: usize) -> OracleMin {
    let hi = if p.task.deadline.is_finite() {
        deadline_limit(p)
    } else {
        3.0 * p.task.x
    };
    let (y, consumption) = if hi > 0.0 {
        grid_golden_min(|y| p.consumption(y), 0.0, hi, n)
    } else {
        (0.0, p.consumption(0.0))
    };
    OracleMin { y, consumption, hi }
}

/// Checks the planner against [`oracle_min`] on an `n`-point grid.
///
/// Relative tolerance 1e-6, with the scale floored at `1e-6 x/u` so an
/// optimum of exactly zero stays checkable.
pub fn check_against_oracle(p: &Pair, n: usize) -> Result<(), String> {
    let plan = plan_pair(&p.cfg, &p.task, &p.offer, &p.geom).map_err(|e| e.to_string())?;
    let oracle = oracle_min(p, n);
    let at_plan = p.consumption(plan.y_star);
    if (at_plan - plan.consumption).abs() > 1e-12 * p.direct() {
        return Err(format!(
            "reported {} but model gives {at_plan}",
            plan.consumption
        ));
    }
    if plan.saving < 0.0 || plan.consumption > p.direct() {
        return Err(format!("worse than flying direct: {plan:?}"));
    }
    if p.task.deadline.is_finite() && p.time(plan.y_star) > p.task.deadline * (1.0 + 1e-12) {
        return Err(format!("misses the deadline: {plan:?}"));
    }
    let scale = oracle.consumption.abs().max(1e-6 * p.direct());
    if plan.y_star > oracle.hi {
        // beyond the searched window: can only be better
        if at_plan > oracle.consumption + 1e-6 * scale {
            return Err(format!(
                "{at_plan} above window minimum {}",
                oracle.consumption
            ));
        }
    } else if (at_plan - oracle.consumption).abs() > 1e-6 * scale {
        return Err(format!(
            "closed form {at_plan} at y={} vs numeric {} at y={}",
            plan.y_star, oracle.consumption, oracle.y
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    HitchingOnly,
    Charging,
    /// Charging strong enough to pay off in every direction; needs a deadline.
    Opposite,
    Limited,
    Deadline,
    Swap,
}

pub const REGIMES: [Regime; 6] = [
    Regime::HitchingOnly,
    Regime::Charging,
    Regime::Opposite,
    Regime::Limited,
    Regime::Deadline,
    Regime::Swap,
];

fn pick(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// A random valid pair of the given regime, including edge values
/// (`u = v`, `omega` in {0, 1}, `theta` in {0, pi/2, pi}).
pub fn random_pair(rng: &mut ChaCha8Rng, regime: Regime) -> Pair {
    let x = pick(rng, 0.5, 30.0);
    let u = pick(rng, 20.0, 100.0);
    let v = if rng.gen_bool(0.05) {
        u
    } else {
        pick(rng, 5.0, 150.0)
    };
    let omega = match rng.gen_range(0..20) {
        0 => 0.0,
        1 => 1.0,
        _ if regime == Regime::Opposite => pick(rng, 0.3, 1.0),
        _ => rng.gen::<f64>(),
    };
    let theta = match rng.gen_range(0..20) {
        0 => 0.0,
        1 => PI,
        2 => FRAC_PI_2,
        _ => pick(rng, 0.0, PI),
    };
    let direct = x / u;
    let mut deadline = f64::INFINITY;
    let mut battery = (f64::INFINITY, 0.0);
    let open = |gamma: f64| omega * gamma >= 1.0 - omega + v / u;
    let gamma = match regime {
        Regime::HitchingOnly => 0.0,
        Regime::Charging => {
            let g = pick(rng, 0.0, 1.5);
            if open(g) {
                deadline = direct * pick(rng, 1.0, 3.0);
            }
            g
        }
        Regime::Opposite => {
            deadline = direct * pick(rng, 1.0, 3.0);
            let g = (1.0 - omega + v / u) / omega.max(1e-3) * pick(rng, 1.0, 2.0);
            if omega == 0.0 {
                0.0
            } else {
                g
            }
        }
        Regime::Limited => {
            let g = pick(rng, 0.01, 1.5);
            let room = pick(rng, 0.0, 1.5) * g * x / v;
            battery = (1.0 + room, 1.0);
            if rng.gen_bool(0.3) {
                deadline = direct * pick(rng, 1.0, 3.0);
            }
            g
        }
        Regime::Deadline => {
            deadline = direct * pick(rng, 1.0, 1.6);
            if rng.gen_bool(0.5) {
                0.0
            } else {
                pick(rng, 0.0, 1.0)
            }
        }
        Regime::Swap => {
            if rng.gen_bool(0.5) {
                battery = (1.0, pick(rng, 0.0, 1.0));
            }
            if rng.gen_bool(0.3) {
                deadline = direct * pick(rng, 1.0, 3.0);
            }
            f64::INFINITY
        }
    };
    Pair {
        cfg: PlannerConfig::new(omega).unwrap(),
        task: UavTask::new(x, u)
            .unwrap()
            .with_deadline(deadline)
            .unwrap()
            .with_battery(battery.0, battery.1)
            .unwrap(),
        offer: VehicleOffer::new(v, gamma).unwrap(),
        geom: PairGeometry::new(theta).unwrap(),
    }
}
