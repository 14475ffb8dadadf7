//! Energy-aware UAV hitching on ground vehicles.
//!
//! A UAV can fly straight to its destination or ride a passing vehicle for
//! part of the way, possibly recharging on board, and fly the rest. This
//! crate computes the best ride for a single UAV-vehicle pair in closed
//! form, chooses among vehicles, and assigns a fleet of UAVs to a fleet of
//! vehicles so the total saving is maximal.
//!
//! The planning and matching code is generic over [`Scalar`] (`f32` or
//! `f64`); the `*F64`/`*F32` aliases below name the concrete types. The
//! simulation harness in [`sim`] works in `f64`.

pub mod deadline;
pub mod eligibility;
pub mod error;
pub mod kinematics;
pub mod matching;
pub mod model;
pub mod planner;
pub mod scalar;
pub mod sim;

pub use deadline::max_hitch_distance;
pub use eligibility::{eligibility, eligibility_ho, speed_threshold};
pub use error::{HitchError, Result};
pub use kinematics::{consumption, energy, energy_limited, flight_leg, travel_time};
pub use matching::{
    brute_force_match, build_saving_matrix, greedy_match, msa_match, verify_duals, DualState,
    MatchResult, MatchedPair, MsaSolution, SavingMatrix,
};
pub use model::{
    Binding, Eligibility, EligibilityReason, HitchPlan, PairGeometry, PlannerConfig, UavTask,
    VehicleOffer,
};
pub use planner::{
    battery_swap_plan, optimal_distance, optimal_distance_ho, optimal_distance_limited, plan_pair,
    select_vehicle,
};
pub use scalar::Scalar;

pub type UavTaskF64 = UavTask<f64>;
pub type VehicleOfferF64 = VehicleOffer<f64>;
pub type PairGeometryF64 = PairGeometry<f64>;
pub type PlannerConfigF64 = PlannerConfig<f64>;
pub type EligibilityF64 = Eligibility<f64>;
pub type HitchPlanF64 = HitchPlan<f64>;
pub type SavingMatrixF64 = SavingMatrix<f64>;
pub type MatchResultF64 = MatchResult<f64>;

pub type UavTaskF32 = UavTask<f32>;
pub type VehicleOfferF32 = VehicleOffer<f32>;
pub type PairGeometryF32 = PairGeometry<f32>;
pub type PlannerConfigF32 = PlannerConfig<f32>;
pub type EligibilityF32 = Eligibility<f32>;
pub type HitchPlanF32 = HitchPlan<f32>;
pub type SavingMatrixF32 = SavingMatrix<f32>;
pub type MatchResultF32 = MatchResult<f32>;
