use thiserror::Error;

/// Errors raised by planning and matching operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HitchError {
    /// A field violates its type invariant.
    #[error("invalid {field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    /// Hitch distance outside the model's domain.
    #[error("hitch distance must be finite and non-negative, got {0}")]
    NegativeDistance(f64),

    /// Operation called on a vehicle it does not apply to.
    #[error("contract violated: {0}")]
    Contract(&'static str),

    /// Consumption decreases without bound along the vehicle ray; a deadline is required.
    #[error(
        "hitching is beneficial for any distance in this direction; a finite deadline is required"
    )]
    UnboundedHitch,

    #[error("no vehicle offers to choose from")]
    EmptyOffers,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Instance too large for exhaustive enumeration.
    #[error(
        "instance of {uavs} UAVs x {vehicles} vehicles exceeds the brute-force limit of {limit}"
    )]
    SizeGuard {
        uavs: usize,
        vehicles: usize,
        limit: usize,
    },
}

pub type Result<T, E = HitchError> = std::result::Result<T, E>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> HitchError {
    HitchError::InvalidInput {
        field,
        reason: reason.into(),
    }
}
