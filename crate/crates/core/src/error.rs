use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },

    #[error("weighted energy overflows f64 at truncation dimension {dim}")]
    EnergyOverflow { dim: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("needs larger truncation: observed deviation {deviation:.3e} at dimension {dim}")]
    NeedsLargerTruncation { deviation: f64, dim: usize },

    #[error(
        "tail guard violation: guard energy {guard_energy:.3e} exceeds {threshold:.3e} \
         (guard fraction {guard_fraction})"
    )]
    TailGuardViolation {
        guard_energy: f64,
        threshold: f64,
        guard_fraction: f64,
    },

    #[error("sampling grid too small: endpoint integrand is {endpoint_ratio:.3e} of peak")]
    InsufficientGrid { endpoint_ratio: f64 },

    #[error("contour averaging did not converge: coefficient shift {delta:.3e} after doubling")]
    AliasingNotConverged { delta: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("points too close: minimum pairwise distance {min_distance:.3e}")]
    PointsTooClose { min_distance: f64 },

    #[error("exact arithmetic required: {0}")]
    ExactnessRequired(String),

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violation: {0}")]
    Precondition(String),

    #[error("internal verification failure: {0}")]
    InternalVerification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
