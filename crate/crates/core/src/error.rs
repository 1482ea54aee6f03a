use thiserror::Error;

/// Errors shared by the model types and the evolution engines.
#[derive(Debug, Error)]
pub enum Error {
    /// A supplied 2x2 matrix is not a physical qubit state.
    #[error("not a density matrix: {0}")]
    NotAState(String),

    /// A model or run parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Two series were combined on different time grids.
    #[error("time grids do not match: {0}")]
    GridMismatch(String),

    /// The truncated thermal ensemble misses too much weight.
    #[error("thermal truncation too lossy: loss = {loss:.3e} exceeds {limit:.3e}")]
    TruncationTooLossy { loss: f64, limit: f64 },

    /// A sector exceeds the configured dimension budget.
    #[error("sector too large: dimension {dim} exceeds budget {budget} (seed config {config})")]
    SectorTooLarge {
        dim: usize,
        budget: usize,
        config: String,
    },

    /// The truncated distribution set misses too much of the partition sum.
    #[error("distribution cutoff insufficient: missing weight {missing:.3e} of the partition sum")]
    CutoffInsufficient { missing: f64 },

    /// An integrator step does not resolve the fastest frequency.
    #[error("step too coarse: step * omega_max = {product:.3} exceeds {limit}")]
    StepTooCoarse { product: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
