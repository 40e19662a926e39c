use thiserror::Error;

/// Errors shared across the crate. Tolerances are documented at the sites
/// that enforce them (see [`crate::tol`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Bloch vector component is NaN or infinite.
    #[error("non-finite Bloch component {component}: {value}")]
    NonFinite { component: char, value: f64 },

    /// |r| exceeds 1 beyond the normalization tolerance.
    #[error("Bloch vector length {length} exceeds 1 beyond tolerance")]
    LengthExceedsOne { length: f64 },

    /// A weight vector's length does not match the state count of the set.
    #[error("weight count {actual} does not match set cardinality {expected}")]
    CardinalityMismatch { expected: usize, actual: usize },

    /// A weight is negative beyond the clamp tolerance.
    #[error("weight[{index}] = {value} is negative beyond tolerance")]
    NegativeWeight { index: usize, value: f64 },

    /// Weights do not sum to 1 within tolerance.
    #[error("weights sum to {sum}, not 1 within tolerance")]
    NotNormalized { sum: f64 },

    /// The optimality certificate is undefined for (near-)pure targets.
    #[error("KKT certificate undefined for pure target (|r| = {length})")]
    PureStateUnsupported { length: f64 },

    /// The target lies outside the representable cone of the 3-state family.
    #[error("target outside the representable region (deficit {deficit})")]
    NotInRegion { deficit: f64 },

    /// Rejection sampling failed to populate a region within the attempt cap.
    #[error("could not sample {wanted} points of region {region} in {attempts} attempts")]
    SamplingExhausted {
        region: &'static str,
        wanted: usize,
        attempts: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
