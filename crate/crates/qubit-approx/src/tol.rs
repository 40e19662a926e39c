//! Numeric tolerances used across the crate.
//!
//! Every comparison against one of these constants is a contract: tests pin
//! them, and loosening one is an API-visible change.

/// Slack allowed on |r| above 1 before a Bloch vector is rejected.
/// Vectors with 1 < |r| <= 1 + NORM are renormalized to length 1.
pub const NORM: f64 = 1e-12;

/// Slack allowed below 0 on a mixture weight. Weights in (-WEIGHT, 0) are
/// clamped to 0 and the vector renormalized.
pub const WEIGHT: f64 = 1e-12;

/// Radicands of region square roots may round to tiny negatives; values in
/// (-RADICAND, 0) are treated as 0. Anything lower is a logic error.
pub const RADICAND: f64 = 1e-12;

/// Agreement demanded between a closed-form distance and the grid+polish
/// search when both are run on the same target.
pub const ORACLE_AGREEMENT: f64 = 5e-5;

/// Ceiling on every optimality-certificate residual for interior
/// closed-form solutions.
pub const KKT_RESIDUAL: f64 = 1e-9;

/// Exactness demanded of interior (distance-zero) reconstructions.
pub const EXACT: f64 = 1e-12;

/// Targets with |r| >= 1 - PURE_MARGIN are treated as pure; the optimality
/// certificate refuses them (its conditioning degrades as 1/(1-|r|^2)).
pub const PURE_MARGIN: f64 = 1e-9;

/// Agreement demanded between the closed-form trace mixtures and the
/// Euclidean projection onto the reachable octahedron.
pub const PROJECTION_AGREEMENT: f64 = 1e-9;
