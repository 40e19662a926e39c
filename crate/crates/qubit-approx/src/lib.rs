//! Optimal convex approximation of single-qubit states by finite sets of
//! pure states.
//!
//! Given a target density matrix and a fixed menu of pure states, the best
//! mixture of the menu under a chosen figure of merit is a small convex
//! program with enough structure to solve in closed form. This crate
//! implements those closed forms for the six Pauli eigenstates (and two
//! extensions), checks every answer against a brute-force search, and ships
//! the geometric by-products: optimality certificates, metric comparisons,
//! and the exact region where targets are representable without error.
//!
//! Everything is phrased in Bloch coordinates: a state is a vector inside
//! the unit ball, a mixture of menu states is a point in their convex hull,
//! and both figures of merit depend on the mixture only through that point.
//!
//! # Modules
//!
//! * [`bloch`]: Bloch vectors, fidelity, trace distance, eigenvalues.
//! * [`sets`]: the built-in pure-state families and weight vectors.
//! * [`fidelity`]: fidelity-optimal approximation in closed form, plus a
//!   stationarity certificate for the solutions.
//! * [`trace`]: trace-norm baseline; equivalent to Euclidean projection
//!   onto the octahedron.
//! * [`oracle`]: independent grid-and-polish search used to validate the
//!   closed forms.
//! * [`compare`]: spectral-gap comparison of the two optima with proven
//!   orderings by region.
//! * [`geometry`]: membership tests, the three-state decomposition, and
//!   relative volumes of the representable regions.
//! * [`diagnostics`]: seeded self-test suites over all of the above.
//!
//! # Example
//!
//! ```
//! use qubit_approx::{fidelity, BlochVector};
//!
//! let target = BlochVector::new(0.5, 0.5, 0.5)?;
//! let result = fidelity::solve(&target);
//!
//! // The best mixture of Pauli eigenstates misses this target by a bit
//! // under five percent in fidelity.
//! assert!((result.distance - 0.0458758).abs() < 1e-6);
//! assert_eq!(result.weights.len(), 6);
//! # Ok::<(), qubit_approx::Error>(())
//! ```

pub mod bloch;
pub mod compare;
pub mod diagnostics;
pub mod error;
pub mod fidelity;
pub mod geometry;
pub mod guide;
mod octant;
pub mod oracle;
pub mod result;
pub mod sets;
pub mod tol;
pub mod trace;

pub use bloch::BlochVector;
pub use error::{Error, Result};
pub use result::{ApproximationResult, Metric, Provenance};
pub use sets::{AvailableSet, SetId, WeightVector};
