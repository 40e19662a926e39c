//! The user guide, one module per chapter.
//!
//! Chapter sources live in `book/src/` at the workspace root and render
//! standalone with mdbook; including them here puts the same pages into
//! rustdoc and, more importantly, runs every Rust snippet they contain
//! under `cargo test --doc`. One module per chapter keeps a failing
//! snippet traceable to its page.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/bloch-geometry.md")]
pub mod bloch_geometry {}

#[doc = include_str!("../../../book/src/available-sets.md")]
pub mod available_sets {}

#[doc = include_str!("../../../book/src/fidelity-solver.md")]
pub mod fidelity_solver {}

#[doc = include_str!("../../../book/src/trace-baseline.md")]
pub mod trace_baseline {}

#[doc = include_str!("../../../book/src/comparing-metrics.md")]
pub mod comparing_metrics {}

#[doc = include_str!("../../../book/src/cr-states.md")]
pub mod cr_states {}

#[doc = include_str!("../../../book/src/oracle-and-testing.md")]
pub mod oracle_and_testing {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
