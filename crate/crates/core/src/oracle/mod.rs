//! Ground truth: exact counts, normalisation constants, explicit chains and
//! the graph-dependent factors of the step bound.

mod chain;
mod diagnostics;
mod exact;
mod normalization;

pub use chain::{build_explicit_chain, initial_states, ExplicitChain, DEFAULT_STATE_CAP};
pub use diagnostics::{bound_diagnostics, BoundDiagnostics};
pub use exact::{count_exact, count_naive, GroundTruth};
pub use normalization::{compute_m, normalization, published_normalization};
