//! Restricted random-walk estimation of 3-node graphlet concentrations in
//! two-layer multiplex graphs.
//!
//! The blue layer is freely walkable; the red layer only answers node
//! sampling from identities the blue walk has already visited. The walks in
//! [`samplers`] go through [`access::RestrictedAccess`], which enforces that
//! rule and counts queries.

pub mod access;
pub mod catalog;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod samplers;
pub mod scalar;

pub use access::{QueryStats, RestrictedAccess};
pub use catalog::{
    classify_state, classify_triple, compute_iso_coefficients, GraphletType, IsoCoefficients,
    PairColor, NUM_RESTRICTED_TYPES, NUM_TYPES,
};
pub use error::{AccessError, ChainError, ExperimentError, GeneratorError, GraphError, SampleError};
pub use graph::{load_graph, save_graph, EdgeRef, GraphBuilder, Layer, NodeId, TwoLayerGraph};
pub use samplers::{run_estimator, Algorithm, ConcentrationEstimate, Sampler, WalkState};
pub use scalar::Scalar;

/// Generator used by every walk and generator; seeded per trial.
pub type WalkRng = rand_chacha::ChaCha8Rng;

/// Exact rational scalar for small-chain checks.
pub type Exact = num_rational::BigRational;
