use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("self-loop on identity {0}")]
    SelfLoop(NodeId),
    #[error("duplicate {layer} edge ({u}, {v})")]
    DuplicateEdge {
        layer: &'static str,
        u: NodeId,
        v: NodeId,
    },
    #[error("identity {id} out of range (graph has {len} identities)")]
    OutOfRange { id: u64, len: usize },
    #[error("identity {0} is not present in the {1} layer")]
    NotInLayer(NodeId, &'static str),
    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Restriction-model violations raised by the access facade.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AccessError {
    #[error("identity {0} is not in the blue layer")]
    NotBlue(NodeId),
    #[error("identity {0} has not been reached by a legal blue query")]
    UnreachedBlue(NodeId),
    #[error("red neighbours of {0} requested before it was visited by the blue walk")]
    UnvisitedBlue(NodeId),
    #[error("identity {0} has no red neighbours")]
    NoRedNeighbor(NodeId),
    #[error("red neighbours of red identity {node} requested at hop depth {depth} (budget {budget})")]
    RedDepthViolation { node: NodeId, depth: u8, budget: u8 },
    #[error("identity {0} out of range")]
    OutOfRange(NodeId),
}

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("graph has no valid initial state (needs two blue edges sharing a node)")]
    NoInitialState,
    #[error("walk reached a dead end at identity {0}")]
    DeadEnd(NodeId),
    #[error("restricted access violated")]
    Access(#[from] AccessError),
    #[error("step count must be at least 1")]
    ZeroSteps,
}

#[derive(Debug, Error)]
pub enum ChainError {
    #[error("explicit chain exceeds the cap of {cap} states")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Sample(#[from] SampleError),
}

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("trial {trial} of {algo} (seed {seed}) aborted")]
    TrialAborted {
        algo: String,
        trial: usize,
        seed: u64,
        #[source]
        source: SampleError,
    },
    #[error("invalid experiment plan: {0}")]
    InvalidPlan(String),
    #[error("metric series is empty")]
    EmptySeries,
    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization error")]
    Json(#[from] serde_json::Error),
}
