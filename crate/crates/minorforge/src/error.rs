use thiserror::Error;

/// Errors across the crate. Parse variants carry enough position
/// information to point at the offending byte or line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) out of range for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("loop ({v}, {v}) rejected: graphs are simple")]
    LoopRejected { v: usize },

    #[error("vertex count {n} outside the supported range (maximum {max})")]
    TooLarge { n: usize, max: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6Parse { offset: usize, reason: String },

    #[error("edge-list parse error at line {line}: {reason}")]
    EdgeListParse { line: usize, reason: String },

    #[error("operation undefined on the 0-vertex graph")]
    Undefined,

    #[error("cannot contract an empty vertex set")]
    EmptySet,

    #[error("vertex set does not induce a connected subgraph")]
    NotConnected,

    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("bad dominating-set seed: {reason}")]
    BadSeed { reason: String },

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
