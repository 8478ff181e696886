use thiserror::Error;

/// Validation failures for digraph input.
///
/// Line numbers are 1-based positions in the edge-list document. When a
/// graph is built programmatically they refer to the 1-based edge position.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("SelfLoop: line {line}: edge {node} -> {node} is a self loop")]
    SelfLoop { line: usize, node: usize },
    #[error("NegativeWeight: line {line}: weight {weight} is negative or not finite")]
    NegativeWeight { line: usize, weight: f64 },
    #[error("DuplicateEdge: line {line}: edge {src} -> {dst} already declared on line {first}")]
    DuplicateEdge {
        line: usize,
        first: usize,
        src: usize,
        dst: usize,
    },
    #[error("MalformedLine: line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("Disconnected: node {node} is unreachable from node 0 in the undirected graph")]
    Disconnected { node: usize },
    #[error("EmptyGraph: no nodes declared")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("DimensionMismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ConvergenceFailure: off-diagonal norm {residual:e} after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize, residual: f64 },
    #[error("ValueOutOfRange: frequency {value} outside [0, {fmax}]")]
    ValueOutOfRange { value: f64, fmax: f64 },
    #[error("TooLarge: {pairs} candidate pairs exceeds the enumeration cap of {cap}")]
    TooLarge { pairs: usize, cap: usize },
    #[error("InvalidCount: need at least 2 frequencies, got {0}")]
    InvalidCount(usize),
    #[error("DegenerateRange: all values are equal")]
    DegenerateRange,
    #[error("InconsistentInputs: {0}")]
    InconsistentInputs(String),
    #[error("WindowOutOfRange: window {window} not in 1..={n}")]
    WindowOutOfRange { window: usize, n: usize },
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("MalformedDocument: {0}")]
    MalformedDocument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
