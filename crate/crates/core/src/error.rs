use thiserror::Error;

/// Errors produced by the solvers, generators and file readers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("edge {edge} has color {color} but the cost table has {num_colors} colors")]
    ColorOutOfRange { edge: usize, color: usize, num_colors: usize },

    #[error("cost table is not symmetric at ({0}, {1})")]
    AsymmetricCosts(usize, usize),

    #[error("cost table row {row} has {got} entries, expected {expected}")]
    RaggedCostTable { row: usize, got: usize, expected: usize },

    #[error("reload costs overflow 64-bit arithmetic")]
    CostOverflow,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("edge set is not a spanning tree: {0}")]
    NotATree(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not a cactus: block {block:?} is neither a cycle nor an edge")]
    NotACactus { block: Vec<usize> },

    #[error("enumeration budget of {limit} spanning trees exceeded")]
    EnumerationBudget { limit: u64 },

    #[error("table at decomposition node {node} reached {size} entries (cap {cap})")]
    TableCap { node: usize, size: usize, cap: usize },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
