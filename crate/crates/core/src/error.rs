use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u8, found: u8 },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(u8),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),

    #[error("vertex sets differ: representation has {rep} vertices, graph has {graph}")]
    VertexSetMismatch { rep: usize, graph: usize },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("invalid minor recipe: {0}")]
    InvalidRecipe(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("degree {degree} at vertex {vertex} exceeds {limit}")]
    DegreeTooLarge {
        vertex: usize,
        degree: usize,
        limit: usize,
    },

    #[error("graph is not a tree")]
    NotATree,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("layout failed: {0}")]
    Layout(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
