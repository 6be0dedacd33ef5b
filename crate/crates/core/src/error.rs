use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("identity has no root")]
    IdentityHasNoRoot,

    #[error("trivial word where a non-trivial one is required")]
    TrivialInput,

    #[error("tuple length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("cannot parse word {word:?}: {reason}")]
    WordParse { word: String, reason: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown id {0:?}")]
    UnknownId(String),

    #[error("factor {factor} does not lie in the group of vertex {vertex}")]
    NotInVertexGroup { vertex: String, factor: String },

    #[error("trivially stabilized edges have no cylinder (edge {0})")]
    TrivialEdgeNoCylinder(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("normalization violated (trivial edges must be adjacent to a translate of the base vertex): {0}")]
    Normalization(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("F_A-subgraph mismatch: {0}")]
    FaMismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
