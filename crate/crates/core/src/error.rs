use thiserror::Error;

/// A failure to parse one of the text formats (configuration notation,
/// edge lists, lattice matrices, golden rows, divisor classes).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid value: {0}")]
    Semantic(String),
}

impl ParseError {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn semantic(msg: impl Into<String>) -> Self {
        ParseError::Semantic(msg.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("no vertex carries label {0}")]
    UnknownLabel(u32),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("degenerate matrix (determinant is zero)")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is odd (some diagonal entry is odd)")]
    OddLattice,
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("versality gate violated: {config} has mu = {mu} > 15")]
    GateViolation { config: String, mu: u64 },
    #[error("unknown singularity type for adjacency data: {0}")]
    UnknownType(String),
    #[error("data integrity error: {0}")]
    DataIntegrity(String),
    #[error("invalid gluing data: {0}")]
    InvalidGluing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
