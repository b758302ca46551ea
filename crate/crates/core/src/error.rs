use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative multinomial part {part} in {parts:?}")]
    NegativeMultinomialPart { part: i64, parts: Vec<i64> },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph not connected")]
    NotConnected,

    #[error("labeled set not connected")]
    LabeledNotConnected,

    #[error("instance too large: {n} vertices exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("unknown coordinate {0}")]
    UnknownCoordinate(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("formula integrality violated: {0}")]
    Integrality(String),

    #[error("numerator recovery failed: {0}")]
    NumeratorRecovery(String),

    #[error("denominator factor must have constant term 1")]
    NonUnitFactor,

    #[error("polynomial syntax error at byte {pos}: {message}")]
    PolySyntax { pos: usize, message: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
