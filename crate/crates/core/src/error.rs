use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rotation: {0}")]
    InvalidRotation(String),
    #[error("edge {0} appears in more than one crossing pair")]
    EdgeCrossedTwice(usize),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("edge {edge} has endpoint {vertex} outside the vertex range")]
    VertexOutOfRange { edge: usize, vertex: usize },
    #[error("invalid crossing pair: {0}")]
    InvalidCrossing(String),
    #[error("the planarization is not connected")]
    DisconnectedEmbedding,
    #[error("Euler's formula fails: V'={v} E'={e} F={f}")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("outer face index {0} out of range")]
    InvalidOuterFace(usize),
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("instance would have {n} vertices, limit is {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("no valid planar pairing")]
    NoPairing,
    #[error("independent set has odd size {0}")]
    OddIndependentSet(usize),
    #[error("no valid claw cover")]
    NoClawCover,
    #[error("not quadrangulated: {0}")]
    NotQuadrangulated(String),
    #[error("drawing has {0} crossings")]
    HasCrossings(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("independent set of size {size} exceeds bound {bound}")]
    BoundViolated { size: usize, bound: String },
    #[error("{0} candidate vertices is too many for exhaustive search")]
    TooLarge(usize),
    #[error("attach rule infeasible: {0}")]
    AttachRuleInfeasible(String),
    #[error("generator output inconsistent: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
