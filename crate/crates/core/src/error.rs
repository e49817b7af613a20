use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // Malformed input: graph documents, ids, center tokens.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate vertex id `{id}`")]
    DuplicateVertex { line: usize, id: VertexId },
    #[error("line {line}: loop edge on `{id}`")]
    LoopEdge { line: usize, id: VertexId },
    #[error("line {line}: unknown vertex `{id}`")]
    UnknownVertex { line: usize, id: VertexId },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid vertex id `{0}`")]
    InvalidId(String),
    #[error("invalid blow-up center: {0}")]
    InvalidCenter(String),
    #[error("invalid order data: {0}")]
    InvalidOrderData(String),

    // Domain failures.
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("graph is not numerically Gorenstein")]
    NotNumericallyGorenstein,
    #[error("resolution is not small with respect to the Gorenstein form")]
    NotSmall,
    #[error("first Chern class pairs non-integrally with the canonical cycle: {0}")]
    NonIntegralChern(String),
    #[error("rank must be positive")]
    InvalidRank,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertex `{vertex}` is not contractible: {reason}")]
    NotContractible { vertex: VertexId, reason: String },
    #[error("graph is not the resolution graph of a special module")]
    NotSpecialGraph,
    #[error("base graph is not minimal: `{0}` is contractible and carries no arrow")]
    NotMinimal(VertexId),
    #[error("box is too small: {0}")]
    BoxTooSmall(String),
    #[error("no certified conductor inside the box")]
    NoConductorInBox,
    #[error("conductor candidates have no common minimum inside the box")]
    AmbiguousConductor,
    #[error("inclusion cannot be certified beyond the box: {0}")]
    Uncertified(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DuplicateVertex { .. }
                | Error::LoopEdge { .. }
                | Error::UnknownVertex { .. }
                | Error::EmptyGraph
                | Error::Disconnected
                | Error::InvalidId(_)
                | Error::InvalidCenter(_)
                | Error::InvalidOrderData(_)
        )
    }
}
