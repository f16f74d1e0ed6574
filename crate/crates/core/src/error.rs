use thiserror::Error;

use crate::access::Subset;

/// Errors raised by every fallible operation in this crate.
///
/// `Rejected` is special: the inputs were well formed but a certificate
/// or scheme failed its check. The CLI maps it to a distinct exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcsError {
    #[error("participant {participant} is outside 1..={n}")]
    ParticipantOutOfRange { participant: usize, n: usize },

    #[error("subset must be non-empty")]
    EmptySubset,

    #[error("family of minimal qualified sets must be non-empty")]
    EmptyFamily,

    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("model {0} is not supported here")]
    UnsupportedModel(u8),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("set {0} is not forbidden")]
    NotForbidden(Subset),

    #[error("set {0} is not qualified")]
    NotQualified(Subset),

    #[error("blocks {0} and {1} overlap")]
    OverlappingBlocks(Subset, Subset),

    #[error("invalid biclique: {0}")]
    InvalidBiclique(String),

    #[error("invalid layering: {0}")]
    InvalidLayering(String),

    #[error("vertex map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("vertex map is not onto the target edges: {0}")]
    NotOntoEdges(String),

    #[error("unknown builtin scheme {0:?}")]
    UnknownBuiltin(String),

    #[error("scheme failed verification: {0}")]
    Unverified(String),

    #[error("image error: {0}")]
    Image(String),

    #[error("rejected: {0}")]
    Rejected(String),
}

impl VcsError {
    pub fn is_rejection(&self) -> bool {
        matches!(self, VcsError::Rejected(_) | VcsError::Unverified(_))
    }
}

pub type Result<T> = std::result::Result<T, VcsError>;
