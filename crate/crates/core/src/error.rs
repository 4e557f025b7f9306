use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("non-composable path: {0}")]
    NonComposable(String),
    #[error("tip `{0}` does not have length 2")]
    TipLength(String),
    #[error("duplicate tip `{0}`")]
    DuplicateTip(String),
    #[error("arrow precedence must list every arrow exactly once")]
    BadPrecedence,
    #[error("zero element has no tip")]
    ZeroElement,
    #[error("zero polynomial cannot be normalized")]
    ZeroPolynomial,
    #[error("unbound variable {0}")]
    UnboundVariable(usize),
    #[error("rule for `{tip}` is invalid: {reason}")]
    InvalidRule { tip: String, reason: String },
    #[error("`{0}` is not a coordinate of this scheme")]
    UnknownCoordinate(String),
    #[error("coordinate `{0}` assigned twice")]
    DuplicateAssignment(String),
    #[error("point has {got} coordinates, scheme has {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("infinite-dimensional algebra")]
    InfiniteDimensional,
    #[error("rule system is not reduced: {0}")]
    NotReduced(String),
    #[error("point is not in the variety: {0}")]
    NotGroebner(String),
    #[error("tensor factors must carry a length-lexicographic order, not a block order")]
    BlockFactor,
}

pub type Result<T> = std::result::Result<T, Error>;
