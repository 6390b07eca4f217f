use thiserror::Error;

use crate::containers::BaseKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("codomain/domain mismatch: {0}")]
    CodDomMismatch(String),

    #[error("outer square does not commute")]
    SquareDoesNotCommute,

    #[error("slice base mismatch: {0}")]
    BaseMismatch(String),

    #[error("invalid label {0:?}")]
    InvalidLabel(String),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("map is not total: {0}")]
    NotTotal(String),

    #[error("unbound variable {0:?}")]
    UnboundVariable(String),

    #[error("term parse error: {0}")]
    Parse(String),

    #[error("evaluation budget must be at least one step")]
    ZeroBudget,

    #[error("assembly is ill-formed: {0}")]
    IllFormedAssembly(String),

    #[error("tracking failed: {0}")]
    TrackingFailed(String),

    #[error("input map is not verified")]
    UnverifiedInput,

    #[error("ill-typed container: {0}")]
    IllTyped(String),

    #[error("bundle is not a verified tracked map")]
    UnverifiedTracking,

    #[error("invalid morphism representative: {0}")]
    InvalidRep(String),

    #[error("morphisms are not composable: {0}")]
    TypeMismatch(String),

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: BaseKind, found: BaseKind },

    #[error("container is not answerable")]
    NotAnswerable,

    #[error("search space exceeded: {0}")]
    SearchSpaceExceeded(String),

    #[error("invalid extended predicate: {0}")]
    InvalidPredicate(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
