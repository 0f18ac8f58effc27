use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coprime pair ({p}, {q})")]
    InvalidPair { p: String, q: String },

    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(String),

    #[error("tridiagonal matrix is singular")]
    SingularMatrix,

    #[error("degree {requested} exceeds the supported bound {bound}")]
    DegreeTooLarge { requested: usize, bound: usize },

    #[error("elements belong to different diagram spaces")]
    BasisMismatch,

    #[error("unknown color `{0}`")]
    UnknownColor(String),

    #[error("exponential requires a zero constant term")]
    ConstantTerm,

    #[error("splice is not a rational homology sphere (lambda = 0)")]
    NotQhs,

    #[error("knot must carry the framing 0/1, got {0}")]
    NonTrivialFraming(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two independent routes to the same quantity disagreed. This always
    /// indicates a bug or a malformed input element.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
