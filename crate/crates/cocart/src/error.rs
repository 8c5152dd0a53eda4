use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("size guard exceeded: {what} needs more than {limit}")]
    SizeGuard { what: String, limit: usize },
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
    #[error("degree bound {bound} too small: {what}")]
    BoundExceeded { bound: usize, what: String },
    #[error("not a cocartesian fibration: {0}")]
    NotAFibration(String),
    #[error("base is not the interval [1]")]
    BaseNotInterval,
    #[error("base is not a poset")]
    BaseNotPoset,
    #[error("square does not commute: {0}")]
    SquareDoesNotCommute(String),
    #[error("not an adjunction: {0}")]
    NotAnAdjunction(String),
    #[error("strictification failure: {0}")]
    Strictification(String),
    #[error("malformed K: {0}")]
    MalformedK(String),
    #[error("parse error: {0}")]
    Parse(String),
}
