use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector is not a projective point or form")]
    ZeroVector,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("point is not proper (<x,x> = {0:e})")]
    NonProperPoint(f64),
    #[error("plane does not meet the model (<a,a> = {0:e})")]
    DegeneratePlane(f64),
    #[error("points are projectively equal")]
    ProjectivelyEqual,
    #[error("domain error in {what}: argument {value:e}")]
    DomainError { what: &'static str, value: f64 },
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("embedding failure: {0}")]
    EmbeddingFailure(String),
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("negative height {0}")]
    NegativeHeight(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no feasible covering on the contact edge")]
    NoFeasiblePoint,
    #[error("no equal-distance point on the edge")]
    NoRoot,
    #[error("line AB does not meet the model disk (a = {a}, b = {b})")]
    NoIntersection { a: f64, b: f64 },
    #[error("hypercycle bands do not cover the pentagon: {0}")]
    NotACovering(String),
}
