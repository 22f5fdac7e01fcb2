use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("operands belong to different Lie algebras")]
    AlgebraMismatch,
    #[error("operands belong to different PBW contexts")]
    ContextMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bracket [{0}, {1}] is not in the span of the basis")]
    NotClosed(String, String),
    #[error("subalgebra is not closed: [{0}, {1}] leaves it")]
    SubalgebraNotClosed(String, String),
    #[error("not a character: chi([{0}, {1}]) = {2}")]
    NotCharacter(String, String, String),
    #[error("PBW order must place the annihilated subalgebra last ({0} precedes a complement element)")]
    IncompatibleOrder(String),
    #[error("normal form degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("operator matrix is {0}x{1}, not square")]
    NonSquare(usize, usize),
    #[error("entries ({0},{1}) and ({2},{3}) do not commute")]
    NotCommuting(usize, usize, usize, usize),
    #[error("element is not central: ad({0}) does not vanish")]
    NotCentral(String),
    #[error("element has nonzero weight under ad({0})")]
    NotWeightZero(String),
    #[error("element not center-like for this projection: {0}")]
    NotCenterLike(String),
    #[error("index matrix must be symmetric")]
    IndexNotSymmetric,
    #[error("index matrix is singular: det M = 0")]
    SingularIndex,
    #[error("formal function depends on tau' and cannot be extended")]
    NotExtType,
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
