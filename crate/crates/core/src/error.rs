use crate::polyring::Var;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: {left} vs {right}")]
    VarsetMismatch { left: String, right: String },

    #[error("variable `{0}` is not part of the variable set")]
    UnknownVariable(Var),

    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(Var),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(Var),

    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient a must be nonzero")]
    NotQuadratic,

    #[error("discriminant b^2 - 4ac vanishes; roots are not distinct")]
    DegenerateRoots,

    #[error("coefficients must be integers, got {0}")]
    NonIntegral(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("radicands differ: {0} vs {1}")]
    RadicandMismatch(String, String),

    #[error("Mobius map is singular (determinant zero)")]
    SingularMap,

    #[error("requested n = {requested} exceeds the iteration cap {cap}")]
    CapExceeded { requested: u32, cap: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
