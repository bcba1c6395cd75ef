use thiserror::Error;

use crate::paths::Point;
use crate::poly::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid variable range x{lo}..x{hi}")]
    InvalidRange { lo: i64, hi: i64 },

    #[error("no value assigned to variable {0}")]
    MissingVariable(Var),

    #[error("invalid semipartition: {0}")]
    InvalidSemipartition(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} budget of {limit} exceeded (raise it with --{flag})")]
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        flag: &'static str,
    },

    #[error("path tuple is nonintersecting")]
    Nonintersecting,

    #[error("path tuple is intersecting or does not use the identity permutation")]
    NotNonintersecting,

    #[error("{0} is not a free endpoint of the overlay")]
    NotAnEndpoint(Point),

    #[error("trail does not belong to this overlay")]
    ForeignTrail,

    #[error("evaluation point has repeated coordinates")]
    ZeroDenominator,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
