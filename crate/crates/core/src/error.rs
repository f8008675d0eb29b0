use thiserror::Error;

use crate::laurent::CoefficientRing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} of the zero polynomial is undefined")]
    ZeroInput(&'static str),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("representation violates relator {relator}: {detail}")]
    RelatorViolation { relator: usize, detail: String },

    #[error("generator matrix for `{0}` is not invertible over the coefficient ring")]
    NotInvertible(String),

    #[error("minor budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("degree {degree} is outside the available range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("the abelianization has rank 0; no infinite cyclic quotient")]
    TrivialAbelianization,

    #[error("no admissible column: det psi(a_j) vanishes for every j")]
    NoAdmissibleColumn,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
