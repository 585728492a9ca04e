use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series order must be positive")]
    EmptySeries,
    #[error("series is not invertible: zero constant term")]
    NonInvertibleSeries,
    #[error("{op} requires {requirement}")]
    Precondition {
        op: &'static str,
        requirement: &'static str,
    },
    #[error("coefficient {index} does not reduce to a polynomial in q")]
    NotPolynomial { index: usize },
    #[error("invalid exponential Riordan array: {0}")]
    InvalidRiordan(&'static str),
    #[error("lower triangular matrix is singular: zero diagonal entry in row {row}")]
    Singular { row: usize },
    #[error("continued fraction too short: need {required} levels, have {available}")]
    FractionTooShort { required: usize, available: usize },
    #[error("not enough moments: need {required}, have {available}")]
    TooFewMoments { required: usize, available: usize },
    #[error("moment sequence is not quasi-definite: norm of Q_{degree} vanishes")]
    NotQuasiDefinite { degree: usize },
    #[error("sequence too short: need at least {required} terms, have {available}")]
    SequenceTooShort { required: usize, available: usize },
    #[error("n = {n} is outside the enumeration range 1..={cap}")]
    EnumerationRange { n: usize, cap: usize },
    #[error("invalid family parameters: {0}")]
    FamilyParams(&'static str),
    #[error("input sequence is not log-convex at index {index}")]
    NotLogConvex { index: usize },
}
