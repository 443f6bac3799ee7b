use thiserror::Error;

use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("an ideal needs at least one generator")]
    NoGenerators,

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: Monomial, divisor: Monomial },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("{0} is not in the ideal")]
    NotInIdeal(Monomial),

    #[error("ideal is not stable: {generator} * x_{index} / x_{max_index} = {exchanged} is not in the ideal")]
    NotStable { generator: Monomial, index: usize, max_index: usize, exchanged: Monomial },

    #[error("{monomial} has {count} candidate decompositions (stability violated)")]
    AmbiguousDecomposition { monomial: Monomial, count: usize },

    #[error("symbols are not comparable")]
    NotComparable,

    #[error("symbols do not form a cover")]
    NotACover,

    #[error("label sequence {0:?} repeats an absolute value or contains 0")]
    BadLabelSequence(Vec<i32>),

    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("boundary maps do not compose to zero in dimension {0}")]
    NonComposing(i32),

    #[error("boundary of the cone over {0} is not a multiple of its basic cycle")]
    NotProportional(String),

    #[error("unknown output format `{0}`")]
    UnknownFormat(String),

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
