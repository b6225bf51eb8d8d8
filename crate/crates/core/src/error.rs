use thiserror::Error;

use crate::charpair::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector ({a}, {b}) is not primitive")]
    NotPrimitive { a: i128, b: i128 },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("a polygon needs at least 3 edges, got {0}")]
    TooFewEdges(usize),

    #[error("invalid characteristic pair: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("no adjacent edge pair has determinant +-1")]
    NoSmoothVertex,

    #[error("bad index {index}: {reason}")]
    BadIndex { index: usize, reason: String },

    #[error("shear {0} leaves a_(n+2) = 0")]
    ShearRejected(i64),

    #[error("pair is not in the required normal form: {0}")]
    NotNormalized(String),

    #[error("{divisor} does not divide {numerator}")]
    IntegralityViolation { numerator: i128, divisor: i128 },

    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: i128, ring: String },

    #[error("a_{0} * b_{0} = 0")]
    ZeroProduct(usize),

    #[error("degree-4 quotient has dimension {0}, expected 1")]
    DegenerateQuotient(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("labeling mismatch: {0}")]
    LabelingMismatch(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of a mathematical precondition (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::TooFewEdges(_)
                | Error::Invalid(_)
                | Error::Parse(_)
                | Error::InvalidMorphism(_)
                | Error::IndexOutOfRange { .. }
                | Error::BadIndex { .. }
        )
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
