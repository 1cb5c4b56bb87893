use thiserror::Error;

/// Errors raised by the algebra, analysis and ingestion layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,
    #[error("operation `{0}` rejects the zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("both arguments of gcd are zero")]
    GcdOfZeros,
    #[error("surgery coefficient n must be positive")]
    ZeroSurgeryCoefficient,
    #[error("resultant is undefined: both inputs have t-degree 0")]
    DegenerateResultant,
    #[error("cyclotomic order must be positive")]
    ZeroCyclotomicOrder,
    #[error("polynomial has deg_M = {0}; this operation requires deg_M = 0")]
    NonzeroMDegree(u32),
    #[error("Newton polygon is a single point")]
    SinglePointPolygon,
    #[error("invalid knot: {0}")]
    InvalidKnot(String),
    #[error("generator `{0}` has no matrix assignment")]
    UnassignedGenerator(char),
    #[error("elimination degenerated: {0}")]
    EliminationDegenerate(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
