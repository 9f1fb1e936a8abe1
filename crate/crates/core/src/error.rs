use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("ambient dimensions differ ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown generator `{0}`{1}")]
    UnknownGenerator(String, String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relation {index} is not homogeneous (degrees {degrees:?})")]
    Inhomogeneous { index: usize, degrees: Vec<usize> },
    #[error("relation {index} has degree {degree}, outside 2..={bound}")]
    RelationDegree { index: usize, degree: usize, bound: usize },
    #[error("coefficient {0} is not defined over the ground field")]
    BadCoefficient(String),
    #[error("no algebra named `{0}` in the input")]
    NoSuchAlgebra(String),
    #[error("resource cap exceeded: {what} needs {needed} > cap {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },
    #[error("algebra is not graded-commutative: {0}")]
    NotGradedCommutative(String),
    #[error("algebra is not generated in degree 1: b[1][{degree}] = {count}")]
    NotOneGenerated { degree: usize, count: usize },
    #[error("presentation has a relation of degree {0}; a quadratic presentation is required")]
    NotQuadratic(usize),
    #[error("strategy `{strategy}` cannot be used over {field}")]
    StrategyField { strategy: String, field: String },
    #[error("ground fields or truncations differ")]
    Incompatible,
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("module structure invalid: {0}")]
    InvalidModule(String),
    #[error("vector has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
