use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("minimal polynomial of `{symbol}` is reducible; nontrivial factor {witness}")]
    ReducibleMinimalPolynomial { symbol: String, witness: String },
    #[error("could not certify irreducibility of the minimal polynomial of `{0}`")]
    IrreducibilityInconclusive(String),
    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("root search incomplete: {0}")]
    Incomplete(String),
    #[error("extension is not Galois: fixed subspace has dimension {fixed_dimension}")]
    NotGalois { fixed_dimension: usize },
    #[error("transcendental extension rejected: {0}")]
    TranscendentalExtension(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}
