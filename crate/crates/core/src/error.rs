use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficient field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("undefined input: {0}")]
    UndefinedInput(String),
    #[error("inhomogeneous polynomial: {0}")]
    Inhomogeneous(String),
    #[error("ideal is not equigenerated")]
    NotEquigenerated,
    #[error("coordinate change is singular")]
    SingularMatrix,
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("rational {0} has no image in F_{1}")]
    NotRepresentable(String, u64),
    #[error("monomial ideal is not Borel-fixed")]
    NotBorelFixed,
    #[error("unit ideal")]
    UnitIdeal,
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
    #[error("empty Betti table")]
    EmptyTable,
    #[error("no consecutive-cancellation witness: {0}")]
    Infeasible(String),
    #[error("table is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
