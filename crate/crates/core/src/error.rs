use thiserror::Error;

/// Errors raised by the decoding library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need q >= 3)")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds the supported bound 2^20")]
    ModulusTooLarge(u64),
    #[error("operands belong to different fields (F_{0} vs F_{1})")]
    FieldMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(u32),
    #[error("empty point set")]
    NoPoints,
    #[error("zero vector has no leading position")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("information polynomial has degree {deg}, code dimension is {k}")]
    MessageTooLong { deg: usize, k: usize },
    #[error("every polynomial is a root of the zero polynomial")]
    ZeroPolynomial,
    #[error("schedule infeasible: {0}")]
    InfeasibleSchedule(String),
    #[error("parameters (s={s}, ell={ell}) admit no permissible radius")]
    NotPermissible { s: usize, ell: usize },
    #[error("oracle budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
