use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {p}^{k} exceeds the supported maximum of 2^20")]
    OrderTooLarge { p: u32, k: u32 },
    #[error("{value} is not an element of a field of order {q}")]
    InvalidElement { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("repeated abscissa {0} in interpolation points")]
    RepeatedAbscissa(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    SearchTooLarge { candidates: f64, cap: f64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("rows {first} and {second} of the array are equal")]
    DuplicateRow { first: usize, second: usize },
    #[error("invalid permutation array: {0}")]
    InvalidArray(String),
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
