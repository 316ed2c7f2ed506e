use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants fall in three families which the CLI maps onto exit codes:
/// usage errors (bad input, bad parameters), contract violations (a proven
/// bound failed to hold), and resource limits (enumeration caps).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range [2, 2^32)")]
    ModulusOutOfRange(u64),
    #[error("no element of order at least {min_order} in GF({q})")]
    NoElementOfOrder { q: u64, min_order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u64, u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("message polynomial has degree {degree}, code accepts degree < {msg_len}")]
    DegreeTooHigh { degree: usize, msg_len: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("interpolation degree is negative for these parameters (k = {k})")]
    NegativeDegree { k: usize },
    #[error("radius {radius} exceeds what the interpolation step guarantees (at most {max})")]
    RadiusBeyondGuarantee { radius: String, max: String },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("enumeration needs {needed} points, limit is {limit}")]
    LimitExceeded { needed: u128, limit: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit status: 2 for a failed bound, 3 for an enumeration cap,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ContractViolation(_) => 2,
            Error::LimitExceeded { .. } => 3,
            _ => 1,
        }
    }
}
