use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime characteristic")]
    NotPrime(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("operands live in different ring contexts")]
    ContextMismatch,
    #[error("monomial exponent overflow (limit 2^63)")]
    ExponentOverflow,
    #[error("negative exponent {0}")]
    NegativeExponent(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zero ideal where a nonzero ideal is required")]
    ZeroIdeal,
    #[error("factor {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("factor {0} is not principal")]
    NonPrincipal(usize),
    #[error("generator {0} is not a monomial")]
    NonMonomial(String),
    #[error("{0} does not lie in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("{0} is not a test element for this pair")]
    NotATestElement(String),
    #[error("test-ideal chain did not stabilize within the depth cap ({level} levels); last ideals {last} and {previous}")]
    NonStabilization {
        level: u64,
        last: String,
        previous: String,
    },
    #[error("jump in ({0}] could not be certified")]
    Uncertified(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
