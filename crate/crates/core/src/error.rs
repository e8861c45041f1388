use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element does not belong to the expected ring")]
    ParentMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("quotient by M is not a field")]
    NotMaximal,
    #[error("ideal M is not proper or has an infinite quotient: {0}")]
    BadModulus(String),
    #[error("duplicate point in E at position {0}")]
    DuplicatePoint(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{what} exceeds cap: {size} > {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("finite intersection property violated by members {members:?}")]
    FipViolated { members: Vec<u64> },
    #[error("ground set mismatch: expected {expected} points, got {got}")]
    GroundSetMismatch { expected: usize, got: usize },
    #[error("function is not M-unit-valued at point {point}")]
    NotUnitValued { point: usize },
    #[error("not divisible: value at {witness} is not a multiple of the divisor")]
    NotDivisible { witness: BigInt },
    #[error("prime {q} does not divide {p}")]
    NotOverP { q: u64, p: BigInt },
    #[error("precondition failed at argument {witness}")]
    PreconditionFailed { witness: BigInt },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}
