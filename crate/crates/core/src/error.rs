use alloc::string::String;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidExtensionDegree(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(&'static str),
    #[error("modulus is not irreducible over F_{0}")]
    NotIrreducible(u32),
    #[error("{what} needs {size} items, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax {
        offset: usize,
        message: &'static str,
    },
    #[error("term at byte {offset} has {found} exponents, expected {expected}")]
    ExponentArityMismatch {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("coefficient at byte {offset} is out of range")]
    CoefficientOutOfRange { offset: usize },
    #[error("term degree {0} exceeds the cap of 65536")]
    DegreeTooLarge(u64),
    #[error("expected {expected} entries, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("variable grouping does not partition the variables")]
    InvalidGrouping,
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} is the zero polynomial")]
    ZeroGenerator(usize),
    #[error(
        "asserted dimension {asserted} but {generators} generators in P^{ambient} give {expected}"
    )]
    DimensionMismatch {
        asserted: i64,
        generators: usize,
        ambient: usize,
        expected: i64,
    },
    #[error("singular locus dimension {s} is invalid for a variety of dimension {r}")]
    BadSingularDim { s: i64, r: usize },
    #[error("extensions are only supported over prime base fields")]
    UnsupportedExtension,
    #[error("point is not on the variety")]
    PointNotOnVariety,
    #[error("arithmetic overflow in {0}")]
    ArithmeticOverflow(&'static str),
    #[error("primitive Betti number b'_{0} must be supplied")]
    MissingBetti(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
