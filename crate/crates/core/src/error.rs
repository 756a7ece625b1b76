use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("no field of order {0}")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds the cap of {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("element {element} out of range for field of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("unsupported dimension {0}: only 2 or even dimensions are supported")]
    UnsupportedDimension(u32),
    #[error("{what} has {size} points, above the cap of {cap}")]
    TooManyPoints { what: String, size: u64, cap: u64 },
    #[error("grid side {0} outside 1..=32")]
    GridSize(u32),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("configuration belongs to {found}, expected {expected}")]
    StructureMismatch { expected: String, found: String },
    #[error("structure is not affine")]
    NotAffine,
    #[error("point {point} lies on line {line}")]
    PointOnLine { point: usize, line: usize },
    #[error("not eligible: {0}")]
    Ineligible(String),
    #[error("bulb {0} is not lit")]
    Unlit(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("refused: {0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Size refusals from the exact-search caps, as opposed to bad input.
    pub fn is_size_refusal(&self) -> bool {
        matches!(
            self,
            Error::TooLarge(_) | Error::TooManyPoints { .. } | Error::FieldTooLarge { .. } | Error::GridSize(_)
        )
    }
}
