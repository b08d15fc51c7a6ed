use std::fmt;

/// Errors produced by the eigenbasis library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The transform dimension is below the supported minimum of 3.
    DimensionTooSmall(usize),
    /// Two objects built for different dimensions were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// An argument fell outside the range where the requested formula applies.
    Domain(String),
    /// Signal length of the zero vector.
    UndefinedLength,
    /// Gram-Schmidt met a vector that is numerically dependent on its predecessors.
    RankDeficient { index: usize, ratio: f64 },
    /// The four eigenspaces did not add up to N vectors.
    Assembly { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionTooSmall(n) => {
                write!(f, "dimension N={n} is too small (N >= 3 required)")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(
                    f,
                    "dimension mismatch: expected N={expected}, found N={found}"
                )
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UndefinedLength => write!(f, "undefined length: vector has empty support"),
            Error::RankDeficient { index, ratio } => write!(
                f,
                "numeric rank deficiency at index {index} (residual/source norm = {ratio:e})"
            ),
            Error::Assembly { expected, found } => {
                write!(
                    f,
                    "assembly error: eigenspaces hold {found} vectors, expected {expected}"
                )
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
