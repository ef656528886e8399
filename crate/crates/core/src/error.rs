use thiserror::Error;

/// Errors surfaced by the library's fallible constructors and operations.
///
/// Absence of a solution (linear systems, homotopy searches, certificates)
/// is a value, not an error; only structural misuse lands here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("matrix shape mismatch at degree {degree}: expected {expected_rows}x{expected_cols}, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        degree: i64,
        expected_rows: usize,
        expected_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("differentials do not compose to zero at degree {0}")]
    DifferentialSquare(i64),
    #[error("components do not commute with differentials at degree {0}")]
    NotChainMap(i64),
    #[error("homotopy identity fails at degree {0}")]
    NotHomotopy(i64),
    #[error("maps are not composable: target of first differs from source of second")]
    NotComposable,
    #[error("triangle is not well-formed: {0}")]
    MalformedTriangle(String),
    #[error("splitting data inconsistent at degree {0}: retraction composed with the inclusion is not the identity")]
    InvalidSplitting(i64),
    #[error("module map does not respect relations (column {0})")]
    InvalidModuleMap(usize),
    #[error("square does not commute, even up to homotopy")]
    NonCommutingSquare,
    #[error("unsupported over the integers: {0}")]
    UnsupportedOverZ(String),
    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
