use alloc::string::String;

/// Errors raised by matrix operations, transforms and the certifier.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry count {len} does not match a {rows}x{cols} matrix")]
    BadLength {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("non-finite entry at flat index {0}")]
    NonFinite(usize),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("Jacobi sweeps did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("invalid weighted shift: {0}")]
    InvalidShift(String),
    #[error("antilinear map is not a conjugation")]
    NotConjugation,
    #[error("singular matrix in linear solve")]
    Singular,
}

pub type Result<T> = core::result::Result<T, LabError>;
