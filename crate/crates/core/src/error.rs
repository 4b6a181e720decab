use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("real matrix has a nonzero imaginary part at ({row}, {col})")]
    ImaginaryInReal { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },
    #[error("Jacobi sweeps did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("block index ({i}, {j}) out of range for {blocks} blocks")]
    IndexOutOfRange { i: usize, j: usize, blocks: usize },
    #[error("partition sums to {sum}, matrix dimension is {dim}")]
    PartitionMismatch { sum: usize, dim: usize },
    #[error("partition must be nonempty with every block size at least 1")]
    InvalidPartition,
    #[error("matrix is not real")]
    NotReal,
    #[error("numerical radius {w:e} is at or below tolerance {tol:e}")]
    ZeroRadius { w: f64, tol: f64 },
    #[error("block sizes are not all equal")]
    UnequalBlocks,
    #[error("matrix is not block upper triangular (lower block ({i}, {j}) is nonzero)")]
    NotUpperTriangular { i: usize, j: usize },
    #[error("matrix is not a block shift (block ({i}, {j}) is nonzero)")]
    NotBlockShift { i: usize, j: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
