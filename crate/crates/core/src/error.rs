//! Crate-wide error type.

/// Alias for results produced by this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by matrix kernels, pattern constructors, adapters, and the
/// training harness.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{op}: dimension mismatch, lhs {lhs_rows}x{lhs_cols} vs rhs {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("matrix dimensions must be at least 1x1, got {rows}x{cols}")]
    InvalidDimensions { rows: usize, cols: usize },

    #[error("data length {got} does not match {rows}x{cols} = {expected}")]
    DataLength {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("SVD did not converge after {sweeps} sweeps (relative off-diagonal residual {residual:e})")]
    SvdConvergence { sweeps: usize, residual: f64 },

    #[error("pattern budget {got} out of range [{min}, {max}]")]
    PatternBudget { min: usize, max: usize, got: usize },

    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("invalid index list for a {d1}x{d2} pattern: {detail}")]
    InvalidIndices {
        d1: usize,
        d2: usize,
        detail: String,
    },

    #[error("effective rank {rank} out of range [1, {max}]")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("expected {expected} coefficient values, got {got}")]
    ValueCount { expected: usize, got: usize },

    #[error("degenerate spectrum: {detail}")]
    SpectrumDegeneracy { detail: String },

    #[error("column {col} of the adapted weight has near-zero norm")]
    ZeroColumn { col: usize },

    #[error("training diverged at epoch {epoch}, step {step} (loss {loss:e})")]
    Divergence {
        epoch: usize,
        step: usize,
        loss: f64,
    },

    #[error("matrix text parse error: {0}")]
    TextFormat(String),
}
