//! Dense linear algebra: row-major matrices, Householder QR, and a
//! deterministic one-sided Jacobi SVD.
//!
//! Everything here is a pure function on immutable inputs; there is no shared
//! mutable state, so all operations are safe to call concurrently.

mod matrix;
mod svd;

pub use matrix::Matrix;
pub use svd::{numerical_rank, qr, svd, SvdFactors};
