//! Scalar abstraction: the numeric kernels are generic over `f32` and `f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by every kernel in this crate.
///
/// The shipped tolerances (reconstruction residuals, gradient-check bounds,
/// acceptance thresholds) are calibrated for `f64`; the `f32` instantiation is
/// provided for completeness and relaxes only the SVD sweep threshold.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Display
    + LowerExp
    + Debug
    + Default
    + Send
    + Sync
    + 'static
{
    /// Relative off-diagonal threshold below which a Jacobi column pair is
    /// considered orthogonal and the rotation is skipped.
    fn svd_rel_tol() -> Self;

    /// Shorthand for converting an `f64` constant.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant must convert to the scalar type")
    }
}

impl Real for f64 {
    fn svd_rel_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn svd_rel_tol() -> Self {
        1e-5
    }
}
