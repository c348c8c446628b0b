//! Singular-vector fine-tuning (SVFT) of frozen weight matrices.
//!
//! Given a frozen weight matrix `W0 = U * diag(S) * V^T`, an SVFT adapter learns a
//! sparse coefficient matrix `M` over the outer products of the singular vectors of
//! `W0`, so that the adapted map is `U * (diag(S) + M) * V^T`. Only the coefficients
//! on a fixed sparsity pattern train; `U`, `S`, and `V` stay frozen. The crate also
//! ships matched-budget LoRA, VeRA, and DoRA baselines, a parameter accountant, and
//! a deterministic teacher-student harness for loss-vs-budget comparisons.
//!
//! Module map:
//!
//! * [`linalg`] — dense row-major matrices, Householder QR, one-sided Jacobi SVD.
//! * [`patterns`] — the four sparsity-pattern constructions (plain, banded, random, top-k).
//! * [`svft`] — the adapter itself: forward pass, coefficient gradients, fusion,
//!   expressivity solve, structure verification, rank truncation.
//! * [`baselines`] — LoRA / VeRA / DoRA adapters and trainable-parameter accounting.
//! * [`train`] — losses, SGD/Adam, finite-difference checking, synthetic tasks,
//!   budget sweeps, and the weight-quality study.
//! * [`verify`] — the property suites behind the `verify` CLI command.
//!
//! All numeric code is generic over the scalar type via [`Real`] (implemented for
//! `f32` and `f64`); `f64` is the default and the precision every shipped tolerance
//! is calibrated for.

pub mod baselines;
pub mod error;
pub mod linalg;
pub mod patterns;
pub mod rng;
pub mod scalar;
pub mod svft;
pub mod train;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

/// Dense `f32` matrix.
pub type Matrix32 = linalg::Matrix<f32>;
/// Dense `f64` matrix (the default scalar everywhere in this crate).
pub type Matrix64 = linalg::Matrix<f64>;
/// `f32` SVD factors.
pub type SvdFactors32 = linalg::SvdFactors<f32>;
/// `f64` SVD factors.
pub type SvdFactors64 = linalg::SvdFactors<f64>;
/// `f32` SVFT adapter.
pub type SvftAdapter32 = svft::SvftAdapter<f32>;
/// `f64` SVFT adapter.
pub type SvftAdapter64 = svft::SvftAdapter<f64>;
