//! One-sided Jacobi SVD and Householder QR.
//!
//! The SVD is full: for a `d1 x d2` input, `U` is `d1 x d1` and `V` is
//! `d2 x d2`, with `min(d1, d2)` singular values sorted nonincreasing. The
//! algorithm is one-sided Jacobi on the wider-than-tall orientation — simple,
//! accurate to machine precision on desk-scale matrices, and deterministic for
//! a fixed input because the sweep order is fixed.
//!
//! Sign convention: in each column of `U` the entry of largest magnitude is
//! nonnegative (ties broken by the lowest row index), and the paired column of
//! `V` is flipped together with it so the reconstruction is unchanged.
//! Unpaired trailing columns (null-space directions) get the same rule applied
//! individually. This makes the factorization a single well-defined value, so
//! downstream golden files and saved adapters can depend on it.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::matrix::Matrix;

/// Maximum number of Jacobi sweeps before reporting non-convergence.
const MAX_SWEEPS: usize = 60;

/// Full singular value decomposition `W = U * diag(S) * V^T`.
///
/// Invariants (checked by the test suites, preserved by [`svd`]):
/// `U` and `V` are orthonormal to roughly machine precision, `s` is
/// nonincreasing and nonnegative, reconstruction matches the input to
/// `1e-10 * ||W||_F` at `f64`, and the sign convention above holds.
#[derive(Debug, Clone)]
pub struct SvdFactors<T = f64> {
    /// Left singular vectors, `d1 x d1`.
    pub u: Matrix<T>,
    /// Singular values, length `min(d1, d2)`, sorted nonincreasing.
    pub s: Vec<T>,
    /// Right singular vectors, `d2 x d2` (not transposed).
    pub v: Matrix<T>,
}

impl<T: Real> SvdFactors<T> {
    /// Rows of the factored matrix.
    pub fn d1(&self) -> usize {
        self.u.rows()
    }

    /// Columns of the factored matrix.
    pub fn d2(&self) -> usize {
        self.v.rows()
    }

    pub fn min_dim(&self) -> usize {
        self.d1().min(self.d2())
    }

    /// Largest singular value (zero for the zero matrix).
    pub fn max_singular_value(&self) -> T {
        self.s.first().copied().unwrap_or_else(T::zero)
    }

    /// Materializes `U * diag(S) * V^T`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let (d1, d2) = (self.d1(), self.d2());
        let k = self.min_dim();
        let mut out = Matrix::zeros(d1, d2);
        for i in 0..d1 {
            for j in 0..d2 {
                let mut acc = T::zero();
                for (l, &sl) in self.s.iter().enumerate().take(k) {
                    acc += self.u[(i, l)] * sl * self.v[(j, l)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

/// Computes the full SVD of `w`.
///
/// Deterministic for a fixed input. Fails with [`Error::SvdConvergence`] if
/// the Jacobi sweeps do not reach the relative off-diagonal threshold within
/// 60 sweeps, reporting the residual (never observed on finite desk-scale
/// inputs; the bound exists so the failure mode is a clean error).
pub fn svd<T: Real>(w: &Matrix<T>) -> Result<SvdFactors<T>> {
    debug_assert!(w.is_finite(), "svd input must be finite");
    let transposed = w.rows() < w.cols();
    let mut a = if transposed { w.transpose() } else { w.clone() };

    let v_acc = one_sided_jacobi(&mut a)?;
    let n = a.cols();

    // Column norms are the singular values; sort nonincreasing, ties by index.
    let mut s: Vec<T> = (0..n).map(|j| a.col_norm(j)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| {
        s[q].partial_cmp(&s[p])
            .expect("singular values are finite")
            .then(p.cmp(&q))
    });
    let a = permute_columns(&a, &order);
    let v_acc = permute_columns(&v_acc, &order);
    s.sort_by(|x, y| y.partial_cmp(x).expect("finite"));

    let u_full = build_full_left_vectors(&a, &s);

    let (mut u, mut v) = if transposed {
        (v_acc, u_full)
    } else {
        (u_full, v_acc)
    };
    enforce_sign_convention(&mut u, &mut v);

    Ok(SvdFactors { u, s, v })
}

/// Counts singular values exceeding `tol` times the largest one.
pub fn numerical_rank<T: Real>(w: &Matrix<T>, tol: T) -> Result<usize> {
    assert!(tol > T::zero(), "tolerance must be positive");
    let factors = svd(w)?;
    let smax = factors.max_singular_value();
    if smax == T::zero() {
        return Ok(0);
    }
    Ok(factors.s.iter().filter(|&&x| x > tol * smax).count())
}

/// Economy QR factorization `W = Q * R` with `Q` of shape `m x min(m, n)`,
/// `R` of shape `min(m, n) x n`, and `diag(R) >= 0`.
pub fn qr<T: Real>(w: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let (m, n) = w.shape();
    let k = m.min(n);
    let (q_full, r_full) = householder_qr(w);
    let q = q_full.leading_columns(k);
    let r = Matrix::from_fn(k, n, |i, j| r_full[(i, j)]);
    (q, r)
}

/// Householder QR returning the full `m x m` orthogonal factor and the `m x n`
/// triangular factor, with `diag(R) >= 0` enforced by column/row sign flips.
fn householder_qr<T: Real>(w: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let (m, n) = w.shape();
    let mut r = w.clone();
    let mut q = Matrix::<T>::identity(m);
    let steps = n.min(m.saturating_sub(1));

    for k in 0..steps {
        // Householder vector for column k below the diagonal.
        let mut norm_sq = T::zero();
        for i in k..m {
            norm_sq += r[(i, k)] * r[(i, k)];
        }
        let norm = norm_sq.sqrt();
        if norm == T::zero() {
            continue;
        }
        let head = r[(k, k)];
        let alpha = if head >= T::zero() { -norm } else { norm };
        let mut v = vec![T::zero(); m - k];
        v[0] = head - alpha;
        for i in k + 1..m {
            v[i - k] = r[(i, k)];
        }
        let v_norm = v.iter().map(|&x| x * x).sum::<T>().sqrt();
        if v_norm == T::zero() {
            continue;
        }
        for x in v.iter_mut() {
            *x /= v_norm;
        }

        // R[k.., k..] -= 2 v (v^T R[k.., k..])
        for j in k..n {
            let mut dot = T::zero();
            for i in k..m {
                dot += v[i - k] * r[(i, j)];
            }
            let two_dot = T::of(2.0) * dot;
            for i in k..m {
                let upd = two_dot * v[i - k];
                r[(i, j)] -= upd;
            }
        }
        // Q[:, k..] -= 2 (Q[:, k..] v) v^T
        for i in 0..m {
            let mut dot = T::zero();
            for j in k..m {
                dot += q[(i, j)] * v[j - k];
            }
            let two_dot = T::of(2.0) * dot;
            for j in k..m {
                let upd = two_dot * v[j - k];
                q[(i, j)] -= upd;
            }
        }
    }

    // Zero the strictly-lower part of R (it holds rounding dust) and fix signs.
    for i in 0..m {
        for j in 0..n.min(i) {
            r[(i, j)] = T::zero();
        }
    }
    for d in 0..m.min(n) {
        if r[(d, d)] < T::zero() {
            for j in 0..n {
                r[(d, j)] = -r[(d, j)];
            }
            for i in 0..m {
                q[(i, d)] = -q[(i, d)];
            }
        }
    }
    (q, r)
}

/// One-sided Jacobi: orthogonalizes the columns of `a` in place by plane
/// rotations, accumulating them into the returned square matrix. Caller must
/// pass `a` with at least as many rows as columns.
fn one_sided_jacobi<T: Real>(a: &mut Matrix<T>) -> Result<Matrix<T>> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut v = Matrix::identity(n);
    let tol = T::svd_rel_tol();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = T::zero();
                let mut aqq = T::zero();
                let mut apq = T::zero();
                for r in 0..m {
                    let x = a[(r, p)];
                    let y = a[(r, q)];
                    app += x * x;
                    aqq += y * y;
                    apq += x * y;
                }
                if apq.abs() <= tol * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;

                let tau = (aqq - app) / (T::of(2.0) * apq);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    T::one() / (tau - (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;

                rotate_columns(a, p, q, c, s);
                rotate_columns(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            return Ok(v);
        }
    }

    Err(Error::SvdConvergence {
        sweeps: MAX_SWEEPS,
        residual: max_relative_off_diagonal(a),
    })
}

fn rotate_columns<T: Real>(a: &mut Matrix<T>, p: usize, q: usize, c: T, s: T) {
    for r in 0..a.rows() {
        let x = a[(r, p)];
        let y = a[(r, q)];
        a[(r, p)] = c * x - s * y;
        a[(r, q)] = s * x + c * y;
    }
}

fn max_relative_off_diagonal<T: Real>(a: &Matrix<T>) -> f64 {
    let n = a.cols();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            let mut app = T::zero();
            let mut aqq = T::zero();
            let mut apq = T::zero();
            for r in 0..a.rows() {
                let x = a[(r, p)];
                let y = a[(r, q)];
                app += x * x;
                aqq += y * y;
                apq += x * y;
            }
            let denom = (app * aqq).sqrt();
            if denom > T::zero() {
                let rel = (apq.abs() / denom).to_f64().unwrap_or(f64::INFINITY);
                worst = worst.max(rel);
            }
        }
    }
    worst
}

fn permute_columns<T: Real>(a: &Matrix<T>, order: &[usize]) -> Matrix<T> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, order[j])])
}

/// Turns the orthogonalized `m x n` column set into a full `m x m` orthonormal
/// basis: columns with a usable norm are normalized in place; the rest (exact
/// null directions and, for tall inputs, the missing `m - n` columns) are
/// filled from the trailing columns of a Householder QR of the kept ones.
fn build_full_left_vectors<T: Real>(a: &Matrix<T>, s: &[T]) -> Matrix<T> {
    let m = a.rows();
    let smax = s.first().copied().unwrap_or_else(T::zero);
    let tiny = smax * T::epsilon() * T::of(m as f64);
    let rank = s.iter().take_while(|&&x| x > tiny).count();

    let mut u = Matrix::zeros(m, m);
    for j in 0..rank {
        for i in 0..m {
            u[(i, j)] = a[(i, j)] / s[j];
        }
    }
    if rank == m {
        return u;
    }
    if rank == 0 {
        return Matrix::identity(m);
    }
    let kept = u.leading_columns(rank);
    let (q_full, _) = householder_qr(&kept);
    for j in rank..m {
        for i in 0..m {
            u[(i, j)] = q_full[(i, j)];
        }
    }
    u
}

/// Applies the column sign convention described in the module docs.
fn enforce_sign_convention<T: Real>(u: &mut Matrix<T>, v: &mut Matrix<T>) {
    let paired = u.cols().min(v.cols());
    for j in 0..u.cols() {
        if dominant_entry(u, j) < T::zero() {
            negate_column(u, j);
            if j < paired {
                negate_column(v, j);
            }
        }
    }
    for j in paired..v.cols() {
        if dominant_entry(v, j) < T::zero() {
            negate_column(v, j);
        }
    }
}

/// Entry of largest magnitude in column `j`; the strictly-greater comparison
/// resolves magnitude ties toward the lowest row index.
fn dominant_entry<T: Real>(m: &Matrix<T>, j: usize) -> T {
    let mut best = 0;
    for i in 1..m.rows() {
        if m[(i, j)].abs() > m[(best, j)].abs() {
            best = i;
        }
    }
    m[(best, j)]
}

fn negate_column<T: Real>(m: &mut Matrix<T>, j: usize) {
    for i in 0..m.rows() {
        m[(i, j)] = -m[(i, j)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn identity_decomposes_to_identity() {
        let f = svd(&Matrix::<f64>::identity(3)).unwrap();
        assert_eq!(f.u, Matrix::identity(3));
        assert_eq!(f.v, Matrix::identity(3));
        for &s in &f.s {
            assert_close(s, 1.0, 1e-15);
        }
    }

    #[test]
    fn diagonal_with_negative_entry() {
        let w = Matrix::from_rows(&[&[3.0, 0.0], &[0.0, -2.0]]);
        let f = svd(&w).unwrap();
        assert_close(f.s[0], 3.0, 1e-14);
        assert_close(f.s[1], 2.0, 1e-14);
        // Columns of U and V are signed standard basis vectors; the dominant
        // entry of each U column is nonnegative.
        for j in 0..2 {
            for i in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_close(f.u[(i, j)].abs(), expect, 1e-14);
                assert_close(f.v[(i, j)].abs(), expect, 1e-14);
            }
            assert!(super::dominant_entry(&f.u, j) >= 0.0);
        }
        let recon = f.reconstruct();
        assert!(w.sub(&recon).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let w = Matrix::<f64>::zeros(3, 3);
        assert_eq!(numerical_rank(&w, 1e-9).unwrap(), 0);
        let f = svd(&w).unwrap();
        assert_eq!(f.u, Matrix::identity(3));
        assert_eq!(f.v, Matrix::identity(3));
    }

    #[test]
    fn outer_product_has_rank_one() {
        let u = [1.0, -2.0, 0.5];
        let v = [3.0, 1.0];
        let w = Matrix::from_fn(3, 2, |i, j| u[i] * v[j]);
        assert_eq!(numerical_rank(&w, 1e-9).unwrap(), 1);
    }

    #[test]
    fn qr_identity() {
        let (q, r) = qr(&Matrix::<f64>::identity(2));
        assert_eq!(q, Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
    }

    #[test]
    fn qr_single_column_sign_fix() {
        let w = Matrix::from_rows(&[&[0.0], &[2.0]]);
        let (q, r) = qr(&w);
        assert_eq!(q.shape(), (2, 1));
        assert_eq!(r.shape(), (1, 1));
        assert_close(q[(0, 0)], 0.0, 1e-15);
        assert_close(q[(1, 0)], 1.0, 1e-15);
        assert_close(r[(0, 0)], 2.0, 1e-15);
    }

    #[test]
    fn svd_shapes_are_full_for_rectangular_input() {
        let w = Matrix::from_fn(5, 3, |i, j| ((i * 3 + j) as f64).sin());
        let f = svd(&w).unwrap();
        assert_eq!(f.u.shape(), (5, 5));
        assert_eq!(f.v.shape(), (3, 3));
        assert_eq!(f.s.len(), 3);
        let rel = f
            .reconstruct()
            .relative_distance(&w, w.frobenius_norm())
            .unwrap();
        assert!(rel < 1e-12, "reconstruction residual {rel}");

        let wide = w.transpose();
        let f = svd(&wide).unwrap();
        assert_eq!(f.u.shape(), (3, 3));
        assert_eq!(f.v.shape(), (5, 5));
        let rel = f
            .reconstruct()
            .relative_distance(&wide, wide.frobenius_norm())
            .unwrap();
        assert!(rel < 1e-12, "reconstruction residual {rel}");
    }

    #[test]
    fn f32_instantiation_reconstructs() {
        let w = Matrix::<f32>::from_fn(4, 4, |i, j| ((i + 2 * j) as f32).cos());
        let f = svd(&w).unwrap();
        let rel = f
            .reconstruct()
            .relative_distance(&w, w.frobenius_norm())
            .unwrap();
        assert!(rel < 1e-5, "f32 reconstruction residual {rel}");
    }
}
