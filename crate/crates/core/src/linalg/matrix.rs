//! Dense row-major matrix.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense matrix stored row-major: `data[i * cols + j]` holds entry `(i, j)`.
///
/// Dimensions are always at least 1x1. [`Matrix::new`] rejects non-finite
/// entries so matrices built from user input are finite by construction;
/// kernels preserve finiteness for finite inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T = f64> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        if !data.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix by evaluating `f(i, j)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row slices. Panics on ragged input; intended for
    /// literals in tests and examples.
    pub fn from_rows(rows: &[&[T]]) -> Self {
        assert!(!rows.is_empty(), "at least one row required");
        let cols = rows[0].len();
        assert!(cols > 0, "at least one column required");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Standard matrix product.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, factor: T) -> Self {
        self.map(|v| v * factor)
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    /// Euclidean norm of column `j`.
    pub fn col_norm(&self, j: usize) -> T {
        (0..self.rows)
            .map(|i| self[(i, j)] * self[(i, j)])
            .sum::<T>()
            .sqrt()
    }

    /// Extracts columns `[0, k)` as a new matrix.
    pub fn leading_columns(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.cols);
        Self::from_fn(self.rows, k, |i, j| self[(i, j)])
    }

    /// Frobenius distance to `rhs` divided by `norm`, with a zero guard.
    pub fn relative_distance(&self, rhs: &Self, norm: T) -> Result<T> {
        let diff = self.sub(rhs)?.frobenius_norm();
        if norm == T::zero() {
            Ok(diff)
        } else {
            Ok(diff / norm)
        }
    }

    /// Serializes to the fixture text format: a `rows cols` header line, then
    /// one line per row of space-separated values at 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{:.16e}", self[(i, j)]);
            }
            out.push('\n');
        }
        out
    }

    /// Parses the fixture text format written by [`Matrix::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::TextFormat("empty input".into()))?;
        let mut dims = header.split_whitespace();
        let rows: usize = dims
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::TextFormat(format!("bad header line {header:?}")))?;
        let cols: usize = dims
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::TextFormat(format!("bad header line {header:?}")))?;
        if dims.next().is_some() {
            return Err(Error::TextFormat(format!("bad header line {header:?}")));
        }
        let mut data = Vec::with_capacity(rows.saturating_mul(cols));
        for (i, line) in lines.enumerate() {
            if i >= rows {
                return Err(Error::TextFormat(format!("more than {rows} rows")));
            }
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::TextFormat(format!("bad number {tok:?} in row {i}")))?;
                data.push(T::of(v));
            }
            if data.len() != (i + 1) * cols {
                return Err(Error::TextFormat(format!(
                    "row {i} has {} values, expected {cols}",
                    data.len() - i * cols
                )));
            }
        }
        if data.len() != rows * cols {
            return Err(Error::TextFormat(format!(
                "expected {rows} rows, got {}",
                data.len() / cols.max(1)
            )));
        }
        Self::new(rows, cols, data)
    }
}

impl<T: Real> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_times_matrix_is_matrix() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let id = Matrix::identity(2);
        assert_eq!(id.matmul(&a).unwrap(), a);
    }

    #[test]
    fn projector_times_swap() {
        let p = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let s = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let expect = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(p.matmul(&s).unwrap(), expect);
    }

    #[test]
    fn matmul_rejects_mismatched_shapes() {
        let a = Matrix::<f64>::zeros(2, 3);
        let b = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(
            a.matmul(&b),
            Err(Error::ShapeMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn new_rejects_bad_input() {
        assert!(matches!(
            Matrix::<f64>::new(0, 2, vec![]),
            Err(Error::InvalidDimensions { .. })
        ));
        assert!(matches!(
            Matrix::new(2, 2, vec![1.0; 3]),
            Err(Error::DataLength { .. })
        ));
        assert!(matches!(
            Matrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn text_round_trip_preserves_values() {
        let a = Matrix::from_rows(&[
            &[1.0, -2.5e-10, std::f64::consts::PI],
            &[0.0, 7.25, -1.0 / 3.0],
        ]);
        let b = Matrix::<f64>::from_text(&a.to_text()).unwrap();
        assert_eq!(a.shape(), b.shape());
        for (x, y) in a.data().iter().zip(b.data()) {
            // 17 significant digits reproduce an f64 exactly.
            assert_eq!(x, y);
        }
    }

    #[test]
    fn text_parse_rejects_ragged_rows() {
        assert!(Matrix::<f64>::from_text("2 2\n1 2 3\n4 5 6\n").is_err());
        assert!(Matrix::<f64>::from_text("2 2\n1 2\n").is_err());
        assert!(Matrix::<f64>::from_text("").is_err());
    }

    #[test]
    fn frobenius_norm_of_unit_axes() {
        let a = Matrix::from_rows(&[&[3.0, 0.0], &[0.0, 4.0]]);
        assert!((a.frobenius_norm() - 5.0).abs() < 1e-15);
    }
}
