//! Sparsity patterns: the fixed index sets over which SVFT coefficients train.
//!
//! Four constructions are provided. *Plain* is the main diagonal. *Banded*
//! takes every position within a half-width of the diagonal. *Random* anchors
//! the diagonal and adds seeded off-diagonal positions, so the plain pattern
//! is always a subset and budgets can be matched against banded runs.
//! *Top-k* scores positions by the absolute alignment between left and right
//! singular vectors and keeps the k strongest.
//!
//! Patterns are immutable once constructed; indices are stored row-major
//! sorted and duplicate-free.

use crate::error::{Error, Result};
use crate::linalg::SvdFactors;
use crate::rng::SplitMix64;
use crate::scalar::Real;

/// Which construction produced a pattern, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternKind {
    /// Main diagonal only.
    Plain,
    /// All positions with `|i - j| <= half_width`.
    Banded { half_width: usize },
    /// Diagonal plus seeded off-diagonal positions, `total` indices overall.
    Random { total: usize, seed: u64 },
    /// The `k` positions with the largest `|u_i . v_j|` alignment.
    TopK { k: usize },
}

/// A fixed set of trainable coefficient positions in a `d1 x d2` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityPattern {
    d1: usize,
    d2: usize,
    kind: PatternKind,
    indices: Vec<(usize, usize)>,
}

impl SparsityPattern {
    /// Diagonal pattern: `min(d1, d2)` positions.
    pub fn plain(d1: usize, d2: usize) -> Self {
        assert!(d1 >= 1 && d2 >= 1);
        let indices = (0..d1.min(d2)).map(|i| (i, i)).collect();
        Self {
            d1,
            d2,
            kind: PatternKind::Plain,
            indices,
        }
    }

    /// Band pattern: every in-bounds `(i, j)` with `i - half_width <= j <= i + half_width`.
    ///
    /// For a square `D x D` matrix the cardinality is `D(2d+1) - d(d+1)` with
    /// `d = half_width` (equivalently `D*d + (D-d)(d+1)`).
    pub fn banded(d1: usize, d2: usize, half_width: usize) -> Self {
        assert!(d1 >= 1 && d2 >= 1);
        let mut indices = Vec::new();
        for i in 0..d1 {
            let lo = i.saturating_sub(half_width);
            let hi = (i + half_width).min(d2 - 1);
            for j in lo..=hi {
                indices.push((i, j));
            }
        }
        Self {
            d1,
            d2,
            kind: PatternKind::Banded { half_width },
            indices,
        }
    }

    /// Random pattern: the full diagonal plus `total - min(d1, d2)` distinct
    /// off-diagonal positions sampled without replacement from the seeded
    /// generator. Deterministic for fixed inputs.
    pub fn random(d1: usize, d2: usize, total: usize, seed: u64) -> Result<Self> {
        assert!(d1 >= 1 && d2 >= 1);
        let min_dim = d1.min(d2);
        if total < min_dim || total > d1 * d2 {
            return Err(Error::PatternBudget {
                min: min_dim,
                max: d1 * d2,
                got: total,
            });
        }
        let mut indices: Vec<(usize, usize)> = (0..min_dim).map(|i| (i, i)).collect();

        let extra = total - min_dim;
        if extra > 0 {
            let mut off_diag: Vec<(usize, usize)> = Vec::with_capacity(d1 * d2 - min_dim);
            for i in 0..d1 {
                for j in 0..d2 {
                    if i != j {
                        off_diag.push((i, j));
                    }
                }
            }
            // Partial Fisher-Yates: the first `extra` slots become the sample.
            let mut rng = SplitMix64::new(seed);
            for slot in 0..extra {
                let pick = slot + rng.next_below((off_diag.len() - slot) as u64) as usize;
                off_diag.swap(slot, pick);
            }
            indices.extend_from_slice(&off_diag[..extra]);
        }

        indices.sort_unstable();
        Ok(Self {
            d1,
            d2,
            kind: PatternKind::Random { total, seed },
            indices,
        })
    }

    /// Top-k pattern: scores every position by `|u_i . v_j|` and keeps the k
    /// largest, ties broken in row-major order. Requires a square matrix so
    /// the left and right singular vectors have the same length.
    pub fn top_k<T: Real>(factors: &SvdFactors<T>, k: usize) -> Result<Self> {
        let (d1, d2) = (factors.d1(), factors.d2());
        if d1 != d2 {
            return Err(Error::NonSquare { rows: d1, cols: d2 });
        }
        if k < 1 || k > d1 * d2 {
            return Err(Error::PatternBudget {
                min: 1,
                max: d1 * d2,
                got: k,
            });
        }
        // score(i, j) = |u_i . v_j| = |(U^T V)[i, j]|
        let gram = factors
            .u
            .transpose()
            .matmul(&factors.v)
            .expect("square factors");
        let mut scored: Vec<((usize, usize), T)> = Vec::with_capacity(d1 * d2);
        for i in 0..d1 {
            for j in 0..d2 {
                scored.push(((i, j), gram[(i, j)].abs()));
            }
        }
        // Stable sort by descending score keeps row-major order among ties.
        scored.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite scores"));
        let mut indices: Vec<(usize, usize)> = scored[..k].iter().map(|&(ij, _)| ij).collect();
        indices.sort_unstable();
        Ok(Self {
            d1,
            d2,
            kind: PatternKind::TopK { k },
            indices,
        })
    }

    /// Rebuilds a pattern from explicit indices (used when loading a saved
    /// adapter, where truncation may have dropped positions). Indices must be
    /// in bounds, strictly sorted row-major, and duplicate-free; unlike the
    /// constructors, an empty list is accepted.
    pub fn from_indices(
        d1: usize,
        d2: usize,
        kind: PatternKind,
        indices: Vec<(usize, usize)>,
    ) -> Result<Self> {
        for &(i, j) in &indices {
            if i >= d1 || j >= d2 {
                return Err(Error::InvalidIndices {
                    d1,
                    d2,
                    detail: format!("({i}, {j}) out of bounds"),
                });
            }
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndices {
                d1,
                d2,
                detail: "indices must be strictly sorted row-major".into(),
            });
        }
        Ok(Self {
            d1,
            d2,
            kind,
            indices,
        })
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn kind(&self) -> &PatternKind {
        &self.kind
    }

    /// Row-major sorted index list.
    pub fn indices(&self) -> &[(usize, usize)] {
        &self.indices
    }

    /// Number of trainable positions.
    pub fn cardinality(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.indices.binary_search(&(i, j)).is_ok()
    }

    /// True when every index of `other` is also in `self`.
    pub fn is_superset_of(&self, other: &SparsityPattern) -> bool {
        other.indices.iter().all(|&(i, j)| self.contains(i, j))
    }

    /// Restriction to indices with both coordinates below `rank`, keeping the
    /// kind tag. The result may be empty.
    pub(crate) fn restrict_to_rank(&self, rank: usize) -> Self {
        Self {
            d1: self.d1,
            d2: self.d2,
            kind: self.kind.clone(),
            indices: self
                .indices
                .iter()
                .copied()
                .filter(|&(i, j)| i < rank && j < rank)
                .collect(),
        }
    }
}

/// Cardinality of the banded pattern, used to budget-match random patterns
/// against banded ones at the same half-width knob.
pub fn banded_budget(d1: usize, d2: usize, half_width: usize) -> usize {
    SparsityPattern::banded(d1, d2, half_width).cardinality()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{svd, Matrix};
    use crate::rng::SplitMix64;

    #[test]
    fn plain_square() {
        let p = SparsityPattern::plain(3, 3);
        assert_eq!(p.indices(), &[(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn plain_rectangular_takes_min_dim() {
        assert_eq!(SparsityPattern::plain(4, 3).cardinality(), 3);
        assert_eq!(SparsityPattern::plain(1, 5).indices(), &[(0, 0)]);
    }

    #[test]
    fn banded_zero_width_is_plain() {
        let b = SparsityPattern::banded(4, 4, 0);
        assert_eq!(b.indices(), SparsityPattern::plain(4, 4).indices());
    }

    #[test]
    fn banded_matches_closed_forms() {
        // D(2d+1) - d(d+1) and D*k + (D-k)(k+1) agree with enumeration.
        let b = SparsityPattern::banded(6, 6, 2);
        assert_eq!(b.cardinality(), 24);
        assert_eq!(b.cardinality(), 6 * 2 + (6 - 2) * 3);
        assert_eq!(SparsityPattern::banded(4, 4, 1).cardinality(), 10);
        assert_eq!(banded_budget(2048, 2048, 16), 2048 * 33 - 16 * 17);
        assert_eq!(banded_budget(2048, 2048, 16), 67_312);
    }

    #[test]
    fn random_budget_bounds() {
        assert!(matches!(
            SparsityPattern::random(3, 3, 2, 0),
            Err(Error::PatternBudget { .. })
        ));
        assert!(matches!(
            SparsityPattern::random(3, 3, 10, 0),
            Err(Error::PatternBudget { .. })
        ));
    }

    #[test]
    fn random_minimum_budget_is_the_diagonal() {
        let p = SparsityPattern::random(3, 3, 3, 12345).unwrap();
        assert_eq!(p.indices(), SparsityPattern::plain(3, 3).indices());
    }

    #[test]
    fn random_full_budget_is_everything() {
        let p = SparsityPattern::random(2, 2, 4, 1).unwrap();
        assert_eq!(p.indices(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn random_is_deterministic_and_diagonal_anchored() {
        let a = SparsityPattern::random(4, 4, 8, 0).unwrap();
        let b = SparsityPattern::random(4, 4, 8, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cardinality(), 8);
        assert!(a.is_superset_of(&SparsityPattern::plain(4, 4)));
    }

    #[test]
    fn top_k_requires_square() {
        let w = Matrix::<f64>::from_fn(3, 2, |i, j| (i + j) as f64 + 1.0);
        let f = svd(&w).unwrap();
        assert!(matches!(
            SparsityPattern::top_k(&f, 2),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn top_k_of_symmetric_positive_definite_selects_diagonal() {
        // For U == V the alignment table is the identity, so k = d picks the
        // diagonal.
        let mut rng = SplitMix64::new(3);
        let g: Matrix<f64> = rng.normal_matrix(4, 4);
        let spd = g
            .matmul(&g.transpose())
            .unwrap()
            .add(&Matrix::identity(4).scale(4.0))
            .unwrap();
        let f = svd(&spd).unwrap();
        let p = SparsityPattern::top_k(&f, 4).unwrap();
        assert_eq!(p.indices(), SparsityPattern::plain(4, 4).indices());
    }

    #[test]
    fn top_k_full_budget_selects_everything() {
        let mut rng = SplitMix64::new(5);
        let w: Matrix<f64> = rng.normal_matrix(3, 3);
        let f = svd(&w).unwrap();
        let p = SparsityPattern::top_k(&f, 9).unwrap();
        assert_eq!(p.cardinality(), 9);
    }

    #[test]
    fn from_indices_validates() {
        assert!(SparsityPattern::from_indices(2, 2, PatternKind::Plain, vec![(0, 0), (2, 0)])
            .is_err());
        assert!(SparsityPattern::from_indices(2, 2, PatternKind::Plain, vec![(1, 0), (0, 0)])
            .is_err());
        assert!(SparsityPattern::from_indices(2, 2, PatternKind::Plain, vec![(0, 0), (0, 0)])
            .is_err());
        assert!(SparsityPattern::from_indices(2, 2, PatternKind::Plain, vec![]).is_ok());
    }

    #[test]
    fn band_nesting() {
        let d = 7;
        let mut prev = SparsityPattern::plain(d, d);
        for w in 0..d {
            let band = SparsityPattern::banded(d, d, w);
            assert!(band.is_superset_of(&prev));
            prev = band;
        }
    }
}
