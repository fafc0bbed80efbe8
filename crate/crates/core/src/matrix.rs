//! Symmetric similarity matrices and Robinson structure checks.

use crate::error::{Result, SeriationError};
use crate::permutation::Permutation;

/// Symmetric `n × n` matrix of finite similarity scores, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SimilarityMatrix {
    /// Validates exact symmetry and finiteness.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(SeriationError::Shape("empty matrix".into()));
        }
        if data.len() != n * n {
            return Err(SeriationError::Shape(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = data[i * n + j];
                if !v.is_finite() {
                    return Err(SeriationError::NonFinite { row: i, col: j });
                }
                if j > i && v != data[j * n + i] {
                    return Err(SeriationError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(SeriationError::Shape(format!(
                "{n} rows but a row has {} columns",
                bad.len()
            )));
        }
        Self::new(n, rows.concat())
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle (`i <= j`).
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self::new(n, data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// `M_S` with rows and columns taken in the order given by `items`.
    pub fn submatrix(&self, items: &[usize]) -> Result<Self> {
        for &i in items {
            if i >= self.n {
                return Err(SeriationError::ItemOutOfRange { item: i, n: self.n });
            }
        }
        let m = items.len();
        let mut data = Vec::with_capacity(m * m);
        for &a in items {
            for &b in items {
                data.push(self.get(a, b));
            }
        }
        Self::new(m, data)
    }

    /// Rows and columns rearranged so that row `r` is the item ranked `r + 1` by `ordering`.
    pub fn reorder(&self, ordering: &Permutation) -> Result<Self> {
        if ordering.len() != self.n {
            return Err(SeriationError::DimensionMismatch {
                expected: self.n,
                got: ordering.len(),
            });
        }
        self.submatrix(&ordering.order())
    }

    /// Reverses rows and columns simultaneously.
    pub fn flipped(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.get(n - 1 - i, n - 1 - j);
            }
        }
        Self { n, data }
    }

    /// Strict (`>`) or non-strict (`>=`) Robinson check on the upper triangle.
    pub fn is_robinson(&self, strict: bool) -> bool {
        let ok = |a: f64, b: f64| if strict { a > b } else { a >= b };
        let n = self.n;
        for i in 0..n {
            for j in i..n {
                let v = self.get(i, j);
                if i >= 1 && !ok(v, self.get(i - 1, j)) {
                    return false;
                }
                if j + 1 < n && !ok(v, self.get(i, j + 1)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn minimal_gap(&self) -> MinimalGapReport {
        self.minimal_gap_over(GapRange::Full)
    }

    /// Smallest adjacent difference on the upper triangle. A non-positive
    /// gap identifies a violated Robinson inequality through its witness.
    pub fn minimal_gap_over(&self, range: GapRange) -> MinimalGapReport {
        let n = self.n;
        let mut best = MinimalGapReport {
            gap: f64::INFINITY,
            witness: None,
        };
        let mut consider = |gap: f64, w: GapWitness| {
            if gap < best.gap {
                best.gap = gap;
                best.witness = Some(w);
            }
        };
        for i in 0..n {
            for j in i..n {
                if range == GapRange::Interior && !(0 < i && i < j && j + 1 < n) {
                    continue;
                }
                let v = self.get(i, j);
                if i >= 1 {
                    consider(
                        v - self.get(i - 1, j),
                        GapWitness {
                            row: i,
                            col: j,
                            kind: GapKind::Row,
                        },
                    );
                }
                if j + 1 < n {
                    consider(
                        v - self.get(i, j + 1),
                        GapWitness {
                            row: i,
                            col: j,
                            kind: GapKind::Column,
                        },
                    );
                }
            }
        }
        best
    }
}

/// Index range used when computing the minimal gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapRange {
    /// Every well-defined adjacent difference with `i <= j`, diagonal included.
    #[default]
    Full,
    /// Only pairs with `1 < i < j <= n - 1` (1-based), the narrow displayed range.
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapKind {
    /// `R[i][j] - R[i-1][j]`
    Row,
    /// `R[i][j] - R[i][j+1]`
    Column,
}

/// 0-based upper-triangle entry whose adjacent difference attains the gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapWitness {
    pub row: usize,
    pub col: usize,
    pub kind: GapKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalGapReport {
    /// `+inf` when no difference is defined (`n = 1`).
    pub gap: f64,
    pub witness: Option<GapWitness>,
}

impl MinimalGapReport {
    /// `M ∈ M_Δ` once the matrix is already in Robinson order.
    pub fn at_least(&self, delta: f64) -> bool {
        self.gap >= delta
    }
}
