//! Dense matrices with exact entries, the carrier of every differential
//! and map in the workbench.
//!
//! Matrices are row-major and immutable in spirit: operations return new
//! values.  Zero-dimensional shapes (0xN, Nx0) are legal everywhere.
//! The textual rendering `[[a, b], [c, d]]` defined by [`std::fmt::Display`]
//! here is the one the CLI document format reuses.

use crate::ring::{CoefficientRing, Scalar};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_fn(
        ring: CoefficientRing,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from row-major i64 data; entries are mapped into the ring.
    pub fn from_i64(ring: CoefficientRing, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: data.iter().map(|&n| ring.from_i64(n)).collect(),
        }
    }

    pub fn from_entries(
        ring: CoefficientRing,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn diagonal(ring: CoefficientRing, rows: usize, cols: usize, diag: &[Scalar]) -> Self {
        let mut m = Self::zero(ring, rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.ring.is_one(&self[(i, j)])
                    } else {
                        self.ring.is_zero(&self[(i, j)])
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.ring, self.rows, self.cols, |i, j| {
            self.ring.neg(&self[(i, j)])
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.ring, self.rows, self.cols, |i, j| {
            self.ring.add(&self[(i, j)], &other[(i, j)])
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.ring, self.rows, self.cols, |i, j| {
            self.ring.sub(&self[(i, j)], &other[(i, j)])
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_fn(self.ring, self.rows, self.cols, |i, j| {
            self.ring.mul(s, &self[(i, j)])
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions differ: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let ring = self.ring;
        Self::from_fn(ring, self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                if !ring.is_zero(&self[(i, k)]) && !ring.is_zero(&other[(k, j)]) {
                    acc = ring.add(&acc, &ring.mul(&self[(i, k)], &other[(k, j)]));
                }
            }
            acc
        })
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Scalar]) {
        assert_eq!(col.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = col[i].clone();
        }
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ring, self.rows, idx.len(), |i, j| {
            self[(i, idx[j])].clone()
        })
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ring, idx.len(), self.cols, |i, j| {
            self[(idx[i], j)].clone()
        })
    }

    /// Side-by-side concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Stacked concatenation [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Assembles a matrix from a grid of blocks.  Row heights and column
    /// widths are taken from the first block of each row/column; every
    /// block must agree with them.
    pub fn from_blocks(ring: CoefficientRing, grid: &[Vec<&ExactMatrix>]) -> Self {
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = if grid.is_empty() {
            vec![]
        } else {
            grid[0].iter().map(|b| b.cols).collect()
        };
        for (bi, row) in grid.iter().enumerate() {
            assert_eq!(row.len(), widths.len(), "ragged block grid");
            for (bj, b) in row.iter().enumerate() {
                assert_eq!(b.rows, heights[bi], "block height mismatch");
                assert_eq!(b.cols, widths[bj], "block width mismatch");
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut m = Self::zero(ring, rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..heights[bi] {
                    for j in 0..widths[bj] {
                        m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        m
    }

    /// Kronecker product self (x) other, row-major block layout.
    pub fn kronecker(&self, other: &Self) -> Self {
        let ring = self.ring;
        Self::from_fn(
            ring,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (ia, ib) = (i / other.rows, i % other.rows);
                let (ja, jb) = (j / other.cols, j % other.cols);
                ring.mul(&self[(ia, ja)], &other[(ib, jb)])
            },
        )
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let ring = self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    if !ring.is_zero(&self[(i, k)]) && !ring.is_zero(&v[k]) {
                        acc = ring.add(&acc, &ring.mul(&self[(i, k)], &v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free expansion; used only on the small
    /// unimodular transforms produced by the normal-form routines.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let ring = self.ring;
        if self.rows == 0 {
            return ring.one();
        }
        // Laplace expansion with memo-free recursion is fine at transform sizes.
        if self.rows == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = ring.zero();
        for j in 0..self.cols {
            if ring.is_zero(&self[(0, j)]) {
                continue;
            }
            let minor = Self::from_fn(ring, self.rows - 1, self.cols - 1, |r, c| {
                self[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = ring.mul(&self[(0, j)], &minor.determinant());
            acc = if j % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        acc
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for ExactMatrix {
    /// Row-major bracketed rendering, e.g. `[[1, 2], [3, 4]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {} {}", self.rows, self.cols, self.ring, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn multiply_and_identity() {
        let a = ExactMatrix::from_i64(Z, 2, 3, &[1, 2, 3, 4, 5, 6]);
        let id = ExactMatrix::identity(Z, 3);
        assert_eq!(a.mul(&id), a);
        let b = ExactMatrix::from_i64(Z, 3, 1, &[1, 0, -1]);
        assert_eq!(a.mul(&b), ExactMatrix::from_i64(Z, 2, 1, &[-2, -2]));
    }

    #[test]
    fn empty_shapes() {
        let a = ExactMatrix::zero(Z, 0, 3);
        let b = ExactMatrix::zero(Z, 3, 2);
        assert_eq!(a.mul(&b), ExactMatrix::zero(Z, 0, 2));
        assert!(a.is_zero());
        assert_eq!(ExactMatrix::identity(Z, 0).determinant(), Z.one());
    }

    #[test]
    fn blocks() {
        let a = ExactMatrix::from_i64(Z, 1, 1, &[1]);
        let b = ExactMatrix::from_i64(Z, 1, 2, &[2, 3]);
        let c = ExactMatrix::from_i64(Z, 2, 1, &[4, 5]);
        let d = ExactMatrix::from_i64(Z, 2, 2, &[6, 7, 8, 9]);
        let m = ExactMatrix::from_blocks(Z, &[vec![&a, &b], vec![&c, &d]]);
        assert_eq!(m, ExactMatrix::from_i64(Z, 3, 3, &[1, 2, 3, 4, 6, 7, 5, 8, 9]));
    }

    #[test]
    fn kronecker_shapes() {
        let a = ExactMatrix::from_i64(Z, 1, 2, &[2, 3]);
        let id = ExactMatrix::identity(Z, 2);
        let k = a.kronecker(&id);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k, ExactMatrix::from_i64(Z, 2, 4, &[2, 0, 3, 0, 0, 2, 0, 3]));
    }

    #[test]
    fn rendering() {
        let a = ExactMatrix::from_i64(Z, 2, 2, &[1, -2, 0, 3]);
        assert_eq!(a.to_string(), "[[1, -2], [0, 3]]");
        let e = ExactMatrix::zero(Z, 0, 0);
        assert_eq!(e.to_string(), "[]");
    }

    #[test]
    fn determinant_small() {
        let a = ExactMatrix::from_i64(Z, 3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]);
        assert_eq!(a.determinant(), Z.from_i64(5));
    }
}
