//! Smith normal form and the solvers built on it.
//!
//! One routine serves all three rings: over a field the Euclidean steps
//! degenerate to Gaussian elimination and the diagonal normalizes to 0/1.
//! Pivots are chosen by smallest nonzero size to bound coefficient growth;
//! correctness does not depend on the strategy.
//!
//! Everything downstream (kernels, cokernels, integral solving, lattice
//! bases) reduces to this decomposition, with a row-echelon fast path for
//! solving and kernels over fields where the unimodular transforms are
//! not needed.

use crate::matrix::ExactMatrix;
use crate::ring::{CoefficientRing, Scalar};

/// Invertible transforms u, v with `u * m * v = d`, d diagonal with a
/// divisibility chain and nonnegative entries.  Inverses are tracked so
/// lattice computations never invert a matrix after the fact.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: ExactMatrix,
    pub u_inv: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    pub v_inv: ExactMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        let ring = self.d.ring();
        (0..n)
            .take_while(|&i| !ring.is_zero(&self.d[(i, i)]))
            .count()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    ring: CoefficientRing,
    t: ExactMatrix,
    u: ExactMatrix,
    u_inv: ExactMatrix,
    v: ExactMatrix,
    v_inv: ExactMatrix,
}

impl Reducer {
    fn new(m: &ExactMatrix) -> Self {
        let ring = m.ring();
        Reducer {
            ring,
            t: m.clone(),
            u: ExactMatrix::identity(ring, m.rows()),
            u_inv: ExactMatrix::identity(ring, m.rows()),
            v: ExactMatrix::identity(ring, m.cols()),
            v_inv: ExactMatrix::identity(ring, m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.t.cols() {
            let tmp = self.t[(i, c)].clone();
            self.t[(i, c)] = self.t[(j, c)].clone();
            self.t[(j, c)] = tmp;
        }
        for c in 0..self.u.cols() {
            let tmp = self.u[(i, c)].clone();
            self.u[(i, c)] = self.u[(j, c)].clone();
            self.u[(j, c)] = tmp;
        }
        for r in 0..self.u_inv.rows() {
            let tmp = self.u_inv[(r, i)].clone();
            self.u_inv[(r, i)] = self.u_inv[(r, j)].clone();
            self.u_inv[(r, j)] = tmp;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.t.rows() {
            let tmp = self.t[(r, i)].clone();
            self.t[(r, i)] = self.t[(r, j)].clone();
            self.t[(r, j)] = tmp;
        }
        for r in 0..self.v.rows() {
            let tmp = self.v[(r, i)].clone();
            self.v[(r, i)] = self.v[(r, j)].clone();
            self.v[(r, j)] = tmp;
        }
        for c in 0..self.v_inv.cols() {
            let tmp = self.v_inv[(i, c)].clone();
            self.v_inv[(i, c)] = self.v_inv[(j, c)].clone();
            self.v_inv[(j, c)] = tmp;
        }
    }

    /// row_i' = a row_i + b row_j ; row_j' = c row_i + d row_j, with ad - bc = 1.
    fn row_comb(&mut self, i: usize, j: usize, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) {
        let ring = self.ring;
        debug_assert!(ring.is_one(&ring.sub(&ring.mul(a, d), &ring.mul(b, c))));
        let apply = |m: &mut ExactMatrix| {
            for col in 0..m.cols() {
                let x = m[(i, col)].clone();
                let y = m[(j, col)].clone();
                m[(i, col)] = ring.add(&ring.mul(a, &x), &ring.mul(b, &y));
                m[(j, col)] = ring.add(&ring.mul(c, &x), &ring.mul(d, &y));
            }
        };
        apply(&mut self.t);
        apply(&mut self.u);
        // inverse transform: columns of u_inv combine with [d -b; -c a]
        let m = &mut self.u_inv;
        for row in 0..m.rows() {
            let x = m[(row, i)].clone();
            let y = m[(row, j)].clone();
            m[(row, i)] = ring.sub(&ring.mul(d, &x), &ring.mul(c, &y));
            m[(row, j)] = ring.sub(&ring.mul(a, &y), &ring.mul(b, &x));
        }
    }

    /// col_i' = a col_i + b col_j ; col_j' = c col_i + d col_j, with ad - bc = 1.
    fn col_comb(&mut self, i: usize, j: usize, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) {
        let ring = self.ring;
        debug_assert!(ring.is_one(&ring.sub(&ring.mul(a, d), &ring.mul(b, c))));
        let apply = |m: &mut ExactMatrix| {
            for row in 0..m.rows() {
                let x = m[(row, i)].clone();
                let y = m[(row, j)].clone();
                m[(row, i)] = ring.add(&ring.mul(a, &x), &ring.mul(b, &y));
                m[(row, j)] = ring.add(&ring.mul(c, &x), &ring.mul(d, &y));
            }
        };
        apply(&mut self.t);
        apply(&mut self.v);
        let m = &mut self.v_inv;
        for col in 0..m.cols() {
            let x = m[(i, col)].clone();
            let y = m[(j, col)].clone();
            m[(i, col)] = ring.sub(&ring.mul(d, &x), &ring.mul(c, &y));
            m[(j, col)] = ring.sub(&ring.mul(a, &y), &ring.mul(b, &x));
        }
    }

    /// Scales row i by a unit.
    fn scale_row(&mut self, i: usize, unit: &Scalar) {
        let ring = self.ring;
        let inv = ring.inv(unit).expect("scaling by a non-unit");
        for c in 0..self.t.cols() {
            self.t[(i, c)] = ring.mul(unit, &self.t[(i, c)]);
        }
        for c in 0..self.u.cols() {
            self.u[(i, c)] = ring.mul(unit, &self.u[(i, c)]);
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, i)] = ring.mul(&inv, &self.u_inv[(r, i)]);
        }
    }

    fn smallest_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.t.rows() {
            for j in from..self.t.cols() {
                if ring.is_zero(&self.t[(i, j)]) {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if ring.pivot_size(&self.t[(i, j)]) < ring.pivot_size(&self.t[b]) {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn clear_pivot(&mut self, t: usize) {
        let ring = self.ring;
        loop {
            let mut dirty = false;
            // clear the column below/above the pivot with row operations
            for i in 0..self.t.rows() {
                if i == t || ring.is_zero(&self.t[(i, t)]) {
                    continue;
                }
                let x = self.t[(t, t)].clone();
                let y = self.t[(i, t)].clone();
                if ring.divides(&x, &y) {
                    // plain elimination leaves row t intact
                    let q = ring.neg(&ring.exact_div(&y, &x));
                    self.row_comb(t, i, &ring.one(), &ring.zero(), &q, &ring.one());
                } else {
                    let (g, s, w) = ring.gcdx(&x, &y);
                    let a = ring.exact_div(&x, &g);
                    let b = ring.exact_div(&y, &g);
                    self.row_comb(t, i, &s, &w, &ring.neg(&b), &a);
                    dirty = true;
                }
            }
            // clear the row with column operations
            for j in 0..self.t.cols() {
                if j == t || ring.is_zero(&self.t[(t, j)]) {
                    continue;
                }
                let x = self.t[(t, t)].clone();
                let y = self.t[(t, j)].clone();
                if ring.divides(&x, &y) {
                    let q = ring.neg(&ring.exact_div(&y, &x));
                    self.col_comb(t, j, &ring.one(), &ring.zero(), &q, &ring.one());
                } else {
                    let (g, s, w) = ring.gcdx(&x, &y);
                    let a = ring.exact_div(&x, &g);
                    let b = ring.exact_div(&y, &g);
                    self.col_comb(t, j, &s, &w, &ring.neg(&b), &a);
                    dirty = true;
                }
            }
            let col_clear = (0..self.t.rows()).all(|i| i == t || ring.is_zero(&self.t[(i, t)]));
            let row_clear = (0..self.t.cols()).all(|j| j == t || ring.is_zero(&self.t[(t, j)]));
            if col_clear && row_clear {
                return;
            }
            assert!(dirty, "pivot clearing made no progress");
        }
    }

    fn normalize_chain(&mut self, rank: usize) {
        let ring = self.ring;
        if rank == 0 {
            return;
        }
        loop {
            let mut settled = true;
            for i in 0..rank - 1 {
                let x = self.t[(i, i)].clone();
                let y = self.t[(i + 1, i + 1)].clone();
                if ring.divides(&x, &y) {
                    continue;
                }
                settled = false;
                if ring.divides(&y, &x) {
                    self.swap_rows(i, i + 1);
                    self.swap_cols(i, i + 1);
                    continue;
                }
                // replace diag(x, y) by diag(g, xy/g)
                let (g, s, w) = ring.gcdx(&x, &y);
                let a = ring.exact_div(&x, &g);
                let b = ring.exact_div(&y, &g);
                let wb = ring.mul(&w, &b);
                let sa = ring.mul(&s, &a);
                self.row_comb(i, i + 1, &ring.one(), &ring.one(), &ring.neg(&wb), &sa);
                self.col_comb(i, i + 1, &s, &w, &ring.neg(&b), &a);
                // the combination can leave off-diagonal residue; clear it
                self.clear_pivot(i);
            }
            if settled {
                return;
            }
        }
    }

    fn run(mut self) -> SmithForm {
        let bound = self.t.rows().min(self.t.cols());
        let mut rank = 0;
        for t in 0..bound {
            let Some((i, j)) = self.smallest_pivot(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            self.clear_pivot(t);
            rank = t + 1;
        }
        self.normalize_chain(rank);
        for i in 0..rank {
            let unit = self.ring.normalizing_unit(&self.t[(i, i)]);
            if !self.ring.is_one(&unit) {
                self.scale_row(i, &unit);
            }
        }
        SmithForm {
            u: self.u,
            u_inv: self.u_inv,
            d: self.t,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

/// Computes u, d, v with u*m*v = d diagonal, u and v invertible over the
/// ring, diagonal entries nonnegative with d_i | d_{i+1}.  Over a field
/// the diagonal consists of ones followed by zeros.  Total on all shapes,
/// including empty ones.
pub fn smith_normal_form(m: &ExactMatrix) -> SmithForm {
    Reducer::new(m).run()
}

/// Rank of the matrix over its ring.
pub fn rank(m: &ExactMatrix) -> usize {
    if m.ring().is_field() {
        echelon(m).1.len()
    } else {
        smith_normal_form(m).rank()
    }
}

/// Columns form a basis of `{x : m x = 0}`.  Over the integers the basis
/// generates the kernel as a free Z-module; kernels of maps of free
/// modules over a principal ring are free.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    if m.ring().is_field() {
        return kernel_basis_field(m);
    }
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.cols()).collect();
    snf.v.select_columns(&idx)
}

/// Row echelon form of a copy of m (field coefficients), returning the
/// reduced matrix and the pivot column indices.
fn echelon(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let ring = m.ring();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row >= a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !ring.is_zero(&a[(i, col)])) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols() {
                let tmp = a[(row, c)].clone();
                a[(row, c)] = a[(p, c)].clone();
                a[(p, c)] = tmp;
            }
        }
        let inv = ring.inv(&a[(row, col)]).unwrap();
        for c in col..a.cols() {
            a[(row, c)] = ring.mul(&inv, &a[(row, c)]);
        }
        for i in 0..a.rows() {
            if i != row && !ring.is_zero(&a[(i, col)]) {
                let factor = a[(i, col)].clone();
                for c in col..a.cols() {
                    let s = ring.mul(&factor, &a[(row, c)]);
                    a[(i, c)] = ring.sub(&a[(i, c)], &s);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

fn kernel_basis_field(m: &ExactMatrix) -> ExactMatrix {
    let ring = m.ring();
    let (a, pivots) = echelon(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = ExactMatrix::zero(ring, m.cols(), free.len());
    for (k, &fc) in free.iter().enumerate() {
        basis[(fc, k)] = ring.one();
        for (prow, &pc) in pivots.iter().enumerate() {
            basis[(pc, k)] = ring.neg(&a[(prow, fc)]);
        }
    }
    basis
}

/// Solves m x = b over the ring; returns one solution or None.  Over the
/// integers the solution is integral: the SNF change of variables turns
/// the system into divisibility conditions, so a returned None always has
/// an independent obstruction behind it.
pub fn solve_linear(m: &ExactMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rhs = ExactMatrix::from_entries(m.ring(), b.len(), 1, b.to_vec());
    solve_matrix(m, &rhs).map(|x| x.column(0))
}

/// Solves m X = B column by column; None if any column has no solution.
pub fn solve_matrix(m: &ExactMatrix, b: &ExactMatrix) -> Option<ExactMatrix> {
    assert_eq!(m.rows(), b.rows(), "solve: incompatible shapes");
    let ring = m.ring();
    if ring.is_field() {
        return solve_matrix_field(m, b);
    }
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let c = snf.u.mul(b);
    let mut y = ExactMatrix::zero(ring, m.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..m.rows() {
            let ci = &c[(i, col)];
            if i < r {
                let d = &snf.d[(i, i)];
                if !ring.divides(d, ci) {
                    return None;
                }
                y[(i, col)] = ring.exact_div(ci, d);
            } else if !ring.is_zero(ci) {
                return None;
            }
        }
    }
    Some(snf.v.mul(&y))
}

fn solve_matrix_field(m: &ExactMatrix, b: &ExactMatrix) -> Option<ExactMatrix> {
    let ring = m.ring();
    let aug = m.hstack(b);
    let (e, pivots) = echelon(&aug);
    // a pivot in the rhs block means an inconsistent row
    if pivots.iter().any(|&c| c >= m.cols()) {
        return None;
    }
    let mut x = ExactMatrix::zero(ring, m.cols(), b.cols());
    for (row, &pc) in pivots.iter().enumerate() {
        for col in 0..b.cols() {
            x[(pc, col)] = e[(row, m.cols() + col)].clone();
        }
    }
    Some(x)
}

/// A basis for the column span of g: over the integers, a lattice basis;
/// over a field, a basis of the column space.
pub fn column_span_basis(g: &ExactMatrix) -> ExactMatrix {
    if g.ring().is_field() {
        let (_, pivots) = echelon(&g.clone());
        return g.select_columns(&pivots);
    }
    let snf = smith_normal_form(g);
    let r = snf.rank();
    let ring = g.ring();
    ExactMatrix::from_fn(ring, g.rows(), r, |i, j| {
        ring.mul(&snf.u_inv[(i, j)], &snf.d[(j, j)])
    })
}
