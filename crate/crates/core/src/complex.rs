//! Bounded cochain complexes of free modules, chain maps and homotopies.
//!
//! Indexing is cohomological throughout: differentials raise degree by
//! one and `d(n)` maps degree n to degree n+1.  Complexes store a finite
//! support interval; `rank` and `diff` are total functions that return
//! zero ranks and zero-shaped matrices outside it, so callers never
//! branch on bounds.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::module::{FgModule, ModuleMap, Subquotient};
use crate::ring::CoefficientRing;
use crate::snf::kernel_basis;
use std::collections::BTreeMap;
use std::fmt;

/// A bounded cochain complex of finitely generated free modules.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: CoefficientRing,
    /// Lowest degree of the (trimmed) support; irrelevant when empty.
    lo: i64,
    /// ranks[i] is the rank in degree lo + i; edges are nonzero after trimming.
    ranks: Vec<usize>,
    /// diffs[i] is d(lo + i) of shape ranks[i+1] x ranks[i]; one fewer than ranks.
    diffs: Vec<ExactMatrix>,
}

impl ChainComplex {
    /// The zero complex.
    pub fn zero(ring: CoefficientRing) -> Self {
        ChainComplex {
            ring,
            lo: 0,
            ranks: vec![],
            diffs: vec![],
        }
    }

    /// A single free module R^rank concentrated in one degree.
    pub fn concentrated(ring: CoefficientRing, degree: i64, rank: usize) -> Self {
        if rank == 0 {
            return Self::zero(ring);
        }
        ChainComplex {
            ring,
            lo: degree,
            ranks: vec![rank],
            diffs: vec![],
        }
    }

    /// Builds a complex from consecutive ranks starting at degree `lo` and
    /// the differentials between them.  Shapes are checked; `d^2 = 0` is
    /// not -- that is [`ChainComplex::validate`]'s job.
    pub fn from_parts(
        ring: CoefficientRing,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if !ranks.is_empty() && diffs.len() + 1 != ranks.len() {
            return Err(Error::ShapeMismatch {
                degree: lo,
                expected_rows: ranks.len().saturating_sub(1),
                expected_cols: 0,
                got_rows: diffs.len(),
                got_cols: 0,
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::ShapeMismatch {
                    degree: lo + i as i64,
                    expected_rows: ranks[i + 1],
                    expected_cols: ranks[i],
                    got_rows: d.rows(),
                    got_cols: d.cols(),
                });
            }
        }
        let mut c = ChainComplex {
            ring,
            lo,
            ranks,
            diffs,
        };
        c.trim();
        Ok(c)
    }

    /// Internal constructor for values produced by the calculus itself;
    /// shape errors here are bugs, not inputs.
    pub(crate) fn assemble(
        ring: CoefficientRing,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<ExactMatrix>,
    ) -> Self {
        let c = Self::from_parts(ring, lo, ranks, diffs).expect("internal shape error");
        debug_assert!(c.validate().is_ok(), "internal construction broke d^2 = 0");
        c
    }

    fn trim(&mut self) {
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        if self.ranks.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero_complex(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree of the support (0 when empty).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of the support (lo - 1 when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Degrees of the support, in order.
    pub fn support(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    /// The differential out of degree n, of shape rank(n+1) x rank(n).
    pub fn diff(&self, n: i64) -> ExactMatrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            ExactMatrix::zero(self.ring, self.rank(n + 1), self.rank(n))
        }
    }

    /// Checks d^2 = 0, reporting the first offending degree.
    pub fn validate(&self) -> Result<()> {
        for n in self.support() {
            if !self.diff(n + 1).mul(&self.diff(n)).is_zero() {
                return Err(Error::DifferentialSquare(n));
            }
        }
        Ok(())
    }

    /// Total rank over the support.
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// The kernel-modulo-image subquotient at degree n, retaining the
    /// coordinate data needed for induced maps.
    pub fn cohomology_basis(&self, n: i64) -> Subquotient {
        let kernel = kernel_basis(&self.diff(n));
        Subquotient::new(kernel, &self.diff(n - 1))
    }

    /// H^n in invariant-factor normal form.
    pub fn cohomology(&self, n: i64) -> FgModule {
        self.cohomology_basis(n).module().clone()
    }

    /// All nonzero cohomology, by degree.
    pub fn cohomology_table(&self) -> BTreeMap<i64, FgModule> {
        self.support()
            .map(|n| (n, self.cohomology(n)))
            .filter(|(_, h)| !h.is_zero())
            .collect()
    }

    /// Is every cohomology module zero?
    pub fn is_acyclic(&self) -> bool {
        self.support().all(|n| self.cohomology(n).is_zero())
    }

    /// The shift c[k]: degree n holds what degree n+k held, and the
    /// differential picks up the sign (-1)^k.
    pub fn shift(&self, k: i64) -> ChainComplex {
        if self.is_zero_complex() {
            return self.clone();
        }
        let diffs = self
            .diffs
            .iter()
            .map(|d| if k % 2 == 0 { d.clone() } else { d.neg() })
            .collect();
        ChainComplex {
            ring: self.ring,
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs,
        }
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_complex() {
            return write!(f, "0 complex over {}", self.ring);
        }
        write!(
            f,
            "complex over {} on [{}, {}] ranks {:?}",
            self.ring,
            self.lo,
            self.hi(),
            self.ranks
        )
    }
}

/// The degreewise direct sum with its structure maps.
pub struct Biproduct {
    pub complex: ChainComplex,
    pub inject_left: ChainMap,
    pub inject_right: ChainMap,
    pub project_left: ChainMap,
    pub project_right: ChainMap,
}

/// Degreewise direct sum with block-diagonal differential; the returned
/// injections and projections satisfy the biproduct identities.
pub fn biproduct(a: &ChainComplex, b: &ChainComplex) -> Result<Biproduct> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(
            a.ring().to_string(),
            b.ring().to_string(),
        ));
    }
    let ring = a.ring();
    if a.is_zero_complex() && b.is_zero_complex() {
        let z = ChainComplex::zero(ring);
        let zm = ChainMap::zero(&z, &z);
        return Ok(Biproduct {
            complex: z,
            inject_left: zm.clone(),
            inject_right: zm.clone(),
            project_left: zm.clone(),
            project_right: zm,
        });
    }
    let lo = if a.is_zero_complex() {
        b.lo()
    } else if b.is_zero_complex() {
        a.lo()
    } else {
        a.lo().min(b.lo())
    };
    let hi = if a.is_zero_complex() {
        b.hi()
    } else if b.is_zero_complex() {
        a.hi()
    } else {
        a.hi().max(b.hi())
    };
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        ranks.push(a.rank(n) + b.rank(n));
        if n < hi {
            let da = a.diff(n);
            let db = b.diff(n);
            let z_ab = ExactMatrix::zero(ring, da.rows(), db.cols());
            let z_ba = ExactMatrix::zero(ring, db.rows(), da.cols());
            diffs.push(ExactMatrix::from_blocks(
                ring,
                &[vec![&da, &z_ab], vec![&z_ba, &db]],
            ));
        }
    }
    let sum = ChainComplex::assemble(ring, lo, ranks, diffs);
    let structure = |left: bool, into: bool| -> ChainMap {
        let mut comps = BTreeMap::new();
        for n in lo..=hi {
            let (ra, rb) = (a.rank(n), b.rank(n));
            let ia = ExactMatrix::identity(ring, ra);
            let ib = ExactMatrix::identity(ring, rb);
            let m = match (left, into) {
                (true, true) => ia.vstack(&ExactMatrix::zero(ring, rb, ra)),
                (false, true) => ExactMatrix::zero(ring, ra, rb).vstack(&ib),
                (true, false) => ia.hstack(&ExactMatrix::zero(ring, ra, rb)),
                (false, false) => ExactMatrix::zero(ring, rb, ra).hstack(&ib),
            };
            comps.insert(n, m);
        }
        let (src, tgt) = if into {
            (if left { a.clone() } else { b.clone() }, sum.clone())
        } else {
            (sum.clone(), if left { a.clone() } else { b.clone() })
        };
        ChainMap::new(src, tgt, comps).expect("biproduct structure maps are chain maps")
    };
    Ok(Biproduct {
        inject_left: structure(true, true),
        inject_right: structure(false, true),
        project_left: structure(true, false),
        project_right: structure(false, false),
        complex: sum,
    })
}

/// Tensor product of complexes: the degree-n term is the direct sum of
/// blocks A^i (x) B^j over i + j = n (blocks ordered by ascending i,
/// each laid out with the A index outer).  The differential acts as
/// d_A (x) id + (-1)^i id (x) d_B; the Koszul sign makes d^2 = 0.
pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(
            a.ring().to_string(),
            b.ring().to_string(),
        ));
    }
    let ring = a.ring();
    if a.is_zero_complex() || b.is_zero_complex() {
        return Ok(ChainComplex::zero(ring));
    }
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    let block_sizes = |n: i64| -> Vec<(i64, usize, usize)> {
        (a.lo()..=a.hi())
            .map(|i| (i, a.rank(i), b.rank(n - i)))
            .filter(|&(_, ra, rb)| ra > 0 && rb > 0)
            .collect()
    };
    let offset_of = |blocks: &[(i64, usize, usize)], i: i64| -> Option<usize> {
        let mut off = 0;
        for &(bi, ra, rb) in blocks {
            if bi == i {
                return Some(off);
            }
            off += ra * rb;
        }
        None
    };
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let blocks = block_sizes(n);
        ranks.push(blocks.iter().map(|&(_, ra, rb)| ra * rb).sum());
    }
    for n in lo..hi {
        let src_blocks = block_sizes(n);
        let dst_blocks = block_sizes(n + 1);
        let rows = dst_blocks.iter().map(|&(_, ra, rb)| ra * rb).sum();
        let cols = src_blocks.iter().map(|&(_, ra, rb)| ra * rb).sum();
        let mut d = ExactMatrix::zero(ring, rows, cols);
        let mut col_off = 0;
        for &(i, ra, rb) in &src_blocks {
            let j = n - i;
            // d_A (x) id_B : block (i, j) -> block (i+1, j)
            if let Some(row_off) = offset_of(&dst_blocks, i + 1) {
                let part = a.diff(i).kronecker(&ExactMatrix::identity(ring, rb));
                for r in 0..part.rows() {
                    for c in 0..part.cols() {
                        d[(row_off + r, col_off + c)] = part[(r, c)].clone();
                    }
                }
            }
            // (-1)^i id_A (x) d_B : block (i, j) -> block (i, j+1)
            if let Some(row_off) = offset_of(&dst_blocks, i) {
                let part = ExactMatrix::identity(ring, ra).kronecker(&b.diff(j));
                let part = if i.rem_euclid(2) == 1 { part.neg() } else { part };
                for r in 0..part.rows() {
                    for c in 0..part.cols() {
                        d[(row_off + r, col_off + c)] = part[(r, c)].clone();
                    }
                }
            }
            col_off += ra * rb;
        }
        diffs.push(d);
    }
    Ok(ChainComplex::assemble(ring, lo, ranks, diffs))
}

/// A degreewise map commuting with the differentials.
#[derive(Clone)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    /// Components where both ranks are nonzero; zero matrices included.
    comps: BTreeMap<i64, ExactMatrix>,
}

impl PartialEq for ChainMap {
    /// Equality in the category of complexes: same ends, equal components
    /// degreewise (stored zero matrices and omitted ones agree).
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && degree_range(&self.source, &self.target)
                .all(|n| self.component(n) == other.component(n))
    }
}

impl Eq for ChainMap {}

impl ChainMap {
    /// Validates shapes and the commuting-ladder condition
    /// `d_target(n) . f(n) = f(n+1) . d_source(n)`.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self> {
        assert_eq!(source.ring(), target.ring(), "ring mismatch");
        let mut comps = BTreeMap::new();
        for n in degree_range(&source, &target) {
            let rows = target.rank(n);
            let cols = source.rank(n);
            let m = match components.get(&n) {
                Some(m) => m.clone(),
                None => ExactMatrix::zero(source.ring(), rows, cols),
            };
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    degree: n,
                    expected_rows: rows,
                    expected_cols: cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
            if rows > 0 && cols > 0 {
                comps.insert(n, m);
            }
        }
        let map = ChainMap {
            source,
            target,
            comps,
        };
        map.check_commutation()?;
        Ok(map)
    }

    /// Builds from a closure giving the component in each degree.  The
    /// closure is consulted only where both ranks are nonzero; all other
    /// components are zero-shaped and carry no data.
    pub fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        mut f: impl FnMut(i64) -> ExactMatrix,
    ) -> Result<Self> {
        let comps: BTreeMap<i64, ExactMatrix> = degree_range(source, target)
            .filter(|&n| source.rank(n) > 0 && target.rank(n) > 0)
            .map(|n| (n, f(n)))
            .collect();
        Self::new(source.clone(), target.clone(), comps)
    }

    fn check_commutation(&self) -> Result<()> {
        for n in degree_range(&self.source, &self.target) {
            let lhs = self.target.diff(n).mul(&self.component(n));
            let rhs = self.component(n + 1).mul(&self.source.diff(n));
            if lhs != rhs {
                return Err(Error::NotChainMap(n));
            }
        }
        Ok(())
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = c
            .support()
            .map(|n| (n, ExactMatrix::identity(c.ring(), c.rank(n))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn ring(&self) -> CoefficientRing {
        self.source.ring()
    }

    /// Component in degree n, of shape target.rank(n) x source.rank(n).
    pub fn component(&self, n: i64) -> ExactMatrix {
        self.comps.get(&n).cloned().unwrap_or_else(|| {
            ExactMatrix::zero(self.ring(), self.target.rank(n), self.source.rank(n))
        })
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    /// g o self; composition in diagrammatic order.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.target != g.source {
            return Err(Error::NotComposable);
        }
        let comps = degree_range(&self.source, &g.target)
            .map(|n| (n, g.component(n).mul(&self.component(n))))
            .collect();
        ChainMap::new(self.source.clone(), g.target.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source, "source mismatch");
        assert_eq!(self.target, other.target, "target mismatch");
        let comps = degree_range(&self.source, &self.target)
            .map(|n| (n, self.component(n).add(&other.component(n))))
            .collect();
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
            .expect("sum of chain maps is a chain map")
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(n, m)| (*n, m.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &crate::ring::Scalar) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(n, m)| (*n, m.scale(s))).collect(),
        }
    }

    /// The same components reindexed as a map c[k] -> d[k]; no sign on
    /// the components (the shift's sign lives in the differentials).
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self
                .comps
                .iter()
                .map(|(n, m)| (n - k, m.clone()))
                .collect(),
        }
    }

    /// The induced map H^n(source) -> H^n(target).
    pub fn induced_map(&self, n: i64) -> ModuleMap {
        let src = self.source.cohomology_basis(n);
        let tgt = self.target.cohomology_basis(n);
        src.induced_map(&tgt, &self.component(n))
            .expect("a chain map induces a map on cohomology")
    }

    /// True iff the induced map is an isomorphism in every degree.
    pub fn is_quasi_iso(&self) -> bool {
        degree_range(&self.source, &self.target).all(|n| self.induced_map(n).is_iso())
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chain map {:?} -> {:?}", self.source, self.target)
    }
}

/// Degrees worth examining for a pair of complexes: the union of supports
/// padded by one on each side.
pub(crate) fn degree_range(a: &ChainComplex, b: &ChainComplex) -> std::ops::RangeInclusive<i64> {
    if a.is_zero_complex() && b.is_zero_complex() {
        return 0..=0;
    }
    let (lo, hi) = if a.is_zero_complex() {
        (b.lo(), b.hi())
    } else if b.is_zero_complex() {
        (a.lo(), a.hi())
    } else {
        (a.lo().min(b.lo()), a.hi().max(b.hi()))
    };
    (lo - 1)..=(hi + 1)
}

/// A degree-lowering family witnessing that two chain maps agree up to
/// homotopy: (from - to)(n) = s(n+1) d_src(n) + d_tgt(n-1) s(n).
#[derive(Clone)]
pub struct Homotopy {
    from_map: ChainMap,
    to_map: ChainMap,
    comps: BTreeMap<i64, ExactMatrix>,
}

impl Homotopy {
    pub fn new(
        from_map: ChainMap,
        to_map: ChainMap,
        components: BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self> {
        assert_eq!(from_map.source(), to_map.source(), "source mismatch");
        assert_eq!(from_map.target(), to_map.target(), "target mismatch");
        let src = from_map.source().clone();
        let tgt = from_map.target().clone();
        let ring = src.ring();
        let mut comps = BTreeMap::new();
        for n in degree_range(&src, &tgt) {
            let rows = tgt.rank(n - 1);
            let cols = src.rank(n);
            let m = match components.get(&n) {
                Some(m) => m.clone(),
                None => ExactMatrix::zero(ring, rows, cols),
            };
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    degree: n,
                    expected_rows: rows,
                    expected_cols: cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
            if rows > 0 && cols > 0 {
                comps.insert(n, m);
            }
        }
        let h = Homotopy {
            from_map,
            to_map,
            comps,
        };
        h.check()?;
        Ok(h)
    }

    /// The zero homotopy between equal maps.
    pub fn trivial(map: &ChainMap) -> Self {
        Homotopy {
            from_map: map.clone(),
            to_map: map.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from_map
    }

    pub fn to_map(&self) -> &ChainMap {
        &self.to_map
    }

    pub fn component(&self, n: i64) -> ExactMatrix {
        let src = self.from_map.source();
        let tgt = self.from_map.target();
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(src.ring(), tgt.rank(n - 1), src.rank(n)))
    }

    fn check(&self) -> Result<()> {
        let src = self.from_map.source();
        let tgt = self.from_map.target();
        for n in degree_range(src, tgt) {
            let lhs = self.from_map.component(n).sub(&self.to_map.component(n));
            let rhs = self
                .component(n + 1)
                .mul(&src.diff(n))
                .add(&tgt.diff(n - 1).mul(&self.component(n)));
            if lhs != rhs {
                return Err(Error::NotHomotopy(n));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "homotopy between maps {:?} -> {:?}",
            self.from_map.source(),
            self.from_map.target()
        )
    }
}

/// The two-term complex [R -(k)-> R] in degrees (lo, lo+1).
pub fn interval_complex(ring: CoefficientRing, lo: i64, k: i64) -> ChainComplex {
    ChainComplex::assemble(
        ring,
        lo,
        vec![1, 1],
        vec![ExactMatrix::from_i64(ring, 1, 1, &[k])],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FgModule;

    const Z: CoefficientRing = CoefficientRing::Integers;
    const Q: CoefficientRing = CoefficientRing::Rationals;

    fn two_term(k: i64) -> ChainComplex {
        // [Z -k-> Z] in degrees -1, 0
        interval_complex(Z, -1, k)
    }

    fn map_from(
        source: &ChainComplex,
        target: &ChainComplex,
        comps: &[(i64, ExactMatrix)],
    ) -> Result<ChainMap> {
        ChainMap::new(
            source.clone(),
            target.clone(),
            comps.iter().cloned().collect(),
        )
    }

    #[test]
    fn validate_examples() {
        assert!(two_term(2).validate().is_ok());
        assert!(ChainComplex::zero(Z).validate().is_ok());
        let bad = ChainComplex::from_parts(
            Z,
            0,
            vec![1, 1, 1],
            vec![
                ExactMatrix::from_i64(Z, 1, 1, &[1]),
                ExactMatrix::from_i64(Z, 1, 1, &[1]),
            ],
        )
        .unwrap();
        assert_eq!(bad.validate(), Err(Error::DifferentialSquare(0)));
    }

    #[test]
    fn shape_errors_on_construction() {
        let r = ChainComplex::from_parts(
            Z,
            0,
            vec![1, 2],
            vec![ExactMatrix::from_i64(Z, 1, 1, &[1])],
        );
        assert!(matches!(r, Err(Error::ShapeMismatch { degree: 0, .. })));
    }

    #[test]
    fn cohomology_examples() {
        let c = two_term(2);
        assert_eq!(c.cohomology(0), FgModule::cyclic(2));
        assert!(c.cohomology(-1).is_zero());

        let point = ChainComplex::concentrated(Z, 0, 1);
        assert_eq!(point.cohomology(0), FgModule::free(Z, 1));
        assert!(point.cohomology(1).is_zero());
        assert!(point.cohomology(-1).is_zero());

        let disk = interval_complex(Z, 0, 1);
        assert!(disk.cohomology(0).is_zero());
        assert!(disk.cohomology(1).is_zero());
        assert!(disk.is_acyclic());
    }

    #[test]
    fn shift_examples() {
        let c = two_term(2);
        let s = c.shift(1);
        assert_eq!(s.lo(), -2);
        assert_eq!(s.hi(), -1);
        assert_eq!(s.diff(-2), ExactMatrix::from_i64(Z, 1, 1, &[-2]));
        assert_eq!(c.shift(0), c);
        // H^i(c[n]) = H^{i+n}(c)
        for k in -2..3i64 {
            let sk = c.shift(k);
            for n in -4..4 {
                assert_eq!(sk.cohomology(n), c.cohomology(n + k), "k={k} n={n}");
            }
        }
        // shifts compose
        assert_eq!(c.shift(1).shift(2), c.shift(3));
        assert_eq!(c.shift(1).shift(-1), c);
    }

    #[test]
    fn biproduct_identities() {
        let a = two_term(2);
        let b = ChainComplex::concentrated(Z, 1, 2);
        let bp = biproduct(&a, &b).unwrap();
        assert!(bp.complex.validate().is_ok());
        // projection o injection = identity
        assert_eq!(
            bp.inject_left.then(&bp.project_left).unwrap(),
            ChainMap::identity(&a)
        );
        assert_eq!(
            bp.inject_right.then(&bp.project_right).unwrap(),
            ChainMap::identity(&b)
        );
        assert!(bp
            .inject_left
            .then(&bp.project_right)
            .unwrap()
            .is_zero_map());
        // i_a p_a + i_b p_b = id on the sum
        let e = bp
            .project_left
            .then(&bp.inject_left)
            .unwrap()
            .add(&bp.project_right.then(&bp.inject_right).unwrap());
        assert_eq!(e, ChainMap::identity(&bp.complex));
        // zero summand is the identity
        let trivial = biproduct(&a, &ChainComplex::zero(Z)).unwrap();
        assert_eq!(trivial.complex, a);
        // cohomology adds degreewise
        for n in -2..3 {
            assert_eq!(
                bp.complex.cohomology(n),
                a.cohomology(n).direct_sum(&b.cohomology(n))
            );
        }
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = ChainComplex::concentrated(Z, 0, 1);
        let b = ChainComplex::concentrated(Q, 0, 1);
        assert!(matches!(biproduct(&a, &b), Err(Error::RingMismatch(_, _))));
        assert!(matches!(tensor(&a, &b), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn tensor_hand_computed() {
        // ranks (1,2,1) in degrees -2,-1,0 and the frozen block matrices
        let t = tensor(&two_term(2), &two_term(3)).unwrap();
        assert_eq!((t.lo(), t.hi()), (-2, 0));
        assert_eq!((t.rank(-2), t.rank(-1), t.rank(0)), (1, 2, 1));
        assert!(t.validate().is_ok());
        assert_eq!(t.diff(-2), ExactMatrix::from_i64(Z, 2, 1, &[-3, 2]));
        assert_eq!(t.diff(-1), ExactMatrix::from_i64(Z, 1, 2, &[2, 3]));
        // Z/2 (x) Z/3 and the torsion product both vanish
        assert!(t.is_acyclic());
    }

    #[test]
    fn tensor_unit() {
        let unit = ChainComplex::concentrated(Z, 0, 1);
        let c = two_term(2);
        assert_eq!(tensor(&c, &unit).unwrap(), c);
        assert_eq!(tensor(&unit, &c).unwrap(), c);
    }

    #[test]
    fn tensor_symmetry_on_cohomology() {
        let a = two_term(2);
        let b = tensor(&two_term(3), &interval_complex(Z, 0, 4)).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let ba = tensor(&b, &a).unwrap();
        for n in -4..3 {
            assert_eq!(ab.cohomology(n), ba.cohomology(n), "degree {n}");
        }
    }

    #[test]
    fn chain_map_commutation_enforced() {
        let x = two_term(2);
        let y = two_term(4);
        // d_y f(-1) = f(0) d_x forces f(0) = 2 f(-1)
        let ok = map_from(
            &x,
            &y,
            &[
                (-1, ExactMatrix::from_i64(Z, 1, 1, &[2])),
                (0, ExactMatrix::from_i64(Z, 1, 1, &[4])),
            ],
        );
        assert!(ok.is_ok());
        let bad = map_from(
            &x,
            &y,
            &[
                (-1, ExactMatrix::from_i64(Z, 1, 1, &[2])),
                (0, ExactMatrix::from_i64(Z, 1, 1, &[3])),
            ],
        );
        assert_eq!(bad.unwrap_err(), Error::NotChainMap(-1));
    }

    #[test]
    fn induced_map_examples() {
        let c = two_term(2);
        let id = ChainMap::identity(&c);
        let ind = id.induced_map(0);
        assert_eq!(ind, ModuleMap::identity(&FgModule::cyclic(2)));

        let zero = ChainMap::zero(&c, &c);
        assert!(zero.induced_map(0).is_zero_map());
    }

    #[test]
    fn induced_map_respects_composition() {
        let x = two_term(2);
        let y = two_term(4);
        let f = map_from(
            &x,
            &y,
            &[
                (-1, ExactMatrix::from_i64(Z, 1, 1, &[2])),
                (0, ExactMatrix::from_i64(Z, 1, 1, &[4])),
            ],
        )
        .unwrap();
        let g = map_from(
            &y,
            &two_term(8),
            &[
                (-1, ExactMatrix::from_i64(Z, 1, 1, &[1])),
                (0, ExactMatrix::from_i64(Z, 1, 1, &[2])),
            ],
        )
        .unwrap();
        let gf = f.then(&g).unwrap();
        for n in -2..2 {
            assert_eq!(
                gf.induced_map(n),
                f.induced_map(n).then(&g.induced_map(n)).unwrap(),
                "degree {n}"
            );
        }
    }

    #[test]
    fn homotopic_maps_induce_equal_maps() {
        // take g = s d + d s for an arbitrary s: it is homotopic to zero
        let c = two_term(2);
        let s0 = ExactMatrix::from_i64(Z, 1, 1, &[3]); // s(0): C^0 -> C^{-1}
        let s = |n: i64| -> ExactMatrix {
            if n == 0 {
                s0.clone()
            } else {
                ExactMatrix::zero(Z, c.rank(n - 1), c.rank(n))
            }
        };
        let sd_ds = |n: i64| s(n + 1).mul(&c.diff(n)).add(&c.diff(n - 1).mul(&s(n)));
        let g = map_from(&c, &c, &[(-1, sd_ds(-1)), (0, sd_ds(0))]).unwrap();
        let zero = ChainMap::zero(&c, &c);
        let h = Homotopy::new(g.clone(), zero.clone(), [(0, s0)].into_iter().collect()).unwrap();
        for n in -2..2 {
            assert_eq!(
                h.from_map().induced_map(n),
                h.to_map().induced_map(n),
                "degree {n}"
            );
        }
    }

    #[test]
    fn is_quasi_iso_examples() {
        let c = two_term(2);
        assert!(ChainMap::identity(&c).is_quasi_iso());

        // zero map between two acyclic complexes
        let d1 = interval_complex(Z, 0, 1);
        let d2 = interval_complex(Z, 3, -1);
        assert!(ChainMap::zero(&d1, &d2).is_quasi_iso());

        // H^0 map Z/2 -> Z/4 is not an isomorphism
        let f = map_from(
            &two_term(2),
            &two_term(4),
            &[
                (-1, ExactMatrix::from_i64(Z, 1, 1, &[1])),
                (0, ExactMatrix::from_i64(Z, 1, 1, &[2])),
            ],
        )
        .unwrap();
        assert!(!f.is_quasi_iso());
    }

    #[test]
    fn euler_characteristic_over_field() {
        let c = ChainComplex::from_parts(
            Q,
            0,
            vec![2, 3, 1],
            vec![
                ExactMatrix::from_i64(Q, 3, 2, &[1, 0, 0, 1, 0, 0]),
                ExactMatrix::from_i64(Q, 1, 3, &[0, 0, 1]),
            ],
        )
        .unwrap();
        assert!(c.validate().is_ok());
        let signed = |n: i64, v: usize| if n.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) };
        let chi_ranks: i64 = c.support().map(|n| signed(n, c.rank(n))).sum();
        let chi_h: i64 = c
            .support()
            .map(|n| signed(n, c.cohomology(n).free_rank()))
            .sum();
        assert_eq!(chi_ranks, chi_h);
    }
}
