//! Finitely generated modules in invariant-factor normal form, and maps
//! between them.
//!
//! A module is reported as `R^free_rank (+) R/d_1 (+) ... (+) R/d_k` with
//! d_1 | d_2 | ... and every d_i >= 2; over a field the factor list is
//! empty and everything is dimension counting, on the same code paths.
//! Generators are ordered torsion first (in factor order), then free.
//!
//! The [`Subquotient`] type at the bottom is the shared engine: cohomology,
//! hom groups in the homotopy category, and kernels/images of module maps
//! are all "a lattice inside a free ambient, modulo columns that lie in it".

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{CoefficientRing, Scalar};
use crate::snf::{column_span_basis, kernel_basis, smith_normal_form, solve_matrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// A finitely generated module over the coefficient ring, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgModule {
    ring: CoefficientRing,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgModule {
    /// Normal-form constructor; factors must be >= 2 and chain by
    /// divisibility, and must be absent over a field.
    pub fn new(ring: CoefficientRing, free_rank: usize, invariant_factors: Vec<BigInt>) -> Self {
        if ring.is_field() {
            assert!(
                invariant_factors.is_empty(),
                "field modules have no torsion"
            );
        }
        for w in invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "factors must chain by divisibility");
        }
        assert!(
            invariant_factors.iter().all(|d| d.abs() >= BigInt::from(2)),
            "factors must be at least 2"
        );
        FgModule {
            ring,
            free_rank,
            invariant_factors,
        }
    }

    pub fn zero(ring: CoefficientRing) -> Self {
        Self::new(ring, 0, vec![])
    }

    pub fn free(ring: CoefficientRing, rank: usize) -> Self {
        Self::new(ring, rank, vec![])
    }

    /// Z/k as a module over the integers; k = 0 gives Z, k = 1 gives 0.
    pub fn cyclic(k: u64) -> Self {
        match k {
            0 => Self::free(CoefficientRing::Integers, 1),
            1 => Self::zero(CoefficientRing::Integers),
            _ => Self::new(CoefficientRing::Integers, 0, vec![BigInt::from(k)]),
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of generators in the normal form.
    pub fn gens(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Annihilator of each generator: the factor for torsion generators,
    /// zero for free ones.
    pub fn annihilators(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self
            .invariant_factors
            .iter()
            .map(|d| self.ring.from_bigint(d))
            .collect();
        out.extend(std::iter::repeat(self.ring.zero()).take(self.free_rank));
        out
    }

    /// Diagonal relation matrix of the presentation R^gens / relations.
    pub fn relations(&self) -> ExactMatrix {
        let t = self.invariant_factors.len();
        let mut rel = ExactMatrix::zero(self.ring, self.gens(), t);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            rel[(i, i)] = self.ring.from_bigint(d);
        }
        rel
    }

    /// Direct sum, renormalized.
    pub fn direct_sum(&self, other: &FgModule) -> FgModule {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let rel_a = self.relations();
        let rel_b = other.relations();
        let zero_ab = ExactMatrix::zero(self.ring, self.gens(), rel_b.cols());
        let zero_ba = ExactMatrix::zero(self.ring, other.gens(), rel_a.cols());
        let rel = ExactMatrix::from_blocks(
            self.ring,
            &[vec![&rel_a, &zero_ab], vec![&zero_ba, &rel_b]],
        );
        cokernel_presentation(&rel)
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(format!("{}", self.ring));
        } else if self.free_rank > 1 {
            parts.push(format!("{}^{}", self.ring, self.free_rank));
        }
        for d in &self.invariant_factors {
            parts.push(format!("{}/{}", self.ring, d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A cokernel presentation together with the coordinate change that maps
/// ambient vectors to normal-form generator coordinates.
#[derive(Clone, Debug)]
pub struct CokernelData {
    pub module: FgModule,
    /// Row transform of the SNF of the relation matrix.
    u: ExactMatrix,
    u_inv: ExactMatrix,
    /// Annihilator of each diagonal position (0 for free rows).
    diag: Vec<Scalar>,
    /// Ambient SNF rows that survive as normal-form generators.
    gen_rows: Vec<usize>,
}

impl CokernelData {
    /// Coordinates of the class of an ambient vector on the normal-form
    /// generators, torsion entries reduced mod their factor.
    pub fn class_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        let ring = self.module.ring();
        let y = self.u.apply(x);
        self.gen_rows
            .iter()
            .map(|&i| reduce_mod(ring, &y[i], &self.diag[i]))
            .collect()
    }

    /// An ambient representative of normal-form generator j.
    pub fn generator(&self, j: usize) -> Vec<Scalar> {
        self.u_inv.column(self.gen_rows[j])
    }

    pub fn ambient_rank(&self) -> usize {
        self.u.rows()
    }
}

fn reduce_mod(ring: CoefficientRing, x: &Scalar, modulus: &Scalar) -> Scalar {
    if ring.is_zero(modulus) {
        return x.clone();
    }
    match (x, modulus) {
        (Scalar::Int(a), Scalar::Int(m)) => Scalar::Int(a.mod_floor_ref(m)),
        _ => x.clone(),
    }
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        use num_integer::Integer;
        self.mod_floor(m)
    }
}

/// Cokernel of `rel : R^cols -> R^rows` in normal form: free rank is
/// rows - rank(rel), the invariant factors are the SNF diagonal entries
/// that are not units.
pub fn cokernel_presentation(rel: &ExactMatrix) -> FgModule {
    cokernel_data(rel).module
}

/// Cokernel with the full coordinate bookkeeping.
pub fn cokernel_data(rel: &ExactMatrix) -> CokernelData {
    let ring = rel.ring();
    let snf = smith_normal_form(rel);
    let r = snf.rank();
    let rows = rel.rows();
    let mut factors = Vec::new();
    let mut diag = vec![ring.zero(); rows];
    let mut gen_rows = Vec::new();
    for i in 0..r {
        let d = snf.d[(i, i)].clone();
        if !ring.is_unit(&d) {
            factors.push(ring.to_bigint(&d));
            gen_rows.push(i);
        }
        diag[i] = d;
    }
    gen_rows.extend(r..rows);
    let module = FgModule::new(ring, rows - r, factors);
    CokernelData {
        module,
        u: snf.u,
        u_inv: snf.u_inv,
        diag,
        gen_rows,
    }
}

/// A map between normal-form modules, given on chosen generator lists.
///
/// The matrix has `target.gens()` rows and `source.gens()` columns;
/// entries in torsion rows are canonicalized mod the row's factor, so
/// equality of maps is entrywise equality of matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FgModule,
    target: FgModule,
    matrix: ExactMatrix,
}

impl ModuleMap {
    /// Validates that the map respects relations: the image of each source
    /// relation lies in the target relation lattice.
    pub fn new(source: FgModule, target: FgModule, matrix: ExactMatrix) -> Result<Self> {
        assert_eq!(source.ring(), target.ring(), "ring mismatch");
        assert_eq!(matrix.rows(), target.gens(), "row count mismatch");
        assert_eq!(matrix.cols(), source.gens(), "column count mismatch");
        let ring = source.ring();
        let src_ann = source.annihilators();
        let tgt_ann = target.annihilators();
        for j in 0..source.gens() {
            if ring.is_zero(&src_ann[j]) {
                continue;
            }
            for i in 0..target.gens() {
                let scaled = ring.mul(&src_ann[j], &matrix[(i, j)]);
                let ok = if ring.is_zero(&tgt_ann[i]) {
                    ring.is_zero(&scaled)
                } else {
                    ring.divides(&tgt_ann[i], &scaled)
                };
                if !ok {
                    return Err(Error::InvalidModuleMap(j));
                }
            }
        }
        let canonical = ExactMatrix::from_fn(ring, matrix.rows(), matrix.cols(), |i, j| {
            reduce_mod(ring, &matrix[(i, j)], &tgt_ann[i])
        });
        Ok(ModuleMap {
            source,
            target,
            matrix: canonical,
        })
    }

    pub fn identity(m: &FgModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: ExactMatrix::identity(m.ring(), m.gens()),
        }
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: ExactMatrix::zero(source.ring(), target.gens(), source.gens()),
        }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }

    /// other after self (so `self.then(g) = g o self`).
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target != other.source {
            return Err(Error::NotComposable);
        }
        ModuleMap::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    /// Kernel, cokernel and image in normal form; iso iff kernel and
    /// cokernel both vanish (mono + epi).
    pub fn analyze(&self) -> MapAnalysis {
        let rel_src = self.source.relations();
        let rel_tgt = self.target.relations();
        let f = &self.matrix;

        // cokernel: target generators modulo image and target relations
        let cokernel = cokernel_presentation(&f.hstack(&rel_tgt));

        // preimage lattice {x : f x in span(rel_tgt)}
        let ker_pairs = kernel_basis(&f.hstack(&rel_tgt));
        let x_rows: Vec<usize> = (0..self.source.gens()).collect();
        let pre_gens = ker_pairs.select_rows(&x_rows);
        let pre_basis = column_span_basis(&pre_gens);
        let rel_in_pre = solve_matrix(&pre_basis, &rel_src)
            .expect("source relations lie in the preimage lattice");
        let kernel = cokernel_presentation(&rel_in_pre);

        // image: span(f) + relations, modulo relations
        let span = column_span_basis(&f.hstack(&rel_tgt));
        let rel_in_span =
            solve_matrix(&span, &rel_tgt).expect("target relations lie in their own span");
        let image = cokernel_presentation(&rel_in_span);

        let is_iso = kernel.is_zero() && cokernel.is_zero();
        MapAnalysis {
            kernel,
            cokernel,
            image,
            is_iso,
        }
    }

    pub fn is_iso(&self) -> bool {
        self.analyze().is_iso
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.matrix, self.source, self.target)
    }
}

#[derive(Clone, Debug)]
pub struct MapAnalysis {
    pub kernel: FgModule,
    pub cokernel: FgModule,
    pub image: FgModule,
    pub is_iso: bool,
}

/// Homology ker(g) / im(f) of a composable pair with g o f = 0, as a
/// module in normal form.  The pair is exact at the middle iff the result
/// is zero.
pub fn pair_homology(f: &ModuleMap, g: &ModuleMap) -> Result<FgModule> {
    if f.target != g.source {
        return Err(Error::NotComposable);
    }
    if !f.then(g)?.is_zero_map() {
        return Err(Error::MalformedTriangle(
            "pair does not compose to zero".into(),
        ));
    }
    let mid = &f.target;
    let rel_mid = mid.relations();
    let rel_after = g.target.relations();

    let ker_pairs = kernel_basis(&g.matrix().hstack(&rel_after));
    let x_rows: Vec<usize> = (0..mid.gens()).collect();
    let pre_basis = column_span_basis(&ker_pairs.select_rows(&x_rows));
    let image_and_rel = f.matrix().hstack(&rel_mid);
    let rel_in_pre = solve_matrix(&pre_basis, &image_and_rel)
        .expect("image of a zero-composing map lies in the kernel lattice");
    Ok(cokernel_presentation(&rel_in_pre))
}

/// A subquotient `span(lattice) / span(lattice * rel)` of a free ambient
/// module, with coordinate bookkeeping: classes of ambient vectors and
/// representatives of normal-form generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// Columns form a basis of the sub-object inside R^ambient.
    lattice: ExactMatrix,
    /// Relation columns expressed in lattice coordinates.
    cok: CokernelData,
}

impl Subquotient {
    /// `lattice` columns must be independent (a basis); `rel` columns are
    /// ambient vectors lying in the span of the lattice.
    pub fn new(lattice: ExactMatrix, rel_ambient: &ExactMatrix) -> Self {
        let rel = solve_matrix(&lattice, rel_ambient)
            .expect("relation columns must lie in the sub-object");
        let cok = cokernel_data(&rel);
        Subquotient { lattice, cok }
    }

    pub fn module(&self) -> &FgModule {
        &self.cok.module
    }

    pub fn ambient_rank(&self) -> usize {
        self.lattice.rows()
    }

    /// Class of an ambient vector that lies in the sub-object.
    pub fn class_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        let xm = ExactMatrix::from_entries(self.lattice.ring(), x.len(), 1, x.to_vec());
        let coords = solve_matrix(&self.lattice, &xm)
            .expect("vector must lie in the sub-object");
        self.cok.class_of(&coords.column(0))
    }

    /// Ambient representative of normal-form generator j.
    pub fn generator(&self, j: usize) -> Vec<Scalar> {
        self.lattice.apply(&self.cok.generator(j))
    }

    /// The map on subquotients induced by an ambient matrix that carries
    /// this sub-object into `target`'s sub-object (and relations into
    /// relations); both facts are rechecked by construction.
    pub fn induced_map(&self, target: &Subquotient, ambient: &ExactMatrix) -> Result<ModuleMap> {
        let n = self.module().gens();
        let ring = self.lattice.ring();
        let mut matrix = ExactMatrix::zero(ring, target.module().gens(), n);
        for j in 0..n {
            let image = ambient.apply(&self.generator(j));
            let coords = target.class_of(&image);
            matrix.set_column(j, &coords);
        }
        ModuleMap::new(self.module().clone(), target.module().clone(), matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientRing = CoefficientRing::Integers;
    const Q: CoefficientRing = CoefficientRing::Rationals;

    #[test]
    fn cokernel_examples() {
        // coker(3 : Z -> Z) = Z/3
        let m = ExactMatrix::from_i64(Z, 1, 1, &[3]);
        assert_eq!(cokernel_presentation(&m), FgModule::cyclic(3));
        // coker(0 : Z -> Z) = Z
        let m = ExactMatrix::from_i64(Z, 1, 1, &[0]);
        assert_eq!(cokernel_presentation(&m), FgModule::free(Z, 1));
        // coker(diag(2,6)) = Z/2 + Z/6
        let m = ExactMatrix::from_i64(Z, 2, 2, &[2, 0, 0, 6]);
        assert_eq!(
            cokernel_presentation(&m),
            FgModule::new(Z, 0, vec![BigInt::from(2), BigInt::from(6)])
        );
    }

    #[test]
    fn cokernel_is_isomorphism_invariant() {
        let m = ExactMatrix::from_i64(Z, 2, 2, &[2, 0, 0, 6]);
        // conjugate by unimodular transforms
        let u = ExactMatrix::from_i64(Z, 2, 2, &[1, 1, 0, 1]);
        let v = ExactMatrix::from_i64(Z, 2, 2, &[1, 0, -3, 1]);
        assert_eq!(
            cokernel_presentation(&u.mul(&m).mul(&v)),
            cokernel_presentation(&m)
        );
    }

    #[test]
    fn class_coordinates_round_trip() {
        let m = ExactMatrix::from_i64(Z, 2, 1, &[4, 0]);
        let data = cokernel_data(&m);
        assert_eq!(data.module, FgModule::new(Z, 1, vec![BigInt::from(4)]));
        for j in 0..data.module.gens() {
            let g = data.generator(j);
            let coords = data.class_of(&g);
            let expected: Vec<Scalar> = (0..data.module.gens())
                .map(|i| if i == j { Z.one() } else { Z.zero() })
                .collect();
            assert_eq!(coords, expected);
        }
    }

    #[test]
    fn times_two_on_z_mod_4() {
        // x2 : Z/4 -> Z/4 has kernel Z/2 and cokernel Z/2, not iso.
        // Oracle: exhaustive walk of the 4-element group below.
        let z4 = FgModule::cyclic(4);
        let f = ModuleMap::new(
            z4.clone(),
            z4.clone(),
            ExactMatrix::from_i64(Z, 1, 1, &[2]),
        )
        .unwrap();
        let a = f.analyze();
        assert_eq!(a.kernel, FgModule::cyclic(2));
        assert_eq!(a.cokernel, FgModule::cyclic(2));
        assert_eq!(a.image, FgModule::cyclic(2));
        assert!(!a.is_iso);

        // enumeration oracle: elements 0..4 under x |-> 2x mod 4
        let kernel_size = (0..4).filter(|x| (2 * x) % 4 == 0).count();
        let image: std::collections::BTreeSet<i32> = (0..4).map(|x| (2 * x) % 4).collect();
        assert_eq!(kernel_size, 2);
        assert_eq!(image.len(), 2);
    }

    #[test]
    fn identity_and_times_three() {
        let z2 = FgModule::free(Z, 2);
        let id = ModuleMap::identity(&z2);
        let a = id.analyze();
        assert!(a.kernel.is_zero() && a.cokernel.is_zero() && a.is_iso);

        let z = FgModule::free(Z, 1);
        let f = ModuleMap::new(z.clone(), z.clone(), ExactMatrix::from_i64(Z, 1, 1, &[3]))
            .unwrap();
        let a = f.analyze();
        assert!(a.kernel.is_zero());
        assert_eq!(a.cokernel, FgModule::cyclic(3));
        assert!(!a.is_iso);
    }

    #[test]
    fn invalid_module_map_rejected() {
        // Z/2 -> Z must be zero; sending the generator to 1 breaks relations
        let m = ModuleMap::new(
            FgModule::cyclic(2),
            FgModule::free(Z, 1),
            ExactMatrix::from_i64(Z, 1, 1, &[1]),
        );
        assert_eq!(m.unwrap_err(), Error::InvalidModuleMap(0));
    }

    #[test]
    fn map_canonicalization() {
        // 5 and 1 are the same map Z -> Z/4... (5 mod 4 = 1)
        let f = ModuleMap::new(
            FgModule::free(Z, 1),
            FgModule::cyclic(4),
            ExactMatrix::from_i64(Z, 1, 1, &[5]),
        )
        .unwrap();
        let g = ModuleMap::new(
            FgModule::free(Z, 1),
            FgModule::cyclic(4),
            ExactMatrix::from_i64(Z, 1, 1, &[1]),
        )
        .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn pair_homology_detects_exactness() {
        // 0 -> Z -2-> Z -> Z/2 -> 0 is exact at the middle Z
        let z = FgModule::free(Z, 1);
        let z2 = FgModule::cyclic(2);
        let times2 =
            ModuleMap::new(z.clone(), z.clone(), ExactMatrix::from_i64(Z, 1, 1, &[2])).unwrap();
        let quot =
            ModuleMap::new(z.clone(), z2.clone(), ExactMatrix::from_i64(Z, 1, 1, &[1])).unwrap();
        assert!(pair_homology(&times2, &quot).unwrap().is_zero());

        // 0 -> Z -4-> Z -> Z/2 -> 0 is not exact (homology Z/2 in the middle)
        let times4 =
            ModuleMap::new(z.clone(), z.clone(), ExactMatrix::from_i64(Z, 1, 1, &[4])).unwrap();
        assert_eq!(pair_homology(&times4, &quot).unwrap(), FgModule::cyclic(2));
    }

    #[test]
    fn subquotient_cohomology_style() {
        // ker([0] : Z -> Z) / im([2]) = Z/2
        let lattice = ExactMatrix::identity(Z, 1);
        let rel = ExactMatrix::from_i64(Z, 1, 1, &[2]);
        let sq = Subquotient::new(lattice, &rel);
        assert_eq!(sq.module(), &FgModule::cyclic(2));
        let g = sq.generator(0);
        assert_eq!(sq.class_of(&g), vec![Z.one()]);
    }

    #[test]
    fn field_modules_are_dimension_counts() {
        let m = ExactMatrix::from_i64(Q, 2, 1, &[2, 4]);
        let c = cokernel_presentation(&m);
        assert_eq!(c, FgModule::free(Q, 1));
        assert!(c.is_torsion_free());
    }

    #[test]
    fn direct_sum_renormalizes() {
        let a = FgModule::cyclic(2);
        let b = FgModule::cyclic(3);
        // Z/2 + Z/3 = Z/6 in invariant-factor form
        assert_eq!(a.direct_sum(&b), FgModule::cyclic(6));
    }

    #[test]
    fn rendering() {
        assert_eq!(FgModule::zero(Z).to_string(), "0");
        assert_eq!(FgModule::cyclic(4).to_string(), "Z/4");
        assert_eq!(
            FgModule::new(Z, 2, vec![BigInt::from(2), BigInt::from(6)]).to_string(),
            "Z^2 + Z/2 + Z/6"
        );
        assert_eq!(FgModule::free(Q, 3).to_string(), "Q^3");
    }
}
