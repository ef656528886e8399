//! Mapping cone and cylinder, cofiber comparison maps, triangles and the
//! long exact cohomology sequence.
//!
//! Sign conventions are fixed here once and used everywhere: the cone of
//! f : X -> Y has degree-n term X^{n+1} (+) Y^n (X-part first) with
//! differential [[-d_X, 0], [f, d_Y]]; the cylinder has term
//! X^n (+) X^{n+1} (+) Y^n with differential
//! [[d_X, -id, 0], [0, -d_X, 0], [0, f, d_Y]].  A single sign error here
//! breaks the rotation and octahedron checks downstream, which is exactly
//! what those checks are for.

use crate::complex::{degree_range, ChainComplex, ChainMap, Homotopy};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::module::{pair_homology, FgModule, ModuleMap};
use crate::ring::CoefficientRing;
use crate::snf::{kernel_basis, solve_matrix};
use std::collections::BTreeMap;

/// The cone of a chain map with its two structure maps.
pub struct ConeData {
    pub complex: ChainComplex,
    /// Y -> Cone(f), inclusion of the second block.
    pub inject: ChainMap,
    /// Cone(f) -> X[1], readout of the first block.
    pub project: ChainMap,
}

fn span_with(
    a: &ChainComplex,
    offset_a: i64,
    b: &ChainComplex,
    offset_b: i64,
) -> Option<(i64, i64)> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    if !a.is_zero_complex() {
        lo = lo.min(a.lo() + offset_a);
        hi = hi.max(a.hi() + offset_a);
    }
    if !b.is_zero_complex() {
        lo = lo.min(b.lo() + offset_b);
        hi = hi.max(b.hi() + offset_b);
    }
    (lo <= hi).then_some((lo, hi))
}

/// Builds Cone(f) = X[1] (+) Y with the twisted differential, together
/// with the inclusion of Y and the projection onto X[1].
/// `project o inject = 0` holds on the nose.
pub fn cone(f: &ChainMap) -> ConeData {
    let x = f.source();
    let y = f.target();
    let ring = f.ring();
    let Some((lo, hi)) = span_with(x, -1, y, 0) else {
        let z = ChainComplex::zero(ring);
        return ConeData {
            complex: z.clone(),
            inject: ChainMap::zero(y, &z),
            project: ChainMap::zero(&z, &x.shift(1)),
        };
    };
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        ranks.push(x.rank(n + 1) + y.rank(n));
        if n < hi {
            let dx = x.diff(n + 1).neg();
            let dy = y.diff(n);
            let fc = f.component(n + 1);
            let z = ExactMatrix::zero(ring, dx.rows(), dy.cols());
            diffs.push(ExactMatrix::from_blocks(
                ring,
                &[vec![&dx, &z], vec![&fc, &dy]],
            ));
        }
    }
    let complex = ChainComplex::assemble(ring, lo, ranks, diffs);
    let inject = ChainMap::from_fn(y, &complex, |n| {
        let zero = ExactMatrix::zero(ring, x.rank(n + 1), y.rank(n));
        zero.vstack(&ExactMatrix::identity(ring, y.rank(n)))
    })
    .expect("cone inclusion is a chain map");
    let shifted = x.shift(1);
    let project = ChainMap::from_fn(&complex, &shifted, |n| {
        let id = ExactMatrix::identity(ring, x.rank(n + 1));
        id.hstack(&ExactMatrix::zero(ring, x.rank(n + 1), y.rank(n)))
    })
    .expect("cone projection is a chain map");
    ConeData {
        complex,
        inject,
        project,
    }
}

/// The cylinder of f with its structure maps and the witness that
/// `in_y` and `out_y` are mutually inverse up to homotopy.
pub struct CylinderData {
    pub complex: ChainComplex,
    /// Y -> Cyl(f), c |-> (0, 0, c).
    pub in_y: ChainMap,
    /// Cyl(f) -> Y, (b', b, c) |-> f(b') + c; out_y o in_y = id on the nose.
    pub out_y: ChainMap,
    /// X -> Cyl(f), b |-> (b, 0, 0); a degreewise split inclusion.
    pub in_x: ChainMap,
    /// Cyl(f) -> Cone(f), (b', b, c) |-> (b, c); the quotient by in_x.
    pub onto_cone: ChainMap,
    /// id_Cyl is homotopic to in_y o out_y; witness s(b',b,c) = (0,-b',0).
    pub equivalence_homotopy: Homotopy,
}

pub fn cylinder(f: &ChainMap) -> CylinderData {
    let x = f.source();
    let y = f.target();
    let ring = f.ring();
    let cone_data = cone(f);
    let Some((lo, hi)) = span_with(x, 0, &cone_data.complex, 0) else {
        let z = ChainComplex::zero(ring);
        let zm = ChainMap::zero(&z, &z);
        return CylinderData {
            complex: z.clone(),
            in_y: ChainMap::zero(y, &z),
            out_y: ChainMap::zero(&z, y),
            in_x: ChainMap::zero(x, &z),
            onto_cone: ChainMap::zero(&z, &cone_data.complex),
            equivalence_homotopy: Homotopy::trivial(&zm),
        };
    };
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        ranks.push(x.rank(n) + x.rank(n + 1) + y.rank(n));
        if n < hi {
            let dx0 = x.diff(n);
            let neg_id = ExactMatrix::identity(ring, x.rank(n + 1)).neg();
            let dx1 = x.diff(n + 1).neg();
            let dy = y.diff(n);
            let fc = f.component(n + 1);
            let z = |r: usize, c: usize| ExactMatrix::zero(ring, r, c);
            let z02 = z(dx0.rows(), dy.cols());
            let z10 = z(dx1.rows(), dx0.cols());
            let z12 = z(dx1.rows(), dy.cols());
            let z20 = z(dy.rows(), dx0.cols());
            diffs.push(ExactMatrix::from_blocks(
                ring,
                &[
                    vec![&dx0, &neg_id, &z02],
                    vec![&z10, &dx1, &z12],
                    vec![&z20, &fc, &dy],
                ],
            ));
        }
    }
    let complex = ChainComplex::assemble(ring, lo, ranks, diffs);
    let widths = |n: i64| (x.rank(n), x.rank(n + 1), y.rank(n));
    let in_y = ChainMap::from_fn(y, &complex, |n| {
        let (a, b, c) = widths(n);
        ExactMatrix::zero(ring, a + b, c).vstack(&ExactMatrix::identity(ring, c))
    })
    .expect("cylinder inclusion of Y is a chain map");
    let out_y = ChainMap::from_fn(&complex, y, |n| {
        let (_, b, c) = widths(n);
        f.component(n)
            .hstack(&ExactMatrix::zero(ring, c, b))
            .hstack(&ExactMatrix::identity(ring, c))
    })
    .expect("cylinder projection to Y is a chain map");
    let in_x = ChainMap::from_fn(x, &complex, |n| {
        let (a, b, c) = widths(n);
        ExactMatrix::identity(ring, a).vstack(&ExactMatrix::zero(ring, b + c, a))
    })
    .expect("cylinder inclusion of X is a chain map");
    let onto_cone = ChainMap::from_fn(&complex, &cone_data.complex, |n| {
        let (a, b, c) = widths(n);
        let z = ExactMatrix::zero(ring, b + c, a);
        z.hstack(&ExactMatrix::identity(ring, b + c))
    })
    .expect("cylinder quotient onto the cone is a chain map");
    // id - in_y out_y = d s + s d with s(b', b, c) = (0, -b', 0)
    let comps: BTreeMap<i64, ExactMatrix> = complex
        .support()
        .map(|n| {
            let (a, _, _) = widths(n);
            let (pa, pb, pc) = widths(n - 1);
            let mut s = ExactMatrix::zero(ring, pa + pb + pc, complex.rank(n));
            // -identity from the X^n column block into the X^n row block
            // of degree n-1 (pb = rank X^n as well)
            for i in 0..a.min(pb) {
                s[(pa + i, i)] = ring.from_i64(-1);
            }
            (n, s)
        })
        .collect();
    let equivalence_homotopy = Homotopy::new(
        ChainMap::identity(&complex),
        out_y.then(&in_y).expect("composable"),
        comps,
    )
    .expect("cylinder deformation retraction");
    CylinderData {
        complex,
        in_y,
        out_y,
        in_x,
        onto_cone,
        equivalence_homotopy,
    }
}

/// A degreewise split monomorphism: f together with retractions
/// r(n) f(n) = id.  The complement is realized canonically as the kernel
/// of the retraction.
#[derive(Debug)]
pub struct SplitMono {
    f: ChainMap,
    retractions: BTreeMap<i64, ExactMatrix>,
}

impl SplitMono {
    pub fn new(f: ChainMap, retractions: BTreeMap<i64, ExactMatrix>) -> Result<Self> {
        let x = f.source();
        let y = f.target();
        let ring = f.ring();
        for n in degree_range(x, y) {
            let r = retractions
                .get(&n)
                .cloned()
                .unwrap_or_else(|| ExactMatrix::zero(ring, x.rank(n), y.rank(n)));
            if r.rows() != x.rank(n) || r.cols() != y.rank(n) {
                return Err(Error::ShapeMismatch {
                    degree: n,
                    expected_rows: x.rank(n),
                    expected_cols: y.rank(n),
                    got_rows: r.rows(),
                    got_cols: r.cols(),
                });
            }
            if !r.mul(&f.component(n)).is_identity() {
                return Err(Error::InvalidSplitting(n));
            }
        }
        Ok(SplitMono { f, retractions })
    }

    pub fn map(&self) -> &ChainMap {
        &self.f
    }

    pub fn retraction(&self, n: i64) -> ExactMatrix {
        let x = self.f.source();
        let y = self.f.target();
        self.retractions
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(self.f.ring(), x.rank(n), y.rank(n)))
    }
}

/// Comparison between Cone(f) and the quotient complex of a degreewise
/// split mono: phi reads off the quotient class, psi is the section-built
/// inverse.  phi o psi = id exactly; psi o phi is homotopic to the
/// identity with the emitted witness.
pub struct SesComparison {
    pub quotient: ChainComplex,
    /// Cone(f) -> quotient.
    pub phi: ChainMap,
    /// quotient -> Cone(f), x |-> (s d x - d s x pulled back to X, s x).
    pub psi: ChainMap,
    /// id_Cone is homotopic to psi o phi; witness h(b, c) = (r c, 0).
    pub psi_phi_homotopy: Homotopy,
}

pub fn ses_compare(split: &SplitMono) -> Result<SesComparison> {
    let f = split.map();
    let x = f.source();
    let y = f.target();
    let ring = f.ring();
    let range: Vec<i64> = degree_range(x, y).collect();

    // canonical complement: section = kernel basis of the retraction,
    // projection = coordinates of (id - f r) in that basis
    let mut sections = BTreeMap::new();
    let mut projections = BTreeMap::new();
    let mut q_ranks = Vec::new();
    for &n in &range {
        let r = split.retraction(n);
        let k = kernel_basis(&r);
        let fr = f.component(n).mul(&r);
        let complement = ExactMatrix::identity(ring, y.rank(n)).sub(&fr);
        let pi = solve_matrix(&k, &complement)
            .expect("id - f r lands in the kernel of the retraction");
        q_ranks.push(k.cols());
        sections.insert(n, k);
        projections.insert(n, pi);
    }
    let mut q_diffs = Vec::new();
    for w in range.windows(2) {
        let (n, next) = (w[0], w[1]);
        q_diffs.push(projections[&next].mul(&y.diff(n)).mul(&sections[&n]));
    }
    let quotient = ChainComplex::assemble(ring, range[0], q_ranks, q_diffs);

    let cone_data = cone(f);
    let phi = ChainMap::from_fn(&cone_data.complex, &quotient, |n| {
        let pi = projections
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(ring, quotient.rank(n), y.rank(n)));
        ExactMatrix::zero(ring, pi.rows(), x.rank(n + 1)).hstack(&pi)
    })
    .expect("phi is a chain map");
    let psi = ChainMap::from_fn(&quotient, &cone_data.complex, |n| {
        let k = sections
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(ring, y.rank(n), quotient.rank(n)));
        let k_next = sections
            .get(&(n + 1))
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(ring, y.rank(n + 1), quotient.rank(n + 1)));
        let r_next = split.retraction(n + 1);
        let torsion = k_next.mul(&quotient.diff(n)).sub(&y.diff(n).mul(&k));
        r_next.mul(&torsion).vstack(&k)
    })
    .expect("psi is a chain map");

    // id - psi phi = D h + h D with h(b, c) = (r c, 0)
    let comps: BTreeMap<i64, ExactMatrix> = range
        .iter()
        .map(|&n| {
            let r = split.retraction(n);
            let h = ExactMatrix::zero(ring, x.rank(n), x.rank(n + 1))
                .hstack(&r)
                .vstack(&ExactMatrix::zero(
                    ring,
                    y.rank(n - 1),
                    x.rank(n + 1) + y.rank(n),
                ));
            (n, h)
        })
        .collect();
    let psi_phi_homotopy = Homotopy::new(
        ChainMap::identity(&cone_data.complex),
        phi.then(&psi).expect("composable"),
        comps,
    )
    .expect("cone deformation onto the split quotient");

    Ok(SesComparison {
        quotient,
        phi,
        psi,
        psi_phi_homotopy,
    })
}

/// A candidate exact triangle X -> Y -> Z -> X[1].
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    f: ChainMap,
    g: ChainMap,
    h: ChainMap,
}

impl Triangle {
    pub fn new(f: ChainMap, g: ChainMap, h: ChainMap) -> Result<Self> {
        if f.target() != g.source() {
            return Err(Error::MalformedTriangle(
                "target of f differs from source of g".into(),
            ));
        }
        if g.target() != h.source() {
            return Err(Error::MalformedTriangle(
                "target of g differs from source of h".into(),
            ));
        }
        if *h.target() != f.source().shift(1) {
            return Err(Error::MalformedTriangle(
                "target of h is not the shift of the source of f".into(),
            ));
        }
        Ok(Triangle { f, g, h })
    }

    pub fn f(&self) -> &ChainMap {
        &self.f
    }

    pub fn g(&self) -> &ChainMap {
        &self.g
    }

    pub fn h(&self) -> &ChainMap {
        &self.h
    }

    pub fn x(&self) -> &ChainComplex {
        self.f.source()
    }

    pub fn y(&self) -> &ChainComplex {
        self.g.source()
    }

    pub fn z(&self) -> &ChainComplex {
        self.h.source()
    }

    /// The cone triangle X -> Y -> Cone(f) -> X[1] of a map.
    pub fn from_cone(f: &ChainMap) -> Triangle {
        let data = cone(f);
        Triangle {
            f: f.clone(),
            g: data.inject,
            h: data.project,
        }
    }

    /// Rotation (Y, Z, X[1]) with third map -f[1].
    pub fn rotate(&self) -> Triangle {
        Triangle {
            f: self.g.clone(),
            g: self.h.clone(),
            h: self.f.shift(1).neg(),
        }
    }

    /// Structural inverse of rotation.
    pub fn unrotate(&self) -> Triangle {
        Triangle {
            f: self.h.shift(-1).neg(),
            g: self.f.clone(),
            h: self.g.clone(),
        }
    }

    /// The candidate cohomology sequence of the triangle, laid out as
    /// ... H^n(X) -> H^n(Y) -> H^n(Z) -> H^{n+1}(X) ... over the degrees
    /// that can carry cohomology, padded by one on each side.
    pub fn cohomology_sequence(&self) -> LongExactSequence {
        let (x, y, z) = (self.x(), self.y(), self.z());
        let supports = [x, y, z];
        let lo = supports
            .iter()
            .filter(|c| !c.is_zero_complex())
            .map(|c| c.lo())
            .min()
            .unwrap_or(0)
            - 1;
        let hi = supports
            .iter()
            .filter(|c| !c.is_zero_complex())
            .map(|c| c.hi())
            .max()
            .unwrap_or(0)
            + 1;
        let mut maps = Vec::new();
        for n in lo..=hi {
            maps.push(LesEntry {
                label: format!("H^{n}(X) -> H^{n}(Y)"),
                map: self.f.induced_map(n),
            });
            maps.push(LesEntry {
                label: format!("H^{n}(Y) -> H^{n}(Z)"),
                map: self.g.induced_map(n),
            });
            // the connecting map lands in H^n(X[1]) = H^{n+1}(X): same
            // kernels and images, so the bases glue seamlessly
            let src = z.cohomology_basis(n);
            let tgt = x.cohomology_basis(n + 1);
            maps.push(LesEntry {
                label: format!("H^{n}(Z) -> H^{}(X)", n + 1),
                map: src
                    .induced_map(&tgt, &self.h.component(n))
                    .expect("connecting map is defined on cohomology"),
            });
        }
        LongExactSequence::new(maps)
    }
}

/// An entry of a long (co)homology sequence.
#[derive(Clone, Debug)]
pub struct LesEntry {
    pub label: String,
    pub map: ModuleMap,
}

/// A composable run of module maps with per-joint exactness checks.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    maps: Vec<LesEntry>,
}

impl LongExactSequence {
    pub fn new(maps: Vec<LesEntry>) -> Self {
        for w in maps.windows(2) {
            assert_eq!(
                w[0].map.target(),
                w[1].map.source(),
                "sequence is not composable at {} / {}",
                w[0].label,
                w[1].label
            );
        }
        LongExactSequence { maps }
    }

    pub fn entries(&self) -> &[LesEntry] {
        &self.maps
    }

    /// Homology at each interior joint; exact there iff zero.
    pub fn joint_defects(&self) -> Vec<(String, FgModule)> {
        self.maps
            .windows(2)
            .map(|w| {
                let defect = pair_homology(&w[0].map, &w[1].map)
                    .unwrap_or_else(|_| w[0].map.target().clone());
                (w[1].label.clone(), defect)
            })
            .collect()
    }

    pub fn exactness_flags(&self) -> Vec<bool> {
        self.joint_defects()
            .into_iter()
            .map(|(_, d)| d.is_zero())
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.exactness_flags().into_iter().all(|b| b)
    }
}

/// The long exact cohomology sequence of the cofiber sequence of f:
/// ... -> H^n(X) -> H^n(Y) -> H^n(Cone f) -> H^{n+1}(X) -> ...
pub fn cofiber_les(f: &ChainMap) -> LongExactSequence {
    Triangle::from_cone(f).cohomology_sequence()
}

/// The first `length` consecutive triples of the doubly infinite cofiber
/// sequence of f, starting at (f, inject, project).  Each triple is the
/// rotation of the previous one; the cone of each triple's first map is
/// chain equivalent to the triple's third object, which is what the
/// certificates in the homotopy machinery exhibit.
pub fn iterated_cofiber(f: &ChainMap, length: usize) -> Vec<Triangle> {
    let mut out = Vec::with_capacity(length);
    let mut t = Triangle::from_cone(f);
    for _ in 0..length {
        out.push(t.clone());
        t = t.rotate();
    }
    out
}

/// Functorial cone comparison: given a square v f = f' u (strictly, or up
/// to the provided homotopy s), the block map (b, c) |-> (u b, v c + s b)
/// from Cone(f) to Cone(f').
pub fn cone_functor_map(
    f: &ChainMap,
    f_prime: &ChainMap,
    u: &ChainMap,
    v: &ChainMap,
    square_homotopy: Option<&Homotopy>,
) -> Result<ChainMap> {
    if u.source() != f.source()
        || u.target() != f_prime.source()
        || v.source() != f.target()
        || v.target() != f_prime.target()
    {
        return Err(Error::NotComposable);
    }
    let ring = f.ring();
    let from = cone(f).complex;
    let to = cone(f_prime).complex;
    let s = |n: i64| -> ExactMatrix {
        match square_homotopy {
            Some(h) => h.component(n),
            None => {
                ExactMatrix::zero(ring, f_prime.target().rank(n - 1), f.source().rank(n))
            }
        }
    };
    ChainMap::from_fn(&from, &to, |n| {
        let ub = u.component(n + 1);
        let vc = v.component(n);
        let sb = s(n + 1);
        let z = ExactMatrix::zero(ring, ub.rows(), vc.cols());
        ExactMatrix::from_blocks(ring, &[vec![&ub, &z], vec![&sb, &vc]])
    })
}

/// Multiplication by k on R, viewed as a one-term complex in degree 0.
pub fn scalar_map(ring: CoefficientRing, k: i64) -> ChainMap {
    let point = ChainComplex::concentrated(ring, 0, 1);
    ChainMap::from_fn(&point, &point, |_| ExactMatrix::from_i64(ring, 1, 1, &[k]))
        .expect("scalar multiplication is a chain map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::interval_complex;
    use crate::module::FgModule;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn cone_of_multiplication() {
        // cone(x2 : Z -> Z) = [Z -2-> Z] in degrees -1, 0 with H^0 = Z/2
        let f = scalar_map(Z, 2);
        let data = cone(&f);
        assert_eq!(data.complex, interval_complex(Z, -1, 2));
        assert_eq!(data.complex.cohomology(0), FgModule::cyclic(2));
        assert!(data.complex.cohomology(-1).is_zero());
        // project o inject = 0
        assert!(data.inject.then(&data.project).unwrap().is_zero_map());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = interval_complex(Z, -1, 2);
        let data = cone(&ChainMap::identity(&c));
        assert!(data.complex.validate().is_ok());
        assert!(data.complex.is_acyclic());
    }

    #[test]
    fn cone_of_zero_splits() {
        let x = interval_complex(Z, -1, 2);
        let y = interval_complex(Z, 0, 3);
        let zero = ChainMap::zero(&x, &y);
        let data = cone(&zero);
        let split = crate::complex::biproduct(&x.shift(1), &y).unwrap();
        assert_eq!(data.complex, split.complex);
    }

    #[test]
    fn cylinder_of_identity() {
        let point = ChainComplex::concentrated(Z, 0, 1);
        let cyl = cylinder(&ChainMap::identity(&point));
        assert_eq!((cyl.complex.lo(), cyl.complex.hi()), (-1, 0));
        assert_eq!((cyl.complex.rank(-1), cyl.complex.rank(0)), (1, 2));
        assert_eq!(cyl.complex.cohomology(0), FgModule::free(Z, 1));
        assert!(cyl.complex.cohomology(-1).is_zero());
    }

    #[test]
    fn cylinder_retracts_onto_target() {
        let f = ChainMap::from_fn(
            &interval_complex(Z, -1, 2),
            &interval_complex(Z, -1, 4),
            |n| match n {
                -1 => ExactMatrix::from_i64(Z, 1, 1, &[2]),
                0 => ExactMatrix::from_i64(Z, 1, 1, &[4]),
                _ => ExactMatrix::zero(Z, 0, 0),
            },
        )
        .unwrap();
        let cyl = cylinder(&f);
        assert_eq!(
            cyl.in_y.then(&cyl.out_y).unwrap(),
            ChainMap::identity(f.target())
        );
        // the homotopy witness validated on construction; check its ends
        assert_eq!(
            cyl.equivalence_homotopy.from_map(),
            &ChainMap::identity(&cyl.complex)
        );
        // degreewise split short exact sequence X -> Cyl -> Cone
        for n in -3..2 {
            assert_eq!(
                cyl.complex.rank(n),
                f.source().rank(n) + cone(&f).complex.rank(n)
            );
        }
        assert!(cyl.in_x.then(&cyl.onto_cone).unwrap().is_zero_map());
    }

    #[test]
    fn ses_compare_module_inclusion() {
        // Z -> Z^2, x |-> (x, 0), complexes concentrated in degree 0
        let x = ChainComplex::concentrated(Z, 0, 1);
        let y = ChainComplex::concentrated(Z, 0, 2);
        let f = ChainMap::from_fn(&x, &y, |n| {
            if n == 0 {
                ExactMatrix::from_i64(Z, 2, 1, &[1, 0])
            } else {
                ExactMatrix::zero(Z, y.rank(n), x.rank(n))
            }
        })
        .unwrap();
        let split = SplitMono::new(
            f,
            [(0, ExactMatrix::from_i64(Z, 1, 2, &[1, 0]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let cmp = ses_compare(&split).unwrap();
        assert_eq!(cmp.quotient, ChainComplex::concentrated(Z, 0, 1));
        // mutually inverse on the nose in this degenerate case
        assert_eq!(
            cmp.psi.then(&cmp.phi).unwrap(),
            ChainMap::identity(&cmp.quotient)
        );
        assert!(cmp.phi.is_quasi_iso());
        assert!(cmp.psi.is_quasi_iso());
    }

    #[test]
    fn ses_compare_requires_honest_splitting() {
        // x2 : Z -> Z is not split: no retraction exists
        let f = scalar_map(Z, 2);
        let attempt = SplitMono::new(
            f,
            [(0, ExactMatrix::from_i64(Z, 1, 1, &[1]))]
                .into_iter()
                .collect(),
        );
        assert_eq!(attempt.unwrap_err(), Error::InvalidSplitting(0));
    }

    #[test]
    fn ses_compare_on_cylinder_inclusion() {
        let f = scalar_map(Z, 3);
        let cyl = cylinder(&f);
        let x = f.source();
        // retraction of in_x reads the first block
        let retr: BTreeMap<i64, ExactMatrix> = cyl
            .complex
            .support()
            .map(|n| {
                let id = ExactMatrix::identity(Z, x.rank(n));
                let pad = ExactMatrix::zero(Z, x.rank(n), cyl.complex.rank(n) - x.rank(n));
                (n, id.hstack(&pad))
            })
            .collect();
        let split = SplitMono::new(cyl.in_x.clone(), retr).unwrap();
        let cmp = ses_compare(&split).unwrap();
        assert_eq!(
            cmp.psi.then(&cmp.phi).unwrap(),
            ChainMap::identity(&cmp.quotient)
        );
        // quotient is a model of the cone
        let cone_c = cone(&f).complex;
        for n in -2..2 {
            assert_eq!(cmp.quotient.cohomology(n), cone_c.cohomology(n));
        }
    }

    #[test]
    fn rotation_and_its_inverse() {
        let f = scalar_map(Z, 2);
        let t = Triangle::from_cone(&f);
        let r = t.rotate();
        assert_eq!(r.h(), &f.shift(1).neg());
        assert_eq!(r.unrotate(), t);
        // six rotations shift everything by [2] with signs restored
        let mut t6 = t.clone();
        for _ in 0..6 {
            t6 = t6.rotate();
        }
        assert_eq!(t6.f(), &t.f().shift(2));
        assert_eq!(t6.g(), &t.g().shift(2));
        assert_eq!(t6.h(), &t.h().shift(2));
    }

    #[test]
    fn cofiber_les_of_multiplication() {
        // 0 -> Z -2-> Z -> Z/2 -> 0
        let les = cofiber_les(&scalar_map(Z, 2));
        assert!(les.is_exact());
        let modules: Vec<FgModule> = les
            .entries()
            .iter()
            .map(|e| e.map.source().clone())
            .collect();
        assert!(modules.contains(&FgModule::free(Z, 1)));
        assert!(modules.contains(&FgModule::cyclic(2)));
    }

    #[test]
    fn cofiber_les_of_identity_degenerates() {
        let c = interval_complex(Z, -1, 2);
        let les = cofiber_les(&ChainMap::identity(&c));
        assert!(les.is_exact());
        // every H^n(X) -> H^n(Y) entry is an isomorphism
        for e in les.entries() {
            if e.label.contains("(X) -> H") {
                assert!(e.map.is_iso(), "{}", e.label);
            }
        }
    }

    #[test]
    fn cofiber_les_of_zero_map() {
        let x = ChainComplex::concentrated(Z, 0, 1);
        let zero = ChainMap::zero(&x, &x);
        let les = cofiber_les(&zero);
        assert!(les.is_exact());
        // cone(0) = X[1] (+) X
        let data = cone(&zero);
        assert_eq!(data.complex.cohomology(0), FgModule::free(Z, 1));
        assert_eq!(data.complex.cohomology(-1), FgModule::free(Z, 1));
    }

    #[test]
    fn iterated_cofiber_signs() {
        let f = scalar_map(Z, 2);
        let triples = iterated_cofiber(&f, 4);
        assert_eq!(triples.len(), 4);
        assert_eq!(triples[0], Triangle::from_cone(&f));
        // one full turn carries -f[1], -g[1], -h[1]
        let t0 = &triples[0];
        let t3 = &triples[3];
        assert_eq!(t3.f(), &t0.f().shift(1).neg());
        assert_eq!(t3.g(), &t0.g().shift(1).neg());
        assert_eq!(t3.h(), &t0.h().shift(1).neg());
    }

    #[test]
    fn cone_functor_map_on_strict_square() {
        let f = scalar_map(Z, 2);
        let fill = cone_functor_map(
            &f,
            &f,
            &ChainMap::identity(f.source()),
            &ChainMap::identity(f.target()),
            None,
        )
        .unwrap();
        assert_eq!(fill, ChainMap::identity(&cone(&f).complex));
    }
}
