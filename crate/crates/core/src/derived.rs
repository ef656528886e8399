//! Free resolutions and derived functors: derived tensor, Tor and Ext.
//!
//! Over a principal ring projective dimension is at most one, so the
//! canonical resolution of a module in invariant-factor form is the
//! two-term complex diag(d_1, ..., d_k) padded by zero rows for the free
//! generators.  Resolutions are canonical to make every derived-functor
//! output deterministic; independence from the resolution is a tested
//! theorem, not an assumption.

use crate::complex::{tensor, ChainComplex};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::module::{cokernel_presentation, FgModule, ModuleMap};
use crate::snf::{column_span_basis, kernel_basis, solve_matrix};

/// A two-term free resolution P^{-1} -> P^0 of a module, with the
/// identification of H^0 with the module it resolves.
pub struct Resolution {
    pub complex: ChainComplex,
    /// Isomorphism H^0(complex) -> resolved module.
    pub augmentation: ModuleMap,
}

/// The canonical free resolution: P^0 = R^{rank + #factors},
/// P^{-1} = R^{#factors}, differential the invariant-factor diagonal over
/// the torsion generators.  H^0 is the module, H^{-1} vanishes.
pub fn free_resolution(m: &FgModule) -> Resolution {
    let ring = m.ring();
    let t = m.invariant_factors().len();
    let gens = m.gens();
    let complex = if t == 0 {
        ChainComplex::concentrated(ring, 0, gens)
    } else {
        let mut d = ExactMatrix::zero(ring, gens, t);
        for (i, factor) in m.invariant_factors().iter().enumerate() {
            d[(i, i)] = ring.from_bigint(factor);
        }
        ChainComplex::assemble(ring, -1, vec![t, gens], vec![d])
    };
    let h0 = complex.cohomology_basis(0);
    let ann = m.annihilators();
    let mut matrix = ExactMatrix::zero(ring, gens, h0.module().gens());
    for j in 0..h0.module().gens() {
        let rep = h0.generator(j);
        for i in 0..gens {
            // generator i of the normal form is the class of the i-th
            // basis vector of P^0
            matrix[(i, j)] = if ring.is_zero(&ann[i]) {
                rep[i].clone()
            } else {
                let lifted = ring.to_bigint(&rep[i]);
                let modulus = ring.to_bigint(&ann[i]);
                ring.from_bigint(&lifted.mod_floor(&modulus))
            };
        }
    }
    let augmentation = ModuleMap::new(h0.module().clone(), m.clone(), matrix)
        .expect("augmentation respects relations");
    debug_assert!(augmentation.is_iso());
    Resolution {
        complex,
        augmentation,
    }
}

use num_integer::Integer as _;

/// Argument of the derived tensor: either a bounded complex of frees
/// (used as-is) or a module (replaced by its canonical resolution).
pub enum DerivedArg {
    Complex(ChainComplex),
    Module(FgModule),
}

impl DerivedArg {
    fn representative(&self) -> ChainComplex {
        match self {
            DerivedArg::Complex(c) => c.clone(),
            DerivedArg::Module(m) => free_resolution(m).complex,
        }
    }

    fn ring(&self) -> crate::ring::CoefficientRing {
        match self {
            DerivedArg::Complex(c) => c.ring(),
            DerivedArg::Module(m) => m.ring(),
        }
    }
}

/// Derived tensor product: modules are resolved, complexes of frees are
/// already their own representatives, and the result is the plain tensor
/// of the representatives.
pub fn derived_tensor(a: &DerivedArg, b: &DerivedArg) -> Result<ChainComplex> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    tensor(&a.representative(), &b.representative())
}

/// Tor_i(M, N) = H^{-i} of the derived tensor; vanishes for i >= 2 over
/// a principal ring (resolution length) and for i >= 1 over a field.
pub fn tor(m: &FgModule, n: &FgModule, i: u32) -> Result<FgModule> {
    let t = derived_tensor(
        &DerivedArg::Module(m.clone()),
        &DerivedArg::Module(n.clone()),
    )?;
    Ok(t.cohomology(-(i as i64)))
}

/// Homology at the middle of
/// `coker(prev_rel) --f--> coker(mid_rel) --g--> coker(next_rel)`
/// for raw presentations (no normal form required on the three modules).
fn presented_pair_homology(
    f: &ExactMatrix,
    mid_rel: &ExactMatrix,
    g: &ExactMatrix,
    next_rel: &ExactMatrix,
) -> FgModule {
    let ambient = mid_rel.rows();
    let pairs = kernel_basis(&g.hstack(next_rel));
    let x_rows: Vec<usize> = (0..ambient).collect();
    let pre_basis = column_span_basis(&pairs.select_rows(&x_rows));
    let rel = solve_matrix(&pre_basis, &f.hstack(mid_rel))
        .expect("image and relations lie in the kernel lattice");
    cokernel_presentation(&rel)
}

/// H^degree of P (x) N for a bounded free complex P and a module N,
/// computed on the presented modules N^{rank} without resolving N.  This
/// is the one-sided route; the two-sided route resolves both arguments.
pub fn tensor_module_cohomology(p: &ChainComplex, n: &FgModule, degree: i64) -> FgModule {
    let ring = p.ring();
    let g = n.gens();
    let rel = n.relations();
    let power_rel = |r: usize| ExactMatrix::identity(ring, r).kronecker(&rel);
    let lifted = |d: &ExactMatrix| d.kronecker(&ExactMatrix::identity(ring, g));
    presented_pair_homology(
        &lifted(&p.diff(degree - 1)),
        &power_rel(p.rank(degree)),
        &lifted(&p.diff(degree)),
        &power_rel(p.rank(degree + 1)),
    )
}

/// Tor via a one-sided resolution: resolve only the first argument and
/// tensor degreewise with the second module.
pub fn tor_one_sided(m: &FgModule, n: &FgModule, i: u32) -> FgModule {
    let p = free_resolution(m).complex;
    tensor_module_cohomology(&p, n, -(i as i64))
}

/// The plain tensor product of two modules in normal form, presented by
/// bilinearity over the generators.
pub fn module_tensor(m: &FgModule, n: &FgModule) -> FgModule {
    let ring = m.ring();
    let rel_m = m.relations().kronecker(&ExactMatrix::identity(ring, n.gens()));
    let rel_n = ExactMatrix::identity(ring, m.gens()).kronecker(&n.relations());
    cokernel_presentation(&rel_m.hstack(&rel_n))
}

/// Ext^i(M, N) as H^i of the complex Hom(P^{-k}, N) for the canonical
/// resolution P of M; the dual differential is precomposition with the
/// resolution differential (a lone arrow here, so the sign convention on
/// dual differentials never bites).  Vanishes for i >= 2.
pub fn ext(m: &FgModule, n: &FgModule, i: u32) -> FgModule {
    let ring = m.ring();
    let p = free_resolution(m).complex;
    let g = n.gens();
    let rel = n.relations();
    let r0 = p.rank(0);
    let r1 = p.rank(-1);
    let dual = p
        .diff(-1)
        .transpose()
        .kronecker(&ExactMatrix::identity(ring, g));
    let power_rel = |r: usize| ExactMatrix::identity(ring, r).kronecker(&rel);
    match i {
        0 => presented_pair_homology(
            &ExactMatrix::zero(ring, r0 * g, 0),
            &power_rel(r0),
            &dual,
            &power_rel(r1),
        ),
        1 => presented_pair_homology(
            &dual,
            &power_rel(r1),
            &ExactMatrix::zero(ring, 0, r1 * g),
            &power_rel(0),
        ),
        _ => FgModule::zero(ring),
    }
}

/// Hom in the derived category between shifted bounded complexes,
/// computed in the homotopy category via projective representatives.
/// Over a field this is unconditional; over the integers the first
/// argument must have torsion-free cohomology, otherwise the request is
/// refused rather than answered unreliably.
pub fn hom_derived(b: &ChainComplex, c: &ChainComplex, i: i64) -> Result<FgModule> {
    if b.ring() != c.ring() {
        return Err(Error::RingMismatch(b.ring().to_string(), c.ring().to_string()));
    }
    if !b.ring().is_field() {
        for n in b.support() {
            if !b.cohomology(n).is_torsion_free() {
                return Err(Error::UnsupportedOverZ(format!(
                    "H^{n} of the first argument has torsion"
                )));
            }
        }
    }
    crate::homotopy::hom_in_k(b, &c.shift(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::interval_complex;
    use crate::cone::{cofiber_les, scalar_map};
    use crate::ring::CoefficientRing;
    use num_bigint::BigInt;

    const Z: CoefficientRing = CoefficientRing::Integers;
    const Q: CoefficientRing = CoefficientRing::Rationals;

    /// Independent oracle for the first derived functors of cyclic groups.
    fn gcd_oracle(a: u64, b: u64) -> FgModule {
        FgModule::cyclic(num_integer::gcd(a, b))
    }

    #[test]
    fn resolution_of_cyclic() {
        let r = free_resolution(&FgModule::cyclic(3));
        assert_eq!(r.complex, interval_complex(Z, -1, 3));
        assert_eq!(r.complex.cohomology(0), FgModule::cyclic(3));
        assert!(r.complex.cohomology(-1).is_zero());
        assert!(r.augmentation.is_iso());
    }

    #[test]
    fn resolution_of_free_module() {
        let r = free_resolution(&FgModule::free(Z, 1));
        assert_eq!(r.complex, ChainComplex::concentrated(Z, 0, 1));
        assert!(r.augmentation.is_iso());
    }

    #[test]
    fn resolution_of_mixed_module() {
        let m = FgModule::new(Z, 1, vec![BigInt::from(2)]);
        let r = free_resolution(&m);
        assert_eq!((r.complex.rank(-1), r.complex.rank(0)), (1, 2));
        assert_eq!(r.complex.cohomology(0), m);
        assert!(r.complex.cohomology(-1).is_zero());
        assert!(r.augmentation.is_iso());
    }

    #[test]
    fn derived_tensor_with_unit() {
        // Z (x)^L m is the resolution of m up to quasi-isomorphism
        let m = FgModule::cyclic(6);
        let t = derived_tensor(
            &DerivedArg::Module(FgModule::free(Z, 1)),
            &DerivedArg::Module(m.clone()),
        )
        .unwrap();
        let r = free_resolution(&m).complex;
        for n in -2..2 {
            assert_eq!(t.cohomology(n), r.cohomology(n));
        }
    }

    #[test]
    fn derived_tensor_mod_two_with_itself() {
        let z2 = FgModule::cyclic(2);
        let t = derived_tensor(&DerivedArg::Module(z2.clone()), &DerivedArg::Module(z2.clone()))
            .unwrap();
        assert_eq!(t.cohomology(0), FgModule::cyclic(2));
        assert_eq!(t.cohomology(-1), FgModule::cyclic(2));
        assert!(t.cohomology(-2).is_zero());
    }

    #[test]
    fn one_sided_matches_two_sided() {
        let m = FgModule::cyclic(4);
        let n = FgModule::cyclic(6);
        for i in 0..3 {
            assert_eq!(
                tor(&m, &n, i).unwrap(),
                tor_one_sided(&m, &n, i),
                "Tor_{i}"
            );
        }
    }

    #[test]
    fn tor_tables() {
        assert_eq!(tor(&FgModule::cyclic(4), &FgModule::cyclic(6), 1).unwrap(), gcd_oracle(4, 6));
        // Z is flat
        let z = FgModule::free(Z, 1);
        let n = FgModule::cyclic(9);
        assert_eq!(tor(&z, &n, 0).unwrap(), n);
        assert!(tor(&z, &n, 1).unwrap().is_zero());
        // projective dimension <= 1 kills Tor_2
        assert!(tor(&FgModule::cyclic(8), &FgModule::cyclic(12), 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn tor_zero_is_plain_tensor() {
        let pairs = [(4u64, 6u64), (2, 3), (12, 8), (5, 5)];
        for (a, b) in pairs {
            let m = FgModule::cyclic(a);
            let n = FgModule::cyclic(b);
            assert_eq!(tor(&m, &n, 0).unwrap(), module_tensor(&m, &n), "{a} {b}");
        }
        // with free parts
        let m = FgModule::new(Z, 1, vec![BigInt::from(2)]);
        let n = FgModule::new(Z, 2, vec![BigInt::from(3)]);
        assert_eq!(tor(&m, &n, 0).unwrap(), module_tensor(&m, &n));
    }

    #[test]
    fn tor_symmetry_small() {
        for a in 1..=6u64 {
            for b in 1..=6u64 {
                for i in 0..2 {
                    assert_eq!(
                        tor(&FgModule::cyclic(a), &FgModule::cyclic(b), i).unwrap(),
                        tor(&FgModule::cyclic(b), &FgModule::cyclic(a), i).unwrap(),
                        "a={a} b={b} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn ext_tables() {
        // oracle: 0 -> Z -4-> Z -> Z/4 -> 0 gives Ext^1(Z/4, Z) = Z/4
        assert_eq!(ext(&FgModule::cyclic(4), &FgModule::free(Z, 1), 1), FgModule::cyclic(4));
        // Z is projective
        let n = FgModule::cyclic(9);
        assert_eq!(ext(&FgModule::free(Z, 1), &n, 0), n);
        assert!(ext(&FgModule::free(Z, 1), &n, 1).is_zero());
        // gcd formula
        assert_eq!(ext(&FgModule::cyclic(6), &FgModule::cyclic(4), 1), gcd_oracle(6, 4));
        assert_eq!(ext(&FgModule::cyclic(6), &FgModule::cyclic(4), 2), FgModule::zero(Z));
        // Hom(Z/6, Z/4) = Z/2 as well
        assert_eq!(ext(&FgModule::cyclic(6), &FgModule::cyclic(4), 0), gcd_oracle(6, 4));
    }

    #[test]
    fn ext_over_field_vanishes_positively() {
        let m = FgModule::free(Q, 2);
        let n = FgModule::free(Q, 3);
        assert_eq!(ext(&m, &n, 0), FgModule::free(Q, 6));
        assert!(ext(&m, &n, 1).is_zero());
    }

    #[test]
    fn les_compatibility_with_tor() {
        // 0 -> Z -k-> Z -> Z/k -> 0 tensored with N reproduces Tor joints
        let k = 6u64;
        let n = FgModule::cyclic(4);
        let f = scalar_map(Z, k as i64);
        // cone(f) is the resolution of Z/k; its tensor with res(N) has the
        // Tor groups of (Z/k, N) as cohomology
        let cone_c = crate::cone::cone(&f).complex;
        let t = tensor(&cone_c, &free_resolution(&n).complex).unwrap();
        assert_eq!(t.cohomology(0), tor(&FgModule::cyclic(k), &n, 0).unwrap());
        assert_eq!(t.cohomology(-1), tor(&FgModule::cyclic(k), &n, 1).unwrap());
        // and the cofiber sequence of f is exact before tensoring
        assert!(cofiber_les(&f).is_exact());
    }

    #[test]
    fn hom_derived_field_examples() {
        let b = ChainComplex::concentrated(Q, 0, 1);
        assert_eq!(hom_derived(&b, &b, 0).unwrap(), FgModule::free(Q, 1));
        assert!(hom_derived(&b, &b, 1).unwrap().is_zero());
        assert!(hom_derived(&b, &b, -2).unwrap().is_zero());
    }

    #[test]
    fn hom_derived_refuses_torsion_over_z() {
        let b = interval_complex(Z, -1, 2); // H^0 = Z/2
        let c = ChainComplex::concentrated(Z, 0, 1);
        assert!(matches!(
            hom_derived(&b, &c, 0),
            Err(Error::UnsupportedOverZ(_))
        ));
        // torsion-free cohomology is accepted
        let free = ChainComplex::concentrated(Z, 0, 2);
        assert_eq!(hom_derived(&free, &c, 0).unwrap(), FgModule::free(Z, 2));
    }
}
