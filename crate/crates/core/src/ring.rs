//! Coefficient rings and exact scalars.
//!
//! Everything downstream is computed over one of three principal rings:
//! the integers, the rationals, or a prime field.  The restriction to
//! principal rings is what makes the whole workbench run: submodules of
//! free modules are again free, so kernels, images and truncations stay
//! inside the class of free complexes.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// One of the three supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    /// F_p for a prime p; the primality is checked by [`CoefficientRing::prime_field`].
    PrimeField(u64),
}

/// An exact scalar: an arbitrary-precision integer, an exact rational,
/// or a residue already reduced mod p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientRing {
    /// Constructs F_p, rejecting composite or unit moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::Int(BigInt::zero()),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::zero()),
            CoefficientRing::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::Int(BigInt::from(n)),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            CoefficientRing::PrimeField(p) => Scalar::Fp((n.rem_euclid(*p as i64)) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::Int(n.clone()),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::from(n.clone())),
            CoefficientRing::PrimeField(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m);
                Scalar::Fp(r.to_string().parse::<u64>().unwrap())
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoefficientRing::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (CoefficientRing::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (CoefficientRing::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to ring {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (CoefficientRing::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (CoefficientRing::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (CoefficientRing::PrimeField(p), Scalar::Fp(x)) => {
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("scalar does not belong to ring {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoefficientRing::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (CoefficientRing::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (CoefficientRing::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to ring {self:?}"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_one(),
            Scalar::Rat(x) => x.is_one(),
            Scalar::Fp(x) => *x == 1,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match (self, a) {
            (CoefficientRing::Integers, Scalar::Int(x)) => x.abs().is_one(),
            _ => !self.is_zero(a),
        }
    }

    /// Multiplicative inverse, when one exists in the ring.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (CoefficientRing::Integers, Scalar::Int(x)) => {
                if x.abs().is_one() {
                    Some(Scalar::Int(x.clone()))
                } else {
                    None
                }
            }
            (CoefficientRing::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (CoefficientRing::PrimeField(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    // extended Euclid on (x, p)
                    let (mut r0, mut r1) = (*x as i128, *p as i128);
                    let (mut s0, mut s1) = (1i128, 0i128);
                    while r1 != 0 {
                        let q = r0 / r1;
                        (r0, r1) = (r1, r0 - q * r1);
                        (s0, s1) = (s1, s0 - q * s1);
                    }
                    Some(Scalar::Fp(s0.rem_euclid(*p as i128) as u64))
                }
            }
            _ => panic!("scalar does not belong to ring {self:?}"),
        }
    }

    /// Does a divide b in the ring?
    pub fn divides(&self, a: &Scalar, b: &Scalar) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        match (self, a, b) {
            (CoefficientRing::Integers, Scalar::Int(x), Scalar::Int(y)) => {
                (y % x).is_zero()
            }
            _ => true,
        }
    }

    /// Exact quotient b / a; panics if a does not divide b.
    pub fn exact_div(&self, b: &Scalar, a: &Scalar) -> Scalar {
        match (self, b, a) {
            (CoefficientRing::Integers, Scalar::Int(y), Scalar::Int(x)) => {
                let (q, r) = y.div_rem(x);
                assert!(r.is_zero(), "inexact integer division");
                Scalar::Int(q)
            }
            _ => self.mul(b, &self.inv(a).expect("division by a non-unit")),
        }
    }

    /// Greatest common divisor with Bezout coefficients: g = s*a + t*b.
    ///
    /// Over the integers, g is the nonnegative gcd.  Over a field
    /// the gcd of (a, b) is a itself when a != 0.
    pub fn gcdx(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar) {
        match self {
            CoefficientRing::Integers => {
                let (Scalar::Int(x), Scalar::Int(y)) = (a, b) else {
                    panic!("scalar does not belong to ring Z");
                };
                let e = x.extended_gcd(y);
                (Scalar::Int(e.gcd), Scalar::Int(e.x), Scalar::Int(e.y))
            }
            _ => {
                if !self.is_zero(a) {
                    (a.clone(), self.one(), self.zero())
                } else {
                    (b.clone(), self.zero(), self.one())
                }
            }
        }
    }

    /// The unit u such that u*a is the canonical associate
    /// (nonnegative over Z, 1 for nonzero field elements).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        if self.is_zero(a) {
            return self.one();
        }
        match (self, a) {
            (CoefficientRing::Integers, Scalar::Int(x)) => {
                if x.is_negative() {
                    self.from_i64(-1)
                } else {
                    self.one()
                }
            }
            _ => self.inv(a).unwrap(),
        }
    }

    /// Euclidean size used for pivot selection; smaller is better.
    pub fn pivot_size(&self, a: &Scalar) -> BigInt {
        match a {
            Scalar::Int(x) => x.abs(),
            Scalar::Rat(x) => x.numer().abs() + x.denom().abs(),
            Scalar::Fp(_) => BigInt::one(),
        }
    }

    /// Parses a scalar from text: integers everywhere, `p/q` over Q,
    /// integers reduced mod p over a prime field.
    pub fn parse_scalar(&self, s: &str) -> Option<Scalar> {
        let s = s.trim();
        if let CoefficientRing::Rationals = self {
            if let Some((num, den)) = s.split_once('/') {
                let n: BigInt = num.trim().parse().ok()?;
                let d: BigInt = den.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                return Some(Scalar::Rat(BigRational::new(n, d)));
            }
        }
        let n: BigInt = s.parse().ok()?;
        Some(self.from_bigint(&n))
    }

    /// Lifts a scalar to an integer when it is integral (used by rendering
    /// and by torsion bookkeeping; panics on non-integral rationals).
    pub fn to_bigint(&self, a: &Scalar) -> BigInt {
        match a {
            Scalar::Int(x) => x.clone(),
            Scalar::Rat(x) => {
                assert!(x.is_integer(), "non-integral rational");
                x.to_integer()
            }
            Scalar::Fp(x) => BigInt::from(*x),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

/// Parses a ring tag: `Z`, `Q`, or `F<p>`.
pub fn parse_ring(tag: &str) -> Result<CoefficientRing> {
    let tag = tag.trim();
    match tag {
        "Z" => Ok(CoefficientRing::Integers),
        "Q" => Ok(CoefficientRing::Rationals),
        _ => {
            if let Some(ps) = tag.strip_prefix('F') {
                let p: u64 = ps
                    .parse()
                    .map_err(|_| Error::UnsupportedRing(tag.to_string()))?;
                CoefficientRing::prime_field(p)
            } else {
                Err(Error::UnsupportedRing(tag.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(CoefficientRing::prime_field(7).is_ok());
        assert!(CoefficientRing::prime_field(1).is_err());
        assert!(CoefficientRing::prime_field(6).is_err());
        assert!(CoefficientRing::prime_field(0).is_err());
        assert!(CoefficientRing::prime_field(2).is_ok());
    }

    #[test]
    fn fp_arithmetic() {
        let f5 = CoefficientRing::prime_field(5).unwrap();
        let a = f5.from_i64(-3); // 2 mod 5
        assert_eq!(a, Scalar::Fp(2));
        let b = f5.from_i64(4);
        assert_eq!(f5.add(&a, &b), Scalar::Fp(1));
        assert_eq!(f5.mul(&a, &b), Scalar::Fp(3));
        let inv = f5.inv(&b).unwrap();
        assert_eq!(f5.mul(&b, &inv), Scalar::Fp(1));
    }

    #[test]
    fn integer_gcdx() {
        let z = CoefficientRing::Integers;
        let (g, s, t) = z.gcdx(&z.from_i64(14), &z.from_i64(-52));
        assert_eq!(g, z.from_i64(2));
        let lhs = z.add(&z.mul(&s, &z.from_i64(14)), &z.mul(&t, &z.from_i64(-52)));
        assert_eq!(lhs, g);
    }

    #[test]
    fn rational_parsing() {
        let q = CoefficientRing::Rationals;
        let half = q.parse_scalar("1/2").unwrap();
        assert_eq!(q.add(&half, &half), q.one());
        assert!(q.parse_scalar("1/0").is_none());
        assert_eq!(format!("{half}"), "1/2");
    }

    #[test]
    fn ring_tags() {
        assert_eq!(parse_ring("Z").unwrap(), CoefficientRing::Integers);
        assert_eq!(parse_ring("F7").unwrap(), CoefficientRing::PrimeField(7));
        assert!(parse_ring("F8").is_err());
        assert!(parse_ring("R").is_err());
    }
}
