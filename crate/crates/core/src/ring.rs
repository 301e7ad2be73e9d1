//! A minimal ring abstraction so form-level formulas (discriminant, group
//! action, multiplication tables) are written once and instantiated over
//! F_q, R = F_q[T], residue rings R/F and the Laurent field.

use std::sync::Arc;

use crate::error::Result;
use crate::ffpoly::fq::{Fq, FqElem};
use crate::ffpoly::laurent::LaurentElem;
use crate::ffpoly::poly::Poly;
use crate::ffpoly::residue::ResidueRing;

pub trait Ring: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Canonical image of a rational integer.
    fn int(&self, n: i64) -> Self::Elem;
    /// Multiplicative inverse where it exists.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Exact division a / b where the quotient stays in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn scale_int(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.int(n), a)
    }
}

/// F_q as a ring/field.
#[derive(Clone, Debug)]
pub struct FqField(pub Arc<Fq>);

impl Ring for FqField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem::ZERO
    }
    fn one(&self) -> FqElem {
        FqElem::ONE
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.0.add(*a, *b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.0.sub(*a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        self.0.neg(*a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.0.mul(*a, *b)
    }
    fn int(&self, n: i64) -> FqElem {
        self.0.int(n)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        (!a.is_zero()).then(|| self.0.inv(*a))
    }
    fn div_exact(&self, a: &FqElem, b: &FqElem) -> Option<FqElem> {
        (!b.is_zero()).then(|| self.0.div(*a, *b))
    }
}

/// The polynomial ring R = F_q[T].
#[derive(Clone, Debug)]
pub struct PolyRing(pub Arc<Fq>);

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.p_add(a, b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.p_sub(a, b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        self.0.p_neg(a)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.p_mul(a, b)
    }
    fn int(&self, n: i64) -> Poly {
        Poly::constant(self.0.int(n))
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        // Units of R are the nonzero constants.
        (a.degi() == 0).then(|| Poly::constant(self.0.inv(a.c[0])))
    }
    fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        if b.is_zero() {
            return None;
        }
        self.0.p_div_exact(a, b)
    }
}

/// A residue ring R/F behind the shared trait.
#[derive(Clone, Debug)]
pub struct ResidueClassRing(pub Arc<ResidueRing>);

impl ResidueClassRing {
    pub fn new(ring: ResidueRing) -> Self {
        ResidueClassRing(Arc::new(ring))
    }
    pub fn fq(&self) -> &Fq {
        &self.0.fq
    }
}

impl Ring for ResidueClassRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        self.0.reduce(&Poly::one())
    }
    fn is_zero(&self, a: &Poly) -> bool {
        self.0.is_zero(a)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.reduce(&self.0.add(a, b))
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.reduce(&self.0.sub(a, b))
    }
    fn neg(&self, a: &Poly) -> Poly {
        self.0.reduce(&self.0.neg(a))
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.mul(a, b)
    }
    fn int(&self, n: i64) -> Poly {
        self.0.reduce(&Poly::constant(self.0.fq.int(n)))
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        self.0.inv(a)
    }
    fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        self.0.inv(b).map(|binv| self.0.mul(a, &binv))
    }
}

/// The Laurent field at infinity; zero tests are at-precision tests.
#[derive(Clone, Debug)]
pub struct LaurentField {
    pub fq: Arc<Fq>,
    /// Default precision for constants created through `int`.
    pub prec: i32,
}

impl Ring for LaurentField {
    type Elem = LaurentElem;

    fn zero(&self) -> LaurentElem {
        LaurentElem::zero(self.prec)
    }
    fn one(&self) -> LaurentElem {
        LaurentElem::one(self.prec)
    }
    fn is_zero(&self, a: &LaurentElem) -> bool {
        a.is_zero_at_prec()
    }
    fn add(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        self.fq.l_add(a, b)
    }
    fn sub(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        self.fq.l_sub(a, b)
    }
    fn neg(&self, a: &LaurentElem) -> LaurentElem {
        self.fq.l_neg(a)
    }
    fn mul(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        self.fq.l_mul(a, b)
    }
    fn int(&self, n: i64) -> LaurentElem {
        LaurentElem::from_digit(self.fq.int(n), 0, self.prec)
    }
    fn inv(&self, a: &LaurentElem) -> Option<LaurentElem> {
        self.fq.l_inv(a).ok()
    }
    fn div_exact(&self, a: &LaurentElem, b: &LaurentElem) -> Option<LaurentElem> {
        self.fq.l_div(a, b).ok()
    }
}

/// Deterministic hash mix used to derive per-item seeds inside parallel
/// loops (schedule independent).
pub fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut x = seed ^ a.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ b.rotate_left(32);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Result alias re-export so generic code can use the crate error type.
pub type RingResult<T> = Result<T>;
