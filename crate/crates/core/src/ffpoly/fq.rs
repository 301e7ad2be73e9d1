//! The coefficient field F_q for q = p^k with gcd(q, 6) = 1, k <= 2, q <= 49.
//!
//! Elements are stored as indices 0..q in p-adic digit encoding: the element
//! c0 + c1*x (x a root of the defining polynomial, k = 2) has index
//! c0 + c1*p.  All arithmetic goes through precomputed tables, so everything
//! downstream is branch-free table lookups.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// An element of F_q, valid only relative to the [`Fq`] context it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FqElem(pub u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Arithmetic context for F_q.  Construct through [`Fq::new`]; contexts are
/// cached globally, so cloning the `Arc` is cheap.
pub struct Fq {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Coefficients (c0, c1) of the defining polynomial x^2 + c1 x + c0 over
    /// F_p when k = 2; unused for k = 1.
    pub defining: (u16, u16),
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    is_square: Vec<bool>,
    sqrt: Vec<u16>,
    is_cube: Vec<bool>,
}

fn ctx_cache() -> &'static Mutex<HashMap<u32, Arc<Fq>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Fq>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn small_prime(n: u32) -> bool {
    n >= 2 && (2..n).all(|d| n % d != 0)
}

impl Fq {
    /// Returns the context for F_q.  Errors unless q = p^k with p prime,
    /// p not in {2, 3}, k <= 2 and q <= 49.
    pub fn new(q: u32) -> Result<Arc<Fq>> {
        if let Some(ctx) = ctx_cache().lock().unwrap().get(&q) {
            return Ok(ctx.clone());
        }
        let (p, k) = if small_prime(q) {
            (q, 1)
        } else {
            let r = (q as f64).sqrt().round() as u32;
            if r * r == q && small_prime(r) {
                (r, 2)
            } else {
                return Err(Error::InvalidFieldSize(q));
            }
        };
        if p == 2 || p == 3 || q > 49 {
            return Err(Error::InvalidFieldSize(q));
        }
        let ctx = Arc::new(Self::build(p, k));
        ctx_cache().lock().unwrap().insert(q, ctx.clone());
        Ok(ctx)
    }

    fn build(p: u32, k: u32) -> Fq {
        let q = p.pow(k);
        // Defining polynomial x^2 + c1 x + c0: smallest (c0, c1) in the
        // ordering c0 + c1*p such that the polynomial has no root in F_p.
        let defining = if k == 2 {
            let mut found = (0u16, 0u16);
            'outer: for c1 in 0..p {
                for c0 in 0..p {
                    let irred = (0..p).all(|x| (x * x + c1 * x + c0) % p != 0);
                    if irred {
                        found = (c0 as u16, c1 as u16);
                        break 'outer;
                    }
                }
            }
            found
        } else {
            (0, 0)
        };

        let qs = q as usize;
        let digits = |a: u32| -> (u32, u32) { (a % p, a / p) };
        let enc = |c0: u32, c1: u32| -> u16 { (c0 % p + (c1 % p) * p) as u16 };

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..q {
            let (a0, a1) = digits(a);
            neg[a as usize] = enc(p - a0 % p, p - a1 % p);
            for b in 0..q {
                let (b0, b1) = digits(b);
                add[(a * q + b) as usize] = enc(a0 + b0, a1 + b1);
                if k == 1 {
                    mul[(a * q + b) as usize] = ((a * b) % p) as u16;
                } else {
                    // (a0 + a1 x)(b0 + b1 x) with x^2 = -c1 x - c0.
                    let (c0, c1) = (defining.0 as u32, defining.1 as u32);
                    let t2 = a1 * b1 % p;
                    let t1 = (a0 * b1 + a1 * b0) % p;
                    let t0 = a0 * b0 % p;
                    let r1 = (t1 + t2 * (p - c1)) % p;
                    let r0 = (t0 + t2 * (p - c0) % p * 1) % p;
                    mul[(a * q + b) as usize] = enc(r0, r1);
                }
            }
        }
        let mut inv = vec![0u16; qs];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                    break;
                }
            }
        }
        let mut frob = vec![0u16; qs];
        for a in 0..q {
            let mut acc = a;
            for _ in 1..p {
                acc = mul[(acc * q + a) as usize] as u32;
            }
            frob[a as usize] = acc as u16;
        }
        let mut is_square = vec![false; qs];
        let mut sqrt = vec![0u16; qs];
        let mut is_cube = vec![false; qs];
        for a in 0..q {
            let a2 = mul[(a * q + a) as usize];
            if !is_square[a2 as usize] {
                is_square[a2 as usize] = true;
                sqrt[a2 as usize] = a as u16;
            }
            let a3 = mul[(a2 as u32 * q + a) as usize];
            is_cube[a3 as usize] = true;
        }
        Fq {
            p,
            k,
            q,
            defining,
            add,
            mul,
            neg,
            inv,
            frob,
            is_square,
            sqrt,
            is_cube,
        }
    }

    #[inline]
    pub fn el(&self, n: u32) -> FqElem {
        FqElem((n % self.q) as u16)
    }

    /// Canonical image of an integer (the prime subfield embedding).
    #[inline]
    pub fn int(&self, n: i64) -> FqElem {
        let p = self.p as i64;
        FqElem(n.rem_euclid(p) as u16)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.index() * self.q as usize + b.index()])
    }

    /// Multiplicative inverse; zero maps to zero (callers check).
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        FqElem(self.inv[a.index()])
    }

    #[inline]
    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b))
    }

    /// x -> x^p, the Frobenius over the prime field.
    #[inline]
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        FqElem(self.frob[a.index()])
    }

    /// Trace to the prime field F_p, returned as an integer in 0..p.
    pub fn trace_to_prime(&self, a: FqElem) -> u32 {
        let mut acc = a;
        let mut pow = a;
        for _ in 1..self.k {
            pow = self.frobenius(pow);
            acc = self.add(acc, pow);
        }
        debug_assert!((acc.0 as u32) < self.p, "trace must land in F_p");
        acc.0 as u32
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn is_square(&self, a: FqElem) -> bool {
        self.is_square[a.index()]
    }

    /// A square root of `a` when one exists.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        if self.is_square[a.index()] {
            Some(FqElem(self.sqrt[a.index()]))
        } else {
            None
        }
    }

    #[inline]
    pub fn is_cube(&self, a: FqElem) -> bool {
        self.is_cube[a.index()]
    }

    /// The least nonsquare in the element ordering, if any (none for k = 2
    /// only when every element is a square, which never happens for odd q).
    pub fn least_nonsquare(&self) -> FqElem {
        (1..self.q)
            .map(FqElem::from_u32)
            .find(|&a| !self.is_square(a))
            .expect("odd q has nonsquares")
    }

    /// The least noncube; `None` when cubing is a bijection (q = 2 mod 3).
    pub fn least_noncube(&self) -> Option<FqElem> {
        (1..self.q).map(FqElem::from_u32).find(|&a| !self.is_cube(a))
    }

    /// Representatives of F_q* / (F_q*)^3, always starting with 1.
    pub fn cube_class_reps(&self) -> Vec<FqElem> {
        match self.least_noncube() {
            None => vec![FqElem::ONE],
            Some(b) => vec![FqElem::ONE, b, self.mul(b, b)],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem::from_u32)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(FqElem::from_u32)
    }
}

impl FqElem {
    #[inline]
    fn from_u32(n: u32) -> FqElem {
        FqElem(n as u16)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Debug for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fq({})", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        for q in [2, 3, 4, 8, 9, 27, 6, 12, 50, 121] {
            assert!(Fq::new(q).is_err(), "q = {q} should be rejected");
        }
        for q in [5, 7, 11, 13, 25, 49] {
            assert!(Fq::new(q).is_ok(), "q = {q} should be accepted");
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        // Exhaustive associativity/distributivity for the two sizes the
        // acceptance suite runs at, plus one extension field.
        for q in [5u32, 7, 25] {
            let f = Fq::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if !b.is_zero() {
                        assert_eq!(f.mul(f.div(a, b), b), a);
                    }
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_and_trace() {
        let f = Fq::new(25).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 5), f.frobenius(a));
            // Trace is additive and lands in F_5.
            assert!(f.trace_to_prime(a) < 5);
        }
        let g = Fq::new(5).unwrap();
        assert_eq!(g.trace_to_prime(g.el(3)), 3);
    }

    #[test]
    fn squares_and_cubes() {
        let f = Fq::new(5).unwrap();
        assert_eq!(f.least_nonsquare(), f.el(2));
        assert!(f.least_noncube().is_none(), "cubing is bijective mod 5");
        let f7 = Fq::new(7).unwrap();
        assert_eq!(f7.cube_class_reps().len(), 3);
        for a in f7.elements() {
            if let Some(r) = f7.sqrt(a) {
                assert_eq!(f7.mul(r, r), a);
            }
        }
    }
}
