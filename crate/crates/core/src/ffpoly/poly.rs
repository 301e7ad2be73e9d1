//! Dense polynomials over F_q: the ring R = F_q[T].
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial is the empty vector.  The absolute value |f| = q^deg(f)
//! is multiplicative, which several modules rely on.

use num::BigRational;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use super::fq::{Fq, FqElem};
use crate::error::{Error, Result};

/// Element of R = F_q[T] (or of F_q[pi] when used at the infinite place).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct Poly {
    /// Coefficient of T^i at index i; no trailing zeros.
    pub c: Vec<FqElem>,
}

impl serde::Serialize for FqElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u16(self.0)
    }
}

impl<'de> serde::Deserialize<'de> for FqElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        u16::deserialize(d).map(FqElem)
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, co) in self.c.iter().enumerate().rev() {
            if co.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", co.0)?,
                1 if co.0 == 1 => write!(f, "T")?,
                1 => write!(f, "{}T", co.0)?,
                _ if co.0 == 1 => write!(f, "T^{}", i)?,
                _ => write!(f, "{}T^{}", co.0, i)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![FqElem::ONE] }
    }

    pub fn constant(a: FqElem) -> Poly {
        if a.is_zero() {
            Poly::zero()
        } else {
            Poly { c: vec![a] }
        }
    }

    /// The monomial T.
    pub fn t() -> Poly {
        Poly { c: vec![FqElem::ZERO, FqElem::ONE] }
    }

    pub fn monomial(a: FqElem, n: usize) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FqElem::ZERO; n + 1];
        c[n] = a;
        Poly { c }
    }

    pub fn from_coeffs(mut c: Vec<FqElem>) -> Poly {
        while let Some(last) = c.last() {
            if last.is_zero() {
                c.pop();
            } else {
                break;
            }
        }
        Poly { c }
    }

    /// Convenience constructor from integer coefficients, ascending degree.
    pub fn from_ints(fq: &Fq, cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&n| fq.int(n)).collect())
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; `None` for the zero polynomial (deg 0 = -infinity).
    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree as an i64 with deg(0) = -1, handy for comparisons.
    #[inline]
    pub fn degi(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    #[inline]
    pub fn lead(&self) -> FqElem {
        *self.c.last().unwrap_or(&FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FqElem::ONE
    }

    /// |f| = q^deg f as u128; |0| = 0.
    pub fn abs(&self, fq: &Fq) -> u128 {
        match self.deg() {
            None => 0,
            Some(d) => (fq.q as u128).pow(d as u32),
        }
    }
}

// --- ring operations, context-passing style -------------------------------

impl Fq {
    pub fn p_add(&self, a: &Poly, b: &Poly) -> Poly {
        let (long, short) = if a.c.len() >= b.c.len() { (a, b) } else { (b, a) };
        let mut c = long.c.clone();
        for (i, &x) in short.c.iter().enumerate() {
            c[i] = self.add(c[i], x);
        }
        Poly::from_coeffs(c)
    }

    pub fn p_neg(&self, a: &Poly) -> Poly {
        Poly { c: a.c.iter().map(|&x| self.neg(x)).collect() }
    }

    pub fn p_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let mut c = a.c.clone();
        if b.c.len() > c.len() {
            c.resize(b.c.len(), FqElem::ZERO);
        }
        for (i, &x) in b.c.iter().enumerate() {
            c[i] = self.sub(c[i], x);
        }
        Poly::from_coeffs(c)
    }

    pub fn p_scale(&self, a: &Poly, s: FqElem) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { c: a.c.iter().map(|&x| self.mul(x, s)).collect() }
    }

    pub fn p_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FqElem::ZERO; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                c[i + j] = self.add(c[i + j], self.mul(x, y));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn p_shift(&self, a: &Poly, n: usize) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FqElem::ZERO; n];
        c.extend_from_slice(&a.c);
        Poly { c }
    }

    /// Euclidean division a = q*b + r with deg r < deg b.
    pub fn p_divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if a.c.len() < b.c.len() {
            return (Poly::zero(), a.clone());
        }
        let binv = self.inv(b.lead());
        let mut rem = a.c.clone();
        let mut quot = vec![FqElem::ZERO; a.c.len() - b.c.len() + 1];
        for i in (b.c.len() - 1..a.c.len()).rev() {
            let coef = self.mul(rem[i], binv);
            if coef.is_zero() {
                continue;
            }
            let shift = i + 1 - b.c.len();
            quot[shift] = coef;
            for (j, &bx) in b.c.iter().enumerate() {
                rem[shift + j] = self.sub(rem[shift + j], self.mul(coef, bx));
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn p_rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.p_divrem(a, b).1
    }

    /// Exact division; `None` when b does not divide a.
    pub fn p_div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let (q, r) = self.p_divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn p_divides(&self, b: &Poly, a: &Poly) -> bool {
        self.p_rem(a, b).is_zero()
    }

    /// Monic gcd.
    pub fn p_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.p_rem(&x, &y);
            x = y;
            y = r;
        }
        self.p_monic(&x)
    }

    /// Degree of gcd(a, b), aborting early (returning `None`) once the
    /// remainder degree drops below `min_deg` (the gcd degree then must be
    /// below `min_deg` too).  Used as a cheap census filter.
    pub fn p_gcd_deg_at_least(&self, a: &Poly, b: &Poly, min_deg: i64) -> Option<i64> {
        let mut x = a.clone();
        let mut y = b.clone();
        loop {
            if y.is_zero() {
                let d = x.degi();
                return (d >= min_deg).then_some(d);
            }
            if y.degi() < min_deg {
                return None;
            }
            let r = self.p_rem(&x, &y);
            x = y;
            y = r;
        }
    }

    pub fn p_monic(&self, a: &Poly) -> Poly {
        if a.is_zero() || a.is_monic() {
            return a.clone();
        }
        self.p_scale(a, self.inv(a.lead()))
    }

    pub fn p_derivative(&self, a: &Poly) -> Poly {
        if a.c.len() <= 1 {
            return Poly::zero();
        }
        let mut c = Vec::with_capacity(a.c.len() - 1);
        for (i, &x) in a.c.iter().enumerate().skip(1) {
            c.push(self.mul(self.int(i as i64), x));
        }
        Poly::from_coeffs(c)
    }

    pub fn p_eval(&self, a: &Poly, x: FqElem) -> FqElem {
        let mut acc = FqElem::ZERO;
        for &co in a.c.iter().rev() {
            acc = self.add(self.mul(acc, x), co);
        }
        acc
    }

    /// a^e mod m by square and multiply.
    pub fn p_powmod(&self, a: &Poly, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.p_rem(a, m);
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.p_rem(&self.p_mul(&acc, &base), m);
            }
            base = self.p_rem(&self.p_mul(&base, &base), m);
            e >>= 1;
        }
        acc
    }

    /// Substitute T -> g(T) reducing mod m (modular composition by Horner).
    pub fn p_compose_mod(&self, a: &Poly, g: &Poly, m: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for &co in a.c.iter().rev() {
            acc = self.p_rem(&self.p_mul(&acc, g), m);
            acc = self.p_add(&acc, &Poly::constant(co));
        }
        acc
    }
}

// --- factorization ---------------------------------------------------------

/// A factored polynomial: unit times product of monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub unit: FqElem,
    /// (monic irreducible, exponent), sorted by (degree, coefficients).
    pub factors: Vec<(Poly, u32)>,
}

impl Factored {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

impl Fq {
    /// Full factorization into monic irreducibles (distinct-degree followed
    /// by seeded equal-degree splitting; output order is canonical, so the
    /// result does not depend on the seed).
    pub fn p_factor(&self, f: &Poly, seed: u64) -> Result<Factored> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let unit = f.lead();
        let mut work = self.p_monic(f);
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        self.factor_monic(&mut work, &mut rng, &mut factors)?;
        factors.sort_by(|a, b| (a.0.c.len(), &a.0.c).cmp(&(b.0.c.len(), &b.0.c)));
        // Merge repeated entries produced by the squarefree split.
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (p, e) in factors {
            if let Some(last) = merged.last_mut() {
                if last.0 == p {
                    last.1 += e;
                    continue;
                }
            }
            merged.push((p, e));
        }
        Ok(Factored { unit, factors: merged })
    }

    fn factor_monic(
        &self,
        f: &mut Poly,
        rng: &mut ChaCha12Rng,
        out: &mut Vec<(Poly, u32)>,
    ) -> Result<()> {
        // Squarefree decomposition first (handles the char-p p-th power case),
        // then distinct-degree and equal-degree on each squarefree part.
        let parts = self.squarefree_decomposition(f);
        for (g, mult) in parts {
            if g.is_one() {
                continue;
            }
            let mut pieces = Vec::new();
            self.distinct_degree(&g, rng, &mut pieces);
            for p in pieces {
                out.push((p, mult));
            }
        }
        Ok(())
    }

    /// Yun-style squarefree decomposition adapted to characteristic p:
    /// returns pairs (g_i, i) with f = prod g_i^i and g_i squarefree.
    fn squarefree_decomposition(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out: Vec<(Poly, u32)> = Vec::new();
        self.sqfree_rec(f, 1, &mut out);
        out
    }

    fn sqfree_rec(&self, f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
        if f.is_one() || f.is_constant() {
            return;
        }
        let df = self.p_derivative(f);
        if df.is_zero() {
            // f = g(T^p) = (h(T))^p since F_q is perfect.
            let root = self.p_pth_root(f);
            self.sqfree_rec(&root, mult * self.p, out);
            return;
        }
        let mut c = self.p_gcd(f, &df);
        let mut w = self.p_div_exact(f, &c).expect("gcd divides");
        let mut i = 1u32;
        while !w.is_one() {
            let y = self.p_gcd(&w, &c);
            let piece = self.p_div_exact(&w, &y).expect("gcd divides");
            if !piece.is_one() {
                out.push((piece, mult * i));
            }
            w = y.clone();
            c = self.p_div_exact(&c, &y).expect("gcd divides");
            i += 1;
        }
        if !c.is_one() {
            // Remaining part has derivative zero.
            self.sqfree_rec(&c, mult, out);
        }
    }

    /// For f = g(T^p), returns h with h^p = f.
    fn p_pth_root(&self, f: &Poly) -> Poly {
        let p = self.p as usize;
        let mut c = Vec::with_capacity(f.c.len() / p + 1);
        let mut i = 0;
        while i < f.c.len() {
            // p-th root of each coefficient: x -> x^(q/p) inverts x -> x^p.
            let e = (self.q as u64 / self.p as u64).max(1);
            c.push(self.pow(f.c[i], e));
            i += p;
        }
        Poly::from_coeffs(c)
    }

    fn distinct_degree(&self, f: &Poly, rng: &mut ChaCha12Rng, out: &mut Vec<Poly>) {
        let mut rest = f.clone();
        let mut h = self.p_rem(&Poly::t(), &rest); // T^(q^d) mod rest, built up
        let mut d = 0usize;
        while rest.degi() > 0 {
            d += 1;
            if (rest.degi() as usize) < 2 * d {
                // Remainder is irreducible.
                out.push(rest.clone());
                return;
            }
            h = self.frobenius_power(&h, &rest);
            let g = self.p_gcd(&self.p_sub(&h, &Poly::t()), &rest);
            if g.degi() > 0 {
                self.equal_degree(&g, d, rng, out);
                rest = self.p_div_exact(&rest, &g).expect("gcd divides");
                h = self.p_rem(&h, &rest);
            }
        }
    }

    /// h -> h^q mod f via k successive p-th powers (Frobenius of the base
    /// field applied through modular composition is overkill at this size;
    /// plain powering is fine).
    fn frobenius_power(&self, h: &Poly, f: &Poly) -> Poly {
        self.p_powmod(h, self.q as u128, f)
    }

    fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha12Rng, out: &mut Vec<Poly>) {
        if f.degi() as usize == d {
            out.push(self.p_monic(f));
            return;
        }
        // Cantor-Zassenhaus for odd q.
        let n = f.degi() as usize;
        let exp: u128 = ((self.q as u128).pow(d as u32) - 1) / 2;
        loop {
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push(self.el(rng.next_u64() as u32 % self.q));
            }
            let a = Poly::from_coeffs(c);
            if a.is_constant() {
                continue;
            }
            let g0 = self.p_gcd(&a, f);
            let split = if g0.degi() > 0 && (g0.degi() as usize) < n {
                g0
            } else {
                let b = self.p_powmod(&a, exp, f);
                let g = self.p_gcd(&self.p_sub(&b, &Poly::one()), f);
                if g.degi() > 0 && (g.degi() as usize) < n {
                    g
                } else {
                    continue;
                }
            };
            let other = self.p_div_exact(f, &split).expect("divides");
            self.equal_degree(&split, d, rng, out);
            self.equal_degree(&other, d, rng, out);
            return;
        }
    }

    /// Irreducibility test (Rabin): T^(q^n) = T mod f and gcd conditions at
    /// maximal proper divisors of n.
    pub fn p_is_irreducible(&self, f: &Poly) -> bool {
        let n = match f.deg() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let mut h = self.p_rem(&Poly::t(), f);
        let mut pows = vec![h.clone()]; // pows[i] = T^(q^(i+0)) .. built below
        for _ in 0..n {
            h = self.frobenius_power(&h, f);
            pows.push(h.clone());
        }
        // pows[i] = T^(q^i) mod f.
        if pows[n] != self.p_rem(&Poly::t(), f) {
            return false;
        }
        for r in primes_dividing(n) {
            let m = n / r;
            let g = self.p_gcd(&self.p_sub(&pows[m], &Poly::t()), f);
            if g.degi() != 0 {
                return false;
            }
        }
        true
    }

    /// f squarefree (gcd with derivative trivial; derivative zero means a
    /// p-th power, hence not squarefree).
    pub fn p_is_squarefree(&self, f: &Poly) -> bool {
        let df = self.p_derivative(f);
        if df.is_zero() {
            return f.is_constant();
        }
        self.p_gcd(f, &df).degi() == 0
    }

    /// Exact polynomial square root; `None` if f is not a perfect square.
    pub fn p_sqrt(&self, f: &Poly) -> Option<Poly> {
        if f.is_zero() {
            return Some(Poly::zero());
        }
        let d = f.deg().unwrap();
        if d % 2 != 0 {
            return None;
        }
        let ls = self.sqrt(f.lead())?;
        let h = d / 2;
        let mut s = vec![FqElem::ZERO; h + 1];
        s[h] = ls;
        // Solve for coefficients from the top down: the coefficient of
        // T^(h+j) in s^2 must match f; each step is linear in s[j] because
        // 2*s[h] is invertible.
        let two_lead_inv = self.inv(self.mul(self.int(2), ls));
        for j in (0..h).rev() {
            // sum_{a+b = h+j} s[a] s[b] = f[h+j]; isolate the a=h (and b=h) terms.
            let mut acc = FqElem::ZERO;
            for a in (j + 1)..h {
                let b = h + j - a;
                if b > h {
                    continue;
                }
                acc = self.add(acc, self.mul(s[a], s[b]));
            }
            let target = self.sub(f.c[h + j], acc);
            s[j] = self.mul(target, two_lead_inv);
        }
        let cand = Poly::from_coeffs(s);
        (self.p_mul(&cand, &cand) == *f).then_some(cand)
    }
}

fn primes_dividing(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- arithmetic functions over R -------------------------------------------

/// All monic irreducibles of degree d, sorted by their coefficient encoding
/// (constant coefficient varying fastest).
pub fn primes_of_degree(fq: &Fq, d: usize) -> Vec<Poly> {
    assert!(d >= 1, "primes have degree >= 1");
    let q = fq.q as u64;
    let count = q.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut c = Vec::with_capacity(d + 1);
        let mut rest = idx;
        for _ in 0..d {
            c.push(fq.el((rest % q) as u32));
            rest /= q;
        }
        c.push(FqElem::ONE);
        let f = Poly { c };
        if fq.p_is_irreducible(&f) {
            out.push(f);
        }
    }
    out
}

/// All monic irreducibles of degree <= d, ascending (degree, encoding).
pub fn primes_up_to_degree(fq: &Fq, d: usize) -> Vec<Poly> {
    (1..=d).flat_map(|k| primes_of_degree(fq, k)).collect()
}

/// Number of monic irreducibles of degree d by the Mobius sum
/// (1/d) sum_{e | d} mu(e) q^(d/e).
pub fn prime_count_formula(q: u64, d: u64) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            total += int_moebius(e) as i128 * (q as i128).pow((d / e) as u32);
        }
    }
    (total / d as i128) as u64
}

fn int_moebius(mut n: u64) -> i64 {
    let mut cnt = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            cnt += 1;
        }
        d += 1;
    }
    if n > 1 {
        cnt += 1;
    }
    if cnt % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Seed used by arithmetic functions whose value cannot depend on the
/// factorization seed anyway.
const ARITH_SEED: u64 = 0x5eed_0fa_c702;

/// Mobius function of a monic polynomial.
pub fn moebius(fq: &Fq, f: &Poly) -> Result<i64> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NonMonic);
    }
    if f.is_one() {
        return Ok(1);
    }
    if !fq.p_is_squarefree(f) {
        return Ok(0);
    }
    let fac = fq.p_factor(f, ARITH_SEED)?;
    Ok(if fac.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Polynomial sum-of-divisors sigma(f) = sum over monic d | f of |d|.
pub fn sigma_divisors(fq: &Fq, f: &Poly) -> Result<u128> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let fac = fq.p_factor(f, ARITH_SEED)?;
    let mut total: u128 = 1;
    for (p, e) in &fac.factors {
        let ap = p.abs(fq);
        let mut s: u128 = 1;
        let mut pk: u128 = 1;
        for _ in 0..*e {
            pk *= ap;
            s += pk;
        }
        total *= s;
    }
    Ok(total)
}

/// The R-semilocal zeta function zeta_R(s) = 1 / (1 - q^(1-s)) at integer
/// s >= 2, as an exact rational.
pub fn zeta_r(q: u32, s: u32) -> Result<BigRational> {
    if s < 2 {
        return Err(Error::ZetaPole);
    }
    let qs = num::BigInt::from(q).pow(s - 1);
    Ok(BigRational::new(qs.clone(), qs - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fq5() -> std::sync::Arc<Fq> {
        Fq::new(5).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = fq5();
        // T^2 + 1 = (T+2)(T+3) over F_5.
        let fac = f.p_factor(&Poly::from_ints(&f, &[1, 0, 1]), 1).unwrap();
        assert_eq!(fac.unit, FqElem::ONE);
        assert_eq!(
            fac.factors,
            vec![
                (Poly::from_ints(&f, &[2, 1]), 1),
                (Poly::from_ints(&f, &[3, 1]), 1)
            ]
        );
        // T is irreducible.
        let fac = f.p_factor(&Poly::t(), 7).unwrap();
        assert_eq!(fac.factors, vec![(Poly::t(), 1)]);
        assert!(f.p_factor(&Poly::zero(), 0).is_err());
    }

    #[test]
    fn cubic_irreducibility_matches_trial_division() {
        // Independent oracle: a cubic over F_5 is irreducible iff no monic
        // polynomial of degree 1 divides it.
        let f = fq5();
        let g = Poly::from_ints(&f, &[1, 1, 0, 1]); // T^3 + T + 1
        let mut has_linear_factor = false;
        for c in 0..5 {
            let lin = Poly::from_ints(&f, &[c, 1]);
            if f.p_divides(&lin, &g) {
                has_linear_factor = true;
            }
        }
        assert_eq!(f.p_is_irreducible(&g), !has_linear_factor);
        let fac = f.p_factor(&g, 3).unwrap();
        assert_eq!(fac.factors.len() == 1 && fac.factors[0].1 == 1, !has_linear_factor);
    }

    #[test]
    fn prime_counts_match_moebius_formula() {
        for q in [5u32, 7] {
            let f = Fq::new(q).unwrap();
            for d in 1..=4 {
                let got = primes_of_degree(&f, d).len() as u64;
                assert_eq!(got, prime_count_formula(q as u64, d as u64), "q={q} d={d}");
            }
        }
        assert_eq!(primes_of_degree(&fq5(), 1).len(), 5);
        assert_eq!(primes_of_degree(&fq5(), 2).len(), 10);
        assert_eq!(primes_of_degree(&Fq::new(7).unwrap(), 3).len(), 112);
    }

    #[test]
    fn moebius_and_sigma() {
        let f = fq5();
        let t = Poly::t();
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let tt1 = f.p_mul(&t, &t1);
        assert_eq!(moebius(&f, &tt1).unwrap(), 1);
        assert_eq!(moebius(&f, &f.p_mul(&t, &t)).unwrap(), 0);
        assert!(moebius(&f, &Poly::from_ints(&f, &[0, 2])).is_err());
        // sigma(T^2) = 1 + 5 + 25.
        assert_eq!(sigma_divisors(&f, &f.p_mul(&t, &t)).unwrap(), 31);
        // sigma multiplicative on coprime arguments.
        assert_eq!(
            sigma_divisors(&f, &tt1).unwrap(),
            sigma_divisors(&f, &t).unwrap() * sigma_divisors(&f, &t1).unwrap()
        );
    }

    #[test]
    fn moebius_degree_sums() {
        // sum_{deg f = n, monic} mu(f) = 1, -q, 0, 0 for n = 0, 1, 2, 3.
        let f = fq5();
        let expected = [1i64, -5, 0, 0];
        for n in 0..=3usize {
            let mut total = 0i64;
            let count = 5u64.pow(n as u32);
            for idx in 0..count {
                let mut c = Vec::new();
                let mut rest = idx;
                for _ in 0..n {
                    c.push(f.el((rest % 5) as u32));
                    rest /= 5;
                }
                c.push(FqElem::ONE);
                total += moebius(&f, &Poly { c }).unwrap();
            }
            assert_eq!(total, expected[n], "n = {n}");
        }
    }

    #[test]
    fn zeta_r_values() {
        use num::BigInt;
        let v = zeta_r(5, 2).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(5), BigInt::from(4)));
        let v = zeta_r(5, 3).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(25), BigInt::from(24)));
        assert!(zeta_r(5, 1).is_err());
        // s -> infinity limit is 1.
        let v = zeta_r(5, 40).unwrap();
        let f = v.numer().clone() - v.denom().clone();
        assert_eq!(f, BigInt::from(1));
    }

    #[test]
    fn sqrt_detects_squares() {
        let f = fq5();
        let g = Poly::from_ints(&f, &[1, 0, 1]); // T^2+1
        let sq = f.p_mul(&g, &g);
        assert_eq!(f.p_sqrt(&sq), Some(g.clone()));
        assert_eq!(f.p_sqrt(&Poly::from_ints(&f, &[0, 1, 1])), None);
        // Odd degree can never be a square.
        assert_eq!(f.p_sqrt(&Poly::from_ints(&f, &[1, 2, 0, 1])), None);
        let scaled = f.p_scale(&sq, f.el(2));
        // 2 is not a square mod 5.
        assert_eq!(f.p_sqrt(&scaled), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn factor_remultiplies(coeffs in proptest::collection::vec(0u32..5, 1..9), seed in 0u64..1000) {
            let f = fq5();
            let poly = Poly::from_coeffs(coeffs.iter().map(|&c| f.el(c)).collect());
            prop_assume!(!poly.is_zero());
            let fac = f.p_factor(&poly, seed).unwrap();
            let mut prod = Poly::constant(fac.unit);
            for (p, e) in &fac.factors {
                prop_assert!(f.p_is_irreducible(p));
                prop_assert!(p.is_monic());
                for _ in 0..*e {
                    prod = f.p_mul(&prod, p);
                }
            }
            prop_assert_eq!(prod, poly);
        }

        #[test]
        fn abs_multiplicative(a in proptest::collection::vec(0u32..5, 1..6),
                              b in proptest::collection::vec(0u32..5, 1..6)) {
            let f = fq5();
            let pa = Poly::from_coeffs(a.iter().map(|&c| f.el(c)).collect());
            let pb = Poly::from_coeffs(b.iter().map(|&c| f.el(c)).collect());
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            prop_assert_eq!(f.p_mul(&pa, &pb).abs(&f), pa.abs(&f) * pb.abs(&f));
        }

        #[test]
        fn divrem_roundtrip(a in proptest::collection::vec(0u32..5, 0..10),
                            b in proptest::collection::vec(0u32..5, 1..6)) {
            let f = fq5();
            let pa = Poly::from_coeffs(a.iter().map(|&c| f.el(c)).collect());
            let pb = Poly::from_coeffs(b.iter().map(|&c| f.el(c)).collect());
            prop_assume!(!pb.is_zero());
            let (q, r) = f.p_divrem(&pa, &pb);
            prop_assert!(r.degi() < pb.degi());
            prop_assert_eq!(f.p_add(&f.p_mul(&q, &pb), &r), pa);
        }
    }
}
