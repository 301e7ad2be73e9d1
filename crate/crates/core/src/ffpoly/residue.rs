//! Residue rings R/F with canonical representatives.
//!
//! Elements are reduced once at construction, so equality of residues is
//! plain equality of coefficient vectors.

use std::sync::Arc;

use super::fq::Fq;
use super::poly::Poly;

/// The quotient ring R/F for a nonzero modulus F (a field iff F is
/// irreducible).
#[derive(Clone)]
pub struct ResidueRing {
    pub fq: Arc<Fq>,
    pub modulus: Poly,
}

impl ResidueRing {
    pub fn new(fq: Arc<Fq>, modulus: Poly) -> ResidueRing {
        assert!(!modulus.is_zero(), "modulus must be nonzero");
        let modulus = fq.p_monic(&modulus);
        ResidueRing { fq, modulus }
    }

    #[inline]
    pub fn reduce(&self, a: &Poly) -> Poly {
        self.fq.p_rem(a, &self.modulus)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.fq.p_add(a, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.fq.p_sub(a, b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.fq.p_neg(a)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&self.fq.p_mul(a, b))
    }

    /// Inverse by extended Euclid; `None` when gcd(a, F) is nontrivial.
    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        let fq = &*self.fq;
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(a));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = fq.p_divrem(&r0, &r1);
            let s = fq.p_sub(&s0, &fq.p_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degi() != 0 {
            return None;
        }
        // r0 is a nonzero constant; normalize.
        let c = fq.inv(r0.c[0]);
        Some(self.reduce(&fq.p_scale(&s0, c)))
    }

    /// Size of the residue ring, q^deg F.
    pub fn size(&self) -> u128 {
        (self.fq.q as u128).pow(self.modulus.deg().unwrap() as u32)
    }

    /// All residues, in the canonical coefficient-encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        let d = self.modulus.deg().unwrap();
        let q = self.fq.q as u128;
        (0..self.size()).map(move |idx| {
            let mut c = Vec::with_capacity(d);
            let mut rest = idx;
            for _ in 0..d {
                c.push(self.fq.el((rest % q) as u32));
                rest /= q;
            }
            Poly::from_coeffs(c)
        })
    }

    pub fn is_zero(&self, a: &Poly) -> bool {
        self.reduce(a).is_zero()
    }
}

impl std::fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}[T]/({:?})", self.fq.q, self.modulus)
    }
}

/// Polynomial in an auxiliary variable with coefficients in a residue ring,
/// ascending degree, no trailing zeros.  Division-based routines require the
/// ring to be a field (irreducible modulus).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RPoly(pub Vec<Poly>);

impl RPoly {
    pub fn zero() -> RPoly {
        RPoly(Vec::new())
    }

    pub fn from_coeffs(ring: &ResidueRing, mut c: Vec<Poly>) -> RPoly {
        for x in &mut c {
            *x = ring.reduce(x);
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degi(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lead(&self) -> &Poly {
        self.0.last().expect("nonzero")
    }
}

impl ResidueRing {
    pub fn rp_add(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let n = a.0.len().max(b.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.0.get(i).cloned().unwrap_or_else(Poly::zero);
            let y = b.0.get(i).cloned().unwrap_or_else(Poly::zero);
            c.push(self.reduce(&self.add(&x, &y)));
        }
        RPoly::from_coeffs(self, c)
    }

    pub fn rp_sub(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let n = a.0.len().max(b.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.0.get(i).cloned().unwrap_or_else(Poly::zero);
            let y = b.0.get(i).cloned().unwrap_or_else(Poly::zero);
            c.push(self.reduce(&self.sub(&x, &y)));
        }
        RPoly::from_coeffs(self, c)
    }

    pub fn rp_mul(&self, a: &RPoly, b: &RPoly) -> RPoly {
        if a.is_zero() || b.is_zero() {
            return RPoly::zero();
        }
        let mut c = vec![Poly::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] = self.add(&c[i + j], &self.fq.p_mul(x, y));
            }
        }
        RPoly::from_coeffs(self, c)
    }

    /// Division with remainder; requires an invertible leading coefficient
    /// (always true over a field).
    pub fn rp_divrem(&self, a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
        assert!(!b.is_zero());
        if a.0.len() < b.0.len() {
            return (RPoly::zero(), a.clone());
        }
        let binv = self.inv(b.lead()).expect("leading coefficient invertible");
        let mut rem = a.0.clone();
        let mut quot = vec![Poly::zero(); a.0.len() - b.0.len() + 1];
        for i in (b.0.len() - 1..a.0.len()).rev() {
            let coef = self.mul(&rem[i], &binv);
            if coef.is_zero() {
                continue;
            }
            let shift = i + 1 - b.0.len();
            quot[shift] = coef.clone();
            for (j, bx) in b.0.iter().enumerate() {
                rem[shift + j] = self.sub(&rem[shift + j], &self.fq.p_mul(&coef, bx));
                rem[shift + j] = self.reduce(&rem[shift + j]);
            }
        }
        (RPoly::from_coeffs(self, quot), RPoly::from_coeffs(self, rem))
    }

    pub fn rp_rem(&self, a: &RPoly, b: &RPoly) -> RPoly {
        self.rp_divrem(a, b).1
    }

    pub fn rp_monic(&self, a: &RPoly) -> RPoly {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.inv(a.lead()).expect("field");
        RPoly::from_coeffs(self, a.0.iter().map(|c| self.mul(c, &inv)).collect())
    }

    pub fn rp_gcd(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rp_rem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            self.rp_monic(&x)
        }
    }

    pub fn rp_derivative(&self, a: &RPoly) -> RPoly {
        if a.0.len() <= 1 {
            return RPoly::zero();
        }
        let mut c = Vec::with_capacity(a.0.len() - 1);
        for (i, x) in a.0.iter().enumerate().skip(1) {
            c.push(self.mul(&Poly::constant(self.fq.int(i as i64)), x));
        }
        RPoly::from_coeffs(self, c)
    }

    pub fn rp_eval(&self, a: &RPoly, x: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in a.0.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        self.reduce(&acc)
    }

    pub fn rp_powmod(&self, a: &RPoly, mut e: u128, m: &RPoly) -> RPoly {
        let mut base = self.rp_rem(a, m);
        let mut acc = RPoly::from_coeffs(self, vec![Poly::one()]);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rp_rem(&self.rp_mul(&acc, &base), m);
            }
            base = self.rp_rem(&self.rp_mul(&base, &base), m);
            e >>= 1;
        }
        acc
    }

    /// The auxiliary variable x as an RPoly.
    pub fn rp_x(&self) -> RPoly {
        RPoly(vec![Poly::zero(), Poly::one()])
    }

    /// Distinct roots in the residue field together with multiplicities in
    /// `a`.  Requires an irreducible modulus.  Deterministic.
    pub fn rp_roots(&self, a: &RPoly) -> Vec<(Poly, u32)> {
        assert!(!a.is_zero());
        let size = self.size();
        // Product of distinct linear factors: gcd(a, x^Q - x).
        let xq = self.rp_powmod(&self.rp_x(), size, a);
        let lin = self.rp_gcd(&self.rp_sub(&xq, &self.rp_x()), a);
        let mut roots = Vec::new();
        self.split_linear_product(&lin, &mut roots);
        roots.sort();
        roots
            .into_iter()
            .map(|r| {
                let factor = RPoly::from_coeffs(self, vec![self.neg(&r), Poly::one()]);
                let mut mult = 0;
                let mut rest = a.clone();
                loop {
                    let (q, rem) = self.rp_divrem(&rest, &factor);
                    if !rem.is_zero() {
                        break;
                    }
                    mult += 1;
                    rest = q;
                }
                (r, mult)
            })
            .collect()
    }

    /// Splits a monic product of distinct linear factors into its roots.
    fn split_linear_product(&self, g: &RPoly, out: &mut Vec<Poly>) {
        match g.degi() {
            d if d <= 0 => {}
            1 => out.push(self.neg(&g.0[0])),
            _ => {
                // Deterministic equal-degree-1 splitting: try shifted power
                // maps x -> (x + c)^((Q-1)/2) until a factor separates.
                let size = self.size();
                let exp = (size - 1) / 2;
                for idx in 0..size {
                    let mut c = Vec::new();
                    let mut rest = idx;
                    let d = self.modulus.deg().unwrap();
                    for _ in 0..d {
                        c.push(self.fq.el((rest % self.fq.q as u128) as u32));
                        rest /= self.fq.q as u128;
                    }
                    let shift = RPoly::from_coeffs(
                        self,
                        vec![Poly::from_coeffs(c), Poly::one()],
                    );
                    let pow = self.rp_powmod(&shift, exp, g);
                    let one = RPoly::from_coeffs(self, vec![Poly::one()]);
                    let h = self.rp_gcd(&self.rp_sub(&pow, &one), g);
                    if h.degi() > 0 && h.degi() < g.degi() {
                        let other = self.rp_divrem(g, &h).0;
                        self.split_linear_product(&h, out);
                        self.split_linear_product(&other, out);
                        return;
                    }
                }
                unreachable!("split of a linear product always succeeds");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives_and_inverses() {
        let fq = Fq::new(5).unwrap();
        let p = Poly::from_ints(&fq, &[2, 0, 1]); // T^2 + 2, irreducible mod 5
        assert!(fq.p_is_irreducible(&p));
        let ring = ResidueRing::new(fq.clone(), p);
        let mut count = 0;
        for a in ring.elements() {
            if a.is_zero() {
                continue;
            }
            let inv = ring.inv(&a).expect("field");
            assert!(ring.mul(&a, &inv).is_one());
            count += 1;
        }
        assert_eq!(count, 24);
        // Composite modulus: T*(T+1); T has no inverse.
        let m = fq.p_mul(&Poly::t(), &Poly::from_ints(&fq, &[1, 1]));
        let ring = ResidueRing::new(fq, m);
        assert!(ring.inv(&Poly::t()).is_none());
        assert!(ring.inv(&Poly::from_ints(&ring.fq, &[2])).is_some());
    }
}
