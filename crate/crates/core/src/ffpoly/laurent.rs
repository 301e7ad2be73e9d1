//! Truncated Laurent series at the place at infinity.
//!
//! K_inf = F_q((pi)) with uniformizer pi = 1/T.  An element stores its
//! pi-adic valuation, the known digits, and an absolute precision: digits
//! with exponent < `prec` are known, the rest are O(pi^prec).  Precision is
//! a carried field, never a global.
//!
//! Precision rules: add/sub give min(prec_a, prec_b); a product is known to
//! min(prec_a + val_b, prec_b + val_a); an inverse of x is known to
//! prec_x - 2 val_x.  Operations never silently truncate below these.

use super::fq::{Fq, FqElem};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Finite-precision element of K_inf.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentElem {
    /// Exponent of the leading digit; equals `prec` for an element that is
    /// zero at this precision.
    pub val: i32,
    /// Digits, index i holding the coefficient of pi^(val + i); leading
    /// digit nonzero, trailing zeros trimmed.
    pub coeffs: Vec<FqElem>,
    /// Digits with exponent < prec are known.
    pub prec: i32,
}

impl LaurentElem {
    /// The zero-at-precision element O(pi^prec).
    pub fn zero(prec: i32) -> LaurentElem {
        LaurentElem { val: prec, coeffs: Vec::new(), prec }
    }

    pub fn one(prec: i32) -> LaurentElem {
        LaurentElem::from_digit(FqElem::ONE, 0, prec)
    }

    /// c * pi^n known to precision `prec`.
    pub fn from_digit(c: FqElem, n: i32, prec: i32) -> LaurentElem {
        if c.is_zero() || n >= prec {
            LaurentElem::zero(prec)
        } else {
            LaurentElem { val: n, coeffs: vec![c], prec }
        }
    }

    fn normalize(mut val: i32, mut coeffs: Vec<FqElem>, prec: i32) -> LaurentElem {
        // Drop digits at or beyond the precision horizon.
        if val >= prec {
            return LaurentElem::zero(prec);
        }
        let keep = (prec - val) as usize;
        coeffs.truncate(keep);
        while let Some(first) = coeffs.first() {
            if first.is_zero() {
                coeffs.remove(0);
                val += 1;
            } else {
                break;
            }
        }
        while let Some(last) = coeffs.last() {
            if last.is_zero() {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            LaurentElem::zero(prec)
        } else {
            LaurentElem { val, coeffs, prec }
        }
    }

    pub fn is_zero_at_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; an element that vanishes at its precision cannot certify
    /// a valuation.
    pub fn valuation(&self) -> Result<i32> {
        if self.is_zero_at_prec() {
            Err(Error::PrecisionExhausted(self.prec))
        } else {
            Ok(self.val)
        }
    }

    /// Digit at exponent n; error if n is beyond the known precision.
    pub fn coeff_at(&self, n: i32) -> Result<FqElem> {
        if n >= self.prec {
            return Err(Error::PrecisionExhausted(self.prec));
        }
        if n < self.val || (n - self.val) as usize >= self.coeffs.len() {
            Ok(FqElem::ZERO)
        } else {
            Ok(self.coeffs[(n - self.val) as usize])
        }
    }

    pub fn leading_digit(&self) -> Result<FqElem> {
        self.valuation()?;
        Ok(self.coeffs[0])
    }

    /// Embed an element of R = F_q[T] via T = pi^(-1), truncated at `prec`.
    pub fn from_poly_t(f: &Poly, prec: i32) -> LaurentElem {
        match f.deg() {
            None => LaurentElem::zero(prec),
            Some(d) => {
                let coeffs: Vec<FqElem> = f.c.iter().rev().copied().collect();
                LaurentElem::normalize(-(d as i32), coeffs, prec)
            }
        }
    }

    /// Embed a polynomial in pi (ascending powers of pi), truncated.
    pub fn from_poly_pi(f: &Poly, prec: i32) -> LaurentElem {
        if f.is_zero() {
            return LaurentElem::zero(prec);
        }
        LaurentElem::normalize(0, f.c.clone(), prec)
    }

    /// Truncate to a (smaller) precision.
    pub fn truncate(&self, prec: i32) -> LaurentElem {
        LaurentElem::normalize(self.val, self.coeffs.clone(), prec.min(self.prec))
    }
}

impl Fq {
    pub fn l_add(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        let prec = a.prec.min(b.prec);
        if a.is_zero_at_prec() {
            return b.truncate(prec);
        }
        if b.is_zero_at_prec() {
            return a.truncate(prec);
        }
        let val = a.val.min(b.val);
        let len = (prec - val).max(0) as usize;
        let mut coeffs = vec![FqElem::ZERO; len];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let n = val + i as i32;
            let x = a.coeff_at(n).unwrap_or(FqElem::ZERO);
            let y = b.coeff_at(n).unwrap_or(FqElem::ZERO);
            *slot = self.add(x, y);
        }
        LaurentElem::normalize(val, coeffs, prec)
    }

    pub fn l_neg(&self, a: &LaurentElem) -> LaurentElem {
        LaurentElem {
            val: a.val,
            coeffs: a.coeffs.iter().map(|&c| self.neg(c)).collect(),
            prec: a.prec,
        }
    }

    pub fn l_sub(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        self.l_add(a, &self.l_neg(b))
    }

    pub fn l_mul(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        // Known-precision of the product per the module-level rule.
        let prec = (a.prec + b.val).min(b.prec + a.val);
        if a.is_zero_at_prec() || b.is_zero_at_prec() {
            return LaurentElem::zero(prec);
        }
        let val = a.val + b.val;
        let len = ((prec - val).max(0) as usize).min(a.coeffs.len() + b.coeffs.len() - 1);
        let mut coeffs = vec![FqElem::ZERO; len];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = self.add(coeffs[i + j], self.mul(x, y));
                }
            }
        }
        LaurentElem::normalize(val, coeffs, prec)
    }

    pub fn l_scale(&self, a: &LaurentElem, s: FqElem) -> LaurentElem {
        if s.is_zero() {
            return LaurentElem::zero(a.prec);
        }
        LaurentElem {
            val: a.val,
            coeffs: a.coeffs.iter().map(|&c| self.mul(c, s)).collect(),
            prec: a.prec,
        }
    }

    /// Multiply by pi^n (exact shift; precision shifts along).
    pub fn l_shift(&self, a: &LaurentElem, n: i32) -> LaurentElem {
        LaurentElem { val: a.val + n, coeffs: a.coeffs.clone(), prec: a.prec + n }
    }

    /// Multiplicative inverse of a unit-at-precision element.
    pub fn l_inv(&self, a: &LaurentElem) -> Result<LaurentElem> {
        let v = a.valuation()?;
        let digits = (a.prec - v) as usize;
        let lead_inv = self.inv(a.coeffs[0]);
        // Solve (sum a_i pi^i)(sum b_j pi^j) = 1 digit by digit, with a and
        // b reindexed from their valuations.
        let mut b = vec![FqElem::ZERO; digits];
        b[0] = lead_inv;
        for j in 1..digits {
            let mut acc = FqElem::ZERO;
            for i in 1..=j {
                let ai = if i < a.coeffs.len() { a.coeffs[i] } else { FqElem::ZERO };
                acc = self.add(acc, self.mul(ai, b[j - i]));
            }
            b[j] = self.neg(self.mul(acc, lead_inv));
        }
        Ok(LaurentElem::normalize(-v, b, a.prec - 2 * v))
    }

    pub fn l_div(&self, a: &LaurentElem, b: &LaurentElem) -> Result<LaurentElem> {
        Ok(self.l_mul(a, &self.l_inv(b)?))
    }

    /// Evaluate a polynomial with Laurent coefficients.
    pub fn l_eval_poly(&self, coeffs: &[LaurentElem], x: &LaurentElem) -> LaurentElem {
        let prec = coeffs.iter().map(|c| c.prec).min().unwrap_or(x.prec);
        let mut acc = LaurentElem::zero(prec);
        for c in coeffs.iter().rev() {
            acc = self.l_add(&self.l_mul(&acc, x), c);
        }
        acc
    }

    /// Hensel lift: given a monic polynomial g over O_inf and a simple root
    /// r0 of g mod pi, returns the unique root of g congruent to r0.  The
    /// root is computed to the precision carried by the coefficients.
    /// A multiple root mod pi is rejected.
    pub fn hensel_lift_root(&self, g: &[LaurentElem], r0: FqElem) -> Result<LaurentElem> {
        assert!(g.len() >= 2, "need degree >= 1");
        let prec = g.iter().map(|c| c.prec).min().unwrap();
        for c in g {
            if let Ok(v) = c.valuation() {
                assert!(v >= 0, "coefficients must be integral");
            }
        }
        let dg: Vec<LaurentElem> = g
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.l_scale(c, self.int(i as i64)))
            .collect();
        // Start from the residue digit, accurate mod pi.
        let mut r = LaurentElem::from_digit(r0, 0, 1);
        // Check simplicity: g'(r0) must be a unit mod pi.
        let d0 = self.l_eval_poly(&dg, &LaurentElem::from_digit(r0, 0, 1));
        match d0.valuation() {
            Ok(0) => {}
            _ => return Err(Error::DoubleRoot),
        }
        // Residue must actually be a root.
        let g0 = self.l_eval_poly(g, &LaurentElem::from_digit(r0, 0, 1));
        if !g0.is_zero_at_prec() {
            return Err(Error::Invalid(format!("{r0:?} is not a root mod pi")));
        }
        // Newton iteration; correct digits double each round.
        let mut known = 1i32;
        while known < prec {
            known = (2 * known).min(prec);
            // Treat the current approximation as an exact lift at the new
            // precision (unknown digits chosen zero); the step corrects them.
            let rr = LaurentElem::normalize(r.val, r.coeffs.clone(), known);
            let num = self.l_eval_poly(
                &g.iter().map(|c| c.truncate(known)).collect::<Vec<_>>(),
                &rr,
            );
            let den = self.l_eval_poly(
                &dg.iter().map(|c| c.truncate(known)).collect::<Vec<_>>(),
                &rr,
            );
            let step = self.l_div(&num, &den)?;
            r = self.l_sub(&rr, &step);
        }
        Ok(r.truncate(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn fq5() -> Arc<Fq> {
        Fq::new(5).unwrap()
    }

    fn pi(prec: i32) -> LaurentElem {
        LaurentElem::from_digit(FqElem::ONE, 1, prec)
    }

    #[test]
    fn invert_geometric_series() {
        let f = fq5();
        let prec = 8;
        let one = LaurentElem::one(prec);
        let x = f.l_sub(&one, &pi(prec)); // 1 - pi
        let inv = f.l_inv(&x).unwrap();
        // 1 + pi + pi^2 + ...
        for n in 0..prec {
            assert_eq!(inv.coeff_at(n).unwrap(), FqElem::ONE, "digit {n}");
        }
        let prod = f.l_mul(&x, &inv);
        assert_eq!(prod.coeff_at(0).unwrap(), FqElem::ONE);
        for n in 1..prod.prec {
            assert_eq!(prod.coeff_at(n).unwrap(), FqElem::ZERO);
        }
    }

    #[test]
    fn hensel_sqrt_of_one_plus_pi() {
        let f = fq5();
        let prec = 10;
        // g(x) = x^2 - (1 + pi), root 1 mod pi.
        let c0 = f.l_neg(&f.l_add(&LaurentElem::one(prec), &pi(prec)));
        let g = vec![c0, LaurentElem::zero(prec), LaurentElem::one(prec)];
        let r = f.hensel_lift_root(&g, FqElem::ONE).unwrap();
        // Binomial series: 1 + (1/2) pi - (1/8) pi^2 + ...
        let half = f.inv(f.int(2));
        let eighth = f.neg(f.inv(f.int(8)));
        assert_eq!(r.coeff_at(0).unwrap(), FqElem::ONE);
        assert_eq!(r.coeff_at(1).unwrap(), half);
        assert_eq!(r.coeff_at(2).unwrap(), eighth);
        // Verified by squaring.
        let sq = f.l_mul(&r, &r);
        assert_eq!(sq.coeff_at(0).unwrap(), FqElem::ONE);
        assert_eq!(sq.coeff_at(1).unwrap(), FqElem::ONE);
        for n in 2..sq.prec {
            assert_eq!(sq.coeff_at(n).unwrap(), FqElem::ZERO, "digit {n}");
        }
    }

    #[test]
    fn hensel_rejects_double_root() {
        let f = fq5();
        let prec = 6;
        // g(x) = x^2 - pi^2 has a double root 0 mod pi.
        let c0 = f.l_neg(&f.l_shift(&pi(prec), 1));
        let g = vec![c0, LaurentElem::zero(prec), LaurentElem::one(prec)];
        assert!(matches!(f.hensel_lift_root(&g, FqElem::ZERO), Err(Error::DoubleRoot)));
    }

    #[test]
    fn embedding_from_r() {
        let f = fq5();
        // T^2 + 3 embeds as pi^(-2) + 3 pi^0.
        let p = Poly::from_ints(&f, &[3, 0, 1]);
        let x = LaurentElem::from_poly_t(&p, 6);
        assert_eq!(x.valuation().unwrap(), -2);
        assert_eq!(x.coeff_at(-2).unwrap(), FqElem::ONE);
        assert_eq!(x.coeff_at(-1).unwrap(), FqElem::ZERO);
        assert_eq!(x.coeff_at(0).unwrap(), f.el(3));
    }

    #[test]
    fn precision_is_tracked_not_invented() {
        let f = fq5();
        let a = LaurentElem::from_digit(FqElem::ONE, 0, 3);
        assert!(a.coeff_at(3).is_err());
        let b = LaurentElem::from_digit(f.el(2), 2, 9);
        let prod = f.l_mul(&a, &b);
        // prec = min(3 + 2, 9 + 0) = 5.
        assert_eq!(prod.prec, 5);
        // Inverse of pi^1-valued element loses 2 digits of absolute precision.
        let c = f.l_add(&pi(4), &LaurentElem::from_digit(f.el(3), 2, 4));
        let inv = f.l_inv(&c).unwrap();
        assert_eq!(inv.prec, 4 - 2);
        assert_eq!(inv.val, -1);
    }

    fn arb_laurent(prec: i32) -> impl Strategy<Value = LaurentElem> {
        (
            -3i32..3,
            proptest::collection::vec(0u32..5, 0..6),
        )
            .prop_map(move |(val, digits)| {
                let f = fq5();
                let coeffs: Vec<FqElem> = digits.iter().map(|&d| f.el(d)).collect();
                LaurentElem::normalize(val, coeffs, prec)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn add_mul_associative_distributive(a in arb_laurent(12), b in arb_laurent(12), c in arb_laurent(12)) {
            let f = fq5();
            let ab_c = f.l_add(&f.l_add(&a, &b), &c);
            let a_bc = f.l_add(&a, &f.l_add(&b, &c));
            prop_assert_eq!(ab_c, a_bc);
            let m1 = f.l_mul(&f.l_mul(&a, &b), &c);
            let m2 = f.l_mul(&a, &f.l_mul(&b, &c));
            // Compare digits on the common known range.
            let prec = m1.prec.min(m2.prec);
            prop_assert_eq!(m1.truncate(prec), m2.truncate(prec));
            let d1 = f.l_mul(&a, &f.l_add(&b, &c));
            let d2 = f.l_add(&f.l_mul(&a, &b), &f.l_mul(&a, &c));
            let prec = d1.prec.min(d2.prec);
            prop_assert_eq!(d1.truncate(prec), d2.truncate(prec));
        }
    }
}
