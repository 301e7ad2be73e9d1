//! Exact arithmetic in Q[q^(1/6), q^(-1/6)].
//!
//! Table values such as 2 q^(5/6) or q^(1/3)(q+3) are algebraic numbers in a
//! sixth root of q.  An element is a sparse map from the exponent (in units
//! of 1/6) to an exact rational coefficient; floats appear only at render
//! time.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Element of Q[q^(1/6), q^(-1/6)]: sum of c_e * q^(e/6) over integers e.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QSixth {
    /// Exponent in sixths -> coefficient; zero coefficients are not stored.
    terms: BTreeMap<i64, BigRational>,
}

impl QSixth {
    pub fn zero() -> QSixth {
        QSixth::default()
    }

    pub fn one() -> QSixth {
        QSixth::term(0, BigRational::one())
    }

    /// c * q^(e6/6).
    pub fn term(e6: i64, c: BigRational) -> QSixth {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e6, c);
        }
        QSixth { terms }
    }

    pub fn int_term(e6: i64, c: i64) -> QSixth {
        QSixth::term(e6, BigRational::from(BigInt::from(c)))
    }

    pub fn rational(c: BigRational) -> QSixth {
        QSixth::term(0, c)
    }

    pub fn from_int(n: i64) -> QSixth {
        QSixth::int_term(0, n)
    }

    /// q^(e6/6) as a power basis element.
    pub fn q_pow_sixth(e6: i64) -> QSixth {
        QSixth::int_term(e6, 1)
    }

    /// q^n for integer n.
    pub fn q_pow(n: i64) -> QSixth {
        QSixth::q_pow_sixth(6 * n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &QSixth) -> QSixth {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let entry = terms.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        QSixth { terms }
    }

    pub fn neg(&self) -> QSixth {
        QSixth { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &QSixth) -> QSixth {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QSixth) -> QSixth {
        let mut out = QSixth::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let e = e1 + e2;
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                let entry = out.terms.entry(e).or_insert_with(BigRational::zero);
                *entry += c;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QSixth {
        if c.is_zero() {
            return QSixth::zero();
        }
        QSixth { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> QSixth {
        self.scale(&BigRational::from(BigInt::from(n)))
    }

    /// Multiply by q^(e6/6).
    pub fn shift(&self, e6: i64) -> QSixth {
        QSixth { terms: self.terms.iter().map(|(&e, c)| (e + e6, c.clone())).collect() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Largest coefficient magnitude, for truncation-error bookkeeping.
    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Numeric value at a concrete q.
    pub fn eval_f64(&self, q: u32) -> f64 {
        let lq = (q as f64).ln();
        let mut total = 0.0;
        for (&e, c) in &self.terms {
            let cf = rational_to_f64(c);
            total += cf * ((e as f64) * lq / 6.0).exp();
        }
        total
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    // Good enough for reporting: convert through i128 when possible,
    // falling back to a string round trip for big values.
    let conv = |x: &BigInt| -> f64 {
        match <BigInt as TryInto<i128>>::try_into(x.clone()) {
            Ok(v) => v as f64,
            Err(_) => x.to_string().parse::<f64>().unwrap_or(f64::INFINITY),
        }
    };
    conv(c.numer()) / conv(c.denom())
}

impl fmt::Display for QSixth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "q^({}/6)", e)?;
            } else {
                write!(f, "{}*q^({}/6)", c, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSixth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ring_ops_exact() {
        // (q^(1/2) + 1)(q^(1/2) - 1) = q - 1.
        let a = QSixth::q_pow_sixth(3).add(&QSixth::one());
        let b = QSixth::q_pow_sixth(3).sub(&QSixth::one());
        let prod = a.mul(&b);
        assert_eq!(prod, QSixth::q_pow(1).sub(&QSixth::one()));
        // Exact rational coefficients survive arithmetic.
        let c = QSixth::term(5, r(2, 3)).add(&QSixth::term(5, r(1, 3)));
        assert_eq!(c, QSixth::int_term(5, 1));
    }

    #[test]
    fn eval_matches_structure() {
        // 2 q^(5/6) at q = 5.
        let x = QSixth::int_term(5, 2);
        let expected = 2.0 * 5f64.powf(5.0 / 6.0);
        assert!((x.eval_f64(5) - expected).abs() < 1e-12);
    }
}
