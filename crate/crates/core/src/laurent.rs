//! Exact Laurent polynomials in one variable q.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Σ c_e q^e with arbitrary-precision integer coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentQ {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c.into());
        out
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// (-q)^e for any integer e.
    pub fn neg_q_pow(e: i32) -> Self {
        Self::monomial(if e % 2 == 0 { 1 } else { -1 }, e)
    }

    /// q - q^{-1}.
    pub fn q_minus_q_inv() -> Self {
        Self::monomial(1, 1) - Self::monomial(1, -1)
    }

    /// q + q^{-1}.
    pub fn q_plus_q_inv() -> Self {
        Self::monomial(1, 1) + Self::monomial(1, -1)
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Membership in qZ[q].
    pub fn in_q_zq(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 1)
    }

    /// Membership in q^{-1}Z[q^{-1}].
    pub fn in_qinv_zqinv(&self) -> bool {
        self.max_exponent().is_none_or(|e| e <= -1)
    }

    /// Specialization at q = 1.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The substitution q ↦ q^{-1}.
    pub fn bar(&self) -> Self {
        LaurentQ {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by c·q^e.
    pub fn scale(&self, c: &BigInt, e: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQ {
            terms: self.terms.iter().map(|(&x, d)| (x + e, d * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl From<i64> for LaurentQ {
    fn from(c: i64) -> Self {
        LaurentQ::from_int(c)
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentQ> for LaurentQ {
    fn sub_assign(&mut self, rhs: &LaurentQ) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(mut self, rhs: LaurentQ) -> LaurentQ {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentQ {
    type Output = LaurentQ;
    fn sub(mut self, rhs: LaurentQ) -> LaurentQ {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        &self * &rhs
    }
}

/// Terms are printed in increasing exponent order, e.g. `-q^-1 + 2 - 3q^2`.
impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad Laurent polynomial {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = LaurentQ::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        while start < bytes.len() {
            let mut end = start + 1;
            // a sign directly after '^' belongs to the exponent
            while end < bytes.len() && !((bytes[end] == b'+' || bytes[end] == b'-') && bytes[end - 1] != b'^') {
                end += 1;
            }
            let term = &compact[start..end];
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coeff, exp) = match body.find('q') {
                None => (body.parse::<BigInt>().map_err(|_| bad("coefficient"))?, 0),
                Some(p) => {
                    let c = if p == 0 {
                        BigInt::one()
                    } else {
                        body[..p].parse::<BigInt>().map_err(|_| bad("coefficient"))?
                    };
                    let rest = &body[p + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(|| bad("exponent"))?
                            .parse::<i32>()
                            .map_err(|_| bad("exponent"))?
                    };
                    (c, e)
                }
            };
            out.add_term(exp, coeff * sign);
            start = end;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = LaurentQ::q_plus_q_inv();
        let b = LaurentQ::q_minus_q_inv();
        let prod = &a * &b;
        assert_eq!(prod, LaurentQ::monomial(1, 2) - LaurentQ::monomial(1, -2));
        assert!((&a - &a).is_zero());
        assert_eq!(a.eval_one(), BigInt::from(2));
        assert_eq!(b.bar(), -b.clone());
        assert!(LaurentQ::q().in_q_zq());
        assert!(!LaurentQ::one().in_q_zq());
        assert!(LaurentQ::zero().in_q_zq());
        assert_eq!(LaurentQ::neg_q_pow(-1), LaurentQ::monomial(-1, -1));
    }

    #[test]
    fn display_and_parse() {
        let p = LaurentQ::monomial(-1, -1) + LaurentQ::from_int(2) + LaurentQ::monomial(-3, 2) + LaurentQ::q();
        assert_eq!(p.to_string(), "-q^-1 + 2 + q - 3q^2");
        assert_eq!(p.to_string().parse::<LaurentQ>().unwrap(), p);
        assert_eq!("0".parse::<LaurentQ>().unwrap(), LaurentQ::zero());
        assert_eq!("q^-2+q^-2".parse::<LaurentQ>().unwrap(), LaurentQ::monomial(2, -2));
        assert!("2x".parse::<LaurentQ>().is_err());
        assert!("q^".parse::<LaurentQ>().is_err());
    }
}
