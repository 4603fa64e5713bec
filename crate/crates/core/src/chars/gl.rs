//! Finite characters of gl(k|l): hook partitions, the Sergeev-Pragacz
//! formula and Kac module characters, in variables x_1..x_k, y_1..y_l.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::series::{block_permutations, permute};
use crate::error::{Error, Result};
use crate::weights::GLWeight;

/// A Laurent polynomial in x_1..x_k, y_1..y_l with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    k: usize,
    l: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(k: usize, l: usize) -> Self {
        LaurentPoly {
            k,
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize, l: usize) -> Self {
        Self::monomial(k, l, vec![0; k + l], BigInt::one())
    }

    pub fn monomial(k: usize, l: usize, exps: Vec<i64>, c: BigInt) -> Self {
        let mut out = Self::zero(k, l);
        out.add_term(exps, c);
        out
    }

    /// The variable at position `t` (x's first, then y's).
    pub fn var(k: usize, l: usize, t: usize) -> Self {
        let mut e = vec![0; k + l];
        e[t] = 1;
        Self::monomial(k, l, e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.k + self.l
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero(self.k, self.l);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    /// Multiplication by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        LaurentPoly {
            k: self.k,
            l: self.l,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Value at x = y = 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Σ_{w ∈ S_k × S_l} sign(w) w(p).
    pub fn antisymmetrize(&self) -> LaurentPoly {
        let n = self.nvars();
        let mut out = Self::zero(self.k, self.l);
        for (perm, sign) in block_permutations(n, &[0..self.k, self.k..n]) {
            for (e, c) in &self.terms {
                out.add_term(permute(&perm, e), if sign > 0 { c.clone() } else { -c });
            }
        }
        out
    }

    /// Exact quotient by (v_i - v_j); fails on a nonzero remainder.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<LaurentPoly> {
        let mut rest = self.clone();
        let mut quotient = Self::zero(self.k, self.l);
        let floor = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        loop {
            // a term of highest degree in v_i
            let Some((lead, c)) = rest
                .terms
                .iter()
                .max_by(|a, b| a.0[i].cmp(&b.0[i]).then_with(|| b.0.cmp(a.0)))
                .map(|(e, c)| (e.clone(), c.clone()))
            else {
                break;
            };
            if lead[i] <= floor {
                return Err(Error::Invariant(format!(
                    "nonzero remainder dividing by (v{} - v{})",
                    i + 1,
                    j + 1
                )));
            }
            let mut t = lead.clone();
            t[i] -= 1;
            let mut u = t.clone();
            u[j] += 1;
            rest.add_term(lead, -&c);
            rest.add_term(u, c.clone());
            quotient.add_term(t, c);
        }
        Ok(quotient)
    }

    /// Exact quotient by Δ(x)Δ(y) = ∏_{i<j}(x_i - x_j) ∏_{p<q}(y_p - y_q).
    pub fn divide_by_vandermonde(&self) -> Result<LaurentPoly> {
        let mut out = self.clone();
        for (lo, hi) in [(0, self.k), (self.k, self.nvars())] {
            for i in lo..hi {
                for j in i + 1..hi {
                    out = out.divide_by_difference(i, j)?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(t, &x)| {
                    let name = if t < self.k {
                        format!("x{}", t + 1)
                    } else {
                        format!("y{}", t - self.k + 1)
                    };
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The regions of a (k|l)-hook partition relative to the k × l box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookRegions {
    pub partition: Vec<usize>,
    pub k: usize,
    pub l: usize,
    /// Cells (row, column) of the partition inside the box, 0-based.
    pub inside: Vec<(usize, usize)>,
    /// Cells of the box outside the partition.
    pub complement: Vec<(usize, usize)>,
    /// r_i: cells of row i right of column l, for the first k rows.
    pub right: Vec<usize>,
    /// The conjugate of the rows below row k.
    pub below: Vec<usize>,
}

pub fn conjugate(p: &[usize]) -> Vec<usize> {
    let len = p.first().copied().unwrap_or(0);
    (0..len).map(|j| p.iter().filter(|&&x| x > j).count()).collect()
}

pub fn hook_regions(nu: &[usize], k: usize, l: usize) -> Result<HookRegions> {
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotHook(format!("{nu:?}")));
    }
    if nu.get(k).is_some_and(|&x| x > l) {
        return Err(Error::NotHook(format!("{nu:?}")));
    }
    let mut inside = Vec::new();
    let mut complement = Vec::new();
    for i in 0..k {
        let row = nu.get(i).copied().unwrap_or(0);
        for j in 0..l {
            if j < row {
                inside.push((i, j));
            } else {
                complement.push((i, j));
            }
        }
    }
    let right = (0..k)
        .map(|i| nu.get(i).copied().unwrap_or(0).saturating_sub(l))
        .collect();
    let mut below = conjugate(nu.get(k..).unwrap_or(&[]));
    below.resize(l, 0);
    Ok(HookRegions {
        partition: nu.iter().copied().filter(|&x| x > 0).collect(),
        k,
        l,
        inside,
        complement,
        right,
        below,
    })
}

fn rho_monomial(k: usize, l: usize) -> Vec<i64> {
    (0..k)
        .map(|i| (k - 1 - i) as i64)
        .chain((0..l).map(|j| (l - 1 - j) as i64))
        .collect()
}

/// Σ_w sign(w) w(x^e x^{ρ_x} y^{ρ_y}) / (Δ(x)Δ(y)), the Weyl character of
/// gl(k) ⊕ gl(l) with highest weight e.
pub fn weyl_character(k: usize, l: usize, e: &[i64]) -> Result<LaurentPoly> {
    let rho = rho_monomial(k, l);
    let top: Vec<i64> = e.iter().zip(&rho).map(|(a, b)| a + b).collect();
    LaurentPoly::monomial(k, l, top, BigInt::one())
        .antisymmetrize()
        .divide_by_vandermonde()
}

/// The Sergeev-Pragacz character of the irreducible polynomial gl(k|l)
/// module attached to the hook partition ν.
pub fn sergeev_pragacz_gl(nu: &[usize], k: usize, l: usize) -> Result<LaurentPoly> {
    let regions = hook_regions(nu, k, l)?;
    let mut g = LaurentPoly::one(k, l);
    for &(i, j) in &regions.inside {
        let factor = LaurentPoly::var(k, l, i).add(&LaurentPoly::var(k, l, k + j));
        g = g.mul(&factor);
    }
    let rho = rho_monomial(k, l);
    let shift: Vec<i64> = regions
        .right
        .iter()
        .chain(&regions.below)
        .zip(&rho)
        .map(|(&a, &r)| a as i64 + r)
        .collect();
    g.shift(&shift).antisymmetrize().divide_by_vandermonde()
}

/// ch K′(ν) = ∏_{i,j}(1 + y_j/x_i) · s_{ν_x}(x) · s_{ν_y}(y).
pub fn kac_module_char_gl(nu: &GLWeight) -> Result<LaurentPoly> {
    let (k, l) = (nu.k(), nu.n() - nu.k());
    let e = nu
        .int_coords()
        .ok_or_else(|| Error::Precondition(format!("{nu} is not integral")))?;
    let dominant = e[..k].windows(2).all(|w| w[0] >= w[1]) && e[k..].windows(2).all(|w| w[0] >= w[1]);
    if !dominant {
        return Err(Error::NotDominant(nu.to_string()));
    }
    let mut out = weyl_character(k, l, &e)?;
    for i in 0..k {
        for j in 0..l {
            let mut ratio = vec![0; k + l];
            ratio[i] = -1;
            ratio[k + j] = 1;
            let factor = LaurentPoly::one(k, l).add(&LaurentPoly::monomial(k, l, ratio, BigInt::one()));
            out = out.mul(&factor);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize, l: usize, t: usize) -> LaurentPoly {
        LaurentPoly::var(k, l, t)
    }

    #[test]
    fn standard_module() {
        let sp = sergeev_pragacz_gl(&[1], 1, 1).unwrap();
        assert_eq!(sp, x(1, 1, 0).add(&x(1, 1, 1)));
        assert_eq!(sp.to_string(), "x1 + y1");
        assert_eq!(sergeev_pragacz_gl(&[], 2, 1).unwrap(), LaurentPoly::one(2, 1));
    }

    #[test]
    fn full_box() {
        let (k, l) = (2, 2);
        let mut want = LaurentPoly::one(k, l);
        for i in 0..k {
            for j in 0..l {
                want = want.mul(&x(k, l, i).add(&x(k, l, k + j)));
            }
        }
        assert_eq!(sergeev_pragacz_gl(&[2, 2], k, l).unwrap(), want);
    }

    #[test]
    fn regions() {
        let r = hook_regions(&[3, 1, 1], 1, 2).unwrap();
        assert_eq!(r.inside, vec![(0, 0), (0, 1)]);
        assert!(r.complement.is_empty());
        assert_eq!(r.right, vec![1]);
        assert_eq!(r.below, vec![2, 0]);
        let e = hook_regions(&[], 1, 1).unwrap();
        assert_eq!(e.complement, vec![(0, 0)]);
        assert!(hook_regions(&[1, 3], 1, 1).is_err());
        assert!(hook_regions(&[2, 2], 1, 1).is_err());
    }

    #[test]
    fn vandermonde_division() {
        let p = x(2, 0, 0).sub(&x(2, 0, 1)).mul(&x(2, 0, 0));
        assert_eq!(p.divide_by_difference(0, 1).unwrap(), x(2, 0, 0));
        assert!(x(2, 0, 0).divide_by_difference(0, 1).is_err());
        // Schur s_(1)(x1, x2) = x1 + x2
        let s = weyl_character(2, 0, &[1, 0]).unwrap();
        assert_eq!(s, x(2, 0, 0).add(&x(2, 0, 1)));
    }

    #[test]
    fn kac_module() {
        let nu = GLWeight::from_ints(1, &[1, 0]).unwrap();
        assert_eq!(kac_module_char_gl(&nu).unwrap(), x(1, 1, 0).add(&x(1, 1, 1)));
        let nu = GLWeight::from_ints(2, &[1, 0, 0, 0]).unwrap();
        let k = kac_module_char_gl(&nu).unwrap();
        assert_eq!(k.eval_ones(), BigInt::from(16 * 2));
        assert!(kac_module_char_gl(&GLWeight::new(1, vec![crate::weights::HalfInt::from_halves(1), crate::weights::HalfInt::from_int(0)]).unwrap()).is_err());
    }
}
