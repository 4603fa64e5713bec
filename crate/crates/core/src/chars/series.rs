//! Truncated formal characters and the root-series expansions they are
//! assembled from.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weights::{root_height, QueerWeight};

/// The linear height Σ_s (n - s) v_s; on the root lattice this is the
/// number of simple roots in v counted with sign.
pub fn linear_height(v: &[i64]) -> i64 {
    let n = v.len() as i64;
    v.iter().enumerate().map(|(s, &x)| (n - 1 - s as i64) * x).sum()
}

/// e_p - e_q.
pub fn root(n: usize, p: usize, q: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[p] += 1;
    v[q] -= 1;
    v
}

/// Positive roots e_p - e_q, p < q, with p and q in the same block of `blocks`.
pub fn block_roots(n: usize, blocks: &[std::ops::Range<usize>]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for b in blocks {
        for p in b.clone() {
            for q in p + 1..b.end {
                out.push(root(n, p, q));
            }
        }
    }
    out
}

/// Roots e_p - e_q with p < k ≤ q.
pub fn cross_roots(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in 0..k {
        for q in k..n {
            out.push(root(n, p, q));
        }
    }
    out
}

/// 2^{⌈n/2⌉}.
pub fn clifford_factor(n: usize) -> BigInt {
    BigInt::one() << n.div_ceil(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// (1 + x)/(1 - x) = 1 + 2 Σ_{j≥1} x^j
    PlusOverMinus,
    /// 1/(1 - x)
    InvOneMinus,
    /// 1/(1 + x)
    InvOnePlus,
    /// 1 + x
    OnePlus,
}

/// A power series Σ c_β e^{-β} in the negatives of positive root-lattice
/// vectors β, truncated by the height of β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSeries {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl RootSeries {
    pub fn one(n: usize) -> Self {
        RootSeries {
            n,
            terms: BTreeMap::from([(vec![0; n], BigInt::one())]),
        }
    }

    /// Expansion of one factor in x = e^{-β}, β a positive root.
    pub fn factor(beta: &[i64], kind: Factor, budget: i64) -> Self {
        let n = beta.len();
        let h = linear_height(beta);
        debug_assert!(h > 0);
        let mut out = Self::one(n);
        let mut j = 1i64;
        while j * h <= budget {
            let c = match kind {
                Factor::PlusOverMinus => BigInt::from(2),
                Factor::InvOneMinus => BigInt::one(),
                Factor::InvOnePlus => BigInt::from(if j % 2 == 0 { 1 } else { -1 }),
                Factor::OnePlus if j == 1 => BigInt::one(),
                Factor::OnePlus => break,
            };
            out.terms.insert(beta.iter().map(|b| b * j).collect(), c);
            j += 1;
        }
        out
    }

    pub fn mul_trunc(&self, other: &RootSeries, budget: i64) -> RootSeries {
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        let other: Vec<(&Vec<i64>, &BigInt, i64)> = other
            .terms
            .iter()
            .map(|(b, c)| (b, c, linear_height(b)))
            .collect();
        for (x, cx) in &self.terms {
            let hx = linear_height(x);
            for &(y, cy, hy) in &other {
                if hx + hy > budget {
                    continue;
                }
                let key: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                *terms.entry(key).or_default() += cx * cy;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        RootSeries { n: self.n, terms }
    }

    /// ∏ over `roots` of the given factor, truncated at `budget`.
    pub fn product(n: usize, roots: &[Vec<i64>], kind: Factor, budget: i64) -> RootSeries {
        let mut out = Self::one(n);
        for beta in roots {
            out = out.mul_trunc(&Self::factor(beta, kind, budget), budget);
        }
        out
    }

    pub fn truncated(&self, budget: i64) -> RootSeries {
        RootSeries {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| linear_height(b) <= budget)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }
}

/// Permutations of 0..n preserving each block, with their signs; `perm[t]`
/// is the image of coordinate t.
pub fn block_permutations(n: usize, blocks: &[std::ops::Range<usize>]) -> Vec<(Vec<usize>, i32)> {
    let mut out = vec![((0..n).collect::<Vec<usize>>(), 1)];
    for b in blocks {
        let mut next = Vec::new();
        for (perm, sign) in &out {
            for (local, s) in permutations_with_sign(b.len()) {
                let mut p = perm.clone();
                for (t, &l) in local.iter().enumerate() {
                    p[b.start + t] = b.start + l;
                }
                next.push((p, sign * s));
            }
        }
        out = next;
    }
    out
}

fn permutations_with_sign(len: usize) -> Vec<(Vec<usize>, i32)> {
    if len == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations_with_sign(len - 1) {
        // insert `len - 1` at every position; moving it left past t entries
        // costs t transpositions
        for pos in (0..len).rev() {
            let mut q = p.clone();
            q.insert(pos, len - 1);
            let moves = (len - 1 - pos) as i32;
            out.push((q, if moves % 2 == 0 { s } else { -s }));
        }
    }
    out
}

/// w(v): coordinate t of v moves to position perm[t].
pub fn permute(perm: &[usize], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (t, &x) in v.iter().enumerate() {
        out[perm[t]] = x;
    }
    out
}

/// A formal character Σ c_e e^{ζ·1_{k|n-k} + e} truncated at height `depth`
/// below the reference weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    k: usize,
    reference: Vec<i64>,
    depth: u32,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl CharacterSeries {
    pub fn new(reference: &QueerWeight, depth: u32) -> Self {
        CharacterSeries {
            k: reference.k(),
            reference: reference.int_parts().to_vec(),
            depth,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.reference.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn reference(&self) -> &[i64] {
        &self.reference
    }

    /// Linear height of reference - e.
    pub fn height_of(&self, e: &[i64]) -> i64 {
        let diff: Vec<i64> = self.reference.iter().zip(e).map(|(r, x)| r - x).collect();
        linear_height(&diff)
    }

    /// Budget left for a series multiplied onto e^{base}.
    pub fn budget_at(&self, base: &[i64]) -> i64 {
        self.depth as i64 - self.height_of(base)
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() || self.height_of(&e) > self.depth as i64 {
            return;
        }
        match self.terms.entry(e) {
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

    /// Adds c · e^{base} · s.
    pub fn add_series(&mut self, base: &[i64], c: &BigInt, s: &RootSeries) {
        let budget = self.budget_at(base);
        if budget < 0 {
            return;
        }
        for (beta, d) in s.terms() {
            if linear_height(beta) > budget {
                continue;
            }
            let e: Vec<i64> = base.iter().zip(beta).map(|(x, b)| x - b).collect();
            self.add_term(e, c * d);
        }
    }

    pub fn add_scaled(&mut self, other: &CharacterSeries, c: &BigInt) {
        for (e, d) in &other.terms {
            self.add_term(e.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &BigInt) -> CharacterSeries {
        let mut out = self.empty_like();
        out.add_scaled(self, c);
        out
    }

    pub fn empty_like(&self) -> CharacterSeries {
        CharacterSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        }
    }

    /// Exact division of every coefficient by `d`.
    pub fn divide_exact(&self, d: &BigInt) -> Result<CharacterSeries> {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if !(c % d).is_zero() {
                return Err(Error::Invariant(format!(
                    "coefficient {c} at {e:?} is not divisible by {d}"
                )));
            }
            out.terms.insert(e.clone(), c / d);
        }
        Ok(out)
    }

    /// The same character truncated at a smaller depth.
    pub fn truncated(&self, depth: u32) -> CharacterSeries {
        let mut out = CharacterSeries {
            depth: depth.min(self.depth),
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every exponent lies below the reference in the root order.
    pub fn in_cone(&self) -> bool {
        self.terms.keys().all(|e| {
            let diff: Vec<i64> = self.reference.iter().zip(e).map(|(r, x)| r - x).collect();
            root_height(&diff).is_some()
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Invariance under swapping adjacent coordinates inside a block, on
    /// the pairs of exponents that both lie within the truncation.
    pub fn is_block_symmetric(&self) -> bool {
        let n = self.n();
        for e in self.terms.keys() {
            for t in 0..n.saturating_sub(1) {
                if t + 1 == self.k {
                    continue;
                }
                let mut s = e.clone();
                s.swap(t, t + 1);
                if self.height_of(&s) <= self.depth as i64 && self.coeff(&s) != self.terms[e] {
                    return false;
                }
            }
        }
        true
    }

    /// Terms ordered by height, then by exponent with larger entries first.
    pub fn sorted_terms(&self) -> Vec<(Vec<i64>, BigInt, i64)> {
        let mut out: Vec<(Vec<i64>, BigInt, i64)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone(), self.height_of(e)))
            .collect();
        out.sort_by(|a, b| a.2.cmp(&b.2).then_with(|| b.0.cmp(&a.0)));
        out
    }

    fn zeta_offset(&self) -> Vec<i64> {
        (0..self.n()).map(|t| if t < self.k { 1 } else { -1 }).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "k": self.k,
            "depth": self.depth,
            "offset": {"zeta": self.zeta_offset()},
            "reference": self.reference,
            "terms": self
                .sorted_terms()
                .into_iter()
                .map(|(e, c, _)| json!([e, c.to_string()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("height");
        for t in 1..=self.n() {
            let _ = write!(out, ",e{t}");
        }
        out.push_str(",coefficient\n");
        for (e, c, h) in self.sorted_terms() {
            let _ = write!(out, "{h}");
            for x in e {
                let _ = write!(out, ",{x}");
            }
            let _ = writeln!(out, ",{c}");
        }
        out
    }

    fn latex_exponent(&self, e: &[i64]) -> String {
        let mut parts = Vec::new();
        for (t, &x) in e.iter().enumerate() {
            let z = if t < self.k { "\\zeta" } else { "-\\zeta" };
            let coord = match x.cmp(&0) {
                std::cmp::Ordering::Equal => z.to_string(),
                std::cmp::Ordering::Greater => format!("({z}+{x})"),
                std::cmp::Ordering::Less => format!("({z}{x})"),
            };
            parts.push(format!("{coord}\\delta_{{{}}}", t + 1));
        }
        parts.join("+")
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (idx, (e, c, _)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            let _ = write!(out, "e^{{{}}}", self.latex_exponent(&e));
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(" + \\cdots");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights_and_roots() {
        assert_eq!(linear_height(&root(4, 0, 1)), 1);
        assert_eq!(linear_height(&root(4, 0, 3)), 3);
        assert_eq!(linear_height(&root(4, 1, 3)), 2);
        assert_eq!(cross_roots(4, 2).len(), 4);
        assert_eq!(block_roots(4, &[0..2, 2..4]).len(), 2);
    }

    #[test]
    fn factor_expansions() {
        let a = root(2, 0, 1);
        let s = RootSeries::factor(&a, Factor::PlusOverMinus, 3);
        let coeffs: Vec<String> = s.terms().map(|(_, c)| c.to_string()).collect();
        assert_eq!(s.terms().count(), 4);
        assert_eq!(coeffs.iter().filter(|c| *c == "2").count(), 3);
        // (1 + x)·1/(1 + x) = 1
        let p = RootSeries::factor(&a, Factor::OnePlus, 5).mul_trunc(&RootSeries::factor(&a, Factor::InvOnePlus, 5), 5);
        assert_eq!(p, RootSeries::one(2));
        // (1 - x)^{-1}(1 + x) = (1 + x)/(1 - x)
        let q = RootSeries::factor(&a, Factor::InvOneMinus, 5).mul_trunc(&RootSeries::factor(&a, Factor::OnePlus, 5), 5);
        assert_eq!(q, RootSeries::factor(&a, Factor::PlusOverMinus, 5));
    }

    #[test]
    fn permutation_signs() {
        let perms = block_permutations(4, &[0..2, 2..4]);
        assert_eq!(perms.len(), 4);
        let swap_first = perms.iter().find(|(p, _)| p == &vec![1, 0, 2, 3]).unwrap();
        assert_eq!(swap_first.1, -1);
        let both = perms.iter().find(|(p, _)| p == &vec![1, 0, 3, 2]).unwrap();
        assert_eq!(both.1, 1);
        let s3 = permutations_with_sign(3);
        assert_eq!(s3.iter().map(|(_, s)| s).sum::<i32>(), 0);
        let cyc = s3.iter().find(|(p, _)| p == &vec![1, 2, 0]).unwrap();
        assert_eq!(cyc.1, 1);
    }
}
