//! The tensor space T^{m|n} = V^{⊗m} ⊗ W^{⊗n}, its q-wedge quotient
//! E^{m|n}, the Hecke action and the action of the Chevalley generators.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentQ;
use crate::weights::{SuperIndex, WeightFunction};

/// Marker for vectors in the monomial basis {M_f} of T^{m|n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Tensor;

/// Marker for vectors in the monomial basis {K_f, f dominant} of E^{m|n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Wedge;

pub trait BasisKind: Clone + Copy + fmt::Debug + Default + PartialEq + Eq {
    const SYMBOL: &'static str;
    const DOMINANT_ONLY: bool;
}

impl BasisKind for Tensor {
    const SYMBOL: &'static str = "M";
    const DOMINANT_ONLY: bool = false;
}

impl BasisKind for Wedge {
    const SYMBOL: &'static str = "K";
    const DOMINANT_ONLY: bool = true;
}

/// A finite LaurentQ-combination of basis vectors labelled by weight functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector<B: BasisKind> {
    shape: SuperIndex,
    terms: BTreeMap<WeightFunction, LaurentQ>,
    _kind: PhantomData<B>,
}

pub type TensorVector = FockVector<Tensor>;
pub type WedgeVector = FockVector<Wedge>;

impl<B: BasisKind> FockVector<B> {
    pub fn zero(shape: SuperIndex) -> Self {
        FockVector {
            shape,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn basis(f: &WeightFunction) -> Result<Self> {
        let mut out = Self::zero(f.shape());
        out.add_term(f, &LaurentQ::one())?;
        Ok(out)
    }

    pub fn shape(&self) -> SuperIndex {
        self.shape
    }

    pub fn add_term(&mut self, f: &WeightFunction, c: &LaurentQ) -> Result<()> {
        if f.shape() != self.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.to_string(),
                found: f.shape().to_string(),
            });
        }
        if B::DOMINANT_ONLY && !f.is_dominant() {
            return Err(Error::NotDominant(f.to_string()));
        }
        self.add_unchecked(f, c);
        Ok(())
    }

    fn add_unchecked(&mut self, f: &WeightFunction, c: &LaurentQ) {
        if c.is_zero() {
            return;
        }
        if let Some(e) = self.terms.get_mut(f) {
            *e += c;
            if e.is_zero() {
                self.terms.remove(f);
            }
        } else {
            self.terms.insert(f.clone(), c.clone());
        }
    }

    pub fn coeff(&self, f: &WeightFunction) -> LaurentQ {
        self.terms.get(f).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightFunction, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &WeightFunction> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        let mut out = Self::zero(self.shape);
        for (f, d) in &self.terms {
            out.add_unchecked(f, &(d * c));
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentQ) {
        for (f, d) in &other.terms {
            self.add_unchecked(f, &(d * c));
        }
    }

    /// Coefficients specialized at q = 1, zeros dropped.
    pub fn eval_one(&self) -> BTreeMap<WeightFunction, BigInt> {
        self.terms
            .iter()
            .map(|(f, c)| (f.clone(), c.eval_one()))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect()
    }

    /// `[[label, coefficient], ..]` with coefficients as polynomials in q.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(f, c)| json!([f.to_string(), c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(shape: SuperIndex, value: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("bad vector encoding {value}"));
        let mut out = Self::zero(shape);
        for pair in value.as_array().ok_or_else(bad)? {
            let pair = pair.as_array().ok_or_else(bad)?;
            let (Some(l), Some(c)) = (pair.first().and_then(Value::as_str), pair.get(1).and_then(Value::as_str)) else {
                return Err(bad());
            };
            out.add_term(&l.parse()?, &LaurentQ::from_str(c)?)?;
        }
        Ok(out)
    }
}

impl<B: BasisKind> std::ops::Add for &FockVector<B> {
    type Output = FockVector<B>;
    fn add(self, rhs: &FockVector<B>) -> FockVector<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentQ::one());
        out
    }
}

impl<B: BasisKind> std::ops::Sub for &FockVector<B> {
    type Output = FockVector<B>;
    fn sub(self, rhs: &FockVector<B>) -> FockVector<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentQ::from_int(-1));
        out
    }
}

impl<B: BasisKind> fmt::Display for FockVector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (g, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}_{{{g}}}", B::SYMBOL)?;
            } else {
                write!(f, "({c}){}_{{{g}}}", B::SYMBOL)?;
            }
        }
        Ok(())
    }
}

/// Generators H_i of H_m ⊗ H_n acting on T^{m|n}: i ∈ {-m, .., -2} ∪ {1, .., n-1}.
pub fn hecke_generators(shape: SuperIndex) -> Vec<i64> {
    let m = shape.m as i64;
    let n = shape.n as i64;
    (-m..-1).chain(1..n).collect()
}

fn check_generator(shape: SuperIndex, i: i64) -> Result<()> {
    if hecke_generators(shape).contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidIndex {
            index: i,
            what: "Hecke generator",
            shape: shape.to_string(),
        })
    }
}

/// M_f · H_i as a list of (label, coefficient).
fn hecke_on_label(f: &WeightFunction, i: i64) -> Vec<(WeightFunction, LaurentQ)> {
    let a = f.value(i).unwrap();
    let b = f.value(i + 1).unwrap();
    if a == b {
        return vec![(f.clone(), LaurentQ::monomial(1, -1))];
    }
    let swapped = f.with_value(i, b).unwrap().with_value(i + 1, a).unwrap();
    // the classical order is opposite on the two blocks
    let ascending = if i < 0 { a < b } else { a > b };
    if ascending {
        vec![(swapped, LaurentQ::one())]
    } else {
        vec![(swapped, LaurentQ::one()), (f.clone(), -LaurentQ::q_minus_q_inv())]
    }
}

/// Right action v · H_i.
pub fn hecke_act(v: &TensorVector, i: i64) -> Result<TensorVector> {
    check_generator(v.shape, i)?;
    let mut out = TensorVector::zero(v.shape);
    for (f, c) in v.terms() {
        for (g, d) in hecke_on_label(f, i) {
            out.add_unchecked(&g, &(c * &d));
        }
    }
    Ok(out)
}

/// v · Σ_{σ ∈ S_p} (-q)^{ℓ(σ) - ℓ(w0)} H_σ for the symmetric group generated
/// by `gens` (consecutive Hecke generators of one block).
fn block_symmetrize(v: &TensorVector, gens: &[i64]) -> TensorVector {
    let p = gens.len() + 1;
    let top = (p * (p - 1) / 2) as i32;
    let mut acc = v.scale(&LaurentQ::neg_q_pow(-top));
    let identity: Vec<usize> = (0..p).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut layer = vec![(identity, v.clone())];
    for len in 1..=top {
        let mut next = Vec::new();
        for (perm, w) in &layer {
            for t in 0..gens.len() {
                if perm[t] > perm[t + 1] {
                    continue;
                }
                let mut longer = perm.clone();
                longer.swap(t, t + 1);
                if !seen.insert(longer.clone()) {
                    continue;
                }
                let wh = hecke_act(w, gens[t]).expect("block generator");
                acc.add_scaled(&wh, &LaurentQ::neg_q_pow(len - top));
                next.push((longer, wh));
            }
        }
        layer = next;
    }
    acc
}

/// v · H_0 with H_0 = H_0(m) H_0(n).
pub fn symmetrize(v: &TensorVector) -> TensorVector {
    let shape = v.shape;
    let neg: Vec<i64> = (-(shape.m as i64)..-1).collect();
    let pos: Vec<i64> = (1..shape.n as i64).collect();
    let w = block_symmetrize(v, &neg);
    block_symmetrize(&w, &pos)
}

/// Sorts a block by adjacent swaps, returning the number of swaps, or None
/// when a value repeats.
fn sort_block(vals: &mut [i64], decreasing: bool, steps: &mut usize) -> Option<u32> {
    let mut swaps = 0u32;
    let len = vals.len();
    for pass in 0..len {
        for t in 0..len.saturating_sub(1 + pass) {
            let (x, y) = (vals[t], vals[t + 1]);
            if x == y {
                return None;
            }
            if (x < y) == decreasing {
                vals.swap(t, t + 1);
                swaps += 1;
                *steps += 1;
            }
        }
    }
    if vals.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(swaps)
}

/// The map v ↦ v·H_0 written in the basis {K_f}: each M_g goes to
/// (-q^{-1})^{s} K_{sort(g)}, where s counts the adjacent swaps that sort g,
/// and to zero when a block repeats a value.
pub fn straighten(v: &TensorVector) -> Result<WedgeVector> {
    let shape = v.shape;
    let bound = 2 * (shape.m * shape.m + shape.n * shape.n) * v.len().max(1);
    let mut steps = 0usize;
    let mut out = WedgeVector::zero(shape);
    for (g, c) in v.terms() {
        let mut h = g.clone();
        let Some(s1) = sort_block(h.neg_mut(), true, &mut steps) else {
            continue;
        };
        let Some(s2) = sort_block(h.pos_mut(), false, &mut steps) else {
            continue;
        };
        if steps > bound {
            return Err(Error::StraightenBound(bound));
        }
        let s = (s1 + s2) as i32;
        out.add_unchecked(&h, &(c * &LaurentQ::neg_q_pow(-s)));
    }
    Ok(out)
}

/// Σ d_f M_f H_0 for w = Σ d_f K_f.
pub fn lift(w: &WedgeVector) -> TensorVector {
    let mut out = TensorVector::zero(w.shape);
    for (f, c) in w.terms() {
        let k = symmetrize(&TensorVector::basis(f).expect("shape"));
        out.add_scaled(&k, c);
    }
    out
}

/// Coordinates of v in the basis {K_f = M_f H_0}. The coefficient of K_f is
/// read off at the antidominant rearrangement of f, where K_f has leading
/// coefficient one; the reconstruction must reproduce v exactly.
pub fn wedge_from_tensor(v: &TensorVector) -> Result<WedgeVector> {
    let mut out = WedgeVector::zero(v.shape);
    for (g, c) in v.terms() {
        let f = g.reversed_blocks();
        if f.is_dominant() {
            out.add_unchecked(&f, c);
        }
    }
    let residual = &lift(&out) - v;
    if !residual.is_zero() {
        return Err(Error::NotInWedgeImage(residual.to_string()));
    }
    Ok(out)
}

/// Chevalley generators of U_q(gl_∞).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(i64),
    F(i64),
    K(i64),
    KInv(i64),
}

impl Generator {
    /// The generator with the roles of E and F exchanged.
    pub fn opposite(self) -> Generator {
        match self {
            Generator::E(a) => Generator::F(a),
            Generator::F(a) => Generator::E(a),
            Generator::K(a) => Generator::KInv(a),
            Generator::KInv(a) => Generator::K(a),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(a) => write!(f, "E_{a}"),
            Generator::F(a) => write!(f, "F_{a}"),
            Generator::K(a) => write!(f, "K_{a}"),
            Generator::KInv(a) => write!(f, "K_{a}^-1"),
        }
    }
}

/// Exponent of q by which K_a K_{a+1}^{-1} acts on the factor at index `i`
/// carrying the value `b`.
fn k_ratio_exp(i: i64, b: i64, a: i64) -> i32 {
    let e = (b == a) as i32 - (b == a + 1) as i32;
    if i < 0 {
        e
    } else {
        -e
    }
}

/// The image of M_f under a generator, through the iterated coproduct
/// Δ(F_a) = F_a ⊗ 1 + K_{a,a+1} ⊗ F_a and Δ(E_a) = 1 ⊗ E_a + E_a ⊗ K_{a+1,a}.
fn chevalley_on_label(gen: Generator, f: &WeightFunction) -> Vec<(WeightFunction, LaurentQ)> {
    let idx: Vec<i64> = f.shape().indices().collect();
    let val = |i: i64| f.value(i).unwrap();
    match gen {
        Generator::K(a) | Generator::KInv(a) => {
            let e: i32 = idx
                .iter()
                .map(|&i| {
                    let hit = (val(i) == a) as i32;
                    if i < 0 {
                        hit
                    } else {
                        -hit
                    }
                })
                .sum();
            let e = if matches!(gen, Generator::K(_)) { e } else { -e };
            vec![(f.clone(), LaurentQ::monomial(1, e))]
        }
        Generator::F(a) => {
            let mut out = Vec::new();
            let mut prefix = 0i32;
            for &i in &idx {
                let b = val(i);
                let target = if i < 0 { (b == a).then_some(a + 1) } else { (b == a + 1).then_some(a) };
                if let Some(t) = target {
                    out.push((f.with_value(i, t).unwrap(), LaurentQ::monomial(1, prefix)));
                }
                prefix += k_ratio_exp(i, b, a);
            }
            out
        }
        Generator::E(a) => {
            let mut out = Vec::new();
            let mut suffix = 0i32;
            for &i in idx.iter().rev() {
                let b = val(i);
                let target = if i < 0 { (b == a + 1).then_some(a) } else { (b == a).then_some(a + 1) };
                if let Some(t) = target {
                    out.push((f.with_value(i, t).unwrap(), LaurentQ::monomial(1, suffix)));
                }
                suffix -= k_ratio_exp(i, b, a);
            }
            out
        }
    }
}

pub fn chevalley_tensor(gen: Generator, v: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(v.shape);
    for (f, c) in v.terms() {
        for (g, d) in chevalley_on_label(gen, f) {
            out.add_unchecked(&g, &(c * &d));
        }
    }
    out
}

/// Action on E^{m|n}, using X(M_f H_0) = (X M_f) H_0 and straightening.
pub fn chevalley_wedge(gen: Generator, w: &WedgeVector) -> Result<WedgeVector> {
    let mut out = WedgeVector::zero(w.shape);
    for (f, c) in w.terms() {
        let image = TensorVector {
            shape: w.shape,
            terms: chevalley_on_label(gen, f).into_iter().collect(),
            _kind: PhantomData,
        };
        out.add_scaled(&straighten(&image)?, c);
    }
    Ok(out)
}

/// The defining route: lift to T^{m|n}, act, and read off wedge coordinates.
pub fn chevalley_wedge_via_lift(gen: Generator, w: &WedgeVector) -> Result<WedgeVector> {
    wedge_from_tensor(&chevalley_tensor(gen, &lift(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wf(s: &str) -> WeightFunction {
        s.parse().unwrap()
    }

    fn m(s: &str) -> TensorVector {
        TensorVector::basis(&wf(s)).unwrap()
    }

    fn poly(s: &str) -> LaurentQ {
        s.parse().unwrap()
    }

    #[test]
    fn hecke_three_cases() {
        assert_eq!(hecke_act(&m("1,2|"), -2).unwrap(), m("2,1|"));
        assert_eq!(hecke_act(&m("4,4|"), -2).unwrap(), m("4,4|").scale(&poly("q^-1")));
        let mut want = m("1,2|");
        want.add_term(&wf("2,1|"), &poly("-q + q^-1")).unwrap();
        assert_eq!(hecke_act(&m("2,1|"), -2).unwrap(), want);
        assert!(hecke_act(&m("2,1|"), -1).is_err());
        assert!(hecke_act(&m("2,1|3,4"), 2).is_err());
        assert_eq!(hecke_act(&m("|3,4"), 1).unwrap().coeff(&wf("|3,4")), poly("-q + q^-1"));
    }

    #[test]
    fn symmetrizer_in_rank_two() {
        assert_eq!(symmetrize(&m("5|6")), m("5|6"));
        assert!(symmetrize(&m("4,4|")).is_zero());
        let mut want = m("1,2|");
        want.add_term(&wf("2,1|"), &poly("-q")).unwrap();
        assert_eq!(symmetrize(&m("2,1|")), want);
    }

    #[test]
    fn wedge_coordinates() {
        let k = symmetrize(&m("3,1|0,2"));
        let w = wedge_from_tensor(&k).unwrap();
        assert_eq!(w, WedgeVector::basis(&wf("3,1|0,2")).unwrap());
        assert!(wedge_from_tensor(&symmetrize(&m("4,4|"))).unwrap().is_zero());
        assert!(matches!(wedge_from_tensor(&m("2,1|")), Err(Error::NotInWedgeImage(_))));
        assert_eq!(straighten(&m("1,2|")).unwrap().coeff(&wf("2,1|")), poly("-q^-1"));
    }

    #[test]
    fn chevalley_rank_one_one() {
        let c = 3;
        let v = m(&format!("{}|{}", c - 1, c));
        let out = chevalley_tensor(Generator::F(c - 1), &v);
        let mut want = m(&format!("{c}|{c}"));
        want.add_term(&wf(&format!("{}|{}", c - 1, c - 1)), &poly("q")).unwrap();
        assert_eq!(out, want);
        assert_eq!(chevalley_tensor(Generator::E(4), &m("|4")), m("|5"));
        assert_eq!(
            chevalley_tensor(Generator::K(2), &m("2,1|2,2")),
            m("2,1|2,2").scale(&poly("q^-1"))
        );
        let w = WedgeVector::basis(&wf("2|3")).unwrap();
        let got = chevalley_wedge(Generator::F(2), &w).unwrap();
        assert_eq!(got, chevalley_wedge_via_lift(Generator::F(2), &w).unwrap());
        assert_eq!(got.coeff(&wf("3|3")), LaurentQ::one());
        assert_eq!(got.coeff(&wf("2|2")), LaurentQ::q());
    }

    #[test]
    fn json_round_trip() {
        let mut v = m("2,1|0");
        v.add_term(&wf("1,2|0"), &poly("q - 2q^3")).unwrap();
        let back = TensorVector::from_json(v.shape(), &v.to_json()).unwrap();
        assert_eq!(back, v);
    }
}
