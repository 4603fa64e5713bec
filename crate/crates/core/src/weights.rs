//! Weight lattices, the super Bruhat order and the dictionaries between
//! queer weights, Fock-space labels and general linear weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// The index set I(m|n) = {-m, .., -1} ∪ {1, .., n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperIndex {
    pub m: usize,
    pub n: usize,
}

impl SuperIndex {
    pub fn new(m: usize, n: usize) -> Self {
        SuperIndex { m, n }
    }

    pub fn contains(&self, i: i64) -> bool {
        (i < 0 && -i <= self.m as i64) || (i > 0 && i <= self.n as i64)
    }

    /// Indices in increasing order.
    pub fn indices(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        (-(self.m as i64)..0).chain(1..=self.n as i64)
    }

    pub fn first(&self) -> Option<i64> {
        self.indices().next()
    }

    pub fn len(&self) -> usize {
        self.m + self.n
    }

    pub fn is_empty(&self) -> bool {
        self.m + self.n == 0
    }
}

impl fmt::Display for SuperIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.m, self.n)
    }
}

/// A sparse element Σ c_a ε_a of the free abelian group on {ε_a : a ∈ Z}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EpsWeight {
    coeffs: BTreeMap<i64, i64>,
}

impl EpsWeight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(a).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&a);
        }
    }

    pub fn coeff(&self, a: i64) -> i64 {
        self.coeffs.get(&a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&a, &c)| (a, c))
    }

    /// `self ≤ other`: the difference other - self lies in Σ Z≥0 (ε_i - ε_{i+1}).
    pub fn leq(&self, other: &EpsWeight) -> bool {
        (other - self).is_nonneg_root_combination()
    }

    fn is_nonneg_root_combination(&self) -> bool {
        let mut partial = 0i64;
        for (_, c) in self.terms() {
            partial += c;
            if partial < 0 {
                return false;
            }
        }
        partial == 0
    }
}

impl Sub for &EpsWeight {
    type Output = EpsWeight;
    fn sub(self, rhs: &EpsWeight) -> EpsWeight {
        let mut out = self.clone();
        for (a, c) in rhs.terms() {
            out.add_term(a, -c);
        }
        out
    }
}

impl Add for &EpsWeight {
    type Output = EpsWeight;
    fn add(self, rhs: &EpsWeight) -> EpsWeight {
        let mut out = self.clone();
        for (a, c) in rhs.terms() {
            out.add_term(a, c);
        }
        out
    }
}

impl fmt::Display for EpsWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (a, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "ε_{a}")?;
        }
        Ok(())
    }
}

/// An element f of Z^{m|n}, stored as its values on the negative and the
/// positive half of I(m|n). The derived order compares the value vector read
/// from index -m upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightFunction {
    neg: Vec<i64>,
    pos: Vec<i64>,
}

impl WeightFunction {
    /// `neg` lists f(-m), .., f(-1); `pos` lists f(1), .., f(n).
    pub fn new(neg: Vec<i64>, pos: Vec<i64>) -> Self {
        WeightFunction { neg, pos }
    }

    pub fn shape(&self) -> SuperIndex {
        SuperIndex::new(self.neg.len(), self.pos.len())
    }

    pub fn neg(&self) -> &[i64] {
        &self.neg
    }

    pub fn pos(&self) -> &[i64] {
        &self.pos
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.neg.iter().chain(self.pos.iter()).copied()
    }

    fn slot(&self, i: i64) -> Result<(bool, usize)> {
        let shape = self.shape();
        if !shape.contains(i) {
            return Err(Error::InvalidIndex {
                index: i,
                what: "index",
                shape: shape.to_string(),
            });
        }
        Ok(if i < 0 {
            (true, (i + shape.m as i64) as usize)
        } else {
            (false, (i - 1) as usize)
        })
    }

    pub fn value(&self, i: i64) -> Result<i64> {
        let (neg, s) = self.slot(i)?;
        Ok(if neg { self.neg[s] } else { self.pos[s] })
    }

    pub fn with_value(&self, i: i64, v: i64) -> Result<WeightFunction> {
        let (neg, s) = self.slot(i)?;
        let mut out = self.clone();
        if neg {
            out.neg[s] = v;
        } else {
            out.pos[s] = v;
        }
        Ok(out)
    }

    /// Values strictly decrease on the negative block and strictly increase
    /// on the positive block.
    pub fn is_dominant(&self) -> bool {
        self.neg.windows(2).all(|w| w[0] > w[1]) && self.pos.windows(2).all(|w| w[0] < w[1])
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.to_string()))
        }
    }

    /// Adds `c` to every value.
    pub fn shifted(&self, c: i64) -> WeightFunction {
        WeightFunction {
            neg: self.neg.iter().map(|v| v + c).collect(),
            pos: self.pos.iter().map(|v| v + c).collect(),
        }
    }

    /// Reverses each block and negates: the label of -w0⁺λ.
    pub fn twisted(&self) -> WeightFunction {
        WeightFunction {
            neg: self.neg.iter().rev().map(|v| -v).collect(),
            pos: self.pos.iter().rev().map(|v| -v).collect(),
        }
    }

    /// Each block reversed; the antidominant rearrangement of a dominant label.
    pub fn reversed_blocks(&self) -> WeightFunction {
        WeightFunction {
            neg: self.neg.iter().rev().copied().collect(),
            pos: self.pos.iter().rev().copied().collect(),
        }
    }

    pub fn min_value(&self) -> Option<i64> {
        self.values().min()
    }

    pub fn max_value(&self) -> Option<i64> {
        self.values().max()
    }

    pub(crate) fn neg_mut(&mut self) -> &mut Vec<i64> {
        &mut self.neg
    }

    pub(crate) fn pos_mut(&mut self) -> &mut Vec<i64> {
        &mut self.pos
    }
}

fn join(vals: &[i64]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", join(&self.neg), join(&self.pos))
    }
}

impl FromStr for WeightFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('|');
        let (Some(l), Some(r), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "expected a label of the form v1,..,vm|w1,..,wn, got {s:?}"
            )));
        };
        Ok(WeightFunction::new(parse_list(l)?, parse_list(r)?))
    }
}

/// wt_r(f) = Σ_{i ≥ r} -sgn(i) ε_{f(i)}.
pub fn wt_eps(f: &WeightFunction, r: i64) -> Result<EpsWeight> {
    let shape = f.shape();
    if !shape.contains(r) {
        return Err(Error::InvalidIndex {
            index: r,
            what: "index",
            shape: shape.to_string(),
        });
    }
    let mut out = EpsWeight::zero();
    for i in shape.indices().filter(|&i| i >= r) {
        out.add_term(f.value(i)?, if i < 0 { 1 } else { -1 });
    }
    Ok(out)
}

fn check_same_shape(f: &WeightFunction, g: &WeightFunction) -> Result<()> {
    if f.shape() != g.shape() {
        return Err(Error::ShapeMismatch {
            expected: f.shape().to_string(),
            found: g.shape().to_string(),
        });
    }
    Ok(())
}

/// The super Bruhat order f ⪯ g.
pub fn super_bruhat_leq(f: &WeightFunction, g: &WeightFunction) -> Result<bool> {
    check_same_shape(f, g)?;
    let shape = f.shape();
    // diff = wt_r(g) - wt_r(f), accumulated from the top index downward
    let mut diff = EpsWeight::zero();
    for i in shape.indices().rev() {
        let s = if i < 0 { 1 } else { -1 };
        diff.add_term(g.value(i)?, s);
        diff.add_term(f.value(i)?, -s);
        if !diff.is_nonneg_root_combination() {
            return Ok(false);
        }
    }
    Ok(diff.is_zero())
}

/// Maximum number of disjoint pairs (i, j), i < 0 < j, with f(i) = f(j).
pub fn atypicality(f: &WeightFunction) -> usize {
    let mut counts: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for &v in f.neg() {
        counts.entry(v).or_default().0 += 1;
    }
    for &v in f.pos() {
        counts.entry(v).or_default().1 += 1;
    }
    counts.values().map(|&(a, b)| a.min(b)).sum()
}

/// A weight of Λ_{k,ζ}: λ_i = ζ + a_i for i ≤ k and λ_j = -ζ + a_j for j > k.
/// Only the integer parts a are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QueerWeight {
    k: usize,
    a: Vec<i64>,
}

impl QueerWeight {
    pub fn new(k: usize, a: Vec<i64>) -> Result<Self> {
        if k > a.len() {
            return Err(Error::Precondition(format!(
                "split point k={k} exceeds rank {}",
                a.len()
            )));
        }
        Ok(QueerWeight { k, a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn int_parts(&self) -> &[i64] {
        &self.a
    }

    pub fn is_dominant(&self) -> bool {
        let (x, y) = self.a.split_at(self.k);
        x.windows(2).all(|w| w[0] > w[1]) && y.windows(2).all(|w| w[0] > w[1])
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.to_string()))
        }
    }

    pub fn atypicality(&self) -> usize {
        atypicality(&lambda_to_f(self))
    }

    /// Adds `c` to every coordinate of the first block and subtracts it on
    /// the second, i.e. translates by c·1_{k|n-k}.
    pub fn shifted(&self, c: i64) -> QueerWeight {
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(t, v)| if t < self.k { v + c } else { v - c })
            .collect();
        QueerWeight { k: self.k, a }
    }
}

impl fmt::Display for QueerWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};zeta;{}", self.k, join(&self.a))
    }
}

impl FromStr for QueerWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected k=K;zeta;a1,..,an, got {s:?}"));
        let mut parts = s.split(';');
        let (Some(kp), Some(z), Some(ap), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(bad());
        };
        let k = kp
            .trim()
            .strip_prefix("k=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(bad)?;
        if z.trim() != "zeta" {
            return Err(bad());
        }
        QueerWeight::new(k, parse_list(ap)?).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// f_λ: f(i) = a_{i+k+1} for i < 0 and f(j) = -a_{k+j} for j > 0.
pub fn lambda_to_f(lambda: &QueerWeight) -> WeightFunction {
    let (x, y) = lambda.a.split_at(lambda.k);
    WeightFunction::new(x.to_vec(), y.iter().map(|v| -v).collect())
}

/// Inverse of [`lambda_to_f`]; the split point is the size of the negative block.
pub fn f_to_lambda(f: &WeightFunction) -> QueerWeight {
    let a = f
        .neg()
        .iter()
        .copied()
        .chain(f.pos().iter().map(|v| -v))
        .collect();
    QueerWeight { k: f.shape().m, a }
}

/// -w0⁺λ, a weight for the parameter -ζ.
pub fn twist_lambda(lambda: &QueerWeight) -> QueerWeight {
    f_to_lambda(&lambda_to_f(lambda).twisted())
}

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn from_halves(h: i64) -> Self {
        HalfInt(h)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// A weight of gl(k|n-k) in the δ-coordinates, with half-integral entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GLWeight {
    k: usize,
    coords: Vec<HalfInt>,
}

impl GLWeight {
    pub fn new(k: usize, coords: Vec<HalfInt>) -> Result<Self> {
        if k > coords.len() {
            return Err(Error::Precondition(format!(
                "split point k={k} exceeds rank {}",
                coords.len()
            )));
        }
        Ok(GLWeight { k, coords })
    }

    pub fn from_ints(k: usize, coords: &[i64]) -> Result<Self> {
        Self::new(k, coords.iter().map(|&v| HalfInt::from_int(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.coords
    }

    pub fn int_coords(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.to_int()).collect()
    }

    pub fn plus(&self, other: &[HalfInt]) -> GLWeight {
        GLWeight {
            k: self.k,
            coords: self.coords.iter().zip(other).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn minus(&self, other: &[HalfInt]) -> GLWeight {
        GLWeight {
            k: self.k,
            coords: self.coords.iter().zip(other).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &[HalfInt]| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let (x, y) = self.coords.split_at(self.k);
        write!(f, "({}|{})", show(x), show(y))
    }
}

/// ρ = Σ_{i≤k} (k-i+1-(n+1)/2) δ_i + Σ_{j>k} (k-j+(n+1)/2) δ_j.
pub fn rho(n: usize, k: usize) -> Vec<HalfInt> {
    let (n2, k2) = (n as i64 * 2, k as i64 * 2);
    (1..=n as i64)
        .map(|t| {
            let t2 = 2 * t;
            if t <= k as i64 {
                HalfInt(k2 - t2 + 2 - (n2 + 2) / 2)
            } else {
                HalfInt(k2 - t2 + (n2 + 2) / 2)
            }
        })
        .collect()
}

/// λ′, determined by λ = λ′ + ρ + ζ·1_{k|n-k}.
pub fn lambda_prime(lambda: &QueerWeight) -> GLWeight {
    let r = rho(lambda.n(), lambda.k());
    let coords = lambda
        .a
        .iter()
        .zip(&r)
        .map(|(&a, &p)| HalfInt::from_int(a) - p)
        .collect();
    GLWeight { k: lambda.k, coords }
}

/// Inverse of [`lambda_prime`]; requires λ′ + ρ to be integral.
pub fn lambda_from_prime(nu: &GLWeight) -> Result<QueerWeight> {
    let shifted = nu.plus(&rho(nu.n(), nu.k()));
    let a = shifted
        .int_coords()
        .ok_or_else(|| Error::Precondition(format!("{nu} + rho is not integral")))?;
    QueerWeight::new(nu.k, a)
}

/// wt(λ) = Σ_{i≤k} ε_{a_i} - Σ_{j>k} ε_{-a_j}.
pub fn block_wt(lambda: &QueerWeight) -> EpsWeight {
    let mut out = EpsWeight::zero();
    for (t, &v) in lambda.a.iter().enumerate() {
        if t < lambda.k {
            out.add_term(v, 1);
        } else {
            out.add_term(-v, -1);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Dominant μ with λ →_a μ (`Up`) or μ →_a λ (`Down`).
pub fn arrow_a(lambda: &QueerWeight, a: i64, direction: Direction) -> Vec<QueerWeight> {
    let k = lambda.k;
    let mut out = Vec::new();
    for (t, &v) in lambda.a.iter().enumerate() {
        let target = match (direction, t < k) {
            (Direction::Up, true) => (v == a).then_some(a + 1),
            (Direction::Up, false) => (v == -a - 1).then_some(-a),
            (Direction::Down, true) => (v == a + 1).then_some(a),
            (Direction::Down, false) => (v == -a).then_some(-a - 1),
        };
        if let Some(w) = target {
            let mut mu = lambda.clone();
            mu.a[t] = w;
            if mu.is_dominant() {
                out.push(mu);
            }
        }
    }
    out
}

/// If `diff` is a Z≥0-combination Σ c_t (δ_t - δ_{t+1}) of simple roots,
/// returns the height Σ c_t.
pub fn root_height(diff: &[i64]) -> Option<u64> {
    let mut partial = 0i64;
    let mut height = 0u64;
    for &d in diff {
        partial += d;
        if partial < 0 {
            return None;
        }
        height += partial as u64;
    }
    (partial == 0).then_some(height)
}

/// The usual root order: λ ≤ μ iff μ - λ ∈ Σ Z≥0 (δ_i - δ_{i+1}).
pub fn root_leq(lambda: &QueerWeight, mu: &QueerWeight) -> bool {
    lambda.k == mu.k
        && lambda.n() == mu.n()
        && root_height(
            &mu.a
                .iter()
                .zip(&lambda.a)
                .map(|(x, y)| x - y)
                .collect::<Vec<_>>(),
        )
        .is_some()
}

/// Orders labels by a linear extension of ⪯, smallest first, breaking ties
/// by the value vector.
pub fn linear_extension(items: Vec<WeightFunction>) -> Result<Vec<WeightFunction>> {
    let items: Vec<WeightFunction> = items.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let len = items.len();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut indegree = vec![0usize; len];
    for x in 0..len {
        for y in 0..len {
            if x != y && super_bruhat_leq(&items[x], &items[y])? {
                above[x].push(y);
                indegree[y] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..len).filter(|&x| indegree[x] == 0).collect();
    let mut out = Vec::with_capacity(len);
    while let Some(x) = ready.pop_first() {
        out.push(x);
        for &y in &above[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.insert(y);
            }
        }
    }
    if out.len() != len {
        return Err(Error::Invariant("super Bruhat order has a cycle".into()));
    }
    let mut slots: Vec<Option<WeightFunction>> = items.into_iter().map(Some).collect();
    Ok(out.into_iter().map(|x| slots[x].take().unwrap()).collect())
}

/// Strictly decreasing sequences of length `len` with entries in [lo, hi].
fn decreasing_sequences(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let top = cur.last().map_or(hi, |&v| v - 1);
        let remaining = (len - cur.len() - 1) as i64;
        let mut v = top;
        while v - remaining >= lo {
            cur.push(v);
            rec(len, lo, hi, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    rec(len, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// All dominant g with floor ⪯ g ⪯ f, in linear-extension order.
pub fn lower_interval(f: &WeightFunction, floor: &WeightFunction) -> Result<Vec<WeightFunction>> {
    check_same_shape(f, floor)?;
    f.require_dominant()?;
    floor.require_dominant()?;
    if !super_bruhat_leq(floor, f)? {
        return Err(Error::NotBelow {
            floor: floor.to_string(),
            top: f.to_string(),
        });
    }
    let shape = f.shape();
    let lo = f.values().chain(floor.values()).min().unwrap_or(0) - 1;
    let hi = f.values().chain(floor.values()).max().unwrap_or(0) + 1;
    let negs = decreasing_sequences(shape.m, lo, hi);
    let poss: Vec<Vec<i64>> = decreasing_sequences(shape.n, lo, hi)
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    let mut members = Vec::new();
    for x in &negs {
        for y in &poss {
            let g = WeightFunction::new(x.clone(), y.clone());
            if super_bruhat_leq(floor, &g)? && super_bruhat_leq(&g, f)? {
                if g.values().any(|v| v == lo || v == hi) {
                    return Err(Error::ScanBoundHit(g.to_string()));
                }
                members.push(g);
            }
        }
    }
    linear_extension(members)
}

/// All dominant μ ⪯ λ whose root-order height below λ is at most `depth`,
/// in linear-extension order (λ last).
pub fn height_window(lambda: &QueerWeight, depth: u32) -> Result<Vec<QueerWeight>> {
    lambda.require_dominant()?;
    let n = lambda.n();
    let f = lambda_to_f(lambda);
    let mut found = Vec::new();
    let mut c = vec![0u32; n.saturating_sub(1)];
    fn rec(
        t: usize,
        budget: u32,
        c: &mut Vec<u32>,
        lambda: &QueerWeight,
        f: &WeightFunction,
        found: &mut Vec<WeightFunction>,
    ) -> Result<()> {
        if t == c.len() {
            let mut a = lambda.a.clone();
            for (s, &cs) in c.iter().enumerate() {
                a[s] -= cs as i64;
                a[s + 1] += cs as i64;
            }
            let mu = QueerWeight { k: lambda.k, a };
            if mu.is_dominant() {
                let g = lambda_to_f(&mu);
                if super_bruhat_leq(&g, f)? {
                    found.push(g);
                }
            }
            return Ok(());
        }
        for v in 0..=budget {
            c[t] = v;
            rec(t + 1, budget - v, c, lambda, f, found)?;
        }
        c[t] = 0;
        Ok(())
    }
    rec(0, depth, &mut c, lambda, &f, &mut found)?;
    Ok(linear_extension(found)?.iter().map(f_to_lambda).collect())
}

/// Height of `mu` below `lambda` in the root order, if `mu ≤ lambda`.
pub fn height_below(lambda: &QueerWeight, mu: &QueerWeight) -> Option<u64> {
    if lambda.k != mu.k || lambda.n() != mu.n() {
        return None;
    }
    root_height(
        &lambda
            .a
            .iter()
            .zip(&mu.a)
            .map(|(x, y)| x - y)
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wf(s: &str) -> WeightFunction {
        s.parse().unwrap()
    }

    #[test]
    fn wt_eps_examples() {
        assert!(wt_eps(&wf("5|5"), -1).unwrap().is_zero());
        let w = wt_eps(&wf("5|5"), 1).unwrap();
        assert_eq!(w.coeff(5), -1);
        let w = wt_eps(&wf("2,1|1,2"), -1).unwrap();
        assert_eq!(w.terms().collect::<Vec<_>>(), vec![(2, -1)]);
        assert!(wt_eps(&wf("2,1|1,2"), 0).is_err());
        assert!(wt_eps(&wf("2,1|1,2"), 3).is_err());
    }

    #[test]
    fn bruhat_examples() {
        assert!(super_bruhat_leq(&wf("3|3"), &wf("3|3")).unwrap());
        assert!(super_bruhat_leq(&wf("2|2"), &wf("3|3")).unwrap());
        assert!(!super_bruhat_leq(&wf("3|3"), &wf("2|2")).unwrap());
        assert!(!super_bruhat_leq(&wf("2|3"), &wf("3|3")).unwrap());
        assert!(super_bruhat_leq(&wf("1|2"), &wf("1,2|")).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for s in ["2,1|1,2", "|1,5", "-3|", "|"] {
            assert_eq!(wf(s).to_string(), s);
        }
        let l: QueerWeight = "k=2;zeta;2,1,-1,-2".parse().unwrap();
        assert_eq!(l.to_string(), "k=2;zeta;2,1,-1,-2");
        assert!("k=5;zeta;1".parse::<QueerWeight>().is_err());
        assert!("1,2".parse::<WeightFunction>().is_err());
        assert!("k=1;z;1".parse::<QueerWeight>().is_err());
    }

    #[test]
    fn example_weight_dictionary() {
        let l: QueerWeight = "k=2;zeta;2,1,-1,-2".parse().unwrap();
        let f = lambda_to_f(&l);
        assert_eq!(f, wf("2,1|1,2"));
        assert_eq!(atypicality(&f), 2);
        assert_eq!(f_to_lambda(&f), l);
        assert!(block_wt(&l).is_zero());
        let p = lambda_prime(&l);
        assert_eq!(p.to_string(), "(5/2,5/2|-5/2,-5/2)");
        assert_eq!(
            rho(4, 2).iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            ["-1/2", "-3/2", "3/2", "1/2"]
        );
        assert_eq!(lambda_from_prime(&p).unwrap(), l);
    }

    #[test]
    fn arrows_in_rank_two() {
        let l = QueerWeight::new(1, vec![3, -7]).unwrap();
        let up = arrow_a(&l, 3, Direction::Up);
        assert_eq!(up, vec![QueerWeight::new(1, vec![4, -7]).unwrap()]);
        assert!(arrow_a(&l, 40, Direction::Up).is_empty());
        assert_eq!(arrow_a(&up[0], 3, Direction::Down), vec![l]);
    }

    #[test]
    fn interval_chain_in_rank_one_one() {
        let iv = lower_interval(&wf("3|3"), &wf("1|1")).unwrap();
        assert_eq!(iv, vec![wf("1|1"), wf("2|2"), wf("3|3")]);
        assert_eq!(lower_interval(&wf("3|3"), &wf("3|3")).unwrap(), vec![wf("3|3")]);
        assert!(matches!(
            lower_interval(&wf("1|1"), &wf("3|3")),
            Err(Error::NotBelow { .. })
        ));
    }

    #[test]
    fn half_integers() {
        assert_eq!(HalfInt::from_halves(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        assert_eq!(HalfInt::from_halves(1) + HalfInt::from_halves(1), HalfInt::from_int(1));
    }

    #[test]
    fn root_heights() {
        assert_eq!(root_height(&[1, -1]), Some(1));
        assert_eq!(root_height(&[1, 0, -1]), Some(2));
        assert_eq!(root_height(&[-1, 1]), None);
        assert_eq!(root_height(&[1, 0]), None);
    }
}
