//! Borel subalgebras of gl(k|l) containing the standard even Borel, odd
//! reflections and Kostant certificates.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weights::{lambda_prime, GLWeight, HalfInt, QueerWeight};

/// A shuffle of k barred symbols δ′ and l plain symbols ε′. The t-th barred
/// symbol stands for coordinate t and the t-th plain one for coordinate k+t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorelSequence {
    barred: Vec<bool>,
}

impl BorelSequence {
    pub fn standard(k: usize, l: usize) -> Self {
        BorelSequence {
            barred: (0..k + l).map(|t| t < k).collect(),
        }
    }

    pub fn from_symbols(barred: Vec<bool>) -> Self {
        BorelSequence { barred }
    }

    pub fn len(&self) -> usize {
        self.barred.len()
    }

    pub fn is_empty(&self) -> bool {
        self.barred.is_empty()
    }

    pub fn k(&self) -> usize {
        self.barred.iter().filter(|&&b| b).count()
    }

    /// The coordinate carried by each position.
    pub fn coordinates(&self) -> Vec<usize> {
        let k = self.k();
        let (mut d, mut e) = (0, k);
        self.barred
            .iter()
            .map(|&b| {
                if b {
                    d += 1;
                    d - 1
                } else {
                    e += 1;
                    e - 1
                }
            })
            .collect()
    }

    pub fn is_odd_position(&self, pos: usize) -> bool {
        pos + 1 < self.len() && self.barred[pos] != self.barred[pos + 1]
    }

    /// The simple root at `pos` as (p, q), meaning e_p - e_q.
    pub fn simple_root(&self, pos: usize) -> (usize, usize) {
        let c = self.coordinates();
        (c[pos], c[pos + 1])
    }

    /// ρ_b = ½ Σ even positive roots - ½ Σ odd positive roots of b.
    pub fn rho(&self) -> Vec<HalfInt> {
        let n = self.len();
        let coords = self.coordinates();
        let k = self.k();
        let mut halves = vec![0i64; n];
        for a in 0..n {
            for b in a + 1..n {
                let (p, q) = (coords[a], coords[b]);
                let odd = (p < k) != (q < k);
                let s = if odd { -1 } else { 1 };
                halves[p] += s;
                halves[q] -= s;
            }
        }
        halves.into_iter().map(HalfInt::from_halves).collect()
    }
}

impl fmt::Display for BorelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k();
        for (b, c) in self.barred.iter().zip(self.coordinates()) {
            if *b {
                write!(f, "d{}", c + 1)?;
            } else {
                write!(f, "e{}", c - k + 1)?;
            }
        }
        Ok(())
    }
}

/// The super form on weights: (e_p, e_p) = -1 for p < k and +1 otherwise.
fn form_with_root(nu: &GLWeight, (p, q): (usize, usize)) -> HalfInt {
    let sgn = |t: usize, x: HalfInt| if t < nu.k() { -x } else { x };
    sgn(p, nu.coords()[p]) - sgn(q, nu.coords()[q])
}

/// Reflection at the odd simple root α at `pos`: the symbols swap, and the
/// highest weight becomes ν - α unless (ν, α) = 0.
pub fn odd_reflection(b: &BorelSequence, nu: &GLWeight, pos: usize) -> Result<(BorelSequence, GLWeight)> {
    if !b.is_odd_position(pos) {
        return Err(Error::Precondition(format!("position {pos} of {b} is not an odd simple root")));
    }
    let (p, q) = b.simple_root(pos);
    let mut next = b.clone();
    next.barred.swap(pos, pos + 1);
    if form_with_root(nu, (p, q)) == HalfInt::from_int(0) {
        return Ok((next, nu.clone()));
    }
    let mut alpha = vec![HalfInt::from_int(0); nu.n()];
    alpha[p] = HalfInt::from_int(1);
    alpha[q] = HalfInt::from_int(-1);
    Ok((next, nu.minus(&alpha)))
}

/// Moves the highest weight of the standard Borel to `target` by odd
/// reflections; the result does not depend on the path.
pub fn transport(nu: &GLWeight, target: &BorelSequence) -> Result<GLWeight> {
    let mut cur = BorelSequence::standard(nu.k(), nu.n() - nu.k());
    let mut w = nu.clone();
    while cur != target.clone() {
        let pos = (0..cur.len() - 1)
            .find(|&t| cur.barred[t] != target.barred[t])
            .expect("sequences differ");
        // bubble the symbol wanted at `pos` leftward
        let want = target.barred[pos];
        let src = (pos..cur.len()).find(|&t| cur.barred[t] == want).unwrap();
        for t in (pos..src).rev() {
            let (b, v) = odd_reflection(&cur, &w, t)?;
            cur = b;
            w = v;
        }
    }
    Ok(w)
}

/// A Borel subalgebra b′, the highest weight λ′_{b′} there, and a set S of
/// mutually orthogonal odd simple roots orthogonal to λ′_{b′} + ρ_{b′}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantCertificate {
    pub borel: BorelSequence,
    pub highest_weight: GLWeight,
    /// Roots e_p - e_q as coordinate pairs.
    pub roots: Vec<(usize, usize)>,
}

impl KostantCertificate {
    /// λ′_{b′} + ρ_{b′}, which is integral.
    pub fn shifted_weight(&self) -> Result<Vec<i64>> {
        self.highest_weight
            .plus(&self.borel.rho())
            .int_coords()
            .ok_or_else(|| Error::InvalidCertificate("λ′ + ρ is not integral".into()))
    }

    /// Checks the certificate against λ.
    pub fn validate(&self, lambda: &QueerWeight) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidCertificate(why));
        let (n, k) = (lambda.n(), lambda.k());
        if self.borel.len() != n || self.borel.k() != k {
            return bad(format!("Borel {} has the wrong shape", self.borel));
        }
        let expected = transport(&lambda_prime(lambda), &self.borel)?;
        if expected != self.highest_weight {
            return bad(format!(
                "highest weight {} differs from {} obtained by odd reflections",
                self.highest_weight, expected
            ));
        }
        let sharp = lambda.atypicality();
        if self.roots.len() != sharp {
            return bad(format!("|S| = {} but the atypicality is {sharp}", self.roots.len()));
        }
        let simple: Vec<(usize, usize)> = (0..n.saturating_sub(1))
            .filter(|&p| self.borel.is_odd_position(p))
            .map(|p| self.borel.simple_root(p))
            .collect();
        let shifted = self.shifted_weight()?;
        let mut used = HashSet::new();
        for &(p, q) in &self.roots {
            if !simple.contains(&(p, q)) {
                return bad(format!("e{} - e{} is not an odd simple root of {}", p + 1, q + 1, self.borel));
            }
            if !(p < k && q >= k) {
                return bad(format!("e{} - e{} is not positive for the standard Borel", p + 1, q + 1));
            }
            if !used.insert(p) || !used.insert(q) {
                return bad("roots of S are not mutually orthogonal".into());
            }
            if shifted[p] + shifted[q] != 0 {
                return bad(format!("e{} - e{} is not orthogonal to λ′ + ρ", p + 1, q + 1));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "borel": self.borel.to_string(),
            "highest_weight": self.highest_weight.to_string(),
            "roots": self
                .roots
                .iter()
                .map(|&(p, q)| format!("d{}-d{}", p + 1, q + 1))
                .collect::<Vec<_>>(),
        })
    }
}

/// Sets of `size` pairwise non-adjacent positions from `candidates`, in
/// lexicographic order.
fn disjoint_choices(candidates: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(c: &[usize], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for (i, &p) in c.iter().enumerate() {
            if cur.last().is_some_and(|&l| p <= l + 1) {
                continue;
            }
            cur.push(p);
            rec(&c[i + 1..], size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(candidates, size, &mut Vec::new(), &mut out);
    out
}

/// Breadth-first search over Borel sequences reachable by at most
/// `max_steps` odd reflections, scanning positions left to right.
pub fn find_kostant_certificate(lambda: &QueerWeight, max_steps: usize) -> Result<Option<KostantCertificate>> {
    lambda.require_dominant()?;
    let (n, k) = (lambda.n(), lambda.k());
    let sharp = lambda.atypicality();
    let start = BorelSequence::standard(k, n - k);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, lambda_prime(lambda), 0usize)]);
    while let Some((b, nu, steps)) = queue.pop_front() {
        let shifted = nu
            .plus(&b.rho())
            .int_coords()
            .ok_or_else(|| Error::Invariant(format!("{nu} + ρ is not integral")))?;
        let candidates: Vec<usize> = (0..n.saturating_sub(1))
            .filter(|&p| b.is_odd_position(p))
            .filter(|&p| {
                let (x, y) = b.simple_root(p);
                x < k && shifted[x] + shifted[y] == 0
            })
            .collect();
        if let Some(choice) = disjoint_choices(&candidates, sharp).into_iter().next() {
            let cert = KostantCertificate {
                roots: choice.iter().map(|&p| b.simple_root(p)).collect(),
                borel: b,
                highest_weight: nu,
            };
            cert.validate(lambda)?;
            return Ok(Some(cert));
        }
        if steps == max_steps {
            continue;
        }
        for pos in 0..n.saturating_sub(1) {
            if !b.is_odd_position(pos) {
                continue;
            }
            let (nb, nnu) = odd_reflection(&b, &nu, pos)?;
            if seen.insert(nb.clone()) {
                queue.push_back((nb, nnu, steps + 1));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(k: usize, v: &[i64]) -> GLWeight {
        GLWeight::from_ints(k, v).unwrap()
    }

    #[test]
    fn reflection_rule() {
        let b = BorelSequence::standard(1, 1);
        let (b2, nu2) = odd_reflection(&b, &gl(1, &[1, 0]), 0).unwrap();
        assert_eq!(nu2, gl(1, &[0, 1]));
        assert_eq!(b2.to_string(), "e1d1");
        let (b3, nu3) = odd_reflection(&b2, &nu2, 0).unwrap();
        assert_eq!((b3, nu3), (b, gl(1, &[1, 0])));
        let (_, same) = odd_reflection(&BorelSequence::standard(1, 1), &gl(1, &[2, -2]), 0).unwrap();
        assert_eq!(same, gl(1, &[2, -2]));
        assert!(odd_reflection(&BorelSequence::standard(2, 1), &gl(2, &[0, 0, 0]), 0).is_err());
    }

    #[test]
    fn rho_of_standard_borel_matches() {
        for (n, k) in [(4, 2), (3, 1), (3, 2), (2, 1)] {
            assert_eq!(BorelSequence::standard(k, n - k).rho(), crate::weights::rho(n, k));
        }
    }

    #[test]
    fn example_certificate() {
        let lam: QueerWeight = "k=2;zeta;2,1,-1,-2".parse().unwrap();
        let cert = find_kostant_certificate(&lam, 8).unwrap().unwrap();
        assert_eq!(cert.borel.to_string(), "d1e1d2e2");
        assert_eq!(cert.roots, vec![(0, 2), (1, 3)]);
        assert_eq!(cert.shifted_weight().unwrap(), vec![2, 2, -2, -2]);
        let mut broken = cert.clone();
        broken.roots.pop();
        assert!(broken.validate(&lam).is_err());
    }

    #[test]
    fn typical_certificate_is_trivial() {
        let lam: QueerWeight = "k=1;zeta;3,1".parse().unwrap();
        let cert = find_kostant_certificate(&lam, 4).unwrap().unwrap();
        assert!(cert.roots.is_empty());
        assert_eq!(cert.borel, BorelSequence::standard(1, 1));
    }
}
