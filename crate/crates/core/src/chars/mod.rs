//! Characters of q(n)-modules in the integral block of Λ_{k,ζ}.

pub mod borel;
pub mod gl;
pub mod identities;
pub mod series;

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::canon::{canonical_basis, dual_at_one, KLTable};
use crate::error::{Error, Result};
use crate::weights::{f_to_lambda, height_below, height_window, lambda_to_f, QueerWeight};

pub use borel::{find_kostant_certificate, odd_reflection, BorelSequence, KostantCertificate};
pub use gl::{hook_regions, kac_module_char_gl, sergeev_pragacz_gl, HookRegions, LaurentPoly};
pub use identities::{
    kw_character, polynomial_shift, sp_character_qn, translation_check, verify_kw_identity, verify_sp_identity,
    IdentityReport, PolynomialShift,
};
pub use series::{CharacterSeries, Factor, RootSeries};

use series::{block_permutations, block_roots, clifford_factor, linear_height, permute, root};

fn split_blocks(n: usize, k: usize) -> Vec<Range<usize>> {
    vec![0..k, k..n]
}

fn all_positive_roots(n: usize) -> Vec<Vec<i64>> {
    block_roots(n, &[0..n])
}

/// Adds c · prefactor · Σ_w sign(w) w(e^{top} / ∏_{γ ∈ denominators}(1 + e^{-γ}))
/// to `out`, w ranging over the permutations preserving `blocks`. Each
/// γ = (p, q) stands for e_p - e_q and must stay positive under w.
pub(crate) fn add_alternating(
    out: &mut CharacterSeries,
    top: &[i64],
    blocks: &[Range<usize>],
    prefactor: &[(Vec<i64>, Factor)],
    denominators: &[(usize, usize)],
    c: &BigInt,
) {
    let n = top.len();
    let perms = block_permutations(n, blocks);
    let images: Vec<(Vec<usize>, i32, Vec<i64>)> = perms
        .into_iter()
        .map(|(p, s)| {
            let v = permute(&p, top);
            (p, s, v)
        })
        .collect();
    let max_budget = images.iter().map(|(_, _, v)| out.budget_at(v)).max().unwrap_or(-1);
    if max_budget < 0 {
        return;
    }
    let mut pre = RootSeries::one(n);
    for (beta, kind) in prefactor {
        pre = pre.mul_trunc(&RootSeries::factor(beta, *kind, max_budget), max_budget);
    }
    for (perm, sign, v) in images {
        let budget = out.budget_at(&v);
        if budget < 0 {
            continue;
        }
        let mut s = pre.truncated(budget);
        for &(p, q) in denominators {
            let gamma = root(n, perm[p], perm[q]);
            debug_assert!(linear_height(&gamma) > 0);
            s = s.mul_trunc(&RootSeries::factor(&gamma, Factor::InvOnePlus, budget), budget);
        }
        out.add_series(&v, &(c * BigInt::from(sign)), &s);
    }
}

/// The character 2^{⌈n/2⌉} ∏_β (1+e^{-β})/(1-e^{-β}) Σ_w sign(w) e^{wλ}
/// with β over the roots inside the blocks of the composition (r, l) and w
/// over the corresponding product of symmetric groups.
pub fn ch_levi(lambda: &QueerWeight, r: &[usize], l: &[usize], depth: u32) -> Result<CharacterSeries> {
    let (n, k) = (lambda.n(), lambda.k());
    if r.iter().sum::<usize>() != k || l.iter().sum::<usize>() != n - k || r.contains(&0) || l.contains(&0) {
        return Err(Error::Precondition(format!(
            "({r:?}, {l:?}) is not a composition of ({k}, {})",
            n - k
        )));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for &len in r.iter().chain(l) {
        blocks.push(start..start + len);
        start += len;
    }
    let a = lambda.int_parts();
    if blocks.iter().any(|b| a[b.clone()].windows(2).any(|w| w[0] <= w[1])) {
        return Err(Error::NotDominant(format!("{lambda} for the composition ({r:?}, {l:?})")));
    }
    let prefactor: Vec<(Vec<i64>, Factor)> = block_roots(n, &blocks)
        .into_iter()
        .map(|b| (b, Factor::PlusOverMinus))
        .collect();
    let mut out = CharacterSeries::new(lambda, depth);
    add_alternating(&mut out, a, &blocks, &prefactor, &[], &clifford_factor(n));
    Ok(out)
}

fn verma_into(out: &mut CharacterSeries, mu: &QueerWeight, c: &BigInt) {
    let n = mu.n();
    let prefactor: Vec<(Vec<i64>, Factor)> = all_positive_roots(n)
        .into_iter()
        .map(|b| (b, Factor::PlusOverMinus))
        .collect();
    let c = c * clifford_factor(n);
    add_alternating(out, mu.int_parts(), &split_blocks(n, mu.k()), &prefactor, &[], &c);
}

/// ch K(λ) = 2^{⌈n/2⌉} ∏_{β>0} (1+e^{-β})/(1-e^{-β}) Σ_{w ∈ S_k×S_{n-k}} sign(w) e^{wλ}.
pub fn ch_parabolic_verma(lambda: &QueerWeight, depth: u32) -> Result<CharacterSeries> {
    lambda.require_dominant()?;
    let mut out = CharacterSeries::new(lambda, depth);
    verma_into(&mut out, lambda, &BigInt::one());
    Ok(out)
}

/// Σ_μ c_μ ch K(μ) with every summand truncated against λ.
fn combine_vermas(lambda: &QueerWeight, depth: u32, coeffs: &[(QueerWeight, BigInt)]) -> CharacterSeries {
    let parts: Vec<CharacterSeries> = coeffs
        .par_iter()
        .map(|(mu, c)| {
            let mut part = CharacterSeries::new(lambda, depth);
            verma_into(&mut part, mu, c);
            part
        })
        .collect();
    let mut out = CharacterSeries::new(lambda, depth);
    for p in &parts {
        out.add_scaled(p, &BigInt::one());
    }
    out
}

/// ch L(λ) = Σ_μ ℓ_{μλ}(1) ch K(μ) with μ over the height window of depth
/// `depth` below λ.
pub fn ch_irreducible(lambda: &QueerWeight, depth: u32) -> Result<CharacterSeries> {
    ch_irreducible_in_window(lambda, depth, depth)
}

/// As [`ch_irreducible`], with ℓ computed over a window of depth `window`.
pub fn ch_irreducible_in_window(lambda: &QueerWeight, depth: u32, window: u32) -> Result<CharacterSeries> {
    lambda.require_dominant()?;
    if window < depth {
        return Err(Error::WindowTooSmall { window, depth });
    }
    let members = height_window(lambda, window)?;
    let l = dual_at_one(lambda, &members)?;
    let coeffs: Vec<(QueerWeight, BigInt)> = l
        .into_iter()
        .filter(|(mu, _)| height_below(lambda, mu).is_some_and(|h| h <= depth as u64))
        .collect();
    Ok(combine_vermas(lambda, depth, &coeffs))
}

/// ch L of the anchor of `table`, reading ℓ from the table.
pub fn ch_irreducible_from_table(table: &KLTable, depth: u32) -> Result<CharacterSeries> {
    if table.depth < depth {
        return Err(Error::WindowTooSmall {
            window: table.depth,
            depth,
        });
    }
    let lambda = f_to_lambda(&table.anchor);
    let top = table.members.len() - 1;
    let coeffs: Vec<(QueerWeight, BigInt)> = table
        .members
        .iter()
        .enumerate()
        .map(|(r, g)| (f_to_lambda(g), table.l_at_one[r][top].clone()))
        .filter(|(mu, c)| *c != BigInt::from(0) && height_below(&lambda, mu).is_some_and(|h| h <= depth as u64))
        .collect();
    Ok(combine_vermas(&lambda, depth, &coeffs))
}

/// ch U(λ) = Σ_μ u_{μλ}(1) ch K(μ).
pub fn ch_tilting(lambda: &QueerWeight, depth: u32) -> Result<CharacterSeries> {
    lambda.require_dominant()?;
    let u = canonical_basis(&lambda_to_f(lambda))?;
    let mut coeffs = Vec::new();
    for (g, c) in u.terms() {
        let mu = f_to_lambda(g);
        let h = height_below(lambda, &mu)
            .ok_or_else(|| Error::Invariant(format!("{mu} lies in the support of U but not below {lambda}")))?;
        if h <= depth as u64 {
            coeffs.push((mu, c.eval_one()));
        }
    }
    Ok(combine_vermas(lambda, depth, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qw(s: &str) -> QueerWeight {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one() {
        let lam = qw("k=1;zeta;3");
        let ch = ch_parabolic_verma(&lam, 5).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch.coeff(&[3]), BigInt::from(2));
        assert_eq!(ch_levi(&lam, &[1], &[], 5).unwrap(), ch);
    }

    #[test]
    fn rank_two_verma() {
        let lam = qw("k=1;zeta;0,0");
        let ch = ch_parabolic_verma(&lam, 2).unwrap();
        let expect = [(vec![0, 0], 2), (vec![-1, 1], 4), (vec![-2, 2], 4)];
        assert_eq!(ch.len(), 3);
        for (e, c) in expect {
            assert_eq!(ch.coeff(&e), BigInt::from(c));
        }
    }

    #[test]
    fn levi_characters_are_finite() {
        let lam = qw("k=2;zeta;1,0,5,2");
        let ch = ch_levi(&lam, &[2], &[2], 12).unwrap();
        // each q(2) factor of highest weight (a, b), a > b, has dimension 4(a - b)
        let total: BigInt = ch.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, BigInt::from(4 * 4 * 3));
        assert!(ch.is_nonnegative());
        let singles = ch_levi(&lam, &[1, 1], &[1, 1], 6).unwrap();
        assert_eq!(singles.len(), 1);
        assert_eq!(singles.coeff(&[1, 0, 5, 2]), BigInt::from(4));
    }

    #[test]
    fn chain_irreducible_and_tilting() {
        let lam = qw("k=1;zeta;0,0");
        let mu = qw("k=1;zeta;-1,1");
        let irr = ch_irreducible(&lam, 4).unwrap();
        let tilt = ch_tilting(&lam, 4).unwrap();
        let mut rebased = CharacterSeries::new(&lam, 4);
        rebased.add_scaled(&ch_parabolic_verma(&mu, 3).unwrap(), &BigInt::one());
        let mut expect_tilt = ch_parabolic_verma(&lam, 4).unwrap();
        expect_tilt.add_scaled(&rebased, &BigInt::one());
        assert_eq!(tilt, expect_tilt);
        // 2 (1+x)/(1-x) Σ_j (-x)^j = 2/(1-x)
        assert_eq!(irr.len(), 5);
        for j in 0..=4 {
            assert_eq!(irr.coeff(&[-j, j]), BigInt::from(2));
        }
        assert!(matches!(
            ch_irreducible_in_window(&lam, 4, 2),
            Err(Error::WindowTooSmall { .. })
        ));
    }
}
