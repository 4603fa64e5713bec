//! Closed character formulas and the identities that tie them to the
//! transition coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::borel::KostantCertificate;
use super::gl::{conjugate, hook_regions, sergeev_pragacz_gl};
use super::series::{block_roots, clifford_factor, cross_roots, CharacterSeries, Factor};
use super::{add_alternating, ch_irreducible, split_blocks};
use crate::canon::dual_at_one;
use crate::error::{Error, Result};
use crate::fock::{chevalley_wedge, Generator, WedgeVector};
use crate::weights::{
    arrow_a, height_below, height_window, lambda_prime, lambda_to_f, Direction, GLWeight, HalfInt, QueerWeight,
    WeightFunction,
};

/// Outcome of comparing two sides of an identity.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub name: String,
    pub lambda: QueerWeight,
    pub depth: u32,
    pub pass: bool,
    pub lhs: CharacterSeries,
    pub rhs: CharacterSeries,
}

impl IdentityReport {
    fn compare(name: &str, lambda: &QueerWeight, depth: u32, lhs: CharacterSeries, rhs: CharacterSeries) -> Self {
        IdentityReport {
            name: name.to_string(),
            lambda: lambda.clone(),
            depth,
            pass: lhs == rhs,
            lhs,
            rhs,
        }
    }

    /// Both sides are serialized only on failure.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "identity": self.name,
            "lambda": self.lambda.to_string(),
            "depth": self.depth,
            "pass": self.pass,
        });
        if !self.pass {
            v["lhs"] = self.lhs.to_json();
            v["rhs"] = self.rhs.to_json();
        }
        v
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Σ_{μ⪯λ} ℓ_{μλ}(1) Σ_w sign(w) e^{w(μ′+ρ)}, with μ′+ρ read as the integer
/// parts of μ.
pub fn kl_weyl_numerator(lambda: &QueerWeight, depth: u32) -> Result<CharacterSeries> {
    lambda.require_dominant()?;
    let n = lambda.n();
    let l = dual_at_one(lambda, &height_window(lambda, depth)?)?;
    let mut out = CharacterSeries::new(lambda, depth);
    for (mu, c) in l {
        if height_below(lambda, &mu).is_some_and(|h| h <= depth as u64) {
            add_alternating(&mut out, mu.int_parts(), &split_blocks(n, lambda.k()), &[], &[], &c);
        }
    }
    Ok(out)
}

/// Σ_w sign(w) w(e^{λ′_b + ρ_b} / ∏_{γ∈S}(1 + e^{-γ})), undivided.
fn kw_weyl_numerator(lambda: &QueerWeight, cert: &KostantCertificate, depth: u32, prefactor: &[(Vec<i64>, Factor)]) -> Result<CharacterSeries> {
    cert.validate(lambda)?;
    let top = cert.shifted_weight()?;
    let mut out = CharacterSeries::new(lambda, depth);
    add_alternating(
        &mut out,
        &top,
        &split_blocks(lambda.n(), lambda.k()),
        prefactor,
        &cert.roots,
        &BigInt::one(),
    );
    Ok(out)
}

fn require_certificate(lambda: &QueerWeight, cert: &KostantCertificate) -> Result<()> {
    let sharp = lambda.atypicality();
    if cert.roots.len() != sharp {
        return Err(Error::Precondition(format!(
            "certificate has {} roots but {lambda} has atypicality {sharp}",
            cert.roots.len()
        )));
    }
    cert.validate(lambda)
}

/// Compares Σ_μ ℓ_{μλ}(1) Σ_w sign(w) w(e^{μ′+ρ}) with
/// (1/♯λ!) Σ_w sign(w) w(e^{λ′_b+ρ_b} / ∏_{γ∈S}(1+e^{-γ})).
pub fn verify_kw_identity(lambda: &QueerWeight, cert: &KostantCertificate, depth: u32) -> Result<IdentityReport> {
    require_certificate(lambda, cert)?;
    let lhs = kl_weyl_numerator(lambda, depth)?;
    let rhs = kw_weyl_numerator(lambda, cert, depth, &[])?.divide_exact(&factorial(cert.roots.len()))?;
    Ok(IdentityReport::compare("kac-wakimoto-numerator", lambda, depth, lhs, rhs))
}

/// (2^{⌈n/2⌉}/♯λ!) ∏_{β>0} (1+e^{-β})/(1-e^{-β}) Σ_w sign(w) w(e^{λ_b} / ∏_{γ∈S}(1+e^{-γ})).
pub fn kw_character(lambda: &QueerWeight, cert: &KostantCertificate, depth: u32) -> Result<CharacterSeries> {
    require_certificate(lambda, cert)?;
    let n = lambda.n();
    let prefactor: Vec<(Vec<i64>, Factor)> = block_roots(n, &[0..n])
        .into_iter()
        .map(|b| (b, Factor::PlusOverMinus))
        .collect();
    let raw = kw_weyl_numerator(lambda, cert, depth, &prefactor)?;
    Ok(raw.divide_exact(&factorial(cert.roots.len()))?.scale(&clifford_factor(n)))
}

/// Compares [`kw_character`] with [`ch_irreducible`].
pub fn kw_vs_irreducible(lambda: &QueerWeight, cert: &KostantCertificate, depth: u32) -> Result<IdentityReport> {
    let lhs = kw_character(lambda, cert, depth)?;
    let rhs = ch_irreducible(lambda, depth)?;
    Ok(IdentityReport::compare("kac-wakimoto-character", lambda, depth, lhs, rhs))
}

/// A shift c ∈ (n+1)/2 + Z with λ′ - c·1_{k|n-k} polynomial, and the hook
/// partition of that polynomial weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialShift {
    pub c: HalfInt,
    pub nu: GLWeight,
    pub hook: Vec<usize>,
}

fn hook_of(nu: &[i64], k: usize) -> Option<Vec<usize>> {
    if nu.iter().any(|&x| x < 0) {
        return None;
    }
    let (x, y) = nu.split_at(k);
    let decreasing = |v: &[i64]| v.windows(2).all(|w| w[0] >= w[1]);
    if !decreasing(x) || !decreasing(y) {
        return None;
    }
    let y: Vec<usize> = y.iter().map(|&v| v as usize).collect();
    let yt = conjugate(&y);
    if k > 0 && (x[k - 1] as usize) < yt.first().copied().unwrap_or(0) {
        return None;
    }
    Some(x.iter().map(|&v| v as usize).filter(|&v| v > 0).chain(yt).collect())
}

/// The polynomial weight reached from λ′ by the smallest shift along
/// 1_{k|n-k}, ties going to the larger shift.
pub fn polynomial_shift(lambda: &QueerWeight) -> Result<PolynomialShift> {
    let (n, k) = (lambda.n(), lambda.k());
    let lp = lambda_prime(lambda);
    let bound = lp.coords().iter().map(|c| c.halves().abs()).max().unwrap_or(0) + 2 * n as i64 + 2;
    let parity = (n as i64 + 1).rem_euclid(2);
    let mut candidates: Vec<i64> = (-bound..=bound).filter(|c| c.rem_euclid(2) == parity).collect();
    candidates.sort_by_key(|&c| (c.abs(), -c));
    for ch in candidates {
        let c = HalfInt::from_halves(ch);
        let shift: Vec<HalfInt> = (0..n).map(|t| if t < k { c } else { -c }).collect();
        let nu = lp.minus(&shift);
        let Some(ints) = nu.int_coords() else { continue };
        if let Some(hook) = hook_of(&ints, k) {
            return Ok(PolynomialShift { c, nu, hook });
        }
    }
    Err(Error::NotPolynomial(lambda.to_string()))
}

/// The Sergeev-Pragacz type formula: 2^{⌈n/2⌉} ∏_{i<j}(x_i+x_j) ∏_{p<q}(y_p+y_q)
/// / ∏_{i,j}(x_i-y_j) · x^{ζ+(n+1)/2-k} y^{-ζ-(n-1)/2+k} · ch L′(λ′), with
/// 1/(x_i - y_j) expanded in y_j/x_i.
pub fn sp_character_qn(lambda: &QueerWeight, depth: u32) -> Result<CharacterSeries> {
    lambda.require_dominant()?;
    let (n, k) = (lambda.n(), lambda.k());
    let l = n - k;
    let shift = polynomial_shift(lambda)?;
    let sp = sergeev_pragacz_gl(&shift.hook, k, l)?;
    let c = shift.c.halves();
    // monomial part of the prefactor with ch L′(λ′) = (x/y)^c ch L′(ν), in halves
    let offset: Vec<i64> = (0..n)
        .map(|t| {
            let halves = if t < k {
                -2 * (t as i64 + 1) - 2 * l as i64 + (n as i64 + 1) + c
            } else {
                let j = (t - k) as i64 + 1;
                2 * (l as i64 - j) - (n as i64 - 1) + 2 * k as i64 - c
            };
            debug_assert_eq!(halves % 2, 0);
            halves / 2
        })
        .collect();
    let mut series = super::RootSeries::one(n);
    let mut bases = Vec::new();
    let mut out = CharacterSeries::new(lambda, depth);
    for (e, coeff) in sp.terms() {
        let base: Vec<i64> = e.iter().zip(&offset).map(|(x, o)| x + o).collect();
        bases.push((base, coeff.clone()));
    }
    let max_budget = bases.iter().map(|(b, _)| out.budget_at(b)).max().unwrap_or(-1);
    if max_budget < 0 {
        return Ok(out);
    }
    for beta in block_roots(n, &[0..k, k..n]) {
        series = series.mul_trunc(&super::RootSeries::factor(&beta, Factor::OnePlus, max_budget), max_budget);
    }
    for beta in cross_roots(n, k) {
        series = series.mul_trunc(&super::RootSeries::factor(&beta, Factor::InvOneMinus, max_budget), max_budget);
    }
    let clifford = clifford_factor(n);
    for (base, coeff) in bases {
        out.add_series(&base, &(coeff * &clifford), &series);
    }
    Ok(out)
}

/// Compares Σ_w sign(w) w(x^{λ′⁻} y^{λ′⁺} x^{ρ_x} y^{ρ_y} / ∏_{(i,j)∈C}(1 + x_i^{-1} y_j))
/// with Σ_μ ℓ_{μλ}(1) Σ_w sign(w) w(x^{μ′⁻} y^{μ′⁺} x^{ρ_x} y^{ρ_y}). Both
/// sides are multiplied by the same w-invariant monomial so that exponents
/// are the integer parts of λ and μ.
pub fn verify_sp_identity(lambda: &QueerWeight, depth: u32) -> Result<IdentityReport> {
    lambda.require_dominant()?;
    let (n, k) = (lambda.n(), lambda.k());
    let shift = polynomial_shift(lambda)?;
    let regions = hook_regions(&shift.hook, k, n - k)?;
    let denominators: Vec<(usize, usize)> = regions.complement.iter().map(|&(i, j)| (i, k + j)).collect();
    let mut lhs = CharacterSeries::new(lambda, depth);
    add_alternating(
        &mut lhs,
        lambda.int_parts(),
        &split_blocks(n, k),
        &[],
        &denominators,
        &BigInt::one(),
    );
    let rhs = kl_weyl_numerator(lambda, depth)?;
    Ok(IdentityReport::compare("sergeev-pragacz-numerator", lambda, depth, lhs, rhs))
}

/// Compares [`sp_character_qn`] with [`ch_irreducible`].
pub fn sp_vs_irreducible(lambda: &QueerWeight, depth: u32) -> Result<IdentityReport> {
    let lhs = sp_character_qn(lambda, depth)?;
    let rhs = ch_irreducible(lambda, depth)?;
    Ok(IdentityReport::compare("sergeev-pragacz-character", lambda, depth, lhs, rhs))
}

/// Result of comparing a Chevalley generator on K_{f_λ} at q = 1 with the
/// arrow relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub lambda: QueerWeight,
    pub a: i64,
    pub pass: bool,
    pub f_side: BTreeMap<WeightFunction, BigInt>,
    pub f_arrows: BTreeMap<WeightFunction, BigInt>,
    pub e_side: BTreeMap<WeightFunction, BigInt>,
    pub e_arrows: BTreeMap<WeightFunction, BigInt>,
}

fn labels_json(m: &BTreeMap<WeightFunction, BigInt>) -> Value {
    Value::Array(m.iter().map(|(f, c)| json!([f.to_string(), c.to_string()])).collect())
}

impl TranslationReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "lambda": self.lambda.to_string(),
            "a": self.a,
            "pass": self.pass,
        });
        if !self.pass {
            v["F"] = labels_json(&self.f_side);
            v["arrows_up"] = labels_json(&self.f_arrows);
            v["E"] = labels_json(&self.e_side);
            v["arrows_down"] = labels_json(&self.e_arrows);
        }
        v
    }
}

/// F_a K_{f_λ} at q = 1 against Σ_{λ→_a μ} K_{f_μ}, and E_a K_{f_λ} against
/// Σ_{μ→_a λ} K_{f_μ}.
pub fn translation_check(lambda: &QueerWeight, a: i64) -> Result<TranslationReport> {
    lambda.require_dominant()?;
    let k = WedgeVector::basis(&lambda_to_f(lambda))?;
    let at_one = |g: Generator| -> Result<BTreeMap<WeightFunction, BigInt>> {
        Ok(chevalley_wedge(g, &k)?
            .eval_one()
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect())
    };
    let arrows = |d: Direction| -> BTreeMap<WeightFunction, BigInt> {
        arrow_a(lambda, a, d)
            .iter()
            .map(|mu| (lambda_to_f(mu), BigInt::one()))
            .collect()
    };
    let f_side = at_one(Generator::F(a))?;
    let e_side = at_one(Generator::E(a))?;
    let f_arrows = arrows(Direction::Up);
    let e_arrows = arrows(Direction::Down);
    Ok(TranslationReport {
        lambda: lambda.clone(),
        a,
        pass: f_side == f_arrows && e_side == e_arrows,
        f_side,
        f_arrows,
        e_side,
        e_arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::super::borel::find_kostant_certificate;
    use super::*;

    fn qw(s: &str) -> QueerWeight {
        s.parse().unwrap()
    }

    #[test]
    fn example_kw() {
        let lam = qw("k=2;zeta;2,1,-1,-2");
        let cert = find_kostant_certificate(&lam, 8).unwrap().unwrap();
        assert!(verify_kw_identity(&lam, &cert, 4).unwrap().pass);
        let report = kw_vs_irreducible(&lam, &cert, 4).unwrap();
        assert!(report.pass, "{}", report.to_json());
        assert_eq!(report.lhs.coeff(&[2, 1, -1, -2]), BigInt::from(4));
    }

    #[test]
    fn rank_one_one_sp() {
        let lam = qw("k=1;zeta;0,0");
        let s = polynomial_shift(&lam).unwrap();
        assert!(s.hook.is_empty());
        assert_eq!(s.c, HalfInt::from_halves(1));
        assert!(verify_sp_identity(&lam, 4).unwrap().pass);
        let report = sp_vs_irreducible(&lam, 4).unwrap();
        assert!(report.pass, "{}", report.to_json());
    }

    #[test]
    fn translation_on_chain() {
        let lam = qw("k=1;zeta;0,0");
        for a in -3..3 {
            let r = translation_check(&lam, a).unwrap();
            assert!(r.pass, "{}", r.to_json());
        }
    }
}
