//! Arithmetic factors of a character tuple: `ξ`, `Ξ_j`, `ξ̃`, `B(χ, θ)`,
//! the repulsion gap, the large-`α` expansion of `Ξ_j` and an exhaustive
//! search for tuples with a negative `Ξ_j`.
//!
//! All of them are averages over `u ∈ (Z/dZ)^×` of functions of the twisted
//! sum `S(u) = Σ_j α_j e^{-iθ_j} χ_j(u)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::{enumerate_characters, make_tuple, CharacterSpec, CharacterTuple};
use crate::error::{domain, Error, Result};
use crate::numeric::CompensatedSum;

/// Residues with `|S(u)| <= STAR_EPS · Σα` are left out of `Ξ_j`.
pub const STAR_EPS: f64 = 1e-10;

/// Largest number of subsets [`search_negative_xi`] will enumerate.
pub const SEARCH_BUDGET: u64 = 1_000_000;

/// Records below this are reported by [`search_negative_xi`].
pub const NEGATIVE_TOL: f64 = -1e-12;

/// Positive weights `α = (α_1, …, α_r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::Validation("weights must be non-empty".into()));
        }
        if let Some(i) = alphas.iter().position(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::Validation(format!("weight {i} must be positive and finite, got {}", alphas[i])));
        }
        Ok(Self(alphas))
    }

    /// `(1, …, 1)`.
    pub fn ones(r: usize) -> Self {
        Self(vec![1.0; r])
    }

    /// `(a, 1, …, 1)`.
    pub fn leading(a: f64, r: usize) -> Result<Self> {
        let mut v = vec![1.0; r];
        v[0] = a;
        Self::new(v)
    }

    pub fn alphas(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Everything [`factor_report`] computes for one `(tuple, σ, α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    pub sigma: f64,
    pub xi: f64,
    pub xi_js: Vec<f64>,
    /// Only for pairs.
    pub tilde_xi: Option<f64>,
    /// `0` for `r = 1` (empty sum).
    pub b_factor: f64,
    /// `None` when some `Ξ_j < 0`.
    pub gap: Option<f64>,
    pub star_excluded_count: usize,
}

/// `Ξ_j` together with the number of residues dropped from the star sum.
#[derive(Debug, Clone, PartialEq)]
pub struct XiFactors {
    pub values: Vec<f64>,
    pub star_excluded_count: usize,
}

/// Factors accept `σ ∈ [1/2, 1)`; the closed end is the `L²` boundary case.
fn check_factor_sigma(sigma: f64) -> Result<()> {
    if !(0.5..1.0).contains(&sigma) {
        return domain(format!("sigma = {sigma} outside [1/2, 1)"));
    }
    Ok(())
}

fn check_len(tuple: &CharacterTuple, n: usize, what: &str) -> Result<()> {
    if tuple.r() != n {
        return domain(format!("{what} has length {n}, tuple has {} characters", tuple.r()));
    }
    Ok(())
}

#[inline]
fn weighted_sum(row: &[Complex64], x: &[f64]) -> Complex64 {
    row.iter().zip(x).map(|(c, &a)| c * a).sum()
}

/// `|Σ_j x_j e^{-iθ_j} χ_j(u)|²`; zero when `gcd(u, d) > 1`.
pub fn k_quadratic(tuple: &CharacterTuple, u: u64, x: &[f64]) -> Result<f64> {
    check_len(tuple, x.len(), "x")?;
    let s: Complex64 = (0..tuple.r()).map(|j| tuple.twisted_value(j, u) * x[j]).sum();
    Ok(s.norm_sqr())
}

/// `(1/φ(d)) Σ_u K(u, x)^{1/(2σ)}`.
pub fn f_value(tuple: &CharacterTuple, sigma: f64, x: &[f64]) -> Result<f64> {
    check_len(tuple, x.len(), "x")?;
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return domain(format!("x[{i}] is not finite"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return domain(format!("sigma = {sigma} must be positive"));
    }
    let e = 1.0 / (2.0 * sigma);
    let sum: CompensatedSum = tuple.rows().map(|row| weighted_sum(row, x).norm_sqr().powf(e)).collect();
    Ok(sum.value() / tuple.phi_d() as f64)
}

/// `ξ(σ, χ, θ; α) = (1/φ(d)) Σ_u |S(u)|^{1/σ}`.
pub fn xi(tuple: &CharacterTuple, sigma: f64, weights: &Weights) -> Result<f64> {
    check_factor_sigma(sigma)?;
    check_len(tuple, weights.len(), "weights")?;
    let a = weights.alphas();
    let e = 1.0 / sigma;
    let sum: CompensatedSum = tuple.rows().map(|row| weighted_sum(row, a).norm().powf(e)).collect();
    Ok(sum.value() / tuple.phi_d() as f64)
}

/// `Ξ_j = (1/φ(d)) Σ*_u |S(u)|^{1/σ-2} Re(conj(e^{-iθ_j}χ_j(u))·S(u))`.
pub fn xi_j_factors(tuple: &CharacterTuple, sigma: f64, weights: &Weights) -> Result<XiFactors> {
    check_factor_sigma(sigma)?;
    check_len(tuple, weights.len(), "weights")?;
    let a = weights.alphas();
    let r = tuple.r();
    let eps = STAR_EPS * weights.total();
    let e = 1.0 / sigma - 2.0;
    let mut sums = vec![CompensatedSum::new(); r];
    let mut excluded = 0;
    for row in tuple.rows() {
        let s = weighted_sum(row, a);
        let m = s.norm();
        if m <= eps {
            excluded += 1;
            continue;
        }
        let w = m.powf(e);
        for (acc, c) in sums.iter_mut().zip(row) {
            acc.add(w * (c.conj() * s).re);
        }
    }
    let phi = tuple.phi_d() as f64;
    Ok(XiFactors { values: sums.iter().map(|s| s.value() / phi).collect(), star_excluded_count: excluded })
}

/// `ξ̃ = 2^{1/(1-σ)} ξ(σ, χ, θ; 1)^{-σ/(1-σ)}` for a pair.
pub fn tilde_xi(pair: &CharacterTuple, sigma: f64) -> Result<f64> {
    if pair.r() != 2 {
        return domain(format!("tilde xi needs a pair, got {} characters", pair.r()));
    }
    let x = xi(pair, sigma, &Weights::ones(2))?;
    Ok(tilde_xi_from(sigma, x))
}

/// The `ξ̃` formula applied to a given `ξ`.
pub fn tilde_xi_from(sigma: f64, xi: f64) -> f64 {
    let k = 1.0 / (1.0 - sigma);
    (k * std::f64::consts::LN_2 - sigma * k * xi.ln()).exp()
}

/// `χ_j ~ χ_1²·conj(χ_l)`, decided by principality of
/// `χ_j·conj(χ_1)²·χ_l` on `(Z/dZ)^×`.
fn square_relation(tuple: &CharacterTuple, j: usize, l: usize) -> bool {
    let chars = tuple.characters();
    tuple.residues().iter().all(|&u| {
        let c1 = chars[0].value(u).conj();
        let p = chars[j].value(u) * c1 * c1 * chars[l].value(u);
        (p - 1.0).norm() <= 1e-9
    })
}

fn b_sum(tuple: &CharacterTuple) -> f64 {
    let th = tuple.thetas();
    let r = tuple.r();
    let mut acc = CompensatedSum::new();
    for j in 1..r {
        for l in 1..r {
            if square_relation(tuple, j, l) {
                acc.add((2.0 * th[0] - th[j] - th[l]).cos());
            }
        }
    }
    acc.value()
}

/// `B(χ, θ) = Σ_{j,l >= 2, χ_j ~ χ_1² conj(χ_l)} cos(2θ_1 − θ_j − θ_l)`.
pub fn b_factor(tuple: &CharacterTuple) -> Result<f64> {
    if tuple.r() < 2 {
        return domain("B(chi, theta) needs at least two characters");
    }
    Ok(b_sum(tuple))
}

/// Leading-order predictions for `Ξ_j` at weights `(α, 1, …, 1)`.
pub fn pos_xi_expansion(tuple: &CharacterTuple, sigma: f64, alpha: f64) -> Result<Vec<f64>> {
    check_factor_sigma(sigma)?;
    if !(alpha.is_finite() && alpha > 0.0) {
        return domain(format!("alpha = {alpha} must be positive"));
    }
    let r = tuple.r();
    let th = tuple.thetas();
    let beta = 1.0 / sigma;
    let b = b_sum(tuple);
    let mut out = Vec::with_capacity(r);
    let c = (r as f64 - 1.0 - (2.0 * sigma - 1.0) * b) / (4.0 * sigma * alpha * alpha);
    out.push(alpha.powf(beta - 1.0) * (1.0 + c * (beta - 2.0)));
    let lower = alpha.powf(beta - 2.0) / (2.0 * sigma);
    for j in 1..r {
        // at most one partner exists for inequivalent tuples
        let v = match (1..r).find(|&l| square_relation(tuple, j, l)) {
            Some(l) => lower * (1.0 - (2.0 * sigma - 1.0) * (2.0 * th[0] - th[j] - th[l]).cos()),
            None => lower,
        };
        out.push(v);
    }
    Ok(out)
}

fn gap_from(sigma: f64, xi: f64, xi_js: &[f64]) -> Result<f64> {
    if let Some(j) = xi_js.iter().position(|&v| v < 0.0) {
        return domain(format!(
            "Xi_{} = {} is negative; the gap is undefined (use find_alpha to pick weights)",
            j + 1,
            xi_js[j]
        ));
    }
    let k = 1.0 / (1.0 - sigma);
    let rhs: CompensatedSum = xi_js.iter().map(|v| v.powf(k)).collect();
    Ok(xi - rhs.value())
}

/// `ξ − Σ_j Ξ_j^{1/(1-σ)}`.
pub fn repulsion_gap(tuple: &CharacterTuple, sigma: f64, weights: &Weights) -> Result<f64> {
    let x = xi(tuple, sigma, weights)?;
    let f = xi_j_factors(tuple, sigma, weights)?;
    gap_from(sigma, x, &f.values)
}

/// Smallest `a = 2^k`, `1 <= k <= 40`, with all `Ξ_j > 0` and positive gap
/// at weights `(a, 1, …, 1)`. The gap is not checked for `r = 1`.
pub fn find_alpha(tuple: &CharacterTuple, sigma: f64) -> Result<Weights> {
    check_factor_sigma(sigma)?;
    let r = tuple.r();
    let mut last = String::new();
    for k in 1..=40 {
        let w = Weights::leading((1u64 << k) as f64, r)?;
        let f = xi_j_factors(tuple, sigma, &w)?;
        let min = f.values.iter().cloned().fold(f64::INFINITY, f64::min);
        if min <= 0.0 {
            last = format!("a = 2^{k}: min Xi_j = {min:e}");
            continue;
        }
        if r == 1 {
            return Ok(w);
        }
        let gap = gap_from(sigma, xi(tuple, sigma, &w)?, &f.values)?;
        if gap > 0.0 {
            return Ok(w);
        }
        last = format!("a = 2^{k}: gap = {gap:e}");
    }
    Err(Error::SearchFailed(format!("no a <= 2^40 works for sigma = {sigma}; last: {last}")))
}

/// All factors at once.
pub fn factor_report(tuple: &CharacterTuple, sigma: f64, weights: &Weights) -> Result<FactorReport> {
    let x = xi(tuple, sigma, weights)?;
    let f = xi_j_factors(tuple, sigma, weights)?;
    let tilde = (tuple.r() == 2).then(|| tilde_xi_from(sigma, xi(tuple, sigma, &Weights::ones(2)).unwrap_or(x)));
    let gap = gap_from(sigma, x, &f.values).ok();
    Ok(FactorReport {
        sigma,
        xi: x,
        xi_js: f.values,
        tilde_xi: tilde,
        b_factor: b_sum(tuple),
        gap,
        star_excluded_count: f.star_excluded_count,
    })
}

/// One tuple/σ with some `Ξ_j < 0` at `α = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeXiHit {
    /// Position of the subset in lexicographic order of index sets.
    pub subset_index: u64,
    pub characters: Vec<CharacterSpec>,
    pub sigma: f64,
    pub min_xi_j: f64,
    /// 0-based index of the minimizing `Ξ_j`.
    pub argmin: usize,
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `idx`-th `k`-subset of `0..n` in lexicographic order.
fn unrank_subset(mut idx: u64, n: u64, k: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k as usize);
    let mut start = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        let mut v = start;
        loop {
            let c = binomial(n - v - 1, remaining);
            if idx < c {
                break;
            }
            idx -= c;
            v += 1;
        }
        out.push(v as usize);
        start = v + 1;
    }
    out
}

/// Enumerates every `r`-subset of the characters mod `q` and reports each
/// `(subset, σ)` whose smallest `Ξ_j` at `α = 1` is below `-1e-12`, sorted
/// by that minimum. `thetas` defaults to zeros.
pub fn search_negative_xi(q: u64, r: usize, sigma_grid: &[f64], thetas: Option<&[f64]>) -> Result<Vec<NegativeXiHit>> {
    let chars = enumerate_characters(q)?;
    let n = chars.len() as u64;
    if r == 0 || r as u64 > n {
        return domain(format!("tuple size {r} must lie in 1..={n}"));
    }
    let thetas: Vec<f64> = match thetas {
        Some(t) if t.len() == r => t.to_vec(),
        Some(t) => return domain(format!("{} angles given for tuples of size {r}", t.len())),
        None => vec![0.0; r],
    };
    for &s in sigma_grid {
        check_factor_sigma(s)?;
    }
    let total = binomial(n, r as u64);
    if total > SEARCH_BUDGET {
        return Err(Error::Budget(format!("C({n}, {r}) = {total} subsets exceeds the budget of {SEARCH_BUDGET}")));
    }
    let weights = Weights::ones(r);
    let per_subset: Result<Vec<Vec<NegativeXiHit>>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let subset = unrank_subset(idx, n, r as u64);
            let picked: Vec<_> = subset.iter().map(|&i| chars[i].clone()).collect();
            let tuple = make_tuple(picked, thetas.clone(), false)?;
            let mut hits = Vec::new();
            for &sigma in sigma_grid {
                let f = xi_j_factors(&tuple, sigma, &weights)?;
                let (argmin, min) =
                    f.values
                        .iter()
                        .cloned()
                        .enumerate()
                        .fold((0, f64::INFINITY), |b, (i, v)| if v < b.1 { (i, v) } else { b });
                if min < NEGATIVE_TOL {
                    hits.push(NegativeXiHit {
                        subset_index: idx,
                        characters: tuple.specs(),
                        sigma,
                        min_xi_j: min,
                        argmin,
                    });
                }
            }
            Ok(hits)
        })
        .collect();
    let mut hits: Vec<NegativeXiHit> = per_subset?.into_iter().flatten().collect();
    hits.sort_by(|a, b| a.min_xi_j.total_cmp(&b.min_xi_j).then(a.subset_index.cmp(&b.subset_index)));
    Ok(hits)
}
