//! The modified Bessel function `I₀`, its logarithm, and the constants
//!
//! ```text
//! G(σ) = ∫_0^∞ log I₀(u) · u^{-1-1/σ} du,
//! A(σ) = ( σ^{2σ} / ((1-σ)^{2σ-1} · G(σ)^σ) )^{1/(1-σ)}
//! ```
//!
//! which fix the exponent of the large-deviation tails.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use crate::error::{domain, Result};
use crate::quadrature;

/// `I₀` switches from the power series to the asymptotic expansion above this point.
pub const SERIES_CUTOFF: f64 = 15.0;

/// Guard band for `σ`.
pub const SIGMA_MIN: f64 = 0.505;
pub const SIGMA_MAX: f64 = 0.995;

fn check_argument(u: f64) -> Result<()> {
    if !u.is_finite() || u < 0.0 {
        return domain(format!("Bessel argument must be finite and non-negative, got {u}"));
    }
    Ok(())
}

/// `Σ_{n>=1} (u/2)^{2n}/(n!)²`, i.e. `I₀(u) − 1`, summed until the terms
/// stop contributing. All terms are positive so there is no cancellation.
fn series_minus_one(u: f64) -> f64 {
    let q = 0.25 * u * u;
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut n = 1.0;
    loop {
        term *= q / (n * n);
        sum += term;
        if term <= 1e-17 * sum {
            return sum;
        }
        n += 1.0;
    }
}

/// The bracket `1 + 1/(8u) + 9/(128u²) + …` of the large-argument expansion
/// `I₀(u) ~ e^u/√(2πu)·(…)`, truncated at its smallest term.
fn asymptotic_bracket(u: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * u);
        if next >= term || next < 1e-17 {
            return sum;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
}

/// `I₀(u)` without argument checks (NaN in, NaN out).
#[inline]
pub fn i0(u: f64) -> f64 {
    if u <= SERIES_CUTOFF {
        1.0 + series_minus_one(u)
    } else {
        u.exp() / (2.0 * PI * u).sqrt() * asymptotic_bracket(u)
    }
}

/// `log I₀(u)` without argument checks; never overflows.
#[inline]
pub fn ln_i0(u: f64) -> f64 {
    if u <= SERIES_CUTOFF {
        series_minus_one(u).ln_1p()
    } else {
        u - 0.5 * (2.0 * PI * u).ln() + asymptotic_bracket(u).ln()
    }
}

/// `I₀(u)` for `u >= 0`; relative error below `1e-13`.
pub fn bessel_i0(u: f64) -> Result<f64> {
    check_argument(u)?;
    Ok(i0(u))
}

/// `log I₀(u)` for `u >= 0`, finite for every finite `u`.
pub fn log_bessel_i0(u: f64) -> Result<f64> {
    check_argument(u)?;
    Ok(ln_i0(u))
}

/// `G(σ)` and `A(σ)` for one `σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaConstants {
    pub sigma: f64,
    pub g_value: f64,
    pub a_value: f64,
    pub quadrature_error_estimate: f64,
}

/// `A(σ)` from `G(σ)`.
pub fn a_from_g(sigma: f64, g: f64) -> f64 {
    let log_base = 2.0 * sigma * sigma.ln() - (2.0 * sigma - 1.0) * (1.0 - sigma).ln() - sigma * g.ln();
    (log_base / (1.0 - sigma)).exp()
}

pub fn check_sigma(sigma: f64) -> Result<()> {
    if !(SIGMA_MIN..=SIGMA_MAX).contains(&sigma) {
        return domain(format!("sigma = {sigma} outside the supported band [{SIGMA_MIN}, {SIGMA_MAX}]"));
    }
    Ok(())
}

/// Default absolute error target for `G(σ)`.
pub const G_ABS_TOL: f64 = 1e-10;

/// Below this point `log I₀` is replaced by its Taylor polynomial and integrated exactly.
const HEAD_CUTOFF: f64 = 1e-3;
/// Above this point `log I₀` is replaced by its asymptotic expansion and integrated exactly.
const TAIL_CUTOFF: f64 = 1e6;

/// `log I₀(u) = Σ c_k u^{2k}` near zero.
const HEAD_COEFFS: [(i32, f64); 4] = [(2, 0.25), (4, -1.0 / 64.0), (6, 1.0 / 576.0), (8, -11.0 / 49152.0)];

/// `log I₀(u) = u − ½·log(2πu) + Σ c_k u^{-k} + O(u^{-5})`.
const TAIL_COEFFS: [f64; 4] = [1.0 / 8.0, 1.0 / 16.0, 25.0 / 384.0, 13.0 / 128.0];

fn head_integral(beta: f64) -> (f64, f64) {
    // ∫_0^h u^{k-1-β} du = h^{k-β}/(k-β)
    let h = HEAD_CUTOFF;
    let value = HEAD_COEFFS.iter().map(|&(k, c)| c * h.powf(k as f64 - beta) / (k as f64 - beta)).sum();
    // next Taylor coefficient of log I₀ is 19/409600 ≈ 4.6e-5
    let err = 5e-5 * h.powf(10.0 - beta) / (10.0 - beta);
    (value, err)
}

fn tail_integral(beta: f64) -> (f64, f64) {
    let t = TAIL_CUTOFF;
    let lt = t.ln();
    // ∫_T^∞ u·u^{-1-β} du
    let mut value = t.powf(1.0 - beta) / (beta - 1.0);
    // ∫_T^∞ −½ log(2π) u^{-1-β} du
    value -= 0.5 * (2.0 * PI).ln() * t.powf(-beta) / beta;
    // ∫_T^∞ −½ log(u) u^{-1-β} du
    value -= 0.5 * t.powf(-beta) * (lt / beta + 1.0 / (beta * beta));
    for (k, c) in TAIL_COEFFS.iter().take(3).enumerate() {
        let k = (k + 1) as f64;
        value += c * t.powf(-k - beta) / (k + beta);
    }
    let err = TAIL_COEFFS[3] * t.powf(-4.0 - beta) / (4.0 + beta);
    (value, err)
}

/// `G(σ)` with an explicit absolute error target for the numerical middle part.
pub fn g_sigma_with_tolerance(sigma: f64, abs_tol: f64) -> Result<SigmaConstants> {
    check_sigma(sigma)?;
    let beta = 1.0 / sigma;
    let (head, head_err) = head_integral(beta);
    let (tail, tail_err) = tail_integral(beta);
    // u = e^s turns the measure u^{-1-β} du into e^{-βs} ds
    let integrand = |s: f64| ln_i0(s.exp()) * (-beta * s).exp();
    let (lo, hi) = (HEAD_CUTOFF.ln(), TAIL_CUTOFF.ln());
    let breaks: Vec<f64> = (lo.ceil() as i32..=hi.floor() as i32).map(f64::from).collect();
    let middle = quadrature::integrate(integrand, lo, hi, &breaks, abs_tol, 20_000);
    let g = head + middle.value + tail;
    Ok(SigmaConstants {
        sigma,
        g_value: g,
        a_value: a_from_g(sigma, g),
        quadrature_error_estimate: middle.error + head_err + tail_err,
    })
}

/// `G(σ)` and `A(σ)` at the default tolerance, memoized per `σ`.
pub fn g_sigma(sigma: f64) -> Result<SigmaConstants> {
    static CACHE: OnceLock<Mutex<HashMap<u64, SigmaConstants>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("cache poisoned").get(&sigma.to_bits()) {
        return Ok(*c);
    }
    let c = g_sigma_with_tolerance(sigma, G_ABS_TOL)?;
    cache.lock().expect("cache poisoned").insert(sigma.to_bits(), c);
    Ok(c)
}
