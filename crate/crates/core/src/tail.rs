//! Saddle points and closed-form predictions for the joint tail
//! `Ψ(T, V) = meas{t : Re e^{-iθ_j} log L(σ+it, χ_j) > Ξ_j·V for all j}/T`.
//!
//! The saddle ratio `y` solves `V = G(σ)/(σ·log y) · y^{1/σ-1}`. Its main
//! term `(A/(1-σ))·(V log V)^{σ/(1-σ)}` turns the saddle form
//! `-(1-σ)·ξ·y·V` of `log Ψ` into `-ξ·A·V^{1/(1-σ)}(log V)^{σ/(1-σ)}`.

use crate::characters::CharacterTuple;
use crate::error::{domain, Error, Result};
use crate::factors::{xi, xi_j_factors, Weights};
use crate::special::{check_sigma, g_sigma};

/// Smallest `V` accepted anywhere in this module.
pub const MIN_V: f64 = 3.0;

/// Required relative residual of the saddle equation.
pub const SADDLE_TOL: f64 = 1e-10;

/// Saddle ratio `y = x_j/α_j` and the saddle points themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct Saddle {
    pub y: f64,
    pub log_y: f64,
    pub x: Vec<f64>,
}

/// Tail prediction for one tuple, weights and scale `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailPrediction {
    pub sigma: f64,
    pub v: f64,
    pub y: f64,
    pub x: Vec<f64>,
    /// `V_j = Ξ_j·V`.
    pub thresholds: Vec<f64>,
    pub xi: f64,
    pub log_psi_leading: f64,
    pub log_psi_saddle: f64,
    /// Set when `T` was supplied and `V` lies beyond `(log T)^{1-σ}/log log T`.
    pub warning: Option<String>,
}

fn check_v(v: f64) -> Result<()> {
    if !(v.is_finite() && v >= MIN_V) {
        return domain(format!("V = {v} must be finite and at least {MIN_V}"));
    }
    Ok(())
}

/// `log` of the right side of the saddle equation as a function of `s = log y`.
fn log_saddle_map(sigma: f64, g: f64, s: f64) -> f64 {
    g.ln() - sigma.ln() - s.ln() + (1.0 / sigma - 1.0) * s
}

/// `V` recomputed from `y`.
pub fn saddle_map(sigma: f64, y: f64) -> Result<f64> {
    let g = g_sigma(sigma)?.g_value;
    Ok(log_saddle_map(sigma, g, y.ln()).exp())
}

/// Solves the saddle equation by bisection in `log y` above
/// `y_min = exp(σ/(1-σ)) + 1`, where the map is increasing.
pub fn solve_saddle(sigma: f64, weights: &Weights, v: f64) -> Result<Saddle> {
    check_sigma(sigma)?;
    check_v(v)?;
    let g = g_sigma(sigma)?.g_value;
    let target = v.ln();
    let k = sigma / (1.0 - sigma);
    // ln(e^k + 1) without overflow
    let mut lo = k + (-k).exp().ln_1p();
    let floor = log_saddle_map(sigma, g, lo);
    if target < floor {
        return domain(format!(
            "V = {v} too small for asymptotic regime (minimum {:.6e} at sigma = {sigma})",
            floor.exp()
        ));
    }
    let mut hi = lo.max(200.0);
    while log_saddle_map(sigma, g, hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if log_saddle_map(sigma, g, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = if (log_saddle_map(sigma, g, lo) - target).abs() <= (log_saddle_map(sigma, g, hi) - target).abs() {
        lo
    } else {
        hi
    };
    let resid = (log_saddle_map(sigma, g, s) - target).exp_m1().abs();
    if resid > SADDLE_TOL {
        return Err(Error::SearchFailed(format!("saddle residual {resid:e} above {SADDLE_TOL:e}")));
    }
    let y = s.exp();
    if !y.is_finite() {
        return domain(format!("saddle ratio exp({s}) overflows"));
    }
    Ok(Saddle { y, log_y: s, x: weights.alphas().iter().map(|a| a * y).collect() })
}

/// `(A(σ)/(1-σ))·(V log V)^{σ/(1-σ)}`.
pub fn asymptotic_saddle(sigma: f64, v: f64) -> Result<f64> {
    check_v(v)?;
    let a = g_sigma(sigma)?.a_value;
    Ok(a / (1.0 - sigma) * (v * v.ln()).powf(sigma / (1.0 - sigma)))
}

fn leading_shape(sigma: f64, a: f64, v: f64) -> f64 {
    a * v.powf(1.0 / (1.0 - sigma)) * v.ln().powf(sigma / (1.0 - sigma))
}

/// `-A(σ)·V^{1/(1-σ)}(log V)^{σ/(1-σ)}`, the one-character tail.
pub fn predict_single(sigma: f64, v: f64) -> Result<f64> {
    check_v(v)?;
    let a = g_sigma(sigma)?.a_value;
    Ok(-leading_shape(sigma, a, v))
}

/// Range warning for `V` at height `T`.
pub fn range_warning(sigma: f64, v: f64, t: f64) -> Option<String> {
    let lt = t.ln();
    if lt.is_nan() || lt <= 1.0 {
        return Some(format!("T = {t:e} is too small for loglog T > 0; asymptotics do not apply"));
    }
    let limit = lt.powf(1.0 - sigma) / lt.ln();
    (v > limit).then(|| {
        format!("V = {v} exceeds (log T)^(1-sigma)/loglog T = {limit:.4} at T = {t:e}; asymptotics may not apply")
    })
}

/// Joint tail prediction; every `Ξ_j` must be positive.
pub fn predict_log_psi(
    tuple: &CharacterTuple,
    sigma: f64,
    weights: &Weights,
    v: f64,
    t: Option<f64>,
) -> Result<TailPrediction> {
    check_sigma(sigma)?;
    check_v(v)?;
    let f = xi_j_factors(tuple, sigma, weights)?;
    if let Some(j) = f.values.iter().position(|&x| x <= 0.0) {
        return domain(format!("Xi_{} = {:e} is not positive; choose weights with find_alpha", j + 1, f.values[j]));
    }
    let x = xi(tuple, sigma, weights)?;
    let a = g_sigma(sigma)?.a_value;
    let saddle = solve_saddle(sigma, weights, v)?;
    Ok(TailPrediction {
        sigma,
        v,
        y: saddle.y,
        x: saddle.x,
        thresholds: f.values.iter().map(|xj| xj * v).collect(),
        xi: x,
        log_psi_leading: -x * leading_shape(sigma, a, v),
        log_psi_saddle: -(1.0 - sigma) * x * saddle.y * v,
        warning: t.and_then(|t| range_warning(sigma, v, t)),
    })
}
