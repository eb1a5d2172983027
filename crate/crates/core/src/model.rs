//! The random Euler-product model `P_j(σ, 𝒳, X) = Σ_{p<=X} χ_j(p)𝒳(p)/p^σ`
//! with independent `𝒳(p)` uniform on the unit circle.
//!
//! Sampling is reproducible: sample `n` draws its phases, in ascending prime
//! order, from a ChaCha8 stream selected by `n` under a key derived from the
//! seed. Any thread count yields the same rows.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::CharacterTuple;
use crate::error::{domain, Result};
use crate::factors::f_value;
use crate::numeric::{compensated_sum, CompensatedSum};
use crate::primes::{gcd, primes_up_to, totient};
use crate::special::{g_sigma, ln_i0};

const PRIME_CHUNK: usize = 1 << 14;

/// Parameters of one sampling run.
#[derive(Debug, Clone)]
pub struct RandomModelConfig {
    pub tuple: CharacterTuple,
    pub sigma: f64,
    /// `X`, the largest prime included.
    pub prime_cutoff: u64,
    pub samples: usize,
    pub seed: u64,
}

impl RandomModelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return domain(format!("sigma = {} must be positive", self.sigma));
        }
        if self.prime_cutoff < 2 {
            return domain(format!("no primes up to X = {}", self.prime_cutoff));
        }
        if self.samples == 0 {
            return domain("at least one sample is required");
        }
        Ok(())
    }
}

/// `N` samples of the twisted model sums for every character of the tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    pub dim: usize,
    /// Row-major `Re e^{-iθ_j}·P_j`.
    pub samples: Vec<f64>,
    /// Row-major `e^{-iθ_j}·P_j`.
    pub sums: Vec<Complex64>,
    pub seed: u64,
}

/// A Monte Carlo mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
}

impl McEstimate {
    pub fn from_values<I: IntoIterator<Item = f64>>(values: I) -> Self {
        let v: Vec<f64> = values.into_iter().collect();
        let n = v.len() as f64;
        let mean = compensated_sum(v.iter().copied()) / n;
        let var = compensated_sum(v.iter().map(|x| (x - mean) * (x - mean))) / (n - 1.0).max(1.0);
        Self { mean, stderr: (var / n).sqrt() }
    }
}

impl EmpiricalDistribution {
    pub fn len(&self) -> usize {
        self.samples.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.samples[n * self.dim..(n + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.samples.chunks_exact(self.dim)
    }

    /// Column `j` of the real parts.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    /// Estimate of `E exp(Σ_j x_j·Re e^{-iθ_j}P_j)`.
    pub fn mgf_estimate(&self, x: &[f64]) -> McEstimate {
        McEstimate::from_values(self.rows().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().exp()))
    }

    /// Estimate of `E|P_j|^{2k}`.
    pub fn abs_moment(&self, j: usize, k: u32) -> McEstimate {
        McEstimate::from_values(self.sums.chunks_exact(self.dim).map(|r| r[j].norm_sqr().powi(k as i32)))
    }
}

/// `e^{-iθ_j}·χ_j(p)·p^{-σ}` for every prime `p <= X`, row-major.
fn coefficients(tuple: &CharacterTuple, sigma: f64, primes: &[u64]) -> Vec<Complex64> {
    let r = tuple.r();
    let mut out = Vec::with_capacity(primes.len() * r);
    for &p in primes {
        let w = (p as f64).powf(-sigma);
        out.extend((0..r).map(|j| tuple.twisted_value(j, p) * w));
    }
    out
}

/// RNG for sample `n`.
pub fn sample_rng(seed: u64, n: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n);
    rng
}

/// Draws `N` independent samples of the model.
pub fn sample_model(config: &RandomModelConfig) -> Result<EmpiricalDistribution> {
    config.validate()?;
    let primes = primes_up_to(config.prime_cutoff)?;
    let r = config.tuple.r();
    let coeff = coefficients(&config.tuple, config.sigma, &primes);
    let sums: Vec<Complex64> = (0..config.samples)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut rng = sample_rng(config.seed, n as u64);
            let mut re = vec![CompensatedSum::new(); r];
            let mut im = vec![CompensatedSum::new(); r];
            for row in coeff.chunks_exact(r) {
                let phi: f64 = rng.random::<f64>() * std::f64::consts::TAU;
                let z = Complex64::from_polar(1.0, phi);
                for j in 0..r {
                    let t = row[j] * z;
                    re[j].add(t.re);
                    im[j].add(t.im);
                }
            }
            (0..r).map(move |j| Complex64::new(re[j].value(), im[j].value()))
        })
        .collect();
    Ok(EmpiricalDistribution { dim: r, samples: sums.iter().map(|z| z.re).collect(), sums, seed: config.seed })
}

fn chunked_prime_sum<F: Fn(u64) -> f64 + Sync>(primes: &[u64], f: F) -> f64 {
    let partial: Vec<f64> = primes.par_chunks(PRIME_CHUNK).map(|c| compensated_sum(c.iter().map(|&p| f(p)))).collect();
    compensated_sum(partial)
}

/// `Σ_{p<=X} log I₀(sqrt(K(p, x))/p^σ)`, the log of the model's moment
/// generating function `E exp(Σ_j x_j Re e^{-iθ_j}P_j)`.
pub fn mgf_product(tuple: &CharacterTuple, sigma: f64, x: &[f64], cutoff: u64) -> Result<f64> {
    if x.len() != tuple.r() {
        return domain(format!("x has length {}, tuple has {} characters", x.len(), tuple.r()));
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return domain(format!("x[{i}] is not finite"));
    }
    let primes = primes_up_to(cutoff)?;
    let r = tuple.r();
    Ok(chunked_prime_sum(&primes, |p| {
        let s: Complex64 = (0..r).map(|j| tuple.twisted_value(j, p) * x[j]).sum();
        ln_i0(s.norm() * (p as f64).powf(-sigma))
    }))
}

/// Both sides of the log-moment asymptotic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
}

impl Comparison {
    fn new(lhs: f64, rhs: f64) -> Self {
        let rel_error = if rhs == 0.0 { (lhs - rhs).abs() } else { ((lhs - rhs) / rhs).abs() };
        Self { lhs, rhs, rel_error }
    }
}

/// `mgf_product` against `(G(σ)/log‖x‖)·F(x)` with `‖·‖` the maximum norm.
pub fn afiq_compare(tuple: &CharacterTuple, sigma: f64, x: &[f64], cutoff: u64) -> Result<Comparison> {
    if cutoff < 30 {
        return domain(format!("requires X >= 30, got {cutoff}"));
    }
    let top = (cutoff as f64).powf(2.0 * sigma / 3.0);
    if let Some(i) = x.iter().position(|&v| !(v >= 3.0 && v <= top * (1.0 + 1e-12))) {
        return domain(format!("requires 3 <= x_j <= X^(2 sigma/3) = {top:.6}, got x[{i}] = {}", x[i]));
    }
    let g = g_sigma(sigma)?.g_value;
    let norm = x.iter().cloned().fold(0.0, f64::max);
    let lhs = mgf_product(tuple, sigma, x, cutoff)?;
    let rhs = g / norm.ln() * f_value(tuple, sigma, x)?;
    Ok(Comparison::new(lhs, rhs))
}

/// `Σ_{p<=X, p≡u (d)} log I₀(x/p^σ)` against `G(σ)·x^{1/σ}/(φ(d)·log(x+2))`.
pub fn b_sum_compare(sigma: f64, u: u64, d: u64, x: f64, cutoff: u64) -> Result<Comparison> {
    if d == 0 || gcd(u, d) != 1 {
        return domain(format!("residue {u} is not coprime to {d}"));
    }
    let top = (cutoff as f64).powf(2.0 * sigma / 3.0);
    if !(x >= 0.0 && x <= top * (1.0 + 1e-12)) {
        return domain(format!("requires 0 <= x <= X^(2 sigma/3) = {top:.6}, got {x}"));
    }
    let g = g_sigma(sigma)?.g_value;
    let primes: Vec<u64> = primes_up_to(cutoff)?.into_iter().filter(|p| p % d == u % d).collect();
    let lhs = chunked_prime_sum(&primes, |p| ln_i0(x * (p as f64).powf(-sigma)));
    let rhs = g * x.powf(1.0 / sigma) / (totient(d) as f64 * (x + 2.0).ln());
    Ok(Comparison::new(lhs, rhs))
}

/// Fraction of samples above every threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub count: u64,
    pub samples: u64,
}

impl TailEstimate {
    pub fn new(count: u64, samples: u64) -> Self {
        let p = count as f64 / samples as f64;
        Self { p_hat: p, stderr: (p * (1.0 - p) / samples as f64).sqrt(), count, samples }
    }
}

/// Model analogue of `Ψ`: rows with `Re e^{-iθ_j}P_j > thresholds[j]` for all `j`.
pub fn mc_joint_tail(dist: &EmpiricalDistribution, thresholds: &[f64]) -> Result<TailEstimate> {
    if thresholds.len() != dist.dim {
        return domain(format!("{} thresholds for dimension {}", thresholds.len(), dist.dim));
    }
    if thresholds.iter().any(|t| !t.is_finite()) {
        return domain("thresholds must be finite");
    }
    let count = dist.rows().filter(|r| r.iter().zip(thresholds).all(|(a, b)| a > b)).count();
    Ok(TailEstimate::new(count as u64, dist.len() as u64))
}

/// `Σ_{p<=X} |χ(p)|²/p^{2σ}` for one character of the tuple.
pub fn variance_sum(tuple: &CharacterTuple, j: usize, sigma: f64, cutoff: u64) -> Result<f64> {
    let primes = primes_up_to(cutoff)?;
    Ok(compensated_sum(primes.iter().map(|&p| tuple.twisted_value(j, p).norm_sqr() * (p as f64).powf(-2.0 * sigma))))
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}
