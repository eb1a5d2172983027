//! Joint evaluation of `S_j(t) = Re e^{-iθ_j} Σ_{p<=X} χ_j(p) p^{-σ-it}` on the
//! grid `t_k = T + kΔ`.
//!
//! Each prime carries a rotor `z_p = e^{-i t log p}` that is advanced by one
//! complex multiplication per step and rebuilt from a double-double phase at
//! every global index divisible by `K`. Work is split into chunks aligned to
//! multiples of `K`, so the value at index `k` does not depend on chunking or
//! thread count.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::CharacterTuple;
use crate::error::{domain, Error, Result};
use crate::numeric::{grid_phase, CompensatedSum};
use crate::primes::primes_up_to;

/// Default rebuild interval `K` for the rotors.
pub const DEFAULT_RENORM: usize = 4096;

/// Largest grid accepted by [`scan`].
pub const MAX_GRID_POINTS: u64 = 10_000_000_000;

/// Target chunk length; rounded to a multiple of `K`.
const CHUNK_TARGET: usize = 1 << 16;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub tuple: CharacterTuple,
    pub sigma: f64,
    /// `T`.
    pub t_start: f64,
    /// Defaults to `2T` when `None`.
    pub t_end: Option<f64>,
    /// `Δ`.
    pub step: f64,
    /// `X`.
    pub prime_cutoff: u64,
    /// Adds `χ(p²)p^{-2σ-2it}/2` for `p² <= X`.
    pub include_prime_squares: bool,
    /// `K`.
    pub renorm_interval: usize,
    /// Store every `decimation`-th grid point; `0` stores nothing.
    pub decimation: u64,
    /// Grid indices whose values are always reported.
    pub probes: Vec<u64>,
}

impl ScanConfig {
    /// Defaults: `t_end = 2T`, `X = (log T)²`, `K = 4096`, no storage.
    pub fn new(tuple: CharacterTuple, sigma: f64, t_start: f64, step: f64) -> Self {
        let cutoff = t_start.ln().powi(2).floor().max(3.0) as u64;
        Self {
            tuple,
            sigma,
            t_start,
            t_end: None,
            step,
            prime_cutoff: cutoff,
            include_prime_squares: false,
            renorm_interval: DEFAULT_RENORM,
            decimation: 0,
            probes: Vec::new(),
        }
    }

    pub fn t_end(&self) -> f64 {
        self.t_end.unwrap_or(2.0 * self.t_start)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_start.is_finite() && self.t_start >= 5.0) {
            return domain(format!("t_start = {} must be at least 5", self.t_start));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return domain(format!("step = {} must be positive", self.step));
        }
        if !(self.t_end().is_finite() && self.t_end() >= self.t_start) {
            return domain(format!("t_end = {} precedes t_start", self.t_end()));
        }
        if self.prime_cutoff < 3 {
            return domain(format!("prime cutoff {} must be at least 3", self.prime_cutoff));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return domain(format!("sigma = {} must be positive", self.sigma));
        }
        if self.renorm_interval == 0 {
            return domain("renorm interval must be positive");
        }
        Ok(())
    }

    /// `floor((t_end − t_start)/Δ) + 1`. Quotients within `1e-6` below an
    /// integer count as that integer, since `t_end − t_start` loses digits
    /// when `T` is large compared to the range.
    pub fn grid_count(&self) -> u64 {
        let q = (self.t_end() - self.t_start) / self.step;
        (q + 1e-6).floor() as u64 + 1
    }

    pub fn t_at(&self, k: u64) -> f64 {
        self.t_start + k as f64 * self.step
    }
}

/// Output of [`scan`].
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub sigma: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub step: f64,
    pub dim: usize,
    pub grid_count: u64,
    pub thresholds: Vec<Vec<f64>>,
    /// Points with `S_j > v_j` for all `j`, one per threshold vector.
    pub exceedance_counts: Vec<u64>,
    /// The same counts split by contiguous chunk, `[threshold][chunk]`.
    pub chunk_counts: Vec<Vec<u64>>,
    pub chunk_sizes: Vec<u64>,
    /// `max_k min_j S_j(t_k)`.
    pub running_max_min: f64,
    pub argmax_index: u64,
    pub argmax_t: f64,
    /// Grid mean of each `S_j`.
    pub means: Vec<f64>,
    pub decimation: u64,
    pub stored_indices: Vec<u64>,
    /// Row-major, `dim` values per stored index.
    pub stored_values: Vec<f64>,
    pub probe_values: Vec<(u64, Vec<f64>)>,
}

impl ScanResult {
    pub fn stored_row(&self, i: usize) -> &[f64] {
        &self.stored_values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn t_at(&self, k: u64) -> f64 {
        self.t_start + k as f64 * self.step
    }
}

/// Precomputed per-prime data.
struct Kernel {
    r: usize,
    log_p: Vec<f64>,
    /// `e^{-iθ_j}χ_j(p)p^{-σ}`, prime-major.
    coeff: Vec<Complex64>,
    /// Number of leading primes with a square term.
    n_squares: usize,
    /// `e^{-iθ_j}χ_j(p²)p^{-2σ}/2`, prime-major.
    coeff_sq: Vec<Complex64>,
    step_rot: Vec<Complex64>,
    t_start: f64,
    step: f64,
}

impl Kernel {
    fn new(config: &ScanConfig) -> Result<Self> {
        let primes = primes_up_to(config.prime_cutoff)?;
        let tuple = &config.tuple;
        let r = tuple.r();
        let sigma = config.sigma;
        let log_p: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
        let mut coeff = Vec::with_capacity(primes.len() * r);
        for &p in &primes {
            let w = (p as f64).powf(-sigma);
            coeff.extend((0..r).map(|j| tuple.twisted_value(j, p) * w));
        }
        let n_squares = if config.include_prime_squares {
            primes.iter().take_while(|&&p| p.saturating_mul(p) <= config.prime_cutoff).count()
        } else {
            0
        };
        let mut coeff_sq = Vec::with_capacity(n_squares * r);
        for &p in &primes[..n_squares] {
            let w = 0.5 * (p as f64).powf(-2.0 * sigma);
            coeff_sq.extend((0..r).map(|j| tuple.twisted_value(j, p * p) * w));
        }
        let step_rot = log_p.iter().map(|&l| Complex64::from_polar(1.0, -grid_phase(0.0, config.step, 1, l))).collect();
        Ok(Self { r, log_p, coeff, n_squares, coeff_sq, step_rot, t_start: config.t_start, step: config.step })
    }

    fn rotors_at(&self, k: u64, out: &mut [Complex64]) {
        for (z, &l) in out.iter_mut().zip(&self.log_p) {
            *z = Complex64::from_polar(1.0, -grid_phase(self.t_start, self.step, k, l));
        }
    }

    fn evaluate(&self, z: &[Complex64], out: &mut [f64]) {
        let r = self.r;
        out.iter_mut().for_each(|v| *v = 0.0);
        for (zp, c) in z.iter().zip(self.coeff.chunks_exact(r)) {
            for j in 0..r {
                out[j] += c[j].re * zp.re - c[j].im * zp.im;
            }
        }
        for (zp, c) in z[..self.n_squares].iter().zip(self.coeff_sq.chunks_exact(r)) {
            let z2 = zp * zp;
            for j in 0..r {
                out[j] += c[j].re * z2.re - c[j].im * z2.im;
            }
        }
    }
}

/// `S_j(t_k)` computed from scratch at one grid index.
pub fn evaluate_direct(config: &ScanConfig, k: u64) -> Result<Vec<f64>> {
    config.validate()?;
    let kernel = Kernel::new(config)?;
    let mut z = vec![Complex64::new(0.0, 0.0); kernel.log_p.len()];
    kernel.rotors_at(k, &mut z);
    let mut out = vec![0.0; kernel.r];
    kernel.evaluate(&z, &mut out);
    Ok(out)
}

/// Largest `||z_p| − 1|` after `steps` rotor multiplications from `T`.
pub fn rotor_drift(config: &ScanConfig, steps: usize) -> Result<f64> {
    let kernel = Kernel::new(config)?;
    let mut z = vec![Complex64::new(0.0, 0.0); kernel.log_p.len()];
    kernel.rotors_at(0, &mut z);
    for _ in 0..steps {
        for (zp, rot) in z.iter_mut().zip(&kernel.step_rot) {
            *zp *= rot;
        }
    }
    Ok(z.iter().map(|zp| (zp.norm() - 1.0).abs()).fold(0.0, f64::max))
}

struct ChunkOut {
    counts: Vec<u64>,
    size: u64,
    best: f64,
    best_index: u64,
    sums: Vec<CompensatedSum>,
    stored_indices: Vec<u64>,
    stored_values: Vec<f64>,
    probes: Vec<(u64, Vec<f64>)>,
}

fn scan_chunk(
    kernel: &Kernel,
    config: &ScanConfig,
    thresholds: &[Vec<f64>],
    probes: &HashMap<u64, usize>,
    k0: u64,
    k1: u64,
) -> ChunkOut {
    let r = kernel.r;
    let renorm = config.renorm_interval as u64;
    let mut z = vec![Complex64::new(0.0, 0.0); kernel.log_p.len()];
    let mut s = vec![0.0; r];
    let mut out = ChunkOut {
        counts: vec![0; thresholds.len()],
        size: k1 - k0,
        best: f64::NEG_INFINITY,
        best_index: k0,
        sums: vec![CompensatedSum::new(); r],
        stored_indices: Vec::new(),
        stored_values: Vec::new(),
        probes: Vec::new(),
    };
    for k in k0..k1 {
        if k == k0 || k % renorm == 0 {
            kernel.rotors_at(k, &mut z);
        }
        kernel.evaluate(&z, &mut s);
        for (c, th) in out.counts.iter_mut().zip(thresholds) {
            if s.iter().zip(th).all(|(a, b)| a > b) {
                *c += 1;
            }
        }
        let m = s.iter().cloned().fold(f64::INFINITY, f64::min);
        if m > out.best {
            out.best = m;
            out.best_index = k;
        }
        for (acc, v) in out.sums.iter_mut().zip(&s) {
            acc.add(*v);
        }
        if config.decimation > 0 && k % config.decimation == 0 {
            out.stored_indices.push(k);
            out.stored_values.extend_from_slice(&s);
        }
        if probes.contains_key(&k) {
            out.probes.push((k, s.clone()));
        }
        for (zp, rot) in z.iter_mut().zip(&kernel.step_rot) {
            *zp *= rot;
        }
    }
    out
}

/// Scans the whole grid, counting joint exceedances of each threshold vector.
pub fn scan(config: &ScanConfig, thresholds: &[Vec<f64>]) -> Result<ScanResult> {
    config.validate()?;
    let r = config.tuple.r();
    if let Some(i) = thresholds.iter().position(|t| t.len() != r) {
        return domain(format!("threshold vector {i} has length {}, expected {r}", thresholds[i].len()));
    }
    if thresholds.iter().flatten().any(|v| !v.is_finite()) {
        return domain("thresholds must be finite");
    }
    let n = config.grid_count();
    if n > MAX_GRID_POINTS {
        return Err(Error::Budget(format!("{n} grid points exceeds the limit of {MAX_GRID_POINTS}")));
    }
    let kernel = Kernel::new(config)?;
    let k = config.renorm_interval;
    let chunk = (CHUNK_TARGET / k).max(1) as u64 * k as u64;
    let n_chunks = n.div_ceil(chunk);
    let probes: HashMap<u64, usize> =
        config.probes.iter().filter(|&&p| p < n).enumerate().map(|(i, &p)| (p, i)).collect();
    let chunks: Vec<ChunkOut> = (0..n_chunks)
        .into_par_iter()
        .map(|c| scan_chunk(&kernel, config, thresholds, &probes, c * chunk, ((c + 1) * chunk).min(n)))
        .collect();

    let mut counts = vec![0u64; thresholds.len()];
    let mut chunk_counts = vec![Vec::with_capacity(chunks.len()); thresholds.len()];
    let mut sums = vec![CompensatedSum::new(); r];
    let (mut best, mut best_index) = (f64::NEG_INFINITY, 0);
    let mut stored_indices = Vec::new();
    let mut stored_values = Vec::new();
    let mut probe_values = Vec::new();
    for c in &chunks {
        for (i, &v) in c.counts.iter().enumerate() {
            counts[i] += v;
            chunk_counts[i].push(v);
        }
        for (acc, s) in sums.iter_mut().zip(&c.sums) {
            acc.add(s.value());
        }
        if c.best > best {
            best = c.best;
            best_index = c.best_index;
        }
        stored_indices.extend_from_slice(&c.stored_indices);
        stored_values.extend_from_slice(&c.stored_values);
        probe_values.extend(c.probes.iter().cloned());
    }
    Ok(ScanResult {
        sigma: config.sigma,
        t_start: config.t_start,
        t_end: config.t_end(),
        step: config.step,
        dim: r,
        grid_count: n,
        thresholds: thresholds.to_vec(),
        exceedance_counts: counts,
        chunk_counts,
        chunk_sizes: chunks.iter().map(|c| c.size).collect(),
        running_max_min: best,
        argmax_index: best_index,
        argmax_t: config.t_at(best_index),
        means: sums.iter().map(|s| s.value() / n as f64).collect(),
        decimation: config.decimation,
        stored_indices,
        stored_values,
        probe_values,
    })
}

/// Grid estimate of `Ψ` for one threshold vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiEstimate {
    pub fraction: f64,
    pub count: u64,
    pub grid_count: u64,
    /// `sqrt(f(1−f)/n)`, as if grid points were independent.
    pub stderr_proxy: f64,
    /// Batch-means standard error over contiguous chunks, when available.
    pub stderr_batch: Option<f64>,
    /// Always set: neighbouring grid points are correlated.
    pub correlated: bool,
}

fn batch_stderr(counts: &[u64], sizes: &[u64]) -> Option<f64> {
    if counts.len() < 2 {
        return None;
    }
    let total: u64 = sizes.iter().sum();
    let f = counts.iter().sum::<u64>() as f64 / total as f64;
    // weighted batch means
    let mean_size = total as f64 / sizes.len() as f64;
    let ss: f64 = counts
        .iter()
        .zip(sizes)
        .map(|(&c, &s)| {
            let w = s as f64 / mean_size;
            w * w * (c as f64 / s as f64 - f).powi(2)
        })
        .sum();
    let b = counts.len() as f64;
    Some((ss / (b * (b - 1.0))).sqrt())
}

/// Fraction of grid points above `threshold` in every coordinate.
pub fn empirical_psi(result: &ScanResult, threshold: &[f64]) -> Result<PsiEstimate> {
    let n = result.grid_count;
    let (count, batch) = if let Some(i) = result.thresholds.iter().position(|t| t.as_slice() == threshold) {
        (result.exceedance_counts[i], batch_stderr(&result.chunk_counts[i], &result.chunk_sizes))
    } else if result.decimation == 1 && result.stored_indices.len() as u64 == n {
        if threshold.len() != result.dim {
            return domain(format!("threshold has length {}, expected {}", threshold.len(), result.dim));
        }
        let c = result
            .stored_values
            .chunks_exact(result.dim)
            .filter(|row| row.iter().zip(threshold).all(|(a, b)| a > b))
            .count();
        (c as u64, None)
    } else {
        return Err(Error::State("no counter for this threshold and values were not fully stored".into()));
    };
    let f = count as f64 / n as f64;
    Ok(PsiEstimate {
        fraction: f,
        count,
        grid_count: n,
        stderr_proxy: (f * (1.0 - f) / n as f64).sqrt(),
        stderr_batch: batch,
        correlated: true,
    })
}

/// Location and size of the largest `min_j S_j` on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimultaneousMax {
    pub t_star: f64,
    pub value: f64,
    /// `value / ((log T)^{1-σ}/log log T)`.
    pub normalized: f64,
}

pub fn find_simultaneous_max(result: &ScanResult) -> SimultaneousMax {
    let lt = result.t_start.ln();
    let scale = lt.powf(1.0 - result.sigma) / lt.ln();
    SimultaneousMax {
        t_star: result.argmax_t,
        value: result.running_max_min,
        normalized: result.running_max_min / scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_characters, make_tuple};

    fn config(t: f64, n_points: u64) -> ScanConfig {
        let c = enumerate_characters(5).unwrap();
        let tuple = make_tuple(vec![c[1].clone(), c[2].clone()], vec![0.0, 0.4], true).unwrap();
        let mut cfg = ScanConfig::new(tuple, 0.75, t, 0.05);
        cfg.t_end = Some(t + (n_points - 1) as f64 * 0.05);
        cfg
    }

    #[test]
    fn grid_count_includes_both_ends() {
        let cfg = config(1e4, 1001);
        assert_eq!(cfg.grid_count(), 1001);
        let mut d = cfg.clone();
        d.t_end = None;
        assert_eq!(d.grid_count(), 200_001);
    }

    #[test]
    fn validation() {
        let mut c = config(1e4, 10);
        c.t_start = 4.0;
        assert!(scan(&c, &[]).is_err());
        let mut c = config(1e4, 10);
        c.step = 0.0;
        assert!(scan(&c, &[]).is_err());
        let c = config(1e4, 10);
        assert!(scan(&c, &[vec![0.0]]).is_err());
        let mut c = config(1e4, 10);
        c.t_end = Some(1e4 + 1e12);
        assert!(matches!(scan(&c, &[]), Err(Error::Budget(_))));
    }

    #[test]
    fn first_point_matches_direct_sum() {
        let cfg = config(12345.0, 3);
        let res = scan(&ScanConfig { probes: vec![0], ..cfg.clone() }, &[]).unwrap();
        let c = enumerate_characters(5).unwrap();
        let t = cfg.t_start;
        for (j, (idx, th)) in [(1, 0.0), (2, 0.4)].iter().enumerate() {
            let mut s = 0.0;
            for p in primes_up_to(cfg.prime_cutoff).unwrap() {
                let v = Complex64::from_polar(1.0, -th)
                    * c[*idx].value(p)
                    * Complex64::from_polar((p as f64).powf(-0.75), -t * (p as f64).ln());
                s += v.re;
            }
            assert!((res.probe_values[0].1[j] - s).abs() < 1e-9);
        }
    }

    #[test]
    fn incremental_matches_direct_across_renormalization() {
        let mut cfg = config(1e5, 20_000);
        cfg.renorm_interval = 1000;
        cfg.include_prime_squares = true;
        cfg.probes = vec![0, 1, 999, 1000, 1001, 12_345, 19_999];
        let res = scan(&cfg, &[]).unwrap();
        assert_eq!(res.probe_values.len(), cfg.probes.len());
        for (k, v) in &res.probe_values {
            let d = evaluate_direct(&cfg, *k).unwrap();
            for j in 0..2 {
                assert!((v[j] - d[j]).abs() < 1e-9, "k={k}");
            }
        }
    }

    #[test]
    fn chunking_does_not_change_results() {
        let mut cfg = config(1e4, 150_000);
        cfg.decimation = 997;
        let th = vec![vec![0.5, 0.5], vec![-0.2, 0.1]];
        let a = scan(&cfg, &th).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| scan(&cfg, &th).unwrap());
        assert_eq!(a.exceedance_counts, b.exceedance_counts);
        assert_eq!(a.stored_values, b.stored_values);
        assert_eq!(a.running_max_min, b.running_max_min);
    }

    #[test]
    fn counters_match_recount_and_edges() {
        let mut cfg = config(1e4, 10_000);
        cfg.decimation = 1;
        let th = vec![vec![-1e9, -1e9], vec![0.3, 0.2], vec![1.0, -0.5]];
        let res = scan(&cfg, &th).unwrap();
        assert_eq!(res.exceedance_counts[0], res.grid_count);
        for (i, t) in th.iter().enumerate() {
            let n = res.stored_values.chunks_exact(2).filter(|row| row[0] > t[0] && row[1] > t[1]).count() as u64;
            assert_eq!(n, res.exceedance_counts[i]);
        }
        // recount path for an unregistered vector
        let e = empirical_psi(&res, &[0.35, 0.2]).unwrap();
        let f = empirical_psi(&res, &[0.3, 0.2]).unwrap();
        assert!(e.fraction <= f.fraction);
        let (k, _) = res
            .stored_values
            .chunks_exact(2)
            .enumerate()
            .max_by(|a, b| a.1[0].min(a.1[1]).total_cmp(&b.1[0].min(b.1[1])))
            .unwrap();
        assert_eq!(res.argmax_index, k as u64);
    }

    #[test]
    fn missing_counter_is_a_state_error() {
        let res = scan(&config(1e4, 100), &[vec![0.0, 0.0]]).unwrap();
        assert!(matches!(empirical_psi(&res, &[0.1, 0.0]), Err(Error::State(_))));
        assert!(empirical_psi(&res, &[0.0, 0.0]).unwrap().correlated);
    }

    #[test]
    fn rotor_drift_is_small() {
        let cfg = config(1e6, 10);
        assert!(rotor_drift(&cfg, DEFAULT_RENORM).unwrap() <= 1e-12);
    }

    #[test]
    fn single_character_max() {
        let c = enumerate_characters(7).unwrap();
        let tuple = make_tuple(vec![c[1].clone()], vec![0.0], true).unwrap();
        let mut cfg = ScanConfig::new(tuple, 0.7, 1e4, 0.05);
        cfg.t_end = Some(1e4 + 500.0);
        cfg.decimation = 1;
        let res = scan(&cfg, &[]).unwrap();
        let m = res.stored_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(m, res.running_max_min);
        let sm = find_simultaneous_max(&res);
        assert!(sm.t_star >= cfg.t_start && sm.t_star <= cfg.t_end());
    }
}
