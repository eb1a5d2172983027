//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line (run with `--nocapture` to see them).

mod common;

use std::time::{Duration, Instant};

use common::{mod5_pair, random_tuple, rng};
use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::factors::{
    b_factor, find_alpha, repulsion_gap, search_negative_xi, tilde_xi, xi, xi_j_factors, Weights,
};
use dirichlet_joint::model::{afiq_compare, b_sum_compare, mc_joint_tail, sample_model, RandomModelConfig};
use dirichlet_joint::primes::primes_up_to;
use dirichlet_joint::scan::{empirical_psi, evaluate_direct, scan, ScanConfig};
use dirichlet_joint::special::i0;
use dirichlet_joint::tail::{asymptotic_saddle, saddle_map, solve_saddle};
use rand::Rng;

fn report(n: u32, passed: bool, elapsed: Duration, limit_secs: u64, detail: String) {
    let in_time = elapsed.as_secs_f64() < limit_secs as f64;
    let ok = passed && in_time;
    println!("criterion {n}: {} ({:.2?}, limit {limit_secs} s) {detail}", if ok { "PASS" } else { "FAIL" }, elapsed);
    assert!(passed, "criterion {n} failed: {detail}");
    assert!(in_time, "criterion {n} exceeded {limit_secs} s: {elapsed:?}");
}

#[test]
fn criterion_01_pair_value_at_half() {
    let start = Instant::now();
    let mut g = rng(101);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let pair = random_tuple(&mut g, 50, 2, true);
        worst = worst.max((xi(&pair, 0.5, &Weights::ones(2)).unwrap() - 2.0).abs());
    }
    report(1, worst <= 1e-10, start.elapsed(), 5, format!("max |xi - 2| = {worst:.2e} over 50 pairs"));
}

#[test]
fn criterion_02_orthogonality_closed_form() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for q in [5u64, 7, 11] {
        let chars = enumerate_characters(q).unwrap();
        let n = chars.len();
        let tuple = make_tuple(chars, vec![0.7; n], true).unwrap();
        for sigma in [0.6, 0.75, 0.9] {
            let expected = (n as f64).powf(1.0 / sigma - 1.0);
            worst = worst.max((xi(&tuple, sigma, &Weights::ones(n)).unwrap() - expected).abs());
        }
    }
    report(2, worst <= 1e-10, start.elapsed(), 5, format!("max error {worst:.2e}"));
}

#[test]
fn criterion_03_weighted_identity() {
    let start = Instant::now();
    let mut g = rng(103);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let r = g.random_range(1..=5);
        let tuple = random_tuple(&mut g, 50, r, true);
        let sigma = g.random_range(0.5..0.99);
        let alphas: Vec<f64> = (0..r).map(|_| 10.0 - g.random_range(0.0..10.0)).collect();
        let w = Weights::new(alphas).unwrap();
        let x = xi(&tuple, sigma, &w).unwrap();
        let f = xi_j_factors(&tuple, sigma, &w).unwrap().values;
        let s: f64 = f.iter().zip(w.alphas()).map(|(a, b)| a * b).sum();
        worst = worst.max((x - s).abs() / (1.0 + x));
    }
    report(3, worst <= 1e-10, start.elapsed(), 30, format!("max |xi - sum|/(1 + xi) = {worst:.2e}"));
}

#[test]
fn criterion_04_repulsion() {
    let start = Instant::now();
    let mut g = rng(104);
    let grid: Vec<f64> = (0..9).map(|k| 0.55 + 0.05 * k as f64).collect();
    let (mut min_tilde_margin, mut min_upper_margin, mut min_xi) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for _ in 0..200 {
        let pair = random_tuple(&mut g, 50, 2, true);
        for &s in &grid {
            let x = xi(&pair, s, &Weights::ones(2)).unwrap();
            min_xi = min_xi.min(x);
            min_upper_margin = min_upper_margin.min(2f64.powf(1.0 / (2.0 * s)) + 1e-12 - x);
            min_tilde_margin = min_tilde_margin.min(tilde_xi(&pair, s).unwrap() - 2.0 - 1e-9);
        }
    }
    let ok = min_tilde_margin > 0.0 && min_xi > 0.0 && min_upper_margin >= 0.0;
    report(
        4,
        ok,
        start.elapsed(),
        30,
        format!(
            "min(tilde xi - 2) = {:.3e}, min xi = {min_xi:.4}, min upper margin = {min_upper_margin:.3e}",
            min_tilde_margin + 1e-9
        ),
    );
}

#[test]
fn criterion_05_negative_xi_mod_13() {
    let start = Instant::now();
    let hits = search_negative_xi(13, 8, &[0.95, 0.99], None).unwrap();
    let min = hits.iter().map(|h| h.min_xi_j).fold(f64::INFINITY, f64::min);
    report(5, !hits.is_empty() && min < 0.0, start.elapsed(), 120, format!("{} hits, min Xi_j = {min:.4}", hits.len()));
}

#[test]
fn criterion_06_gap_inequality() {
    let start = Instant::now();
    let mut g = rng(106);
    let mut failures = Vec::new();
    let mut worst_dev = 0.0f64;
    for i in 0..50 {
        let r = g.random_range(2..=4);
        let tuple = random_tuple(&mut g, 30, r, true);
        let sigma = g.random_range(0.6..0.95);
        match find_alpha(&tuple, sigma) {
            Ok(w) => match repulsion_gap(&tuple, sigma, &w) {
                Ok(gap) if gap > 0.0 => {}
                other => failures.push(format!("#{i}: gap {other:?}")),
            },
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
        let b = b_factor(&tuple).unwrap();
        let lead = (r as f64 - 1.0 - (2.0 * sigma - 1.0) * b) / (4.0 * sigma * (1.0 - sigma));
        let dev = |a: f64| {
            let gap = repulsion_gap(&tuple, sigma, &Weights::leading(a, r).unwrap()).unwrap();
            (gap * a.powf(2.0 - 1.0 / sigma) / lead - 1.0).abs()
        };
        let (d8, d10, d12) = (dev(256.0), dev(1024.0), dev(4096.0));
        worst_dev = worst_dev.max(d12);
        if !(d12 < 0.1 && d12 <= d8 && d10 <= d8) {
            failures.push(format!("#{i}: r = {r}, sigma = {sigma:.3}, deviations {d8:.3e} {d10:.3e} {d12:.3e}"));
        }
    }
    report(
        6,
        failures.is_empty(),
        start.elapsed(),
        120,
        format!("max deviation at 2^12 = {worst_dev:.3e}; failures: {failures:?}"),
    );
}

#[test]
fn criterion_07_bessel_mgf() {
    let start = Instant::now();
    let trivial = enumerate_characters(1).unwrap();
    let tuple = make_tuple(trivial, vec![0.0], true).unwrap();
    let sigma = 0.75;
    let dist = sample_model(&RandomModelConfig { tuple, sigma, prime_cutoff: 2, samples: 100_000, seed: 0 }).unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for z in [0.5, 1.0, 2.0] {
        // the single term is e^{iφ}/2^σ
        let est = dist.mgf_estimate(&[z * 2f64.powf(sigma)]);
        let dz = (est.mean - i0(z)).abs() / est.stderr;
        ok &= dz <= 3.0;
        details.push(format!("z = {z}: {:.3} stderr", dz));
    }
    report(7, ok, start.elapsed(), 10, details.join(", "));
}

#[test]
fn criterion_08_moment_bound() {
    let start = Instant::now();
    let cutoff = 1000;
    let mut ok = true;
    let mut details = Vec::new();
    for sigma in [0.6, 0.75] {
        let tuple = mod5_pair(0.3);
        let dist =
            sample_model(&RandomModelConfig { tuple, sigma, prime_cutoff: cutoff, samples: 100_000, seed: 8 }).unwrap();
        let s: f64 = primes_up_to(cutoff).unwrap().iter().map(|&p| (p as f64).powf(-2.0 * sigma)).sum();
        for j in 0..2 {
            for k in 1..=3u32 {
                let m = dist.abs_moment(j, k);
                let bound = (1..=k).product::<u32>() as f64 * s.powi(k as i32);
                let z = (m.mean - bound) / m.stderr;
                ok &= z <= 5.0;
                if j == 0 {
                    details.push(format!("sigma {sigma} k {k}: {:.4}/{bound:.4}", m.mean));
                }
            }
        }
    }
    report(8, ok, start.elapsed(), 60, details.join(", "));
}

fn decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn criterion_09_log_mgf_asymptotic_trend() {
    let start = Instant::now();
    let single = {
        let c = enumerate_characters(5).unwrap();
        make_tuple(vec![c[1].clone()], vec![0.0], true).unwrap()
    };
    let pair = mod5_pair(0.5);
    let mut ok = true;
    let mut details = Vec::new();
    for sigma in [0.6, 0.8] {
        for (name, tuple) in [("r=1", &single), ("r=2", &pair)] {
            let errs: Vec<f64> = [10.0, 100.0, 1000.0f64]
                .iter()
                .map(|&n| {
                    let cutoff = 2 * n.powf(1.5 / sigma).ceil() as u64;
                    afiq_compare(tuple, sigma, &vec![n; tuple.r()], cutoff).unwrap().rel_error
                })
                .collect();
            ok &= decreasing(&errs);
            details.push(format!("sigma {sigma} {name}: {errs:.3?}"));
        }
        let errs: Vec<f64> = [100.0, 1000.0f64]
            .iter()
            .map(|&x| b_sum_compare(sigma, 1, 1, x, 2 * x.powf(1.5 / sigma).ceil() as u64).unwrap().rel_error)
            .collect();
        ok &= errs[0] <= 0.5 && decreasing(&errs);
        details.push(format!("sigma {sigma} prime sum: {errs:.3?}"));
    }
    report(9, ok, start.elapsed(), 300, details.join("; "));
}

#[test]
fn criterion_10_saddle_solver() {
    let start = Instant::now();
    let mut g = rng(110);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let sigma = g.random_range(0.55..0.95);
        let v = 10f64.powf(g.random_range(1.5..8.0));
        let y = solve_saddle(sigma, &Weights::ones(1), v).unwrap().y;
        worst = worst.max((saddle_map(sigma, y).unwrap() / v - 1.0).abs());
    }
    let mut monotone = true;
    let mut details = vec![format!("max residual {worst:.2e}")];
    for sigma in [0.6, 0.75, 0.9] {
        let ratios: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&v| solve_saddle(sigma, &Weights::ones(1), v).unwrap().y / asymptotic_saddle(sigma, v).unwrap())
            .collect();
        let gaps: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
        monotone &= decreasing(&gaps);
        details.push(format!("sigma {sigma}: y/y0 = {ratios:.4?}"));
    }
    report(10, worst <= 1e-10 && monotone, start.elapsed(), 5, details.join(", "));
}

#[test]
fn criterion_11_scan_correctness() {
    let start = Instant::now();
    let mut g = rng(111);
    let mut config = ScanConfig::new(mod5_pair(0.0), 0.75, 1e6, 0.05);
    let n = config.grid_count();
    config.probes = (0..100).map(|_| g.random_range(0..n)).collect();
    let res = scan(&config, &[]).unwrap();
    let mut worst = 0.0f64;
    for (k, v) in &res.probe_values {
        let d = evaluate_direct(&config, *k).unwrap();
        worst = worst.max(v.iter().zip(&d).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }

    let mut short = ScanConfig::new(mod5_pair(0.0), 0.75, 1e6, 0.05);
    short.t_end = Some(1e6 + 0.05 * 9999.0);
    short.decimation = 1;
    let thresholds = vec![vec![0.0, 0.0], vec![0.4, 0.2], vec![0.8, 0.8], vec![-0.5, 1.0]];
    let res = scan(&short, &thresholds).unwrap();
    let mut counts_match = res.grid_count == 10_000 && res.stored_indices.len() == 10_000;
    for (i, th) in thresholds.iter().enumerate() {
        let brute = (0..res.stored_indices.len())
            .filter(|&k| res.stored_row(k).iter().zip(th).all(|(a, b)| a > b))
            .count() as u64;
        counts_match &= brute == res.exceedance_counts[i];
    }
    report(
        11,
        worst <= 1e-9 && counts_match,
        start.elapsed(),
        120,
        format!("max |incremental - direct| = {worst:.2e} over 100 points, recount match = {counts_match}"),
    );
}

#[test]
fn criterion_12_scan_matches_model() {
    let start = Instant::now();
    let tuple = mod5_pair(0.0);
    let sigma = 0.75;
    let f = xi_j_factors(&tuple, sigma, &Weights::ones(2)).unwrap().values;
    let thresholds: Vec<Vec<f64>> =
        (0..=8).map(|k| 0.25 * k as f64).map(|v| f.iter().map(|x| x * v).collect()).collect();
    let config = ScanConfig::new(tuple.clone(), sigma, 1e6, 0.05);
    let res = scan(&config, &thresholds).unwrap();
    let model = RandomModelConfig { tuple, sigma, prime_cutoff: config.prime_cutoff, samples: 2_000_000, seed: 7 };
    let dist = sample_model(&model).unwrap();
    let mut ok = true;
    let mut used = 0;
    let mut worst = 0.0f64;
    for th in &thresholds {
        let e = empirical_psi(&res, th).unwrap();
        if e.fraction < 1e-4 {
            continue;
        }
        let m = mc_joint_tail(&dist, th).unwrap();
        let z = (e.fraction - m.p_hat).abs() / e.stderr_batch.unwrap_or(e.stderr_proxy).hypot(m.stderr);
        worst = worst.max(z);
        ok &= z <= 3.0;
        used += 1;
    }
    report(12, ok && used >= 3, start.elapsed(), 600, format!("{used} thresholds compared, max |z| = {worst:.2}"));
}
