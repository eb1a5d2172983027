//! Quick invariant suites, runnable from the command line with `verify`.

use num_complex::Complex64;

use crate::characters::{enumerate_characters, make_tuple};
use crate::error::{Error, Result};
use crate::factors::{search_negative_xi, tilde_xi, xi, xi_j_factors, Weights};
use crate::model::{mgf_product, sample_model, RandomModelConfig};
use crate::primes::{gcd, totient};
use crate::scan::{evaluate_direct, scan, ScanConfig};
use crate::special::{g_sigma, i0};
use crate::tail::{asymptotic_saddle, saddle_map, solve_saddle};

pub const SUITES: [&str; 6] = ["characters", "special", "factors", "tail", "model", "scan"];

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &'static str, name: &'static str, passed: bool, detail: String) -> Check {
    Check { suite, name, passed, detail }
}

fn characters_suite() -> Result<Vec<Check>> {
    let mut count_ok = true;
    let mut orth_err = 0.0f64;
    for q in 1..=60u64 {
        let chars = enumerate_characters(q)?;
        count_ok &= chars.len() as u64 == totient(q);
        for n in 0..q {
            let s: Complex64 = chars.iter().map(|c| c.value(n)).sum();
            let expected = if gcd(n, q) == 1 && n % q == 1 % q { totient(q) as f64 } else { 0.0 };
            orth_err = orth_err.max((s - expected).norm());
        }
    }
    Ok(vec![
        check("characters", "group order equals totient (q <= 60)", count_ok, String::new()),
        check("characters", "column orthogonality", orth_err < 1e-9, format!("max error {orth_err:e}")),
    ])
}

fn special_suite() -> Result<Vec<Check>> {
    let a = i0(15.0);
    let rel = (a / 339649.3732979139 - 1.0).abs();
    let mut worst = 0.0f64;
    for (s, g) in [(0.6, 1.5760045646565172), (0.75, 2.4717245537395367), (0.9, 8.124_300_841_471_31)] {
        worst = worst.max((g_sigma(s)?.g_value - g).abs());
    }
    Ok(vec![
        check("special", "I0(15) reference value", rel < 1e-13, format!("relative error {rel:e}")),
        check("special", "G(sigma) reference values", worst < 1e-9, format!("max error {worst:e}")),
    ])
}

fn factors_suite() -> Result<Vec<Check>> {
    let c7 = enumerate_characters(7)?;
    let mut half_err = 0.0f64;
    let mut tilde_min = f64::INFINITY;
    for i in 0..c7.len() {
        for j in i + 1..c7.len() {
            let t = make_tuple(vec![c7[i].clone(), c7[j].clone()], vec![0.3, 1.1], true)?;
            half_err = half_err.max((xi(&t, 0.5, &Weights::ones(2))? - 2.0).abs());
            for s in [0.55, 0.75, 0.95] {
                tilde_min = tilde_min.min(tilde_xi(&t, s)?);
            }
        }
    }
    let full = make_tuple(c7.clone(), vec![0.0; 6], true)?;
    let orth = (xi(&full, 0.75, &Weights::ones(6))? / 6f64.powf(1.0 / 0.75 - 1.0) - 1.0).abs();
    let w = Weights::new(vec![2.5, 0.3, 1.7])?;
    let t3 = make_tuple(c7[1..4].to_vec(), vec![0.2, -0.4, 2.0], true)?;
    let x = xi(&t3, 0.8, &w)?;
    let f = xi_j_factors(&t3, 0.8, &w)?.values;
    let ident = (x - f.iter().zip(w.alphas()).map(|(a, b)| a * b).sum::<f64>()).abs();
    let hits = search_negative_xi(13, 8, &[0.99], None)?.len();
    Ok(vec![
        check("factors", "pairs give xi = 2 at sigma = 1/2", half_err < 1e-10, format!("max error {half_err:e}")),
        check("factors", "full character set closed form", orth < 1e-10, format!("relative error {orth:e}")),
        check("factors", "xi equals sum of alpha_j Xi_j", ident < 1e-10 * (1.0 + x), format!("error {ident:e}")),
        check("factors", "tilde xi exceeds 2", tilde_min > 2.0 + 1e-9, format!("min {tilde_min}")),
        check("factors", "negative Xi_j among 8-tuples mod 13", hits > 0, format!("{hits} hits")),
    ])
}

fn tail_suite() -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    for s in [0.55, 0.7, 0.85] {
        for v in [10.0, 1e3, 1e5] {
            let y = solve_saddle(s, &Weights::ones(1), v)?.y;
            worst = worst.max((saddle_map(s, y)? / v - 1.0).abs());
        }
    }
    let gaps: Vec<f64> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&v| Ok((asymptotic_saddle(0.75, v)? / solve_saddle(0.75, &Weights::ones(1), v)?.y - 1.0).abs()))
        .collect::<Result<_>>()?;
    Ok(vec![
        check("tail", "saddle round trip", worst <= 1e-10, format!("max residual {worst:e}")),
        check("tail", "main term ratio approaches 1", gaps[0] > gaps[1] && gaps[1] > gaps[2], format!("{gaps:?}")),
    ])
}

fn model_suite() -> Result<Vec<Check>> {
    let c3 = enumerate_characters(3)?;
    let t = make_tuple(vec![c3[0].clone()], vec![0.0], true)?;
    let sigma = 0.75;
    let d = sample_model(&RandomModelConfig { tuple: t.clone(), sigma, prime_cutoff: 2, samples: 20_000, seed: 1 })?;
    let est = d.mgf_estimate(&[1.0]);
    let exact = mgf_product(&t, sigma, &[1.0], 2)?.exp();
    let z = (est.mean - exact).abs() / est.stderr;
    Ok(vec![check("model", "single-prime Bessel identity", z <= 3.0, format!("|z| = {z:.3}"))])
}

fn scan_suite() -> Result<Vec<Check>> {
    let c5 = enumerate_characters(5)?;
    let t = make_tuple(vec![c5[1].clone(), c5[2].clone()], vec![0.0, 0.0], true)?;
    let mut cfg = ScanConfig::new(t, 0.75, 1e6, 0.05);
    cfg.t_end = Some(1e6 + 0.05 * 9999.0);
    cfg.probes = vec![0, 4095, 4096, 7777, 9999];
    let res = scan(&cfg, &[])?;
    let mut worst = 0.0f64;
    for (k, v) in &res.probe_values {
        let d = evaluate_direct(&cfg, *k)?;
        worst = worst.max(v.iter().zip(&d).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    Ok(vec![check("scan", "incremental equals direct", worst <= 1e-9, format!("max difference {worst:e}"))])
}

/// Runs one suite by name, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "characters" => characters_suite(),
        "special" => special_suite(),
        "factors" => factors_suite(),
        "tail" => tail_suite(),
        "model" => model_suite(),
        "scan" => scan_suite(),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s)?);
            }
            Ok(out)
        }
        other => Err(Error::Usage(format!("unknown suite {other:?}; expected one of {SUITES:?} or \"all\""))),
    }
}
