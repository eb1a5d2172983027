//! The Monte Carlo estimators should be unbiased across seeds, not just for
//! one lucky seed.

mod common;

use common::mod5_pair;
use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::model::{mc_joint_tail, mgf_product, sample_model, RandomModelConfig};
use dirichlet_joint::special::i0;

fn z_stats(zs: &[f64]) -> (f64, f64) {
    let n = zs.len() as f64;
    let mean = zs.iter().sum::<f64>() / n;
    let var = zs.iter().map(|z| (z - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn single_prime_mgf_z_scores_are_standard() {
    let tuple = make_tuple(enumerate_characters(1).unwrap(), vec![0.0], true).unwrap();
    let sigma = 0.75;
    let zs: Vec<f64> = (0..100)
        .map(|seed| {
            let d = sample_model(&RandomModelConfig {
                tuple: tuple.clone(),
                sigma,
                prime_cutoff: 2,
                samples: 10_000,
                seed,
            })
            .unwrap();
            let e = d.mgf_estimate(&[2f64.powf(sigma)]);
            (e.mean - i0(1.0)) / e.stderr
        })
        .collect();
    let (mean, var) = z_stats(&zs);
    assert!(mean.abs() < 0.4, "mean z = {mean}");
    assert!((0.6..1.5).contains(&var), "var z = {var}");
}

#[test]
fn product_mgf_matches_across_seeds() {
    let tuple = mod5_pair(0.4);
    let sigma = 0.7;
    let x = [0.8, 0.5];
    let exact = mgf_product(&tuple, sigma, &x, 200).unwrap().exp();
    let zs: Vec<f64> = (0..40)
        .map(|seed| {
            let d = sample_model(&RandomModelConfig {
                tuple: tuple.clone(),
                sigma,
                prime_cutoff: 200,
                samples: 5_000,
                seed,
            })
            .unwrap();
            let e = d.mgf_estimate(&x);
            (e.mean - exact) / e.stderr
        })
        .collect();
    let (mean, _) = z_stats(&zs);
    assert!(mean.abs() < 0.65, "mean z = {mean}");
}

#[test]
fn median_threshold_splits_samples() {
    let c = enumerate_characters(7).unwrap();
    let tuple = make_tuple(vec![c[2].clone()], vec![0.0], true).unwrap();
    let d =
        sample_model(&RandomModelConfig { tuple, sigma: 0.65, prime_cutoff: 500, samples: 20_001, seed: 3 }).unwrap();
    let mut col = d.column(0);
    col.sort_by(f64::total_cmp);
    let med = col[col.len() / 2];
    let t = mc_joint_tail(&d, &[med]).unwrap();
    assert!((t.p_hat - 0.5).abs() <= 5.0 * t.stderr, "{t:?}");
}
