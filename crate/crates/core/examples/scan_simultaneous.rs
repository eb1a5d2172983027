//! Scans the Dirichlet polynomials of two characters mod 5 over [T, 2T],
//! compares the fraction of points where both are large with the random
//! model, and reports the largest simultaneous value.
//!
//!     cargo run --release --example scan_simultaneous [T]

use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::factors::{xi_j_factors, Weights};
use dirichlet_joint::model::{mc_joint_tail, sample_model, RandomModelConfig};
use dirichlet_joint::scan::{empirical_psi, find_simultaneous_max, scan, ScanConfig};

fn main() -> dirichlet_joint::Result<()> {
    let t: f64 = std::env::args().nth(1).map_or(1e5, |s| s.parse().expect("T"));
    let c5 = enumerate_characters(5)?;
    let tuple = make_tuple(vec![c5[1].clone(), c5[2].clone()], vec![0.0, 0.0], true)?;
    let sigma = 0.75;
    let f = xi_j_factors(&tuple, sigma, &Weights::ones(2))?.values;
    let vs = [0.0, 0.5, 1.0, 1.5, 2.0];
    let thresholds: Vec<Vec<f64>> = vs.iter().map(|v| f.iter().map(|x| x * v).collect()).collect();

    let config = ScanConfig::new(tuple.clone(), sigma, t, 0.05);
    let res = scan(&config, &thresholds)?;
    println!("T = {t:e}, X = {}, {} grid points", config.prime_cutoff, res.grid_count);

    let model = RandomModelConfig { tuple, sigma, prime_cutoff: config.prime_cutoff, samples: 500_000, seed: 7 };
    let dist = sample_model(&model)?;
    for (v, th) in vs.iter().zip(&thresholds) {
        let e = empirical_psi(&res, th)?;
        let m = mc_joint_tail(&dist, th)?;
        let se = e.stderr_batch.unwrap_or(e.stderr_proxy).hypot(m.stderr);
        println!("V = {v:.1}: scan {:.5} model {:.5} (z = {:+.2})", e.fraction, m.p_hat, (e.fraction - m.p_hat) / se);
    }
    let best = find_simultaneous_max(&res);
    println!("max min S_j = {:.4} at t = {:.2}, normalized {:.3}", best.value, best.t_star, best.normalized);
    Ok(())
}
