//! Samples the random Euler-product model and compares the empirical moment
//! generating function with the exact Bessel product.
//!
//!     cargo run --release --example random_model

use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::model::{mc_joint_tail, mgf_product, sample_model, variance_sum, RandomModelConfig};

fn main() -> dirichlet_joint::Result<()> {
    let c5 = enumerate_characters(5)?;
    let tuple = make_tuple(vec![c5[1].clone(), c5[2].clone()], vec![0.0, 0.0], true)?;
    let sigma = 0.7;
    let cutoff = 1000;
    let config = RandomModelConfig { tuple: tuple.clone(), sigma, prime_cutoff: cutoff, samples: 200_000, seed: 11 };
    let dist = sample_model(&config)?;

    for j in 0..2 {
        let m2 = dist.abs_moment(j, 1);
        let var = variance_sum(&tuple, j, sigma, cutoff)?;
        println!("E|P_{}|^2 = {:.5} +- {:.1e}, predicted {var:.5}", j + 1, m2.mean, m2.stderr);
    }
    for x in [[0.5, 0.5], [1.0, -1.0], [2.0, 1.0]] {
        let est = dist.mgf_estimate(&x);
        let exact = mgf_product(&tuple, sigma, &x, cutoff)?.exp();
        println!("M({x:?}) = {:.5} +- {:.1e}, exact {exact:.5}", est.mean, est.stderr);
    }
    for v in [0.5, 1.0, 1.5] {
        let t = mc_joint_tail(&dist, &[v, v])?;
        println!("P(S_1 > {v}, S_2 > {v}) = {:.5} +- {:.1e}", t.p_hat, t.stderr);
    }
    Ok(())
}
