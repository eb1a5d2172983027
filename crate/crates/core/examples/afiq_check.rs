//! Compares log M(x) for the random model with its large-x asymptotic. The
//! relative error decays only like 1/log |x|, so expect it to be rough.
//!
//!     cargo run --release --example afiq_check

use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::model::{afiq_compare, b_sum_compare};

fn main() -> dirichlet_joint::Result<()> {
    let c5 = enumerate_characters(5)?;
    let pair = make_tuple(vec![c5[1].clone(), c5[2].clone()], vec![0.0, 0.5], true)?;
    for sigma in [0.6, 0.8] {
        for norm in [10.0, 100.0, 1000.0] {
            let x = [norm / 2f64.sqrt(), norm / 2f64.sqrt()];
            let cutoff = 2 * (norm.powf(1.5 / sigma)).ceil() as u64;
            let c = afiq_compare(&pair, sigma, &x, cutoff)?;
            println!(
                "sigma {sigma} |x| = {norm:>6}: log M = {:>12.4} asymptotic {:>12.4} rel err {:.3}",
                c.lhs, c.rhs, c.rel_error
            );
        }
    }
    let b = b_sum_compare(0.75, 1, 1, 1000.0, 2 * 1000f64.powf(2.0).ceil() as u64)?;
    println!("Bessel prime sum at x = 1000, sigma 0.75: {:.4} vs {:.4}", b.lhs, b.rhs);
    Ok(())
}
