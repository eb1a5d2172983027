//! Saddle point and predicted log-probability that every |L_j| is large at
//! once, for a pair of characters mod 5.
//!
//!     cargo run --example tail_prediction

use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::factors::Weights;
use dirichlet_joint::tail::{asymptotic_saddle, predict_log_psi, solve_saddle};

fn main() -> dirichlet_joint::Result<()> {
    let c5 = enumerate_characters(5)?;
    let pair = make_tuple(vec![c5[1].clone(), c5[2].clone()], vec![0.0, 0.0], true)?;
    let sigma = 0.75;
    let w = Weights::ones(2);

    println!("{:>8} {:>14} {:>8} {:>16} {:>16}", "V", "y", "y/y0", "log psi (lead)", "log psi (saddle)");
    for v in [10.0, 1e2, 1e3, 1e4, 1e5] {
        let y = solve_saddle(sigma, &Weights::ones(1), v)?.y;
        let ratio = y / asymptotic_saddle(sigma, v)?;
        let p = predict_log_psi(&pair, sigma, &w, v, None)?;
        println!("{v:>8.0e} {:>14.6e} {ratio:>8.4} {:>16.6e} {:>16.6e}", p.y, p.log_psi_leading, p.log_psi_saddle);
    }

    let p = predict_log_psi(&pair, sigma, &w, 5.0, Some(1e6))?;
    if let Some(msg) = p.warning {
        println!("warning: {msg}");
    }
    Ok(())
}
