//! Repulsion between two L-functions: xi of a pair against the value 2
//! attained at sigma = 1/2, and the effective constant tilde xi.
//!
//!     cargo run --example repulsion

use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::factors::{b_factor, tilde_xi, xi, Weights};

fn main() -> dirichlet_joint::Result<()> {
    let c7 = enumerate_characters(7)?;
    let sigmas = [0.5, 0.6, 0.75, 0.9];
    println!("pairs of characters mod 7, theta = (0, 0)");
    for j in 1..c7.len() {
        let pair = make_tuple(vec![c7[0].clone(), c7[j].clone()], vec![0.0, 0.0], true)?;
        let xs: Vec<String> = sigmas
            .iter()
            .map(|&s| xi(&pair, s, &Weights::ones(2)).map(|v| format!("{v:.5}")))
            .collect::<Result<_, _>>()?;
        println!(
            "  {} & {}: xi = [{}]  tilde xi(0.75) = {:.4}  B = {}",
            pair.specs()[0],
            pair.specs()[1],
            xs.join(", "),
            tilde_xi(&pair, 0.75)?,
            b_factor(&pair)?
        );
    }

    // a real character paired with itself, twisted: B picks up the twist
    let c5 = enumerate_characters(5)?;
    for theta in [0.0, 0.5, std::f64::consts::FRAC_PI_2] {
        let pair = make_tuple(vec![c5[1].clone(), c5[2].clone()], vec![0.0, theta], true)?;
        println!("5:1 & 5:2, theta2 = {theta:.3}: tilde xi(0.75) = {:.5}", tilde_xi(&pair, 0.75)?);
    }
    Ok(())
}
