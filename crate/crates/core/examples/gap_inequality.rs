//! The weighted factors Xi_j, the doubling search for a leading weight that
//! makes them all positive, and the resulting gap.
//!
//!     cargo run --example gap_inequality

use dirichlet_joint::characters::{enumerate_characters, make_tuple};
use dirichlet_joint::factors::{factor_report, find_alpha, pos_xi_expansion, Weights};

fn main() -> dirichlet_joint::Result<()> {
    let c = enumerate_characters(11)?;
    let tuple = make_tuple(c[1..5].to_vec(), vec![0.0; 4], true)?;
    let sigma = 0.8;

    let unit = factor_report(&tuple, sigma, &Weights::ones(4))?;
    println!("unit weights: xi = {:.6}, Xi_j = {:.5?}", unit.xi, unit.xi_js);

    let w = find_alpha(&tuple, sigma)?;
    let rep = factor_report(&tuple, sigma, &w)?;
    println!("alpha = {:?}", w.alphas());
    println!("  Xi_j = {:.5?}", rep.xi_js);
    println!("  gap  = {:.6e}", rep.gap.unwrap_or(f64::NAN));
    println!("  excluded residues = {}", rep.star_excluded_count);

    let a = w.alphas()[0];
    let approx = pos_xi_expansion(&tuple, sigma, a)?;
    println!("large-alpha expansion at a = {a}: {approx:.5?}");
    Ok(())
}
