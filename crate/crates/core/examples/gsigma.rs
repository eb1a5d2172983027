//! Tabulates G(sigma) and A(sigma) across the strip.
//!
//!     cargo run --example gsigma

use dirichlet_joint::special::g_sigma;

fn main() -> dirichlet_joint::Result<()> {
    println!("{:>6} {:>14} {:>12} {:>10}", "sigma", "G", "A", "err");
    for k in 0..9 {
        let sigma = 0.55 + 0.05 * k as f64;
        let c = g_sigma(sigma)?;
        println!("{sigma:>6.2} {:>14.10} {:>12.8} {:>10.1e}", c.g_value, c.a_value, c.quadrature_error_estimate);
    }
    Ok(())
}
