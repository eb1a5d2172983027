//! Exhaustive search for tuples of characters mod 13 with a negative Ξ_j
//! at unit weights.
//!
//!     cargo run --release --example negative_xi_search [q] [r]

use dirichlet_joint::factors::search_negative_xi;

fn main() -> dirichlet_joint::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(13, |s| s.parse().expect("q"));
    let r: usize = args.next().map_or(8, |s| s.parse().expect("r"));
    let grid = [0.9, 0.95, 0.99];

    let start = std::time::Instant::now();
    let hits = search_negative_xi(q, r, &grid, None)?;
    println!("q = {q}, r = {r}: {} hits in {:.2?}", hits.len(), start.elapsed());
    for h in hits.iter().take(10) {
        let labels: Vec<String> = h.characters.iter().map(|c| c.to_string()).collect();
        println!(
            "  subset #{:<4} sigma = {:.2}  min Xi_j = {:+.3e} (j = {})  [{}]",
            h.subset_index,
            h.sigma,
            h.min_xi_j,
            h.argmin + 1,
            labels.join(" ")
        );
    }
    Ok(())
}
