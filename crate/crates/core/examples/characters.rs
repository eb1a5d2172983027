//! Lists the characters of a modulus with conductor, order and the
//! primitive character inducing each one.
//!
//!     cargo run --example characters [q]

use dirichlet_joint::characters::{primitive_inducing, CharacterGroup, CharacterSpec};

fn main() -> dirichlet_joint::Result<()> {
    let q: u64 = std::env::args().nth(1).map_or(15, |s| s.parse().expect("q"));
    let group = CharacterGroup::new(q)?;
    println!(
        "(Z/{q}Z)^*: order {}, exponent {}, generators {:?}",
        group.order(),
        group.exponent(),
        group.lifted_generators()
    );
    for chi in group.characters() {
        let prim = primitive_inducing(&chi);
        println!(
            "{:>10}  conductor {:>3}  order {:>2}  {}  induced by {}",
            CharacterSpec::from(&chi).to_string(),
            chi.conductor(),
            chi.order(),
            if chi.is_primitive() { "primitive" } else { "         " },
            CharacterSpec::from(&prim)
        );
    }
    Ok(())
}
