#![allow(dead_code)]

use dirichlet_joint::characters::{enumerate_characters, equivalent, make_tuple, CharacterTuple, DirichletCharacter};
use dirichlet_joint::primes::divisors;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `r` pairwise inequivalent characters whose moduli all divide some
/// `q <= max_d`, with angles in `[0, 2π)` (or all zero).
pub fn random_tuple(rng: &mut ChaCha8Rng, max_d: u64, r: usize, random_theta: bool) -> CharacterTuple {
    loop {
        let q = rng.random_range(1..=max_d);
        let ms = divisors(q);
        let mut chosen: Vec<DirichletCharacter> = Vec::new();
        for _ in 0..20 * r {
            if chosen.len() == r {
                break;
            }
            let m = ms[rng.random_range(0..ms.len())];
            let chars = enumerate_characters(m).unwrap();
            let c = chars[rng.random_range(0..chars.len())].clone();
            if chosen.iter().all(|o| !equivalent(o, &c)) {
                chosen.push(c);
            }
        }
        if chosen.len() == r {
            let thetas =
                (0..r).map(|_| if random_theta { rng.random_range(0.0..std::f64::consts::TAU) } else { 0.0 }).collect();
            return make_tuple(chosen, thetas, true).unwrap();
        }
    }
}

pub fn mod5_pair(theta2: f64) -> CharacterTuple {
    let c = enumerate_characters(5).unwrap();
    make_tuple(vec![c[1].clone(), c[2].clone()], vec![0.0, theta2], true).unwrap()
}
