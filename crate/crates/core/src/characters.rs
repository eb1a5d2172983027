//! Dirichlet characters: enumeration through the CRT decomposition of
//! `(Z/qZ)^×`, conductors, primitive inducing characters and tuples.
//!
//! Each character mod `q` is labelled by its exponent vector on a fixed set
//! of generators: the smallest primitive root for every odd prime power, `-1`
//! for `4 | q`, and additionally `5` when `8 | q`. Values are stored twice,
//! as exact phase numerators `k` (meaning `exp(2πi·k/L)`, `L` the exponent of
//! the group) and as complex doubles derived from them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::primes::{factorize, gcd, lcm, totient};

/// Tolerance used for every comparison of character values.
pub const VALUE_TOL: f64 = 1e-12;

/// Sentinel phase for residues not coprime to the modulus.
const NO_PHASE: u32 = u32::MAX;

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

fn smallest_primitive_root(p: u64, pk: u64) -> u64 {
    let phi = totient(pk);
    let factors: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..pk).find(|&g| gcd(g, p) == 1 && factors.iter().all(|&r| pow_mod(g, phi / r, pk) != 1)).unwrap_or(1)
}

/// Solves `x ≡ a (mod m)`, `x ≡ 1 (mod n)` for coprime `m`, `n`.
fn crt_lift(a: u64, m: u64, n: u64) -> u64 {
    if n == 1 {
        return a % m;
    }
    // x = 1 + n·t with n·t ≡ a − 1 (mod m)
    let inv = mod_inverse(n % m, m);
    let t = ((a % m + m - 1) % m) as u128 * inv as u128 % m as u128;
    (1 + n as u128 * t) as u64 % (m * n)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ComponentKind {
    /// Cyclic group mod an odd prime power.
    OddCyclic,
    /// The `{±1}` factor mod `2^k`, `k >= 2`.
    TwoSign,
    /// The `<5>` factor mod `2^k`, `k >= 3`.
    TwoFive,
}

#[derive(Debug, Clone)]
struct Component {
    kind: ComponentKind,
    prime: u64,
    exponent: u32,
    prime_power: u64,
    order: u64,
    generator: u64,
    /// Generator lifted to a residue mod `q` that is `1` on the other factors.
    lifted: u64,
    /// Discrete log of every residue mod `prime_power` (NO_PHASE off the group).
    dlog: Vec<u32>,
}

/// The structure of `(Z/qZ)^×` as a product of cyclic groups.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: u64,
    components: Vec<Component>,
    exponent: u64,
}

impl CharacterGroup {
    /// Largest modulus accepted; value tables are dense of length `q`.
    pub const MAX_MODULUS: u64 = 1 << 24;

    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return domain("modulus must be positive");
        }
        if q > Self::MAX_MODULUS {
            return domain(format!("modulus {q} exceeds {}", Self::MAX_MODULUS));
        }
        let mut components = Vec::new();
        for (p, k) in factorize(q) {
            let pk = p.pow(k);
            let rest = q / pk;
            if p == 2 {
                if k == 1 {
                    continue;
                }
                let mut sign_log = vec![NO_PHASE; pk as usize];
                let mut five_log = vec![NO_PHASE; pk as usize];
                let five_order = if k >= 3 { pk / 4 } else { 1 };
                let mut v = 1u64;
                for b in 0..five_order {
                    sign_log[v as usize] = 0;
                    five_log[v as usize] = b as u32;
                    let w = pk - v;
                    sign_log[w as usize] = 1;
                    five_log[w as usize] = b as u32;
                    v = v * 5 % pk;
                }
                components.push(Component {
                    kind: ComponentKind::TwoSign,
                    prime: 2,
                    exponent: k,
                    prime_power: pk,
                    order: 2,
                    generator: pk - 1,
                    lifted: crt_lift(pk - 1, pk, rest),
                    dlog: sign_log,
                });
                if k >= 3 {
                    components.push(Component {
                        kind: ComponentKind::TwoFive,
                        prime: 2,
                        exponent: k,
                        prime_power: pk,
                        order: five_order,
                        generator: 5,
                        lifted: crt_lift(5, pk, rest),
                        dlog: five_log,
                    });
                }
            } else {
                let g = smallest_primitive_root(p, pk);
                let order = totient(pk);
                let mut dlog = vec![NO_PHASE; pk as usize];
                let mut v = 1u64;
                for a in 0..order {
                    dlog[v as usize] = a as u32;
                    v = v * g % pk;
                }
                components.push(Component {
                    kind: ComponentKind::OddCyclic,
                    prime: p,
                    exponent: k,
                    prime_power: pk,
                    order,
                    generator: g,
                    lifted: crt_lift(g, pk, rest),
                    dlog,
                });
            }
        }
        let exponent = components.iter().fold(1, |acc, c| lcm(acc, c.order));
        Ok(Self { modulus: q, components, exponent })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent `L` of the group: every value is an `L`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(|c| c.order).product()
    }

    /// Orders of the cyclic factors, in label order.
    pub fn component_orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    /// Generators of the cyclic factors modulo their own prime power.
    pub fn generators(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.generator).collect()
    }

    /// Generators of the cyclic factors, each lifted to a residue mod `q`.
    pub fn lifted_generators(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.lifted).collect()
    }

    fn conductor_of_label(&self, label: &[u32]) -> u64 {
        let mut f = 1u64;
        let mut i = 0;
        while i < self.components.len() {
            let c = &self.components[i];
            match c.kind {
                ComponentKind::OddCyclic => {
                    let e = label[i] as u64;
                    if e != 0 {
                        let j = (1..=c.exponent)
                            .find(|&j| e.is_multiple_of(c.prime.pow(c.exponent - j)))
                            .unwrap_or(c.exponent);
                        f *= c.prime.pow(j);
                    }
                    i += 1;
                }
                ComponentKind::TwoSign => {
                    let a = label[i];
                    let has_five = self.components.get(i + 1).is_some_and(|n| n.kind == ComponentKind::TwoFive);
                    let b = if has_five { label[i + 1] as u64 } else { 0 };
                    if b != 0 {
                        let k = c.exponent;
                        let j = (3..=k).find(|&j| b % (1u64 << (k - j)) == 0).unwrap_or(k);
                        f *= 1 << j;
                    } else if a != 0 {
                        f *= 4;
                    }
                    i += if has_five { 2 } else { 1 };
                }
                ComponentKind::TwoFive => unreachable!("five factor always follows the sign factor"),
            }
        }
        f
    }

    /// The character with the given exponent vector.
    pub fn character(&self, label: &[u32]) -> Result<DirichletCharacter> {
        if label.len() != self.components.len() {
            return Err(Error::Validation(format!(
                "label has {} entries, modulus {} needs {}",
                label.len(),
                self.modulus,
                self.components.len()
            )));
        }
        for (e, c) in label.iter().zip(&self.components) {
            if *e as u64 >= c.order {
                return Err(Error::Validation(format!(
                    "label entry {e} out of range for a factor of order {}",
                    c.order
                )));
            }
        }
        let q = self.modulus as usize;
        let l = self.exponent;
        let scales: Vec<u64> = self.components.iter().map(|c| l / c.order).collect();
        let mut phases = vec![NO_PHASE; q];
        let mut values = vec![Complex64::new(0.0, 0.0); q];
        for n in 0..q as u64 {
            if gcd(n, self.modulus) != 1 {
                continue;
            }
            let mut acc = 0u64;
            for ((c, &e), &s) in self.components.iter().zip(label).zip(&scales) {
                let lg = c.dlog[(n % c.prime_power) as usize] as u64;
                acc = (acc + (e as u64 * lg % c.order) * s) % l;
            }
            phases[n as usize] = acc as u32;
            values[n as usize] = phase_value(acc, l);
        }
        Ok(DirichletCharacter {
            modulus: self.modulus,
            label: label.to_vec(),
            conductor: self.conductor_of_label(label),
            exponent: l,
            phases: phases.into(),
            values: values.into(),
        })
    }

    /// All characters, principal first, lexicographic in the label.
    pub fn characters(&self) -> Vec<DirichletCharacter> {
        let orders = self.component_orders();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut label = vec![0u32; orders.len()];
        loop {
            out.push(self.character(&label).expect("label in range"));
            // mixed-radix increment, last entry fastest
            let mut i = orders.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                label[i] += 1;
                if (label[i] as u64) < orders[i] {
                    break;
                }
                label[i] = 0;
            }
        }
    }
}

fn phase_value(k: u64, l: u64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let (s, c) = (std::f64::consts::TAU * k as f64 / l as f64).sin_cos();
    Complex64::new(c, s)
}

/// A Dirichlet character with a dense value table.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    label: Vec<u32>,
    conductor: u64,
    exponent: u64,
    phases: Arc<[u32]>,
    values: Arc<[Complex64]>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.modulus)
            .field("label", &self.label)
            .field("conductor", &self.conductor)
            .finish()
    }
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> &[u32] {
        &self.label
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.label.iter().all(|&e| e == 0)
    }

    /// `χ(n)` for any integer `n >= 0`.
    #[inline]
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Exact phase of `χ(n)` as `(k, L)` with `χ(n) = exp(2πi·k/L)`, or
    /// `None` when `gcd(n, q) > 1`.
    pub fn phase(&self, n: u64) -> Option<(u64, u64)> {
        let k = self.phases[(n % self.modulus) as usize];
        (k != NO_PHASE).then_some((k as u64, self.exponent))
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        let g = self.phases.iter().filter(|&&k| k != NO_PHASE).fold(self.exponent, |acc, &k| gcd(acc, k as u64));
        self.exponent / g
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord { modulus: self.modulus, conductor: self.conductor, label: self.label.clone() }
    }
}

/// Smallest `f | q` such that `χ(n)` depends only on `n mod f` on residues
/// coprime to `q`.
pub fn conductor_of(chi: &DirichletCharacter) -> u64 {
    chi.conductor
}

/// The primitive character `χ*` mod `conductor_of(χ)` inducing `χ`.
pub fn primitive_inducing(chi: &DirichletCharacter) -> DirichletCharacter {
    let f = chi.conductor;
    if f == chi.modulus {
        return chi.clone();
    }
    let group = CharacterGroup::new(f).expect("conductor divides a valid modulus");
    let label: Vec<u32> = group
        .components
        .iter()
        .map(|c| {
            // a residue mod q coprime to q and congruent to the generator mod f
            let n = (0..)
                .map(|t| c.lifted + t * f)
                .find(|&n| gcd(n, chi.modulus) == 1)
                .expect("CRT guarantees a coprime lift");
            let (k, l) = chi.phase(n).expect("coprime residue");
            // χ(G) is a c.order-th root of unity
            let e = k * c.order;
            debug_assert_eq!(e % l, 0);
            (e / l) as u32
        })
        .collect();
    group.character(&label).expect("derived label in range")
}

/// `χ₁ ~ χ₂`: both are induced by the same primitive character.
pub fn equivalent(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> bool {
    if chi1.conductor != chi2.conductor {
        return false;
    }
    let a = primitive_inducing(chi1);
    let b = primitive_inducing(chi2);
    a.modulus == b.modulus && a.values.iter().zip(b.values.iter()).all(|(x, y)| (x - y).norm() <= VALUE_TOL)
}

/// All `φ(q)` characters mod `q`.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(CharacterGroup::new(q)?.characters())
}

/// Serialized form of a character: the value table is rebuilt on load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterRecord {
    pub modulus: u64,
    pub conductor: u64,
    pub label: Vec<u32>,
}

impl CharacterRecord {
    pub fn to_character(&self) -> Result<DirichletCharacter> {
        let chi = CharacterGroup::new(self.modulus)?.character(&self.label)?;
        if chi.conductor != self.conductor {
            return Err(Error::Validation(format!(
                "record conductor {} disagrees with reconstructed conductor {}",
                self.conductor, chi.conductor
            )));
        }
        Ok(chi)
    }
}

impl fmt::Display for CharacterRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{modulus = {}, conductor = {}, label = \"{}\"}}",
            self.modulus,
            self.conductor,
            CharacterSpec::format_label(&self.label)
        )
    }
}

/// A `modulus:label` reference such as `13:5` or `8:1.1` (label entries
/// separated by dots; the single character mod 1 is `1:`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSpec {
    pub modulus: u64,
    pub label: Vec<u32>,
}

impl CharacterSpec {
    pub fn format_label(label: &[u32]) -> String {
        label.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
    }

    pub fn resolve(&self) -> Result<DirichletCharacter> {
        CharacterGroup::new(self.modulus)?.character(&self.label)
    }
}

impl From<&DirichletCharacter> for CharacterSpec {
    fn from(chi: &DirichletCharacter) -> Self {
        Self { modulus: chi.modulus, label: chi.label.clone() }
    }
}

impl fmt::Display for CharacterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.modulus, Self::format_label(&self.label))
    }
}

impl FromStr for CharacterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("malformed character `{s}`, expected modulus:label"));
        let (m, l) = s.trim().split_once(':').ok_or_else(bad)?;
        let modulus = m.parse().map_err(|_| bad())?;
        let label = if l.is_empty() {
            Vec::new()
        } else {
            l.split('.').map(|e| e.parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        Ok(Self { modulus, label })
    }
}

/// `r` characters with twist angles and combined modulus `d = lcm(q_j)`.
///
/// The twisted values `e^{-iθ_j}·χ_j(u)` on every `u ∈ (Z/dZ)^×` are cached
/// row by row since all arithmetic factors are averages over that set.
#[derive(Debug, Clone)]
pub struct CharacterTuple {
    characters: Vec<DirichletCharacter>,
    thetas: Vec<f64>,
    d: u64,
    residues: Vec<u64>,
    twisted: Vec<Complex64>,
}

/// Largest combined modulus for which residue tables are materialized.
pub const MAX_TUPLE_MODULUS: u64 = 50_000_000;

/// Builds a tuple; with `require_inequivalent` every pair must be inequivalent.
pub fn make_tuple(
    chars: Vec<DirichletCharacter>,
    thetas: Vec<f64>,
    require_inequivalent: bool,
) -> Result<CharacterTuple> {
    if chars.is_empty() {
        return Err(Error::Validation("a tuple needs at least one character".into()));
    }
    if chars.len() != thetas.len() {
        return Err(Error::Validation(format!("{} characters but {} angles", chars.len(), thetas.len())));
    }
    if let Some(i) = thetas.iter().position(|t| !t.is_finite()) {
        return Err(Error::Validation(format!("angle {i} is not finite")));
    }
    if require_inequivalent {
        for i in 0..chars.len() {
            for j in i + 1..chars.len() {
                if equivalent(&chars[i], &chars[j]) {
                    return Err(Error::Validation(format!(
                        "characters {i} and {j} are equivalent (both induced by the same primitive character)"
                    )));
                }
            }
        }
    }
    let d = chars.iter().fold(1, |acc, c| lcm(acc, c.modulus));
    if d > MAX_TUPLE_MODULUS {
        return Err(Error::Budget(format!("combined modulus {d} exceeds {MAX_TUPLE_MODULUS}")));
    }
    let residues: Vec<u64> = (1..=d).filter(|&u| gcd(u, d) == 1).map(|u| u % d).collect();
    let rotations: Vec<Complex64> = thetas.iter().map(|&t| Complex64::from_polar(1.0, -t)).collect();
    let mut twisted = Vec::with_capacity(residues.len() * chars.len());
    for &u in &residues {
        for (chi, rot) in chars.iter().zip(&rotations) {
            twisted.push(rot * chi.value(u));
        }
    }
    Ok(CharacterTuple { characters: chars, thetas, d, residues, twisted })
}

impl CharacterTuple {
    pub fn r(&self) -> usize {
        self.characters.len()
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Least common multiple of the moduli.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `φ(d)`.
    pub fn phi_d(&self) -> usize {
        self.residues.len()
    }

    /// The reduced residues mod `d` in ascending order (`0` stands for `d = 1`).
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// `e^{-iθ_j}·χ_j(u)` for the `i`-th reduced residue, `j = 0..r`.
    pub fn twisted_row(&self, i: usize) -> &[Complex64] {
        let r = self.r();
        &self.twisted[i * r..(i + 1) * r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.twisted.chunks_exact(self.r())
    }

    /// `e^{-iθ_j}·χ_j(n)` for arbitrary `n`.
    pub fn twisted_value(&self, j: usize, n: u64) -> Complex64 {
        Complex64::from_polar(1.0, -self.thetas[j]) * self.characters[j].value(n)
    }

    pub fn specs(&self) -> Vec<CharacterSpec> {
        self.characters.iter().map(CharacterSpec::from).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_one_has_the_trivial_character() {
        let chars = enumerate_characters(1).unwrap();
        assert_eq!(chars.len(), 1);
        assert!(chars[0].label().is_empty());
        assert_eq!(chars[0].value(0), Complex64::new(1.0, 0.0));
        assert_eq!(chars[0].value(17), Complex64::new(1.0, 0.0));
        assert_eq!(chars[0].conductor(), 1);
        assert!(chars[0].is_primitive());
    }

    #[test]
    fn zero_modulus_is_rejected() {
        assert!(matches!(enumerate_characters(0), Err(Error::Domain(_))));
    }

    #[test]
    fn counts_match_totient() {
        for q in 1..=120 {
            assert_eq!(enumerate_characters(q).unwrap().len() as u64, totient(q), "q = {q}");
        }
        assert_eq!(enumerate_characters(13).unwrap().len(), 12);
    }

    #[test]
    fn principal_character_comes_first() {
        for q in [3, 8, 12, 45] {
            let chars = enumerate_characters(q).unwrap();
            assert!(chars[0].is_principal());
            assert_eq!(conductor_of(&chars[0]), 1);
        }
    }

    #[test]
    fn primes_give_primitive_nonprincipal_characters() {
        for p in [3, 5, 7, 11, 13, 101] {
            for chi in enumerate_characters(p).unwrap().iter().skip(1) {
                assert_eq!(conductor_of(chi), p);
            }
        }
    }

    #[test]
    fn induced_character_mod_8_has_conductor_4() {
        let chars = enumerate_characters(8).unwrap();
        // label (1, 0): nontrivial on -1, trivial on 5, i.e. the character mod 4
        let chi = chars.iter().find(|c| c.label() == [1, 0]).unwrap();
        assert_eq!(conductor_of(chi), 4);
        let star = primitive_inducing(chi);
        assert_eq!(star.modulus(), 4);
        assert!((star.value(3) + 1.0).norm() < VALUE_TOL);
        assert!((star.value(1) - 1.0).norm() < VALUE_TOL);
    }

    #[test]
    fn principal_mod_6_reduces_to_modulus_one() {
        let chi = &enumerate_characters(6).unwrap()[0];
        let star = primitive_inducing(chi);
        assert_eq!(star.modulus(), 1);
    }

    #[test]
    fn equivalence_examples() {
        let p3 = &enumerate_characters(3).unwrap()[0];
        let p5 = &enumerate_characters(5).unwrap()[0];
        assert!(equivalent(p3, p5));
        let c8 = enumerate_characters(8).unwrap();
        let real_primitive: Vec<_> = c8.iter().filter(|c| c.is_primitive()).collect();
        assert_eq!(real_primitive.len(), 2);
        assert!(!equivalent(real_primitive[0], real_primitive[1]));
        assert!(equivalent(&c8[3], &c8[3]));
    }

    #[test]
    fn spec_round_trip() {
        let s: CharacterSpec = "8:1.1".parse().unwrap();
        assert_eq!(s.modulus, 8);
        assert_eq!(s.label, vec![1, 1]);
        assert_eq!(s.to_string(), "8:1.1");
        let one: CharacterSpec = "1:".parse().unwrap();
        assert!(one.label.is_empty());
        assert!("13".parse::<CharacterSpec>().is_err());
        assert!("13:x".parse::<CharacterSpec>().is_err());
        let chi = s.resolve().unwrap();
        let back = chi.record().to_character().unwrap();
        assert_eq!(back.label(), chi.label());
    }

    #[test]
    fn tuple_construction() {
        let c3 = enumerate_characters(3).unwrap();
        let t = make_tuple(vec![c3[1].clone()], vec![0.0], true).unwrap();
        assert_eq!((t.r(), t.d()), (1, 3));
        let c5 = enumerate_characters(5).unwrap();
        let c7 = enumerate_characters(7).unwrap();
        let t = make_tuple(vec![c5[1].clone(), c7[2].clone()], vec![0.0, 1.0], true).unwrap();
        assert_eq!(t.d(), 35);
        assert_eq!(t.phi_d(), 24);
        let err = make_tuple(vec![c5[1].clone(), c5[1].clone()], vec![0.0, 0.0], true).unwrap_err();
        assert!(err.to_string().contains("0 and 1"));
        assert!(make_tuple(vec![c5[1].clone(), c5[1].clone()], vec![0.0, 0.0], false).is_ok());
        assert!(make_tuple(vec![c5[1].clone()], vec![0.0, 0.0], false).is_err());
    }

    #[test]
    fn orders_divide_group_exponent() {
        for chi in enumerate_characters(40).unwrap() {
            assert_eq!(4 % chi.order(), 0);
        }
    }
}
