//! Joint value distribution of Dirichlet L-functions in the strip `1/2 < σ < 1`.
//!
//! The crate computes the arithmetic factors that govern how distinct
//! Dirichlet L-functions repel each other, the saddle-point tail
//! predictions built on them, simulates the random Euler-product model, and
//! scans Dirichlet polynomials over `t ∈ [T, 2T]` to look for simultaneous
//! large values.
//!
//! | module | contents |
//! |--------|----------|
//! | [`characters`] | character groups, conductors, primitive inducing characters, tuples |
//! | [`special`] | `I₀`, `log I₀`, the constants `G(σ)` and `A(σ)` |
//! | [`factors`] | `ξ`, `Ξ_j`, `tilde ξ`, `B(χ, θ)`, repulsion gap, weight search |
//! | [`tail`] | saddle-point solver and closed-form tail predictions |
//! | [`model`] | random Euler-product sampling and Bessel-product MGFs |
//! | [`scan`] | incremental evaluation of the polynomial vector over a t-grid |
//! | [`record`] | `key = value` records and CSV tables |
//! | [`verify`] | invariant suites behind `djoint verify` |
//! | [`cli`] | command-line parsing and orchestration |
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod characters;
pub mod cli;
pub mod error;
pub mod factors;
pub mod model;
pub mod numeric;
pub mod primes;
pub mod quadrature;
pub mod record;
pub mod scan;
pub mod special;
pub mod tail;
pub mod verify;

pub use error::{Error, Result};

/// Version string embedded in every summary record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
