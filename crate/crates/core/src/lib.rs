//! Exact-arithmetic computational Lie theory.
//!
//! Everything in this crate is built from a Cartan matrix as the only input:
//! positive roots and the root poset ([`rootdata`]), irreducible
//! representation data — Weyl dimensions, normalized quadratic Casimir
//! eigenvalues, Freudenthal weight multiplicities ([`reps`]) — formal
//! character algebra with exterior powers and complete decomposition
//! ([`tensor`]), the Casimir-eigenvalue-`j` families inside the `j`-th
//! antisymmetric power of the adjoint together with their signed dimension
//! sums ([`families`]), and the exact rational polynomial machinery behind
//! the dimension formulas `d_2 .. d_9` ([`polyfit`]).
//!
//! There is no floating point anywhere: integers are arbitrary precision and
//! every scalar that can be fractional is an exact rational. All containers
//! are ordered, so every operation is deterministic.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line front end live in the companion `casimir-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod families;
pub mod polyfit;
pub mod reps;
pub mod rootdata;
pub mod tensor;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Version string baked into serialized payloads and cache keys.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Resource ceilings for character-sized computations.
///
/// The ceilings are configuration, not constants: exterior powers of the
/// E-series adjoints must fail fast with a clear message instead of
/// exhausting memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of distinct weights a single character may hold, and
    /// the budget for pairwise convolution work.
    pub max_weights: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_weights: 50_000_000,
        }
    }
}
