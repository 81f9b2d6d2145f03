//! Error type shared by all modules.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Everything that can go wrong in the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A matrix failed Cartan-matrix validation (shape, diagonal, signs,
    /// zero symmetry, or block structure).
    InvalidCartan(String),
    /// A declared block is not an irreducible Cartan matrix of finite type.
    /// Carries the failing block index (0-based) and the algebra name.
    NotFiniteType { block: usize, name: String },
    /// Registry lookup failed.
    UnknownAlgebra(String),
    /// An operation requiring a dominant weight was handed a non-dominant one.
    NotDominant(Vec<i64>),
    /// A weight or coordinate vector has the wrong length for the algebra.
    LengthMismatch { expected: usize, got: usize },
    /// Two characters over different root data were combined.
    DatumMismatch,
    /// A computation would exceed the configured weight ceiling.
    /// `estimate` is the predicted number of weights (or pair operations).
    ResourceCeiling { estimate: u64, limit: u64 },
    /// Decomposition met a dominant weight of negative multiplicity: the
    /// input was not a true character.
    NotACharacter { weight: Vec<i64>, multiplicity: String },
    /// Exact linear solve hit a zero pivot.
    SingularSystem,
    /// Overdetermined interpolation data is inconsistent at the given point.
    InconsistentData { point: usize, residual: String },
    /// A value that must be an integer was not. This is surfaced, never
    /// hidden: for the dimension polynomials it would falsify the claim
    /// that they are integral at integers.
    NonIntegral(String),
    /// Parameter outside the supported range (e.g. `d_j` for j not in 2..=9,
    /// or the pole m = -4 of the parametrization).
    OutOfRange(String),
    /// No sign assignment reproduces the requested signed sum.
    NoSignAssignment { target: String },
    /// Constant term too large to factor; integer root extraction refused.
    FactorTooLarge,
    /// Internal invariant violation (a bug, not a user error).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCartan(msg) => write!(f, "invalid Cartan matrix: {msg}"),
            Error::NotFiniteType { block, name } => {
                write!(f, "block {block} of {name} is not of finite type")
            }
            Error::UnknownAlgebra(name) => write!(f, "unknown algebra `{name}`"),
            Error::NotDominant(labels) => write!(f, "weight {labels:?} is not dominant"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "expected a vector of length {expected}, got {got}")
            }
            Error::DatumMismatch => write!(f, "characters belong to different algebras"),
            Error::ResourceCeiling { estimate, limit } => write!(
                f,
                "computation needs about {estimate} weights, over the ceiling {limit}"
            ),
            Error::NotACharacter {
                weight,
                multiplicity,
            } => write!(
                f,
                "not a true character: weight {weight:?} has multiplicity {multiplicity}"
            ),
            Error::SingularSystem => write!(f, "singular linear system"),
            Error::InconsistentData { point, residual } => write!(
                f,
                "interpolation data inconsistent at point {point} (residual {residual})"
            ),
            Error::NonIntegral(what) => write!(f, "non-integral value: {what}"),
            Error::OutOfRange(what) => write!(f, "out of range: {what}"),
            Error::NoSignAssignment { target } => {
                write!(f, "no sign assignment attains the signed sum {target}")
            }
            Error::FactorTooLarge => write!(f, "constant term too large to factor"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
