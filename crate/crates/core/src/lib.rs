//! Finite-field Furstenberg sets and exceptional projections.
//!
//! Exact arithmetic over `F_p`, enumeration of linear and affine flats, the
//! exponents `F(s,t;n,k)` and `M(a,s;n,k)`, grid verification of the
//! inequalities relating them, and explicit constructions that realise them.

pub mod error;
pub mod exceptional_constructions;
pub mod flag_geometry;
pub mod fp_linalg;
pub mod furstenberg_constructions;
pub mod harness;
pub mod indices;
pub mod lemma_verifier;
pub mod projections;

pub use error::{Error, Result};
pub use flag_geometry::{AffineFlat, LinearSubspace};
pub use fp_linalg::{PrimeField, PrimeMatrix};
pub use indices::{furstenberg_index, marstrand_index, ExactExponent, Rational};
