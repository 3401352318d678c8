//! Exact lattice-polytope toolkit for terminal toric Fano threefolds.
//!
//! A Fano polytope `P` (origin in the interior, primitive vertices) defines
//! a toric Fano variety through its face fan. This crate computes the
//! standard invariants of that variety exactly (class group and Picard
//! ranks, anticanonical degree, genus), the lattice automorphism group of
//! `P`, and the rank of the invariant part of the class group, which decides
//! whether the variety is G-Fano.

pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod invariants;
pub mod linear;
pub mod polytope;
pub mod report;
pub mod symmetry;

pub use error::{Error, Result};
pub use linear::{IntMatrix, IntVector, Rational};
pub use polytope::{LatticePolytope, PropertyFlags};
