//! Exact-arithmetic toolkit for the combinatorics of multitriangulations of a
//! convex polygon and their polyhedral, tropical and matroidal companions:
//! crossing-free structures and their higher analogues, separation coordinates
//! and the associated simplicial weight cones, tropical Pfaffian prevarieties,
//! Pfaffians and low-rank antisymmetric completion, and the projection of the
//! crossing-free case to a complete polytopal fan.
//!
//! All arithmetic is exact (arbitrary-precision rationals); every membership
//! decision is a sign condition, never a tolerance.

pub mod algebra;
pub mod cli;
pub mod combinatorics;
pub mod coords;
mod cyclic;
mod error;
pub mod fan;
mod par;
pub mod rational;
pub mod sampling;
pub mod tropical;

pub use combinatorics::{Edge, EdgeSet, Matching, Parity};
pub use coords::{Basis, ConeDescription, LinearForm, WeightVector};
pub use error::Error;
pub use rational::Rat;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
