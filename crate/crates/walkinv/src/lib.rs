//! Random-walk and distance invariants of finite simple connected graphs,
//! in exact rational arithmetic.
//!
//! The crate computes hitting times, cover costs, effective resistances,
//! Wiener/Kirchhoff-type indices and the Kemeny constant, and mechanically
//! verifies the exact identities, bounds, preorder equivalences and extremal
//! characterisations relating them — by exhaustive small-instance
//! enumeration plus Monte Carlo cross-checks. All verification paths use
//! arbitrary-precision rationals; floating point appears only in the
//! simulation module.

#![forbid(unsafe_code)]

pub mod enumerate;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod simulate;
pub mod spectral;
pub mod verify;
pub mod walkcost;

pub use error::{Error, Result};
pub use graph::{Graph, RootedTree};
pub use rational::Rational;
