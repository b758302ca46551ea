//! Exact counts of random walk labelings for perfect trees, combs, the torus
//! `C_2 x C_n` and the two-cycle graphs, with a brute-force oracle for
//! cross-checking every formula.

pub mod bigmath;
pub mod combs;
pub mod error;
pub mod family;
pub mod graphs;
pub mod oeis;
pub mod oracle;
pub mod series;
pub mod torus;
pub mod trees;
pub mod twocycles;

pub use bigmath::{Count, Rational, SignedCoefficient};
pub use error::{Error, Result};
