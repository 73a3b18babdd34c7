//! Verification engine for maximal commutative algebraic systems (MACS):
//! families of odd subsets of `[n]` that are pairwise intersecting, closed
//! under union with disjoint even sets, and maximal with that property —
//! together with their counterparts inside the rank-n Grassmann algebra,
//! where such a family spans a maximal commutative subalgebra.
//!
//! The crate builds the named families (cones, Fano-based block systems and
//! their two large extensions), decides the defining properties by brute
//! force with explicit witnesses, reproduces every cardinality and ratio in
//! exact arithmetic, and cross-checks the fast paths against independent
//! slow oracles.

pub mod cli;
pub mod constructions;
pub mod counts;
pub mod error;
pub mod grassmann;
pub mod oracle;
pub mod predicates;
pub mod setcore;

pub use error::{Error, Result};
