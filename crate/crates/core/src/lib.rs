//! Exact invariants of quotient surface singularities.
//!
//! * [`arith`]: rationals and cyclotomic fields ℚ(ζ_r)
//! * [`dedekind`]: Dedekind sums σ_i(1/r(b_1,…,b_m))
//! * [`catalog`]: singularity types with group orders, correction terms μ and Milnor numbers
//! * [`invariants`]: orbifold Euler numbers, energy ledgers, weighted genus, HRR–Milnor identities
//! * [`enumerator`]: admissible singularity configurations of Del Pezzo degenerations
//! * [`cli`]: the `orbiquant` command-line front end

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod dedekind;
pub mod enumerator;
pub mod invariants;
pub mod known_values;

pub use arith::{CyclotomicElement, Rational};
pub use catalog::{SingularityKind, SingularityType};
