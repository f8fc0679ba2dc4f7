//! Exact Bernoulli numbers, Fermat and Wilson quotients, p-adic residues,
//! Hensel lifts, harmonic sums, and a catalog of congruence checks built on them.

pub mod arith;
pub mod bernoulli;
pub mod combinatorics;
pub mod hensel;
pub mod quotients;
pub mod registry;
