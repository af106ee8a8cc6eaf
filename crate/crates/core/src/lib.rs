//! Shift Bribery for Borda, Maximin and Copeland^α elections.
//!
//! The crate offers exact solvers (a brute-force oracle, a solver parameterized
//! by the number of unit shifts, an all-or-nothing subset solver and a
//! min-cost-flow solver over identical-order blocks), a greedy heuristic, two
//! approximation schemes, partial kernels, and generators for the standard
//! hardness constructions.

pub mod approx;
pub mod election;
pub mod error;
pub mod flow;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod pricing;
pub mod random;
pub mod reductions;
pub mod solvers;

pub use election::{Election, Pairwise, Rule, Score, ShiftAction};
pub use error::{Error, Result};
pub use instance::{Guarantee, Instance, SolveResult};
pub use pricing::{FamilyTags, PriceFunction, PriceList};

pub type Rational = num_rational::Ratio<i64>;
