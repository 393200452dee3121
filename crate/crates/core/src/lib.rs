//! Packing While Travelling (the non-linear knapsack problem): exact
//! evaluation, analytic optimality oracles, baseline evolutionary
//! algorithms, and the experiment harness that drives them.

pub mod algorithms;
pub mod error;
pub mod generate;
pub mod harness;
pub mod problem;
pub mod rng;
pub mod theory;

pub use error::{PwtError, Result};
pub use problem::{
    compare_fitness, dominance, BitString, Dominance, Fitness, Instance, Item, Solution,
};
