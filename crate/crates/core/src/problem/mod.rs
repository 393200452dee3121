//! The Packing While Travelling problem.
//!
//! A vehicle drives along a fixed path of `m + 1` cities. Items lie in the
//! first `m` cities; every picked item adds its profit but slows the vehicle,
//! whose speed drops linearly from `v_max` (empty) to `v_min` (full). The
//! benefit of a packing is its profit minus the renting rate times the total
//! travel time.

mod bits;
mod fitness;
mod instance;
mod io;
mod solution;

pub use bits::BitString;
pub use fitness::{
    benefit_cmp, benefits_equal, compare_fitness, dominance, dominance_of, Dominance, Fitness,
    BENEFIT_EPSILON,
};
pub use instance::{Instance, Item};
pub use io::INSTANCE_FORMAT_VERSION;
pub use solution::{Preview, Solution};
