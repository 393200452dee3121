//! Analytic structure of two-city PWT and exhaustive cross-checks.
//!
//! On a two-city instance, adding item `i` to a packing of weight `W` helps
//! exactly when `W` lies below a per-item threshold; removing it helps
//! exactly when `W` exceeds that threshold plus the item's own weight. With
//! favourably correlated items this pins the optimum (and the whole Pareto
//! front under weight/fitness) to prefixes of the item order.

mod enumerate;
mod prefix;
mod thresholds;

pub use enumerate::{brute_force_optimum, brute_force_pareto_front, DEFAULT_ENUMERATION_LIMIT};
pub use prefix::{compute_h, optimal_prefix, pareto_front, HPotential, OptResult};
pub use thresholds::{add_threshold, benefit_gain_of_adding, remove_threshold, Thresholds};
