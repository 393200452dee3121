//! Seeded random instances: favourably correlated and uniform-weight.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PwtError, Result};
use crate::problem::{Instance, Item};
use crate::rng;

pub const DEFAULT_CORRELATED_CAPACITY: u64 = 8000;
pub const DEFAULT_UNIFORM_CAPACITY: u64 = 72;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    /// Inclusive integer range for profits.
    pub profit_range: (u64, u64),
    /// Inclusive integer range for weights (ignored by uniform generation).
    pub weight_range: (u64, u64),
    pub distance: f64,
    pub renting_rate: f64,
    pub v_max: f64,
    pub v_min: f64,
    pub capacity: u64,
    pub seed: u64,
}

impl GenParams {
    pub fn correlated(n: usize, seed: u64) -> Self {
        GenParams {
            n,
            profit_range: (1, 1000),
            weight_range: (1, 1000),
            distance: 50.0,
            renting_rate: 70.0,
            v_max: 1.0,
            v_min: 0.1,
            capacity: DEFAULT_CORRELATED_CAPACITY,
            seed,
        }
    }

    pub fn uniform(n: usize, seed: u64) -> Self {
        GenParams {
            capacity: DEFAULT_UNIFORM_CAPACITY,
            ..Self::correlated(n, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(PwtError::InvalidConfig(msg.to_string()));
        if self.n == 0 {
            return bad("n must be positive");
        }
        for (lo, hi) in [self.profit_range, self.weight_range] {
            if lo == 0 || lo > hi {
                return bad("value ranges must be non-empty and start at 1 or above");
            }
        }
        if !(self.v_min > 0.0 && self.v_min < self.v_max) {
            return bad("velocity bounds must satisfy 0 < v_min < v_max");
        }
        if self.capacity == 0 {
            return bad("capacity must be positive");
        }
        Ok(())
    }
}

fn draw(rng: &mut rng::Stream, n: usize, (lo, hi): (u64, u64)) -> Vec<u64> {
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Profits are drawn first, then weights, from the same seeded stream.
fn draw_profits(p: &GenParams, rng: &mut rng::Stream) -> Vec<u64> {
    let mut profits = draw(rng, p.n, p.profit_range);
    profits.sort_unstable_by(|a, b| b.cmp(a));
    profits
}

fn build(p: &GenParams, profits: Vec<u64>, weights: Vec<u64>) -> Result<Instance> {
    let items = profits
        .into_iter()
        .zip(weights)
        .map(|(p, w)| Item::new(p, w))
        .collect();
    Instance::two_city(
        items,
        p.distance,
        p.renting_rate,
        p.v_min,
        p.v_max,
        p.capacity,
    )
}

/// Profits sorted descending, weights sorted ascending, paired by rank.
pub fn gen_correlated(p: &GenParams) -> Result<Instance> {
    p.validate()?;
    let mut rng = rng::stream(p.seed);
    let profits = draw_profits(p, &mut rng);
    let mut weights = draw(&mut rng, p.n, p.weight_range);
    weights.sort_unstable();
    build(p, profits, weights)
}

/// The profits of [`gen_correlated`] for the same seed, with unit weights.
pub fn gen_uniform(p: &GenParams) -> Result<Instance> {
    p.validate()?;
    let mut rng = rng::stream(p.seed);
    let profits = draw_profits(p, &mut rng);
    build(p, profits, vec![1; p.n])
}

/// Longest prefix of the item order whose weight fits `budget`.
pub fn prefix_capacity(inst: &Instance, budget: u64) -> usize {
    let mut total = 0;
    inst.items()
        .iter()
        .take_while(|it| {
            total += it.weight;
            total <= budget
        })
        .count()
}

/// Mean (rounded half to even) over instances of the longest prefix that
/// fits `budget`; used to size uniform-weight instances.
pub fn derive_uniform_capacity(instances: &[Instance], budget: u64) -> Result<u64> {
    if instances.is_empty() {
        return Err(PwtError::EmptyInput(
            "no instances to derive a capacity from",
        ));
    }
    if budget == 0 {
        return Err(PwtError::InvalidConfig("budget must be positive".into()));
    }
    if instances.iter().any(|inst| !inst.is_correlated()) {
        return Err(PwtError::NotCorrelated);
    }
    let total: usize = instances
        .iter()
        .map(|inst| prefix_capacity(inst, budget))
        .sum();
    Ok((total as f64 / instances.len() as f64).round_ties_even() as u64)
}
