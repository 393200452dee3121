use crate::error::{PwtError, Result};

use super::{Fitness, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub profit: u64,
    pub weight: u64,
}

impl Item {
    pub fn new(profit: u64, weight: u64) -> Self {
        Item { profit, weight }
    }
}

/// An immutable PWT instance.
///
/// Items are indexed from 0. `cities[i]` is the 1-based city holding item
/// `i`; `distances[c - 1]` is the length of the leg leaving city `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    items: Vec<Item>,
    cities: Vec<usize>,
    distances: Vec<f64>,
    renting_rate: f64,
    v_min: f64,
    v_max: f64,
    capacity: u64,
    nu: f64,
    correlated: bool,
    uniform: bool,
}

impl Instance {
    pub fn new(
        items: Vec<Item>,
        cities: Vec<usize>,
        distances: Vec<f64>,
        renting_rate: f64,
        v_min: f64,
        v_max: f64,
        capacity: u64,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(PwtError::InvalidInstance(msg));
        if cities.len() != items.len() {
            return invalid(format!(
                "{} items but {} city assignments",
                items.len(),
                cities.len()
            ));
        }
        if distances.is_empty() {
            return invalid("at least one travel leg is required".into());
        }
        if let Some(d) = distances.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
            return invalid(format!("distance {d} is not a positive real"));
        }
        if let Some((i, item)) = items
            .iter()
            .enumerate()
            .find(|(_, it)| it.profit == 0 || it.weight == 0)
        {
            return invalid(format!(
                "item {i} has non-positive profit or weight: {item:?}"
            ));
        }
        let m = distances.len();
        if let Some((i, c)) = cities.iter().enumerate().find(|(_, &c)| c == 0 || c > m) {
            return invalid(format!("item {i} assigned to city {c}, expected 1..={m}"));
        }
        if !(renting_rate.is_finite() && renting_rate >= 0.0) {
            return invalid(format!(
                "renting rate {renting_rate} must be a non-negative real"
            ));
        }
        if !(v_min.is_finite() && v_max.is_finite() && v_min > 0.0 && v_min < v_max) {
            return invalid(format!(
                "velocity bounds must satisfy 0 < v_min < v_max, got [{v_min}, {v_max}]"
            ));
        }
        if capacity == 0 {
            return invalid("capacity must be positive".into());
        }

        let nu = (v_max - v_min) / capacity as f64;
        let correlated = m == 1
            && items
                .windows(2)
                .all(|w| w[0].profit >= w[1].profit && w[0].weight <= w[1].weight);
        let uniform = items.iter().all(|it| it.weight == 1);

        Ok(Instance {
            items,
            cities,
            distances,
            renting_rate,
            v_min,
            v_max,
            capacity,
            nu,
            correlated,
            uniform,
        })
    }

    /// All items in the first city, one leg of length `distance`.
    pub fn two_city(
        items: Vec<Item>,
        distance: f64,
        renting_rate: f64,
        v_min: f64,
        v_max: f64,
        capacity: u64,
    ) -> Result<Self> {
        let cities = vec![1; items.len()];
        Self::new(
            items,
            cities,
            vec![distance],
            renting_rate,
            v_min,
            v_max,
            capacity,
        )
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    /// Number of travel legs `m` (two cities means one leg).
    pub fn legs(&self) -> usize {
        self.distances.len()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn item(&self, i: usize) -> Item {
        self.items[i]
    }

    /// 1-based city of item `i`.
    pub fn city_of(&self, i: usize) -> usize {
        self.cities[i]
    }

    pub fn cities(&self) -> &[usize] {
        &self.cities
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn renting_rate(&self) -> f64 {
        self.renting_rate
    }

    pub fn v_min(&self) -> f64 {
        self.v_min
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    /// Speed lost per unit of carried weight, `(v_max - v_min) / C`.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Two cities, profits non-increasing and weights non-decreasing in index.
    pub fn is_correlated(&self) -> bool {
        self.correlated
    }

    /// Correlated with no two neighbouring items identical, so every item
    /// is strictly preferable to the next.
    pub fn is_strictly_correlated(&self) -> bool {
        self.correlated && self.items.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn total_item_weight(&self) -> u64 {
        self.items.iter().map(|it| it.weight).sum()
    }

    pub fn max_profit(&self) -> u64 {
        self.items.iter().map(|it| it.profit).max().unwrap_or(0)
    }

    /// The single leg length of a two-city instance.
    pub fn distance(&self) -> Result<f64> {
        match self.distances.as_slice() {
            [d] => Ok(*d),
            _ => Err(PwtError::NotTwoCity { legs: self.legs() }),
        }
    }

    /// Vehicle speed while carrying `load`; clamped to `v_min` from capacity on.
    #[inline]
    pub fn speed(&self, load: u64) -> f64 {
        if load >= self.capacity {
            self.v_min
        } else {
            self.v_max - self.nu * load as f64
        }
    }

    /// Travel time given the weight picked in each city.
    #[inline]
    pub fn travel_time_for_loads(&self, city_loads: &[u64]) -> f64 {
        debug_assert_eq!(city_loads.len(), self.distances.len());
        if let ([d], [load]) = (self.distances.as_slice(), city_loads) {
            return d / self.speed(*load);
        }
        let mut carried = 0u64;
        let mut time = 0.0;
        for (d, load) in self.distances.iter().zip(city_loads) {
            carried += load;
            time += d / self.speed(carried);
        }
        time
    }

    /// `W(s)` by a full rescan of the bit string.
    pub fn total_weight(&self, s: &Solution) -> u64 {
        s.bits().iter_ones().map(|i| self.items[i].weight).sum()
    }

    /// `P(s)` by a full rescan of the bit string.
    pub fn total_profit(&self, s: &Solution) -> u64 {
        s.bits().iter_ones().map(|i| self.items[i].profit).sum()
    }

    pub fn travel_time(&self, s: &Solution) -> f64 {
        self.travel_time_for_loads(s.city_loads())
    }

    pub fn benefit(&self, s: &Solution) -> f64 {
        s.profit() as f64 - self.renting_rate * self.travel_time(s)
    }

    /// `q(s) = min(C - W(s), 0)`.
    pub fn violation(&self, weight: u64) -> i64 {
        if weight > self.capacity {
            -((weight - self.capacity) as i64)
        } else {
            0
        }
    }

    /// Fitness from aggregates: total weight, total profit, per-city loads.
    #[inline]
    pub fn fitness_from_parts(&self, weight: u64, profit: u64, city_loads: &[u64]) -> Fitness {
        Fitness {
            violation: self.violation(weight),
            benefit: profit as f64 - self.renting_rate * self.travel_time_for_loads(city_loads),
        }
    }

    pub fn fitness(&self, s: &Solution) -> Fitness {
        Fitness {
            violation: self.violation(s.weight()),
            benefit: self.benefit(s),
        }
    }

    pub fn is_feasible(&self, s: &Solution) -> bool {
        s.weight() <= self.capacity
    }

    pub(crate) fn require_two_city(&self) -> Result<f64> {
        self.distance()
    }

    pub(crate) fn require_correlated(&self) -> Result<()> {
        if self.correlated {
            Ok(())
        } else {
            Err(PwtError::NotCorrelated)
        }
    }
}
