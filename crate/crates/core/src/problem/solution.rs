use crate::error::{PwtError, Result};

use super::{BitString, Instance};

/// A packing with cached aggregates.
///
/// `weight`, `profit` and the per-city loads always equal a rescan of `bits`
/// against the instance the solution was built for; [`Solution::flip`] keeps
/// them current in O(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    bits: BitString,
    weight: u64,
    profit: u64,
    ones: usize,
    city_loads: Vec<u64>,
}

impl Solution {
    pub fn empty(inst: &Instance) -> Self {
        Solution {
            bits: BitString::zeros(inst.n()),
            weight: 0,
            profit: 0,
            ones: 0,
            city_loads: vec![0; inst.legs()],
        }
    }

    pub fn from_bits(inst: &Instance, bits: BitString) -> Result<Self> {
        if bits.len() != inst.n() {
            return Err(PwtError::LengthMismatch {
                expected: inst.n(),
                found: bits.len(),
            });
        }
        let mut s = Solution::empty(inst);
        for i in bits.iter_ones() {
            s.flip(inst, i);
        }
        Ok(s)
    }

    pub fn from_bools(inst: &Instance, values: &[bool]) -> Result<Self> {
        Self::from_bits(inst, BitString::from_bools(values))
    }

    /// The prefix solution `s_i`: items `0..i` selected.
    pub fn prefix(inst: &Instance, i: usize) -> Self {
        let mut s = Solution::empty(inst);
        for j in 0..i.min(inst.n()) {
            s.flip(inst, j);
        }
        s
    }

    /// Toggles item `i`, updating the cached aggregates.
    #[inline]
    pub fn flip(&mut self, inst: &Instance, i: usize) {
        let item = inst.item(i);
        let leg = inst.city_of(i) - 1;
        if self.bits.flip(i) {
            self.weight += item.weight;
            self.profit += item.profit;
            self.city_loads[leg] += item.weight;
            self.ones += 1;
        } else {
            self.weight -= item.weight;
            self.profit -= item.profit;
            self.city_loads[leg] -= item.weight;
            self.ones -= 1;
        }
    }

    /// Aggregates of `self` with `flips` toggled, without touching `self`.
    /// `city_loads` receives the per-city loads of the flipped packing.
    pub fn preview_flips(
        &self,
        inst: &Instance,
        flips: &[usize],
        city_loads: &mut Vec<u64>,
    ) -> Preview {
        city_loads.clear();
        city_loads.extend_from_slice(&self.city_loads);
        let mut preview = Preview {
            weight: self.weight,
            profit: self.profit,
            cardinality: self.ones,
        };
        for &i in flips {
            let item = inst.item(i);
            let leg = inst.city_of(i) - 1;
            if self.bits.get(i) {
                preview.weight -= item.weight;
                preview.profit -= item.profit;
                preview.cardinality -= 1;
                city_loads[leg] -= item.weight;
            } else {
                preview.weight += item.weight;
                preview.profit += item.profit;
                preview.cardinality += 1;
                city_loads[leg] += item.weight;
            }
        }
        preview
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn profit(&self) -> u64 {
        self.profit
    }

    /// `|s|_1`, the number of selected items.
    pub fn cardinality(&self) -> usize {
        self.ones
    }

    pub fn city_loads(&self) -> &[u64] {
        &self.city_loads
    }

    /// Recomputes every cached aggregate from the bits and compares.
    pub fn caches_consistent(&self, inst: &Instance) -> bool {
        let mut loads = vec![0; inst.legs()];
        for i in self.bits.iter_ones() {
            loads[inst.city_of(i) - 1] += inst.item(i).weight;
        }
        self.weight == inst.total_weight(self)
            && self.profit == inst.total_profit(self)
            && self.ones == self.bits.count_ones()
            && loads == self.city_loads
    }
}

/// Aggregates of a packing that has not been materialised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preview {
    pub weight: u64,
    pub profit: u64,
    pub cardinality: usize,
}
