use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;

use crate::problem::{compare_fitness, dominance_of, Dominance, Fitness, Solution};

#[derive(Clone, Debug)]
pub struct ArchiveEntry {
    pub solution: Solution,
    pub fitness: Fitness,
}

impl ArchiveEntry {
    pub fn weight(&self) -> u64 {
        self.solution.weight()
    }
}

/// Mutually non-dominated solutions under (min `W`, max `F`), bucketed by
/// cardinality.
///
/// Non-domination forces at most one member per weight and fitness strictly
/// increasing with weight, so members are kept in a map keyed by weight:
/// the nearest lighter-or-equal member decides whether a newcomer is
/// strongly dominated, and the members it weakly dominates form a run of
/// heavier neighbours.
#[derive(Clone, Debug)]
pub struct ParetoArchive {
    by_weight: BTreeMap<u64, ArchiveEntry>,
    /// Member weights per cardinality.
    buckets: Vec<Vec<u64>>,
    /// Cardinalities with a non-empty bucket, in no particular order.
    occupied: Vec<usize>,
    /// Position of each cardinality in `occupied`.
    slot: Vec<usize>,
}

const VACANT: usize = usize::MAX;

impl ParetoArchive {
    pub fn new(n: usize) -> Self {
        ParetoArchive {
            by_weight: BTreeMap::new(),
            buckets: vec![Vec::new(); n + 1],
            occupied: Vec::new(),
            slot: vec![VACANT; n + 1],
        }
    }

    pub fn len(&self) -> usize {
        self.by_weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_weight.is_empty()
    }

    /// Members in increasing weight.
    pub fn entries(&self) -> impl Iterator<Item = &ArchiveEntry> {
        self.by_weight.values()
    }

    /// Cardinalities `j` with at least one member.
    pub fn occupied_buckets(&self) -> &[usize] {
        &self.occupied
    }

    pub fn bucket(&self, cardinality: usize) -> impl Iterator<Item = &ArchiveEntry> {
        self.buckets
            .get(cardinality)
            .into_iter()
            .flatten()
            .map(|w| &self.by_weight[w])
    }

    /// The fittest member of a bucket; ties on fitness go to the lighter
    /// member, then the lexicographically smaller bit string.
    pub fn best_in_bucket(&self, cardinality: usize) -> Option<&ArchiveEntry> {
        self.bucket(cardinality).reduce(|best, e| {
            let better = match compare_fitness(&e.fitness, &best.fitness) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    (e.weight(), e.solution.bits()) < (best.weight(), best.solution.bits())
                }
            };
            if better {
                e
            } else {
                best
            }
        })
    }

    /// Uniform bucket, then its fittest member.
    pub fn select_parent(&self, rng: &mut impl Rng) -> &ArchiveEntry {
        let j = self.occupied[rng.random_range(0..self.occupied.len())];
        self.best_in_bucket(j)
            .expect("occupied bucket has a member")
    }

    /// Fittest member (the heaviest one); feasible whenever any member is.
    pub fn best(&self) -> Option<&ArchiveEntry> {
        self.by_weight.values().next_back()
    }

    pub fn is_strongly_dominated(&self, weight: u64, fitness: &Fitness) -> bool {
        self.by_weight
            .range(..=weight)
            .next_back()
            .is_some_and(|(&w, e)| {
                dominance_of(w, &e.fitness, weight, fitness) == Dominance::Strong
            })
    }

    /// Inserts `solution` unless a member strongly dominates it, evicting
    /// every member it weakly dominates. Returns whether it was inserted.
    pub fn offer(&mut self, solution: &Solution, fitness: Fitness) -> bool {
        if self.is_strongly_dominated(solution.weight(), &fitness) {
            return false;
        }
        self.insert_undominated(solution.clone(), fitness);
        true
    }

    /// Insertion step of [`offer`](Self::offer) for a caller that has already
    /// checked [`is_strongly_dominated`](Self::is_strongly_dominated).
    pub fn insert_undominated(&mut self, solution: Solution, fitness: Fitness) {
        let weight = solution.weight();
        let evicted: Vec<u64> = self
            .by_weight
            .range(weight..)
            .take_while(|(_, e)| compare_fitness(&fitness, &e.fitness) != Ordering::Less)
            .map(|(&w, _)| w)
            .collect();
        for w in evicted {
            let e = self.by_weight.remove(&w).expect("key collected from map");
            self.unbucket(e.solution.cardinality(), w);
        }
        let cardinality = solution.cardinality();
        self.by_weight
            .insert(weight, ArchiveEntry { solution, fitness });
        if self.buckets[cardinality].is_empty() {
            self.slot[cardinality] = self.occupied.len();
            self.occupied.push(cardinality);
        }
        self.buckets[cardinality].push(weight);
    }

    fn unbucket(&mut self, cardinality: usize, weight: u64) {
        let bucket = &mut self.buckets[cardinality];
        let pos = bucket
            .iter()
            .position(|&w| w == weight)
            .expect("member is bucketed");
        bucket.swap_remove(pos);
        if bucket.is_empty() {
            let at = self.slot[cardinality];
            self.occupied.swap_remove(at);
            if let Some(&moved) = self.occupied.get(at) {
                self.slot[moved] = at;
            }
            self.slot[cardinality] = VACANT;
        }
    }

    /// Checks that no member strongly dominates another and every member
    /// sits in the bucket of its cardinality.
    pub fn is_consistent(&self) -> bool {
        let members: Vec<&ArchiveEntry> = self.entries().collect();
        let mutual = members.iter().all(|a| {
            members.iter().all(|b| {
                std::ptr::eq(*a, *b)
                    || dominance_of(a.weight(), &a.fitness, b.weight(), &b.fitness)
                        != Dominance::Strong
            })
        });
        let bucketed = self.buckets.iter().enumerate().all(|(j, ws)| {
            ws.iter()
                .all(|w| self.by_weight[w].solution.cardinality() == j)
                && (ws.is_empty() == (self.slot[j] == VACANT))
        });
        let count: usize = self.buckets.iter().map(Vec::len).sum();
        mutual
            && bucketed
            && count == self.len()
            && self.occupied.iter().all(|&j| !self.buckets[j].is_empty())
    }
}
