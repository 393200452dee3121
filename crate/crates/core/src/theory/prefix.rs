use crate::error::{PwtError, Result};
use crate::problem::{benefits_equal, Instance, Solution};

use super::Thresholds;

/// The optimal prefix of a correlated instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptResult {
    /// Number of leading items in the optimum `s_k`.
    pub k: usize,
    /// `s_k` and `s_{k+1}` are both optimal.
    pub tie: bool,
    pub optimal_benefit: f64,
    /// Length of the best prefix when capacity is ignored.
    pub o: usize,
}

/// Locates the optimum among the prefix solutions `s_0, ..., s_n`.
///
/// `o` is the first index with `W(s_o) >= add_threshold(o)` (0-based item
/// `o` is the `(o+1)`-th item), so benefits rise strictly up to `s_o`, may
/// stay level for one step when the load sits exactly on the threshold, and
/// fall strictly afterwards. `k` is the longest feasible prefix not past `o`.
pub fn optimal_prefix(inst: &Instance) -> Result<OptResult> {
    inst.require_correlated()?;
    let thresholds = Thresholds::compute(inst)?;
    let n = inst.n();

    let mut o = n;
    let mut load = 0u64;
    let mut tie_at_o = false;
    for (i, &t) in thresholds.add.iter().enumerate() {
        let w = load as f64;
        if benefits_equal(w, t) || w > t {
            o = i;
            tie_at_o = benefits_equal(w, t);
            break;
        }
        load += inst.item(i).weight;
    }

    let mut k = 0;
    let mut prefix_weight = 0u64;
    for i in 0..o {
        prefix_weight += inst.item(i).weight;
        if prefix_weight > inst.capacity() {
            break;
        }
        k = i + 1;
    }
    let tie = tie_at_o && k == o && prefix_weight_of(inst, o + 1) <= inst.capacity();
    let optimal_benefit = inst.benefit(&Solution::prefix(inst, k));
    Ok(OptResult {
        k,
        tie,
        optimal_benefit,
        o,
    })
}

fn prefix_weight_of(inst: &Instance, len: usize) -> u64 {
    inst.items()[..len.min(inst.n())]
        .iter()
        .map(|it| it.weight)
        .sum()
}

/// The Pareto-optimal solutions under (min `W`, max `F`): `s_0, ..., s_k`.
pub fn pareto_front(inst: &Instance) -> Result<Vec<Solution>> {
    let opt = optimal_prefix(inst)?;
    let mut front = Vec::with_capacity(opt.k + 1);
    let mut s = Solution::empty(inst);
    front.push(s.clone());
    for i in 0..opt.k {
        s.flip(inst, i);
        front.push(s.clone());
    }
    Ok(front)
}

/// Evaluates the protected-prefix index `h` for feasible solutions: the
/// largest `i <= k` such that items `0..i` are all packed and the load is
/// below the removal threshold of item `i - 1`. `i = 0` always qualifies.
///
/// Identical neighbouring items are interchangeable: within each run of
/// equal `(profit, weight)` pairs only the number of packed members counts,
/// and they are taken to occupy the run's leading positions. Without
/// identical neighbours this is exactly the positional definition, which
/// [`HPotential::eval_positional`] keeps available.
#[derive(Clone, Debug)]
pub struct HPotential {
    k: usize,
    remove: Vec<f64>,
    capacity: u64,
    /// Exclusive end of the run of identical items starting at each index.
    run_end: Vec<usize>,
}

impl HPotential {
    pub fn new(inst: &Instance) -> Result<Self> {
        let opt = optimal_prefix(inst)?;
        let thresholds = Thresholds::compute(inst)?;
        let n = inst.n();
        let mut run_end = vec![n; n];
        for i in (0..n.saturating_sub(1)).rev() {
            run_end[i] = if inst.item(i) == inst.item(i + 1) {
                run_end[i + 1]
            } else {
                i + 1
            };
        }
        Ok(HPotential {
            k: opt.k,
            remove: thresholds.remove,
            capacity: inst.capacity(),
            run_end,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn check_feasible(&self, s: &Solution) -> Result<()> {
        if s.weight() > self.capacity {
            return Err(PwtError::Infeasible {
                weight: s.weight(),
                capacity: self.capacity,
            });
        }
        Ok(())
    }

    /// Largest `i <= limit` with `W(s)` below the removal threshold of item
    /// `i - 1`.
    fn protected_up_to(&self, load: u64, limit: usize) -> usize {
        let load = load as f64;
        (1..=limit.min(self.k))
            .rev()
            .find(|&i| load < self.remove[i - 1])
            .unwrap_or(0)
    }

    pub fn eval(&self, s: &Solution) -> Result<usize> {
        self.check_feasible(s)?;
        // length of the packed prefix once each run of identical items is
        // packed from its front
        let mut packed = 0;
        while packed < self.k {
            let end = self.run_end[packed];
            let run_start = packed;
            packed += (run_start..end).filter(|&i| s.contains(i)).count();
            if packed < end {
                break;
            }
        }
        Ok(self.protected_up_to(s.weight(), packed))
    }

    /// `h` with items identified by position only.
    pub fn eval_positional(&self, s: &Solution) -> Result<usize> {
        self.check_feasible(s)?;
        let packed = (0..self.k).find(|&i| !s.contains(i)).unwrap_or(self.k);
        Ok(self.protected_up_to(s.weight(), packed))
    }
}

pub fn compute_h(inst: &Instance, s: &Solution) -> Result<usize> {
    HPotential::new(inst)?.eval(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Item;

    fn inst(items: &[(u64, u64)], capacity: u64) -> Instance {
        let items = items.iter().map(|&(p, w)| Item::new(p, w)).collect();
        Instance::two_city(items, 50.0, 70.0, 0.1, 1.0, capacity).unwrap()
    }

    #[test]
    fn negative_thresholds_give_empty_optimum() {
        // tiny profits cannot pay for any slowdown
        let inst = Instance::two_city(
            vec![Item::new(1, 500), Item::new(1, 600)],
            50.0,
            70.0,
            0.1,
            1.0,
            1000,
        )
        .unwrap();
        let th = Thresholds::compute(&inst).unwrap();
        assert!(th.add.iter().all(|&t| t < 0.0));
        let opt = optimal_prefix(&inst).unwrap();
        assert_eq!((opt.k, opt.o), (0, 0));
        assert_eq!(opt.optimal_benefit, inst.benefit(&Solution::empty(&inst)));
        assert_eq!(pareto_front(&inst).unwrap().len(), 1);
    }

    #[test]
    fn all_items_when_last_threshold_is_high() {
        let inst = inst(&[(1000, 1), (900, 2), (800, 3)], 8000);
        let th = Thresholds::compute(&inst).unwrap();
        assert!(th.add[2] > 3.0);
        let opt = optimal_prefix(&inst).unwrap();
        assert_eq!((opt.k, opt.o, opt.tie), (3, 3, false));
        assert_eq!(pareto_front(&inst).unwrap().len(), 4);
    }

    #[test]
    fn capacity_caps_k() {
        let items = vec![Item::new(1000, 10), Item::new(900, 20), Item::new(800, 30)];
        let inst = Instance::two_city(items, 50.0, 0.01, 0.1, 1.0, 55).unwrap();
        let opt = optimal_prefix(&inst).unwrap();
        assert_eq!(opt.o, 3);
        assert_eq!(opt.k, 2);
    }

    #[test]
    fn rejects_uncorrelated() {
        let inst = inst(&[(1, 10), (900, 20)], 35);
        assert!(matches!(
            optimal_prefix(&inst),
            Err(PwtError::NotCorrelated)
        ));
        assert!(pareto_front(&inst).is_err());
        assert!(compute_h(&inst, &Solution::empty(&inst)).is_err());
    }

    #[test]
    fn h_of_optimum_is_k() {
        let inst = inst(&[(1000, 10), (900, 20), (800, 30), (100, 400)], 8000);
        let opt = optimal_prefix(&inst).unwrap();
        let best = Solution::prefix(&inst, opt.k);
        assert_eq!(compute_h(&inst, &best).unwrap(), opt.k);
        let mut gap = best.clone();
        gap.flip(&inst, 0);
        assert_eq!(compute_h(&inst, &gap).unwrap(), 0);
    }

    #[test]
    fn h_rejects_infeasible() {
        let inst = inst(&[(1000, 10), (900, 20)], 15);
        let s = Solution::prefix(&inst, 2);
        assert!(matches!(
            compute_h(&inst, &s),
            Err(PwtError::Infeasible { .. })
        ));
    }

    #[test]
    fn identical_items_are_interchangeable() {
        let items = [(1000, 10), (900, 20), (900, 20), (800, 30)];
        let inst = inst(&items, 8000);
        let h = HPotential::new(&inst).unwrap();
        assert_eq!(h.k(), 4);
        // {0, 2}: the packed copy of the duplicate counts as the first one
        let s = Solution::from_bools(&inst, &[true, false, true, false]).unwrap();
        assert_eq!(h.eval(&s).unwrap(), 2);
        assert_eq!(h.eval_positional(&s).unwrap(), 1);
        let t = Solution::from_bools(&inst, &[true, true, false, false]).unwrap();
        assert_eq!(h.eval(&t).unwrap(), 2);
        assert_eq!(h.eval_positional(&t).unwrap(), 2);
    }
}
