//! Exhaustive oracles over all `2^n` packings.

use std::cmp::Ordering;

use crate::error::{PwtError, Result};
use crate::problem::{benefits_equal, compare_fitness, BitString, Fitness, Instance, Solution};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

struct Point {
    mask: u64,
    weight: u64,
    fitness: Fitness,
}

fn check_size(inst: &Instance, limit: usize) -> Result<()> {
    let n = inst.n();
    if n > limit || n > 63 {
        return Err(PwtError::TooLarge { n, limit });
    }
    Ok(())
}

fn enumerate(inst: &Instance) -> impl Iterator<Item = Point> + '_ {
    let n = inst.n();
    let mut loads = vec![0u64; inst.legs()];
    (0..1u64 << n).map(move |mask| {
        loads.iter_mut().for_each(|l| *l = 0);
        let mut weight = 0;
        let mut profit = 0;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let item = inst.item(i);
            weight += item.weight;
            profit += item.profit;
            loads[inst.city_of(i) - 1] += item.weight;
        }
        let benefit = profit as f64 - inst.renting_rate() * inst.travel_time_for_loads(&loads);
        Point {
            mask,
            weight,
            fitness: Fitness {
                violation: inst.violation(weight),
                benefit,
            },
        }
    })
}

/// Orders masks by the bit string `(x_0, x_1, ...)` read lexicographically.
fn lex_key(mask: u64) -> u64 {
    mask.reverse_bits()
}

fn to_solution(inst: &Instance, mask: u64) -> Solution {
    Solution::from_bits(inst, BitString::from_mask(mask, inst.n()))
        .expect("mask length matches instance")
}

/// Feasible maximiser of `B` and its benefit. Among solutions within the
/// tolerance band of the maximum, the lexicographically smallest wins.
pub fn brute_force_optimum(inst: &Instance, limit: usize) -> Result<(Solution, f64)> {
    check_size(inst, limit)?;
    let feasible: Vec<(u64, f64)> = enumerate(inst)
        .filter(|p| p.fitness.is_feasible())
        .map(|p| (p.mask, p.fitness.benefit))
        .collect();
    let best = feasible
        .iter()
        .map(|&(_, b)| b)
        .fold(f64::NEG_INFINITY, f64::max);
    let (mask, benefit) = feasible
        .into_iter()
        .filter(|&(_, b)| benefits_equal(b, best))
        .min_by_key(|&(mask, _)| lex_key(mask))
        .expect("the empty packing is always feasible");
    Ok((to_solution(inst, mask), benefit))
}

/// All packings not strongly dominated under (min `W`, max `F`), one per
/// distinct `(W, B)` objective point, sorted by weight.
pub fn brute_force_pareto_front(inst: &Instance, limit: usize) -> Result<Vec<Solution>> {
    check_size(inst, limit)?;
    let mut points: Vec<Point> = enumerate(inst).collect();
    points.sort_by(|a, b| {
        a.weight
            .cmp(&b.weight)
            .then_with(|| higher_first(&a.fitness, &b.fitness))
            .then_with(|| lex_key(a.mask).cmp(&lex_key(b.mask)))
    });

    let mut front: Vec<&Point> = Vec::new();
    // best fitness among strictly lighter packings
    let mut lighter_best: Option<Fitness> = None;
    let mut start = 0;
    while start < points.len() {
        let weight = points[start].weight;
        let end = start
            + points[start..]
                .iter()
                .take_while(|p| p.weight == weight)
                .count();
        let group = &points[start..end];
        // group is sorted best-first, so group[0] holds the group maximum
        let group_best = group[0].fitness;
        for p in group {
            let by_lighter =
                lighter_best.is_some_and(|f| compare_fitness(&f, &p.fitness) != Ordering::Less);
            let by_same = compare_fitness(&group_best, &p.fitness) == Ordering::Greater;
            if by_lighter || by_same {
                continue;
            }
            let duplicate = front.iter().any(|q| {
                q.weight == p.weight && benefits_equal(q.fitness.benefit, p.fitness.benefit)
            });
            if !duplicate {
                front.push(p);
            }
        }
        lighter_best = Some(match lighter_best {
            Some(f) if !group_best.strictly_better_than(&f) => f,
            _ => group_best,
        });
        start = end;
    }
    Ok(front
        .into_iter()
        .map(|p| to_solution(inst, p.mask))
        .collect())
}

fn higher_first(a: &Fitness, b: &Fitness) -> Ordering {
    b.violation
        .cmp(&a.violation)
        .then_with(|| b.benefit.total_cmp(&a.benefit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Item;
    use crate::theory::add_threshold;

    fn pair() -> Instance {
        Instance::two_city(
            vec![Item::new(100, 10), Item::new(50, 20)],
            1.0,
            1.0,
            0.1,
            1.0,
            100,
        )
        .unwrap()
    }

    #[test]
    fn single_beneficial_item() {
        let inst = Instance::two_city(vec![Item::new(500, 5)], 50.0, 70.0, 0.1, 1.0, 100).unwrap();
        assert!(add_threshold(&inst, 0).unwrap() > 0.0);
        let (best, b) = brute_force_optimum(&inst, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(best.bits().to_string(), "1");
        assert_eq!(b, inst.benefit(&best));
        let front = brute_force_pareto_front(&inst, 20).unwrap();
        let shapes: Vec<String> = front.iter().map(|s| s.bits().to_string()).collect();
        assert_eq!(shapes, ["0", "1"]);
    }

    #[test]
    fn single_harmful_item() {
        let inst = Instance::two_city(vec![Item::new(1, 90)], 50.0, 70.0, 0.1, 1.0, 100).unwrap();
        assert!(add_threshold(&inst, 0).unwrap() < 0.0);
        let (best, _) = brute_force_optimum(&inst, 20).unwrap();
        assert_eq!(best.bits().to_string(), "0");
    }

    #[test]
    fn pair_matches_four_explicit_cases() {
        let inst = pair();
        let nu: f64 = 0.9 / 100.0;
        // B = P - R d / (v_max - nu W), R = d = v_max = 1
        let cases = [
            ("00", 0.0 - 1.0 / 1.0),
            ("10", 100.0 - 1.0 / (1.0 - nu * 10.0)),
            ("01", 50.0 - 1.0 / (1.0 - nu * 20.0)),
            ("11", 150.0 - 1.0 / (1.0 - nu * 30.0)),
        ];
        let (want, want_b) = cases
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let (best, b) = brute_force_optimum(&inst, 20).unwrap();
        assert_eq!(best.bits().to_string(), want);
        assert!((b - want_b).abs() < 1e-12);
    }

    #[test]
    fn tie_break_prefers_lexicographically_smallest() {
        // two identical items; optimum packs exactly one of them
        let items = vec![Item::new(100, 60), Item::new(100, 60)];
        let inst = Instance::two_city(items, 1.0, 1.0, 0.1, 1.0, 100).unwrap();
        let (best, _) = brute_force_optimum(&inst, 20).unwrap();
        assert_eq!(best.bits().to_string(), "01");
    }

    #[test]
    fn limit_is_enforced() {
        let items = vec![Item::new(1, 1); 5];
        let inst = Instance::two_city(items, 1.0, 1.0, 0.1, 1.0, 10).unwrap();
        assert!(matches!(
            brute_force_optimum(&inst, 4),
            Err(PwtError::TooLarge { n: 5, limit: 4 })
        ));
        assert!(brute_force_pareto_front(&inst, 4).is_err());
    }
}
