use std::cmp::Ordering;

use pwt::algorithms::{self, Algorithm, EvalCounting, InitMode, RunConfig, Step};
use pwt::generate::{gen_correlated, GenParams};
use pwt::harness::verify::sample_instance;
use pwt::problem::{benefits_equal, compare_fitness, dominance_of, Dominance};
use pwt::rng::stream;
use pwt::theory::{optimal_prefix, pareto_front};
use pwt::{Instance, Item, Solution};

fn correlated(n: usize, seed: u64) -> Instance {
    gen_correlated(&GenParams::correlated(n, seed)).unwrap()
}

fn single_item(profit: u64, weight: u64) -> Instance {
    Instance::two_city(vec![Item::new(profit, weight)], 50.0, 70.0, 0.1, 1.0, 8000).unwrap()
}

#[test]
fn one_item_optimum_in_one_step() {
    let inst = single_item(1000, 10);
    let target = optimal_prefix(&inst).unwrap();
    assert_eq!(target.k, 1);
    for alg in [Algorithm::RlsSwap, Algorithm::OnePlusOneEa] {
        let cfg = RunConfig::new(100, 1)
            .with_init(InitMode::Zero)
            .with_target(target.optimal_benefit);
        let r = algorithms::run(alg, &inst, &cfg).unwrap();
        assert!(r.hit_target);
        // a single bit flips with probability one under both operators
        assert_eq!((r.evaluations, r.raw_iterations), (1, 1), "{alg}");
    }
}

#[test]
fn rls_swap_flips_one_or_two_bits() {
    let inst = correlated(20, 3);
    let cfg = RunConfig::new(5000, 8).with_init(InitMode::UniformRandom);
    let mut checked = 0;
    let mut observer = |step: &Step<'_>| {
        assert!(matches!(step.flips.len(), 1 | 2));
        if step.flips.len() == 2 {
            let (a, b) = (step.flips[0], step.flips[1]);
            assert_ne!(a, b);
        }
        checked += 1;
    };
    algorithms::run_observed(Algorithm::RlsSwap, &inst, &cfg, &mut observer).unwrap();
    assert!(checked > 0);

    // from the empty packing the swap branch is unavailable
    let items = vec![Item::new(1, 900); 6];
    let inst = Instance::two_city(items, 50.0, 70.0, 0.1, 1.0, 100).unwrap();
    let mut first = None;
    let mut grab = |step: &Step<'_>| {
        first.get_or_insert(step.flips.len());
    };
    let cfg = RunConfig::new(1, 0).with_init(InitMode::Zero);
    algorithms::run_observed(Algorithm::RlsSwap, &inst, &cfg, &mut grab).unwrap();
    assert_eq!(first, Some(1));
}

#[test]
fn swap_keeps_cardinality() {
    let inst = correlated(30, 5);
    for alg in [Algorithm::RlsSwap, Algorithm::SemoSwap] {
        let cfg = RunConfig::new(3000, 2).with_init(InitMode::UniformRandom);
        let mut observer = |step: &Step<'_>| {
            if step.flips.len() == 2 {
                let parent = if alg.is_multi_objective() {
                    step.solution.clone()
                } else if step.accepted {
                    // undo the swap to recover the parent
                    let mut p = step.solution.clone();
                    for &i in step.flips {
                        p.flip(&inst, i);
                    }
                    p
                } else {
                    step.solution.clone()
                };
                let ones = step.flips.iter().filter(|&&i| parent.contains(i)).count();
                assert_eq!(ones, 1, "a swap removes exactly one packed item");
            }
        };
        algorithms::run_observed(alg, &inst, &cfg, &mut observer).unwrap();
    }
}

#[test]
fn semo_flips_exactly_one_bit() {
    let inst = correlated(25, 1);
    for counting in [EvalCounting::AllIterations, EvalCounting::EffectiveOnly] {
        let cfg = RunConfig::new(2000, 4).with_counting(counting);
        let mut observer = |step: &Step<'_>| assert_eq!(step.flips.len(), 1);
        let r = algorithms::run_observed(Algorithm::Semo, &inst, &cfg, &mut observer).unwrap();
        assert_eq!(r.evaluations, r.raw_iterations);
    }
}

#[test]
fn effective_counting_skips_empty_mutations() {
    let inst = correlated(10, 2);
    for alg in [Algorithm::OnePlusOneEa, Algorithm::Gsemo] {
        let effective = RunConfig::new(5000, 6);
        let mut observer = |step: &Step<'_>| assert!(!step.flips.is_empty());
        let r = algorithms::run_observed(alg, &inst, &effective, &mut observer).unwrap();
        assert_eq!(r.evaluations, 5000);
        // P(no flip) = (1 - 1/10)^10, so about a third of all iterations are free
        assert!(r.raw_iterations > 6500, "{alg}: {}", r.raw_iterations);

        let all = effective.clone().with_counting(EvalCounting::AllIterations);
        let r = algorithms::run(alg, &inst, &all).unwrap();
        assert_eq!(r.evaluations, r.raw_iterations);
    }
}

#[test]
fn single_objective_search_is_elitist() {
    let inst = correlated(60, 7);
    for alg in [Algorithm::RlsSwap, Algorithm::OnePlusOneEa] {
        let cfg = RunConfig::new(50_000, 3).with_init(InitMode::UniformRandom);
        let mut current = None;
        let mut feasible_seen = false;
        let mut observer = |step: &Step<'_>| {
            let now = inst.fitness(step.solution);
            if let Some(prev) = current {
                assert_ne!(
                    compare_fitness(&now, &prev),
                    Ordering::Less,
                    "{alg} lost fitness"
                );
            }
            if feasible_seen {
                assert!(now.is_feasible(), "{alg} left the feasible region");
            }
            feasible_seen |= now.is_feasible();
            current = Some(now);
        };
        let r = algorithms::run_observed(alg, &inst, &cfg, &mut observer).unwrap();
        assert!(r.evaluations <= r.raw_iterations);
        let feasible: Vec<f64> = r
            .trace
            .iter()
            .filter(|p| p.best_violation == 0)
            .map(|p| p.best_benefit)
            .collect();
        assert!(feasible.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn archive_stays_mutually_non_dominated() {
    let inst = correlated(40, 11);
    for alg in [Algorithm::Gsemo, Algorithm::Semo, Algorithm::SemoSwap] {
        let cfg = RunConfig::new(20_000, 5).with_init(InitMode::UniformRandom);
        let mut steps = 0;
        let mut observer = |step: &Step<'_>| {
            steps += 1;
            if steps % 97 != 0 {
                return;
            }
            let archive = step
                .archive
                .expect("multi-objective runs expose the archive");
            assert!(archive.is_consistent());
            let members: Vec<_> = archive.entries().collect();
            for a in &members {
                assert!(archive
                    .bucket(a.solution.cardinality())
                    .any(|m| m.solution == a.solution));
                for b in &members {
                    if !std::ptr::eq(*a, *b) {
                        let d = dominance_of(a.weight(), &a.fitness, b.weight(), &b.fitness);
                        assert_eq!(
                            d,
                            Dominance::Incomparable,
                            "{alg}: member dominates another"
                        );
                    }
                }
            }
        };
        let r = algorithms::run_observed(alg, &inst, &cfg, &mut observer).unwrap();
        let weights: Vec<u64> = r.archive.iter().map(|e| e.weight()).collect();
        assert!(weights.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn infeasible_phase_keeps_single_member() {
    // a random start packs about half of 60 items, far over the capacity
    let inst = correlated(60, 13);
    let cfg = RunConfig::new(30_000, 1).with_init(InitMode::UniformRandom);
    let mut infeasible_steps = 0;
    let mut observer = |step: &Step<'_>| {
        let archive = step.archive.unwrap();
        if archive.entries().all(|m| !m.fitness.is_feasible()) {
            infeasible_steps += 1;
            assert_eq!(archive.len(), 1);
        }
    };
    let r = algorithms::run_observed(Algorithm::Gsemo, &inst, &cfg, &mut observer).unwrap();
    assert!(infeasible_steps > 0);
    assert!(r.best_fitness.is_feasible());
}

fn feasible_objectives(inst: &Instance, r: &algorithms::RunResult) -> Vec<(u64, f64)> {
    r.archive
        .iter()
        .filter(|e| e.fitness.is_feasible())
        .map(|e| (e.weight(), inst.benefit(&e.solution)))
        .collect()
}

fn same_front(a: &[(u64, f64)], b: &[(u64, f64)]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.0 == y.0 && benefits_equal(x.1, y.1))
}

#[test]
fn multi_objective_recovers_small_fronts() {
    let mut rng = stream(99);
    for trial in 0..12 {
        let inst = sample_instance(&mut rng, 3..=12, false);
        let front: Vec<(u64, f64)> = pareto_front(&inst)
            .unwrap()
            .iter()
            .map(|s| (s.weight(), inst.benefit(s)))
            .collect();
        let n = inst.n() as u64;
        for alg in [Algorithm::Gsemo, Algorithm::Semo, Algorithm::SemoSwap] {
            let cfg = RunConfig::new(20 * n * n * n, trial).with_init(InitMode::Zero);
            let r = algorithms::run(alg, &inst, &cfg).unwrap();
            let found = feasible_objectives(&inst, &r);
            assert!(
                same_front(&found, &front),
                "{alg} on trial {trial}: {found:?} vs {front:?}"
            );
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let inst = correlated(80, 21);
    for alg in Algorithm::ALL {
        let cfg = RunConfig::new(20_000, 77).with_trace_stride(100);
        let a = algorithms::run(alg, &inst, &cfg).unwrap();
        let b = algorithms::run(alg, &inst, &cfg).unwrap();
        assert_eq!(a.best_solution, b.best_solution);
        assert_eq!(a.evaluations, b.evaluations);
        assert_eq!(a.raw_iterations, b.raw_iterations);
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.archive.len(), b.archive.len());

        let other = algorithms::run(
            alg,
            &inst,
            &RunConfig::new(20_000, 78).with_trace_stride(100),
        )
        .unwrap();
        assert!(
            other.trace != a.trace || other.raw_iterations != a.raw_iterations,
            "{alg} ignores the seed"
        );
    }
}

#[test]
fn all_algorithms_reach_small_optima() {
    let inst = correlated(30, 17);
    let target = optimal_prefix(&inst).unwrap();
    for alg in Algorithm::ALL {
        let cfg = RunConfig::new(1_000_000, 9)
            .with_init(InitMode::Zero)
            .with_target(target.optimal_benefit);
        let r = algorithms::run(alg, &inst, &cfg).unwrap();
        assert!(r.hit_target, "{alg}");
        assert_eq!(r.best_solution, Solution::prefix(&inst, target.k), "{alg}");
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let inst = correlated(5, 1);
    assert!(algorithms::run(Algorithm::Gsemo, &inst, &RunConfig::new(0, 1)).is_err());
    assert!(algorithms::run(
        Algorithm::Gsemo,
        &inst,
        &RunConfig::new(5, 1).with_trace_stride(0)
    )
    .is_err());
    assert!(algorithms::run(
        Algorithm::Semo,
        &inst,
        &RunConfig::new(5, 1).with_target(f64::NAN)
    )
    .is_err());
    let empty = Instance::two_city(Vec::new(), 50.0, 70.0, 0.1, 1.0, 10).unwrap();
    assert!(algorithms::run(Algorithm::RlsSwap, &empty, &RunConfig::new(5, 1)).is_err());
}
