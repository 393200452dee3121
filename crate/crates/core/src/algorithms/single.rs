use std::cmp::Ordering;

use crate::problem::{compare_fitness, Instance};
use crate::rng;

use super::mutation::{Mutation, Mutator};
use super::{initial_solution, EvalCounting, Observer, Recorder, RunConfig, RunResult, Step};

/// Elitist single-point search: accept the offspring iff `F(s') >= F(s)`.
pub(super) fn run(
    inst: &Instance,
    cfg: &RunConfig,
    mutation: Mutation,
    observer: &mut impl Observer,
) -> RunResult {
    let mut rng = rng::stream(cfg.seed);
    let mutator = Mutator::new(mutation, inst.n());
    let mut current = initial_solution(inst, cfg.init, &mut rng);
    let mut fitness = inst.fitness(&current);
    let mut best = current.clone();
    let mut best_fitness = fitness;

    let mut recorder = Recorder::new(cfg.trace_stride);
    let mut evaluations = 0u64;
    let mut iterations = 0u64;
    recorder.push(0, &best_fitness, best.weight(), 1);
    let mut hit_target = cfg.reached(&best_fitness);

    let mut flips = Vec::with_capacity(4);
    while !hit_target && evaluations < cfg.max_evaluations {
        iterations += 1;
        mutator.sample(&current, &mut rng, &mut flips);
        if flips.is_empty() {
            // the offspring is the parent: nothing to evaluate
            if cfg.counting == EvalCounting::AllIterations {
                evaluations += 1;
            }
        } else {
            evaluations += 1;
            for &i in &flips {
                current.flip(inst, i);
            }
            let offspring = inst.fitness(&current);
            let offspring_weight = current.weight();
            let accepted = compare_fitness(&offspring, &fitness) != Ordering::Less;
            if !accepted {
                for &i in &flips {
                    current.flip(inst, i);
                }
            }
            observer.step(&Step {
                evaluations,
                flips: &flips,
                offspring_weight,
                offspring_fitness: offspring,
                accepted,
                solution: &current,
                archive: None,
            });
            if accepted {
                fitness = offspring;
                if offspring.strictly_better_than(&best_fitness) {
                    best.clone_from(&current);
                    best_fitness = offspring;
                    recorder.push(evaluations, &best_fitness, best.weight(), 1);
                    hit_target = cfg.reached(&best_fitness);
                }
            }
        }
        if recorder.tick(iterations) {
            recorder.push(evaluations, &best_fitness, best.weight(), 1);
        }
    }
    recorder.push(evaluations, &best_fitness, best.weight(), 1);

    RunResult {
        best_solution: best,
        best_fitness,
        evaluations,
        raw_iterations: iterations,
        hit_target,
        trace: recorder.finish(),
        archive: Vec::new(),
    }
}
