use crate::problem::Instance;
use crate::rng;

use super::mutation::{Mutation, Mutator};
use super::{
    initial_solution, ArchiveEntry, EvalCounting, Observer, ParetoArchive, Recorder, RunConfig,
    RunResult, Step,
};

/// Archive-based search: pick a cardinality bucket uniformly, mutate its
/// fittest member, and keep the offspring unless it is strongly dominated.
pub(super) fn run(
    inst: &Instance,
    cfg: &RunConfig,
    mutation: Mutation,
    observer: &mut impl Observer,
) -> RunResult {
    let mut rng = rng::stream(cfg.seed);
    let mutator = Mutator::new(mutation, inst.n());
    let start = initial_solution(inst, cfg.init, &mut rng);
    let start_fitness = inst.fitness(&start);
    let mut archive = ParetoArchive::new(inst.n());
    archive.offer(&start, start_fitness);

    let mut best_fitness = start_fitness;
    let mut best_weight = start.weight();
    let mut recorder = Recorder::new(cfg.trace_stride);
    let mut evaluations = 0u64;
    let mut iterations = 0u64;
    recorder.push(0, &best_fitness, best_weight, 1);
    let mut hit_target = cfg.reached(&best_fitness);

    let mut flips = Vec::with_capacity(4);
    let mut loads = Vec::with_capacity(inst.legs());
    while !hit_target && evaluations < cfg.max_evaluations {
        iterations += 1;
        let parent = archive.select_parent(&mut rng);
        mutator.sample(&parent.solution, &mut rng, &mut flips);
        if flips.is_empty() {
            // an unchanged copy of a member leaves the archive as it is
            if cfg.counting == EvalCounting::AllIterations {
                evaluations += 1;
            }
        } else {
            evaluations += 1;
            let preview = parent.solution.preview_flips(inst, &flips, &mut loads);
            let fitness = inst.fitness_from_parts(preview.weight, preview.profit, &loads);
            let accepted = !archive.is_strongly_dominated(preview.weight, &fitness);
            observer.step(&Step {
                evaluations,
                flips: &flips,
                offspring_weight: preview.weight,
                offspring_fitness: fitness,
                accepted,
                solution: &parent.solution,
                archive: Some(&archive),
            });
            if accepted {
                let mut offspring = parent.solution.clone();
                for &i in &flips {
                    offspring.flip(inst, i);
                }
                archive.insert_undominated(offspring, fitness);
                let top = archive.best().expect("archive is never empty");
                if top.fitness.strictly_better_than(&best_fitness) {
                    best_fitness = top.fitness;
                    best_weight = top.weight();
                    recorder.push(evaluations, &best_fitness, best_weight, archive.len());
                    hit_target = cfg.reached(&best_fitness);
                }
            }
        }
        if recorder.tick(iterations) {
            recorder.push(evaluations, &best_fitness, best_weight, archive.len());
        }
    }
    recorder.push(evaluations, &best_fitness, best_weight, archive.len());

    let members: Vec<ArchiveEntry> = archive.entries().cloned().collect();
    let best = members.last().expect("archive is never empty");
    RunResult {
        best_solution: best.solution.clone(),
        best_fitness: best.fitness,
        evaluations,
        raw_iterations: iterations,
        hit_target,
        trace: recorder.finish(),
        archive: members,
    }
}
