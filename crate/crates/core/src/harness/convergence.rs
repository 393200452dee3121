use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{self, Algorithm, RunConfig, TracePoint};
use crate::error::{PwtError, Result};
use crate::problem::{Instance, Solution};
use crate::theory::optimal_prefix;

use super::{fan_out, generate_set, run_seed, write_csv, ExperimentSpec};

const GRID_RATIO: f64 = 1.05;

/// `0` followed by the distinct rounded powers of 1.05 below `budget`, then
/// `budget` itself. Strictly increasing.
pub fn evaluation_grid(budget: u64) -> Vec<u64> {
    let mut grid = vec![0];
    let mut x = 1.0f64;
    loop {
        let v = x.round() as u64;
        if v >= budget {
            break;
        }
        if v > *grid.last().expect("grid starts with 0") {
            grid.push(v);
        }
        x *= GRID_RATIO;
    }
    grid.push(budget);
    grid
}

/// `(B - B(s_0)) / (B* - B(s_0))` clipped to `[0, 1]`; an instance whose
/// optimum is the empty packing maps everything feasible to 1.
pub fn normalized_benefit(benefit: f64, empty: f64, optimum: f64) -> f64 {
    let span = optimum - empty;
    if span <= crate::problem::BENEFIT_EPSILON * optimum.abs().max(1.0) {
        return 1.0;
    }
    ((benefit - empty) / span).clamp(0.0, 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConvergenceRow {
    pub algorithm: String,
    pub evaluations: u64,
    pub mean_normalized_benefit: f64,
    pub repetitions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> Result<String> {
        write_csv(&self.rows)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| PwtError::io(path, e))
    }

    /// The curve of one algorithm as `(evaluations, mean)` pairs.
    pub fn curve(&self, alg: Algorithm) -> Vec<(u64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == alg.name())
            .map(|r| (r.evaluations, r.mean_normalized_benefit))
            .collect()
    }

    /// Mean normalized benefit of `alg` at the last grid point not after
    /// `evaluations`.
    pub fn value_at(&self, alg: Algorithm, evaluations: u64) -> Option<f64> {
        self.curve(alg)
            .into_iter()
            .take_while(|&(e, _)| e <= evaluations)
            .last()
            .map(|(_, v)| v)
    }
}

/// Samples a best-so-far trace on the grid: the last record at or before
/// each grid point.
fn sample_trace(trace: &[TracePoint], grid: &[u64], empty: f64, optimum: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut idx = 0;
    let mut current = 0.0;
    for &g in grid {
        while idx < trace.len() && trace[idx].evaluations <= g {
            let p = &trace[idx];
            current = if p.best_violation == 0 {
                normalized_benefit(p.best_benefit, empty, optimum)
            } else {
                0.0
            };
            idx += 1;
        }
        out.push(current);
    }
    out
}

/// Runs every algorithm from the configured start on every instance until
/// it reaches the optimum or exhausts the budget, and averages the
/// normalized best-so-far curves on a geometric evaluation grid.
pub fn convergence_experiment(spec: &ExperimentSpec) -> Result<ConvergenceTable> {
    spec.validate()?;
    let instances = generate_set(&spec.instances, spec.repetitions, spec.base_seed)?;
    let anchors: Vec<(f64, f64)> = instances
        .iter()
        .map(|inst| {
            let opt = optimal_prefix(inst)?;
            Ok((inst.benefit(&Solution::empty(inst)), opt.optimal_benefit))
        })
        .collect::<Result<_>>()?;
    let grid = evaluation_grid(spec.budget);

    let jobs: Vec<(Algorithm, usize)> = spec
        .algorithms
        .iter()
        .flat_map(|&alg| (0..spec.repetitions).map(move |r| (alg, r)))
        .collect();
    let curves = fan_out(spec.workers, &jobs, |&(alg, r)| {
        let idx = r % instances.len();
        let inst: &Instance = &instances[idx];
        let (empty, optimum) = anchors[idx];
        let cfg = RunConfig::new(spec.budget, run_seed(spec.base_seed, idx as u64, alg, r))
            .with_target(optimum)
            .with_init(spec.init)
            .with_counting(spec.counting)
            .with_trace_stride(u64::MAX);
        let result = algorithms::run(alg, inst, &cfg)?;
        Ok(sample_trace(&result.trace, &grid, empty, optimum))
    })?;

    let mut rows = Vec::with_capacity(spec.algorithms.len() * grid.len());
    for (a, &alg) in spec.algorithms.iter().enumerate() {
        let runs = &curves[a * spec.repetitions..(a + 1) * spec.repetitions];
        for (g, &evaluations) in grid.iter().enumerate() {
            let sum: f64 = runs.iter().map(|c| c[g]).sum();
            rows.push(ConvergenceRow {
                algorithm: alg.name().to_string(),
                evaluations,
                mean_normalized_benefit: sum / spec.repetitions as f64,
                repetitions: spec.repetitions,
            });
        }
    }
    Ok(ConvergenceTable { rows })
}
