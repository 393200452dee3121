//! Experiment orchestration: convergence curves, runtime scaling, and the
//! theory verification suite.
//!
//! Runs fan out over a rayon pool of `workers` threads. Every run draws from
//! its own derived seed and results are assembled by job index, so output is
//! identical for any worker count.

mod convergence;
mod scaling;
pub mod verify;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{Algorithm, EvalCounting, InitMode};
use crate::error::{PwtError, Result};
use crate::generate::{gen_correlated, gen_uniform, GenParams};
use crate::problem::Instance;
use crate::rng::derive_seed;

pub use convergence::{
    convergence_experiment, evaluation_grid, normalized_benefit, ConvergenceRow, ConvergenceTable,
};
pub use scaling::{log_log_slope, scaling_experiment, ScalingRow, ScalingTable};

pub const DEFAULT_SIZES: [usize; 5] = [100, 200, 500, 1000, 2000];
pub const PAPER_SIZES: [usize; 7] = [100, 200, 500, 1000, 2000, 5000, 10000];
pub const DEFAULT_REPETITIONS: usize = 30;
pub const DEFAULT_CONVERGENCE_BUDGET: u64 = 10_000_000;
/// Scaling runs stop at `factor * n^2` evaluations and count as censored.
pub const DEFAULT_CEILING_FACTOR: u64 = 100;

const INSTANCE_STREAM: u64 = 0x1157;
const RUN_STREAM: u64 = 0x2A11;

/// Where an experiment's instances come from.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSet {
    /// Fresh favourably correlated instances with the default constants.
    Correlated { n: usize },
    /// Fresh uniform-weight instances; instance `i` shares its profits
    /// with correlated instance `i`.
    Uniform { n: usize },
    /// Instances read from disk.
    Files(Vec<PathBuf>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub algorithms: Vec<Algorithm>,
    pub instances: InstanceSet,
    /// Runs per algorithm. Generated sets hold one instance per run; file
    /// sets are cycled through.
    pub repetitions: usize,
    /// Evaluation budget for convergence runs.
    pub budget: u64,
    /// Instance sizes for the scaling study.
    pub sizes: Vec<usize>,
    pub ceiling_factor: u64,
    pub base_seed: u64,
    pub workers: usize,
    pub counting: EvalCounting,
    pub init: InitMode,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            algorithms: Algorithm::ALL.to_vec(),
            instances: InstanceSet::Correlated { n: 300 },
            repetitions: DEFAULT_REPETITIONS,
            budget: DEFAULT_CONVERGENCE_BUDGET,
            sizes: DEFAULT_SIZES.to_vec(),
            ceiling_factor: DEFAULT_CEILING_FACTOR,
            base_seed: 0,
            workers: 1,
            counting: EvalCounting::EffectiveOnly,
            init: InitMode::Zero,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(PwtError::InvalidConfig(msg.to_string()));
        if self.algorithms.is_empty() {
            return bad("at least one algorithm is required");
        }
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1");
        }
        if self.budget == 0 {
            return bad("budget must be at least 1");
        }
        if self.workers == 0 {
            return bad("workers must be at least 1");
        }
        if self.ceiling_factor == 0 {
            return bad("ceiling factor must be at least 1");
        }
        if self.sizes.is_empty()
            || self.sizes.windows(2).any(|w| w[0] >= w[1])
            || self.sizes[0] == 0
        {
            return bad("sizes must be positive and strictly increasing");
        }
        if let InstanceSet::Files(files) = &self.instances {
            if files.is_empty() {
                return bad("instance file list is empty");
            }
        }
        Ok(())
    }
}

/// Seed of generated instance `idx` of size `n`.
pub fn instance_seed(base_seed: u64, n: usize, idx: usize) -> u64 {
    derive_seed(base_seed, &[INSTANCE_STREAM, n as u64, idx as u64])
}

/// Seed of repetition `rep` of `alg` on instance `instance_id`.
pub fn run_seed(base_seed: u64, instance_id: u64, alg: Algorithm, rep: usize) -> u64 {
    derive_seed(base_seed, &[RUN_STREAM, instance_id, alg.id(), rep as u64])
}

pub fn generate_set(set: &InstanceSet, count: usize, base_seed: u64) -> Result<Vec<Instance>> {
    match set {
        InstanceSet::Correlated { n } => (0..count)
            .map(|i| gen_correlated(&GenParams::correlated(*n, instance_seed(base_seed, *n, i))))
            .collect(),
        InstanceSet::Uniform { n } => (0..count)
            .map(|i| gen_uniform(&GenParams::uniform(*n, instance_seed(base_seed, *n, i))))
            .collect(),
        InstanceSet::Files(paths) => paths.iter().map(Instance::load).collect(),
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| PwtError::InvalidConfig(format!("cannot start worker pool: {e}")))
}

/// Maps `jobs` in parallel, preserving order.
fn fan_out<J, R, F>(workers: usize, jobs: &[J], f: F) -> Result<Vec<R>>
where
    J: Sync,
    R: Send,
    F: Fn(&J) -> Result<R> + Sync + Send,
{
    pool(workers)?.install(|| jobs.par_iter().map(&f).collect())
}

fn write_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| PwtError::InvalidConfig(format!("csv flush failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
