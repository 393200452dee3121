//! Baseline evolutionary algorithms for PWT.
//!
//! Two single-objective searches, RLS with swaps and the (1+1) EA, maximise
//! `F = (q, B)` lexicographically. Three multi-objective searches (GSEMO,
//! SEMO, SEMO with swaps) keep a Pareto archive under (min `W`, max `F`) and
//! differ only in their mutation operator.

mod archive;
mod multi;
mod mutation;
mod single;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PwtError, Result};
use crate::problem::{benefit_cmp, Fitness, Instance, Solution};

pub use archive::{ArchiveEntry, ParetoArchive};
pub use mutation::Mutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    RlsSwap,
    #[serde(rename = "opo_ea")]
    OnePlusOneEa,
    Gsemo,
    Semo,
    SemoSwap,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::RlsSwap,
        Algorithm::OnePlusOneEa,
        Algorithm::Gsemo,
        Algorithm::Semo,
        Algorithm::SemoSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RlsSwap => "rls_swap",
            Algorithm::OnePlusOneEa => "opo_ea",
            Algorithm::Gsemo => "gsemo",
            Algorithm::Semo => "semo",
            Algorithm::SemoSwap => "semo_swap",
        }
    }

    /// Stable identifier used when deriving per-run seeds.
    pub fn id(self) -> u64 {
        match self {
            Algorithm::RlsSwap => 1,
            Algorithm::OnePlusOneEa => 2,
            Algorithm::Gsemo => 3,
            Algorithm::Semo => 4,
            Algorithm::SemoSwap => 5,
        }
    }

    pub fn mutation(self) -> Mutation {
        match self {
            Algorithm::RlsSwap | Algorithm::SemoSwap => Mutation::OneBitOrSwap,
            Algorithm::OnePlusOneEa | Algorithm::Gsemo => Mutation::Standard,
            Algorithm::Semo => Mutation::OneBit,
        }
    }

    pub fn is_multi_objective(self) -> bool {
        matches!(
            self,
            Algorithm::Gsemo | Algorithm::Semo | Algorithm::SemoSwap
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = PwtError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| PwtError::InvalidConfig(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMode {
    /// Start from the empty packing.
    Zero,
    /// Start from a uniformly random bit string.
    UniformRandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalCounting {
    /// Every iteration costs one evaluation.
    AllIterations,
    /// Iterations whose mutation flipped no bit are free.
    EffectiveOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_evaluations: u64,
    /// Stop once the best feasible benefit reaches this value (toleranced).
    pub target_benefit: Option<f64>,
    pub seed: u64,
    pub init: InitMode,
    pub counting: EvalCounting,
    /// Record the best-so-far every `trace_stride` iterations, in addition
    /// to every improvement.
    pub trace_stride: u64,
}

impl RunConfig {
    pub fn new(max_evaluations: u64, seed: u64) -> Self {
        RunConfig {
            max_evaluations,
            target_benefit: None,
            seed,
            init: InitMode::UniformRandom,
            counting: EvalCounting::EffectiveOnly,
            trace_stride: 1000,
        }
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_benefit = Some(target);
        self
    }

    pub fn with_init(mut self, init: InitMode) -> Self {
        self.init = init;
        self
    }

    pub fn with_counting(mut self, counting: EvalCounting) -> Self {
        self.counting = counting;
        self
    }

    pub fn with_trace_stride(mut self, stride: u64) -> Self {
        self.trace_stride = stride;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_evaluations == 0 {
            return Err(PwtError::InvalidConfig(
                "max_evaluations must be at least 1".into(),
            ));
        }
        if self.trace_stride == 0 {
            return Err(PwtError::InvalidConfig(
                "trace_stride must be at least 1".into(),
            ));
        }
        if self.target_benefit.is_some_and(|t| !t.is_finite()) {
            return Err(PwtError::InvalidConfig(
                "target benefit must be finite".into(),
            ));
        }
        Ok(())
    }

    fn reached(&self, best: &Fitness) -> bool {
        match self.target_benefit {
            Some(t) => best.is_feasible() && benefit_cmp(best.benefit, t).is_ge(),
            None => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluations: u64,
    pub best_benefit: f64,
    pub best_violation: i64,
    pub best_weight: u64,
    pub archive_size: usize,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub best_solution: Solution,
    pub best_fitness: Fitness,
    pub evaluations: u64,
    pub raw_iterations: u64,
    pub hit_target: bool,
    pub trace: Vec<TracePoint>,
    /// Final population of the multi-objective algorithms, sorted by
    /// weight; empty for single-objective runs.
    pub archive: Vec<ArchiveEntry>,
}

/// One evaluated offspring, reported to an [`Observer`].
pub struct Step<'a> {
    pub evaluations: u64,
    pub flips: &'a [usize],
    pub offspring_weight: u64,
    pub offspring_fitness: Fitness,
    pub accepted: bool,
    /// Single-objective runs: the current search point after the step.
    /// Multi-objective runs: the parent the offspring was made from.
    pub solution: &'a Solution,
    /// Multi-objective runs: the archive before the offspring is inserted.
    pub archive: Option<&'a ParetoArchive>,
}

pub trait Observer {
    fn step(&mut self, step: &Step<'_>);
}

impl<F: FnMut(&Step<'_>)> Observer for F {
    fn step(&mut self, step: &Step<'_>) {
        self(step)
    }
}

pub struct NoObserver;

impl Observer for NoObserver {
    #[inline]
    fn step(&mut self, _: &Step<'_>) {}
}

pub fn run(alg: Algorithm, inst: &Instance, cfg: &RunConfig) -> Result<RunResult> {
    run_observed(alg, inst, cfg, &mut NoObserver)
}

pub fn run_observed(
    alg: Algorithm,
    inst: &Instance,
    cfg: &RunConfig,
    observer: &mut impl Observer,
) -> Result<RunResult> {
    cfg.validate()?;
    if inst.n() == 0 {
        return Err(PwtError::InvalidConfig(
            "instance has no items to search over".into(),
        ));
    }
    if alg.is_multi_objective() {
        Ok(multi::run(inst, cfg, alg.mutation(), observer))
    } else {
        Ok(single::run(inst, cfg, alg.mutation(), observer))
    }
}

pub fn run_rls_swap(inst: &Instance, cfg: &RunConfig) -> Result<RunResult> {
    run(Algorithm::RlsSwap, inst, cfg)
}

pub fn run_one_plus_one_ea(inst: &Instance, cfg: &RunConfig) -> Result<RunResult> {
    run(Algorithm::OnePlusOneEa, inst, cfg)
}

pub fn run_gsemo(inst: &Instance, cfg: &RunConfig) -> Result<RunResult> {
    run(Algorithm::Gsemo, inst, cfg)
}

pub fn run_semo(inst: &Instance, cfg: &RunConfig) -> Result<RunResult> {
    run(Algorithm::Semo, inst, cfg)
}

pub fn run_semo_swap(inst: &Instance, cfg: &RunConfig) -> Result<RunResult> {
    run(Algorithm::SemoSwap, inst, cfg)
}

fn initial_solution(inst: &Instance, init: InitMode, rng: &mut impl Rng) -> Solution {
    let mut s = Solution::empty(inst);
    if init == InitMode::UniformRandom {
        for i in 0..inst.n() {
            if rng.random::<bool>() {
                s.flip(inst, i);
            }
        }
    }
    s
}

/// Best-so-far bookkeeping shared by all algorithms.
struct Recorder {
    stride: u64,
    trace: Vec<TracePoint>,
}

impl Recorder {
    fn new(stride: u64) -> Self {
        Recorder {
            stride,
            trace: Vec::new(),
        }
    }

    fn push(&mut self, evaluations: u64, best: &Fitness, best_weight: u64, archive_size: usize) {
        let point = TracePoint {
            evaluations,
            best_benefit: best.benefit,
            best_violation: best.violation,
            best_weight,
            archive_size,
        };
        match self.trace.last_mut() {
            Some(last) if last.evaluations == evaluations => *last = point,
            _ => self.trace.push(point),
        }
    }

    #[inline]
    fn tick(&mut self, iteration: u64) -> bool {
        iteration.is_multiple_of(self.stride)
    }

    fn finish(self) -> Vec<TracePoint> {
        self.trace
    }
}
