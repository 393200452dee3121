use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pwt::algorithms::{self, Algorithm, EvalCounting, InitMode, RunConfig};
use pwt::generate::{gen_correlated, gen_uniform, GenParams};
use pwt::harness::{
    self, convergence_experiment, instance_seed, scaling_experiment, verify, ExperimentSpec,
    InstanceSet,
};
use pwt::theory::{optimal_prefix, pareto_front};
use pwt::{Instance, PwtError, Result};

#[derive(Parser)]
#[command(
    name = "pwt",
    version,
    about = "Packing While Travelling: instances, search heuristics and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances.
    Gen(GenArgs),
    /// Run one algorithm on one instance and print the outcome as JSON.
    Run(RunArgs),
    /// Mean normalized best-so-far benefit over a geometric evaluation grid.
    Convergence(ConvergenceArgs),
    /// Evaluations to reach the optimum across instance sizes.
    Scaling(ScalingArgs),
    /// Randomised checks of the evaluator and the theory oracles.
    Verify(VerifyArgs),
    /// The Pareto front of a correlated instance.
    Pareto(PrefixArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Zero,
    Random,
}

impl From<InitArg> for InitMode {
    fn from(a: InitArg) -> Self {
        match a {
            InitArg::Zero => InitMode::Zero,
            InitArg::Random => InitMode::UniformRandom,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountingArg {
    All,
    Effective,
}

impl From<CountingArg> for EvalCounting {
    fn from(a: CountingArg) -> Self {
        match a {
            CountingArg::All => EvalCounting::AllIterations,
            CountingArg::Effective => EvalCounting::EffectiveOnly,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 300)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of instances; writes `instance_<n>_<seed>_<idx>.json` files
    /// into the `--out` directory.
    #[arg(long)]
    instances: Option<usize>,
    /// Uniform weights instead of correlated ones.
    #[arg(long)]
    uniform: bool,
    /// Output file (single instance) or directory (batch); stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Selects one instance: a file, or a generated one.
#[derive(Args)]
struct PrefixArgs {
    /// Instance JSON file; overrides `--n` and `--seed`.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 300)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    uniform: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    target: PrefixArgs,
    #[arg(long, default_value = "rls_swap")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Seed of the search, independent of the instance seed.
    #[arg(long, default_value_t = 0)]
    run_seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    init: InitArg,
    #[arg(long, value_enum, default_value = "effective")]
    counting: CountingArg,
    /// Stop once the optimum of a correlated instance is reached.
    #[arg(long)]
    to_optimum: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_delimiter = ',', default_values = ["rls_swap", "opo_ea", "gsemo", "semo", "semo_swap"])]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "zero")]
    init: InitArg,
    #[arg(long, value_enum, default_value = "effective")]
    counting: CountingArg,
    /// CSV destination; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    common: ExperimentArgs,
    #[arg(long, default_value_t = 300)]
    n: usize,
    /// A directory of instance files, or the number of instances to generate.
    #[arg(long, default_value = "30")]
    instances: String,
    #[arg(long, default_value_t = harness::DEFAULT_CONVERGENCE_BUDGET)]
    budget: u64,
    #[arg(long)]
    uniform: bool,
    /// Runs per algorithm; defaults to the number of instances.
    #[arg(long)]
    repetitions: Option<usize>,
}

#[derive(Args)]
struct ScalingArgs {
    #[command(flatten)]
    common: ExperimentArgs,
    #[arg(long, value_delimiter = ',', default_values_t = harness::DEFAULT_SIZES)]
    sizes: Vec<usize>,
    /// Instances (and runs) per size.
    #[arg(long, default_value_t = harness::DEFAULT_REPETITIONS)]
    instances: usize,
    /// Runs stop at `factor * n^2` evaluations.
    #[arg(long, default_value_t = harness::DEFAULT_CEILING_FACTOR)]
    ceiling_factor: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| PwtError::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(n: usize, seed: u64, uniform: bool) -> Result<Instance> {
    if uniform {
        gen_uniform(&GenParams::uniform(n, seed))
    } else {
        gen_correlated(&GenParams::correlated(n, seed))
    }
}

fn load_target(a: &PrefixArgs) -> Result<Instance> {
    match &a.instance {
        Some(path) => Instance::load(path),
        None => generate(a.n, a.seed, a.uniform),
    }
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let Some(count) = a.instances else {
        return emit(
            a.out.as_deref(),
            &(generate(a.n, a.seed, a.uniform)?.to_json()? + "\n"),
        );
    };
    let dir = a.out.as_deref().ok_or_else(|| {
        PwtError::InvalidConfig("batch generation needs an --out directory".into())
    })?;
    fs::create_dir_all(dir).map_err(|e| PwtError::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    for idx in 0..count {
        let inst = generate(a.n, instance_seed(a.seed, a.n, idx), a.uniform)?;
        inst.save(dir.join(format!("instance_{}_{}_{idx}.json", a.n, a.seed)))?;
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunSummary {
    algorithm: Algorithm,
    n: usize,
    evaluations: u64,
    raw_iterations: u64,
    best_benefit: f64,
    best_violation: i64,
    best_weight: u64,
    best_bits: String,
    hit_target: bool,
    target_benefit: Option<f64>,
    archive_size: usize,
}

fn cmd_run(a: &RunArgs) -> Result<()> {
    let inst = load_target(&a.target)?;
    let mut cfg = RunConfig::new(a.budget, a.run_seed)
        .with_init(a.init.into())
        .with_counting(a.counting.into())
        .with_trace_stride(u64::MAX);
    if a.to_optimum {
        cfg = cfg.with_target(optimal_prefix(&inst)?.optimal_benefit);
    }
    let r = algorithms::run(a.algorithm, &inst, &cfg)?;
    let summary = RunSummary {
        algorithm: a.algorithm,
        n: inst.n(),
        evaluations: r.evaluations,
        raw_iterations: r.raw_iterations,
        best_benefit: r.best_fitness.benefit,
        best_violation: r.best_fitness.violation,
        best_weight: r.best_solution.weight(),
        best_bits: r.best_solution.bits().to_string(),
        hit_target: r.hit_target,
        target_benefit: cfg.target_benefit,
        archive_size: r.archive.len(),
    };
    emit(
        a.target.out.as_deref(),
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )
}

fn spec_from(c: &ExperimentArgs) -> ExperimentSpec {
    ExperimentSpec {
        algorithms: c.algorithms.clone(),
        base_seed: c.seed,
        workers: c.workers,
        init: c.init.into(),
        counting: c.counting.into(),
        ..Default::default()
    }
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| PwtError::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(PwtError::EmptyInput("instance directory"));
    }
    Ok(files)
}

fn cmd_convergence(a: &ConvergenceArgs) -> Result<()> {
    let (instances, count) = match a.instances.parse::<usize>() {
        Ok(count) if a.uniform => (InstanceSet::Uniform { n: a.n }, count),
        Ok(count) => (InstanceSet::Correlated { n: a.n }, count),
        Err(_) => {
            let files = instance_files(Path::new(&a.instances))?;
            let count = files.len();
            (InstanceSet::Files(files), count)
        }
    };
    let spec = ExperimentSpec {
        instances,
        repetitions: a.repetitions.unwrap_or(count),
        budget: a.budget,
        ..spec_from(&a.common)
    };
    let table = convergence_experiment(&spec)?;
    emit(a.common.out.as_deref(), &table.to_csv()?)
}

fn cmd_scaling(a: &ScalingArgs) -> Result<()> {
    let spec = ExperimentSpec {
        sizes: a.sizes.clone(),
        repetitions: a.instances,
        ceiling_factor: a.ceiling_factor,
        ..spec_from(&a.common)
    };
    let table = scaling_experiment(&spec)?;
    emit(a.common.out.as_deref(), &table.to_csv()?)
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    let report = verify::verify_suite(a.samples, a.seed)?;
    print!("{report}");
    if let Some(path) = &a.out {
        emit(Some(path), &(report.to_json()? + "\n"))?;
    }
    Ok(report.all_passed())
}

#[derive(Serialize)]
struct FrontRow {
    k: usize,
    weight: u64,
    benefit: f64,
}

fn cmd_pareto(a: &PrefixArgs) -> Result<()> {
    let inst = load_target(a)?;
    let rows: Vec<FrontRow> = pareto_front(&inst)?
        .iter()
        .enumerate()
        .map(|(k, s)| FrontRow {
            k,
            weight: s.weight(),
            benefit: inst.benefit(s),
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| PwtError::InvalidConfig(format!("csv flush failed: {e}")))?;
    emit(a.out.as_deref(), &String::from_utf8_lossy(&bytes))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a).map(|_| true),
        Command::Run(a) => cmd_run(a).map(|_| true),
        Command::Convergence(a) => cmd_convergence(a).map(|_| true),
        Command::Scaling(a) => cmd_scaling(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Pareto(a) => cmd_pareto(a).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
