use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{self, Algorithm, RunConfig};
use crate::error::{PwtError, Result};
use crate::theory::optimal_prefix;

use super::{fan_out, generate_set, run_seed, write_csv, ExperimentSpec, InstanceSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingRow {
    pub algorithm: String,
    pub n: usize,
    pub mean_evals: f64,
    pub median_evals: f64,
    pub stddev: f64,
    pub censored_count: usize,
    #[serde(rename = "refN2")]
    pub ref_n2: f64,
    #[serde(rename = "refNLogN")]
    pub ref_n_log_n: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
}

impl ScalingTable {
    pub fn to_csv(&self) -> Result<String> {
        write_csv(&self.rows)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| PwtError::io(path, e))
    }

    pub fn rows_for(&self, alg: Algorithm) -> Vec<&ScalingRow> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == alg.name())
            .collect()
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}

/// Sample standard deviation (zero for a single run).
fn stddev(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

/// Evaluations to reach the optimum, per algorithm and size, on fresh
/// correlated instances. Runs are capped at `ceiling_factor * n^2`
/// evaluations; a capped run contributes the ceiling to the statistics and
/// is counted as censored.
///
/// The reference columns `n^2` and `n ln n` are scaled so that, at the
/// smallest size, they equal the algorithm's own mean.
pub fn scaling_experiment(spec: &ExperimentSpec) -> Result<ScalingTable> {
    spec.validate()?;
    let mut per_size = Vec::with_capacity(spec.sizes.len());
    for &n in &spec.sizes {
        let set = InstanceSet::Correlated { n };
        let instances = generate_set(&set, spec.repetitions, spec.base_seed)?;
        let targets: Vec<f64> = instances
            .iter()
            .map(|inst| optimal_prefix(inst).map(|o| o.optimal_benefit))
            .collect::<Result<_>>()?;
        let ceiling = spec.ceiling_factor.saturating_mul((n * n) as u64);
        let jobs: Vec<(Algorithm, usize)> = spec
            .algorithms
            .iter()
            .flat_map(|&alg| (0..spec.repetitions).map(move |r| (alg, r)))
            .collect();
        let outcomes = fan_out(spec.workers, &jobs, |&(alg, r)| {
            let cfg = RunConfig::new(
                ceiling,
                run_seed(spec.base_seed, n as u64 * 1_000_003 + r as u64, alg, r),
            )
            .with_target(targets[r])
            .with_init(spec.init)
            .with_counting(spec.counting)
            .with_trace_stride(u64::MAX);
            let result = algorithms::run(alg, &instances[r], &cfg)?;
            Ok((result.evaluations, result.hit_target))
        })?;
        per_size.push((n, outcomes));
    }

    let mut rows = Vec::new();
    for (a, &alg) in spec.algorithms.iter().enumerate() {
        let mut anchor: Option<(f64, f64, f64)> = None;
        for (n, outcomes) in &per_size {
            let runs = &outcomes[a * spec.repetitions..(a + 1) * spec.repetitions];
            let mut evals: Vec<f64> = runs.iter().map(|&(e, _)| e as f64).collect();
            let censored = runs.iter().filter(|&&(_, hit)| !hit).count();
            evals.sort_by(f64::total_cmp);
            let mean = evals.iter().sum::<f64>() / evals.len() as f64;
            let nf = *n as f64;
            let (n2, nlogn) = (nf * nf, nf * nf.ln());
            let (base_mean, base_n2, base_nlogn) = *anchor.get_or_insert((mean, n2, nlogn));
            rows.push(ScalingRow {
                algorithm: alg.name().to_string(),
                n: *n,
                mean_evals: mean,
                median_evals: median(&evals),
                stddev: stddev(&evals, mean),
                censored_count: censored,
                ref_n2: base_mean * n2 / base_n2,
                ref_n_log_n: base_mean * nlogn / base_nlogn,
            });
        }
    }
    Ok(ScalingTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [10.0, 20.0, 50.0, 100.0]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(1.7)))
            .collect();
        assert!((log_log_slope(&pts) - 1.7).abs() < 1e-12);
    }

    #[test]
    fn descriptive_stats() {
        assert_eq!(median(&[1.0, 2.0, 10.0]), 2.0);
        assert_eq!(median(&[1.0, 2.0, 4.0, 10.0]), 3.0);
        assert!(
            (stddev(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0], 5.0) - 2.138089935299395).abs()
                < 1e-12
        );
        assert_eq!(stddev(&[3.0], 3.0), 0.0);
    }

    #[test]
    fn small_sweep_shape() {
        let spec = ExperimentSpec {
            algorithms: vec![Algorithm::RlsSwap, Algorithm::Semo],
            repetitions: 3,
            sizes: vec![10, 20, 40],
            ..Default::default()
        };
        let table = scaling_experiment(&spec).unwrap();
        assert_eq!(table.rows.len(), 6);
        let rls = table.rows_for(Algorithm::RlsSwap);
        assert_eq!(rls.iter().map(|r| r.n).collect::<Vec<_>>(), [10, 20, 40]);
        assert_eq!(rls[0].ref_n2, rls[0].mean_evals);
        assert!((rls[1].ref_n2 / rls[0].ref_n2 - 4.0).abs() < 1e-12);
        let csv = table.to_csv().unwrap();
        assert!(csv.starts_with(
            "algorithm,n,meanEvals,medianEvals,stddev,censoredCount,refN2,refNLogN\n"
        ));
    }
}
