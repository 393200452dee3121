//! Randomised verification of the evaluator and the theory oracles.
//!
//! Each check draws fresh instances from its own seed stream and stops at the
//! first violation, which is reported together with the offending instance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::algorithms::{self, Algorithm, InitMode, RunConfig, Step};
use crate::error::{PwtError, Result};
use crate::problem::{
    benefit_cmp, benefits_equal, compare_fitness, Instance, Item, Solution, BENEFIT_EPSILON,
};
use crate::rng::{derive_seed, stream, Stream};
use crate::theory::{
    add_threshold, benefit_gain_of_adding, brute_force_optimum, brute_force_pareto_front,
    optimal_prefix, pareto_front, HPotential, Thresholds, DEFAULT_ENUMERATION_LIMIT,
};

const VERIFY_STREAM: u64 = 0x5E1F;
/// A check gives up after this many draws per requested sample.
const MAX_DRAWS_PER_SAMPLE: usize = 200;

/// Signature of the add-threshold formula under test.
pub type AddThresholdFn = fn(&Instance, usize) -> Result<f64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub detail: String,
    pub instance: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    /// Valid samples examined, including the failing one.
    pub samples: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub seed: u64,
    pub sample_count: usize,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {} ({} samples)", c.name, c.samples)?;
            if let Some(cx) = &c.counterexample {
                writeln!(f, "  {}", cx.detail)?;
                let json = serde_json::to_string(&cx.instance).map_err(|_| fmt::Error)?;
                writeln!(f, "  instance: {json}")?;
            }
        }
        Ok(())
    }
}

/// Runs every check with `sample_count` samples each.
pub fn verify_suite(sample_count: usize, seed: u64) -> Result<VerifyReport> {
    verify_suite_with(sample_count, seed, add_threshold)
}

/// As [`verify_suite`], with the add-threshold formula replaced by `add`
/// in the sign-equivalence check. Used to confirm that a corrupted formula
/// is caught.
pub fn verify_suite_with(
    sample_count: usize,
    seed: u64,
    add: AddThresholdFn,
) -> Result<VerifyReport> {
    if sample_count == 0 {
        return Err(PwtError::InvalidConfig(
            "sample count must be at least 1".into(),
        ));
    }
    let s = |tag: u64| derive_seed(seed, &[VERIFY_STREAM, tag]);
    let checks = vec![
        check_cache_consistency(sample_count, s(1)),
        check_travel_time_monotone(sample_count, s(2)),
        check_benefit_increment(sample_count, s(3)),
        check_fitness_preorder(sample_count, s(4)),
        check_dominance_enumeration(sample_count, s(5)),
        check_threshold_monotonicity(sample_count, s(6)),
        check_sign_equivalence_with(sample_count, s(7), add),
        check_unimodal_chain(sample_count, s(8)),
        check_prefix_dominance(sample_count, s(9)),
        check_optimal_prefix(sample_count, s(10)),
        check_pareto_front(sample_count, s(11)),
        check_h_monotonicity(sample_count, s(12)),
    ];
    Ok(VerifyReport {
        seed,
        sample_count,
        checks,
    })
}

/// A strictly correlated two-city instance with `n` drawn from `sizes`.
///
/// Profits and weights are distinct draws from `[1, 1000]`, the renting rate
/// is log-uniform on `[0.01, 300]` and the distance uniform on `[1, 100]`,
/// which spreads the optimum over the whole prefix range. With `roomy` the
/// capacity is at least the total item weight, otherwise it lies between a
/// fifth of the total weight and the total.
pub fn sample_instance(rng: &mut impl Rng, sizes: RangeInclusive<usize>, roomy: bool) -> Instance {
    let n = rng.random_range(sizes);
    let mut profits: Vec<u64> = index::sample(rng, 1000, n)
        .iter()
        .map(|v| v as u64 + 1)
        .collect();
    let mut weights: Vec<u64> = index::sample(rng, 1000, n)
        .iter()
        .map(|v| v as u64 + 1)
        .collect();
    profits.sort_unstable_by(|a, b| b.cmp(a));
    weights.sort_unstable();
    let items: Vec<Item> = profits
        .into_iter()
        .zip(weights)
        .map(|(p, w)| Item::new(p, w))
        .collect();
    let total: u64 = items.iter().map(|it| it.weight).sum();
    let capacity = if roomy {
        rng.random_range(total..=2 * total)
    } else {
        rng.random_range((total / 5).max(1)..=total)
    };
    let renting_rate = (rng.random_range(0.01f64.ln()..=300f64.ln())).exp();
    let distance = rng.random_range(1.0..=100.0);
    let v_min = rng.random_range(0.05..=0.5);
    Instance::two_city(items, distance, renting_rate, v_min, 1.0, capacity)
        .expect("sampled parameters are valid")
}

/// An unstructured instance over `legs` travel legs with items in random
/// cities.
pub fn sample_general_instance(
    rng: &mut impl Rng,
    sizes: RangeInclusive<usize>,
    legs: RangeInclusive<usize>,
) -> Instance {
    let n = rng.random_range(sizes);
    let m = rng.random_range(legs);
    let items: Vec<Item> = (0..n)
        .map(|_| Item::new(rng.random_range(1..=1000), rng.random_range(1..=1000)))
        .collect();
    let cities = (0..n).map(|_| rng.random_range(1..=m)).collect();
    let distances = (0..m).map(|_| rng.random_range(1.0..=100.0)).collect();
    let total: u64 = items.iter().map(|it| it.weight).sum();
    let capacity = rng.random_range((total / 5).max(1)..=total.max(1));
    let renting_rate = rng.random_range(0.0..=100.0);
    Instance::new(items, cities, distances, renting_rate, 0.1, 1.0, capacity)
        .expect("sampled parameters are valid")
}

fn random_solution(inst: &Instance, rng: &mut impl Rng) -> Solution {
    let density: f64 = rng.random();
    let bits: Vec<bool> = (0..inst.n()).map(|_| rng.random_bool(density)).collect();
    Solution::from_bools(inst, &bits).expect("length matches")
}

fn mask_solution(inst: &Instance, mask: u64) -> Solution {
    let bits: Vec<bool> = (0..inst.n()).map(|i| mask >> i & 1 == 1).collect();
    Solution::from_bools(inst, &bits).expect("length matches")
}

/// Outcome of one probe: `Ok(true)` counts as a sample, `Ok(false)` is a
/// draw outside the check's domain, `Err` describes a violation.
type Probe = std::result::Result<bool, String>;

fn msg<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("oracle error: {e}"))
}

fn drive(
    name: &'static str,
    samples: usize,
    seed: u64,
    mut draw: impl FnMut(&mut Stream) -> Instance,
    mut probe: impl FnMut(&Instance, &mut Stream) -> Probe,
) -> CheckReport {
    let mut rng = stream(seed);
    let mut counted = 0;
    let mut draws = 0;
    while counted < samples {
        if draws == samples * MAX_DRAWS_PER_SAMPLE {
            return CheckReport {
                name,
                samples: counted,
                passed: false,
                counterexample: Some(Counterexample {
                    detail: format!(
                        "only {counted} of {samples} draws fell inside the check's domain"
                    ),
                    instance: serde_json::Value::Null,
                }),
            };
        }
        draws += 1;
        let inst = draw(&mut rng);
        match probe(&inst, &mut rng) {
            Ok(true) => counted += 1,
            Ok(false) => {}
            Err(detail) => {
                let instance = inst
                    .to_json()
                    .ok()
                    .and_then(|s| serde_json::from_str(&s).ok())
                    .unwrap_or(serde_json::Value::Null);
                return CheckReport {
                    name,
                    samples: counted + 1,
                    passed: false,
                    counterexample: Some(Counterexample { detail, instance }),
                };
            }
        }
    }
    CheckReport {
        name,
        samples: counted,
        passed: true,
        counterexample: None,
    }
}

/// Cached weight, profit and per-city loads match a rescan after every
/// flip, and adding an item adds exactly its weight and profit.
pub fn check_cache_consistency(samples: usize, seed: u64) -> CheckReport {
    drive(
        "cache_consistency",
        samples,
        seed,
        |rng| sample_general_instance(rng, 1..=40, 1..=4),
        |inst, rng| {
            let mut s = random_solution(inst, rng);
            for _ in 0..20 {
                let i = rng.random_range(0..inst.n());
                let (w, p) = (s.weight(), s.profit());
                let adding = !s.contains(i);
                s.flip(inst, i);
                if !s.caches_consistent(inst) {
                    return Err(format!(
                        "caches diverge from a rescan after flipping item {i}: {}",
                        s.bits()
                    ));
                }
                let item = inst.item(i);
                if adding && (s.weight() != w + item.weight || s.profit() != p + item.profit) {
                    return Err(format!(
                        "adding item {i} is not additive: ({w}, {p}) -> ({}, {})",
                        s.weight(),
                        s.profit()
                    ));
                }
            }
            Ok(true)
        },
    )
}

/// Two-city travel time is strictly increasing in the load on `[0, C]`.
pub fn check_travel_time_monotone(samples: usize, seed: u64) -> CheckReport {
    drive(
        "travel_time_monotone",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=20, false),
        |inst, rng| {
            let c = inst.capacity();
            let mut pairs = vec![(0, c), (c.saturating_sub(1), c)];
            for _ in 0..20 {
                let a = rng.random_range(0..=c);
                let b = rng.random_range(0..=c);
                pairs.push((a.min(b), a.max(b)));
            }
            for (a, b) in pairs.into_iter().filter(|(a, b)| a < b) {
                let (ta, tb) = (
                    inst.travel_time_for_loads(&[a]),
                    inst.travel_time_for_loads(&[b]),
                );
                if ta >= tb {
                    return Err(format!("T({a}) = {ta} is not below T({b}) = {tb}"));
                }
            }
            Ok(true)
        },
    )
}

/// The benefit change from adding an item to a feasible packing, where the
/// result stays feasible, matches the closed-form increment.
pub fn check_benefit_increment(samples: usize, seed: u64) -> CheckReport {
    drive(
        "benefit_increment",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=30, false),
        |inst, rng| {
            let s = random_solution(inst, rng);
            let i = rng.random_range(0..inst.n());
            if s.contains(i) || s.weight() + inst.item(i).weight > inst.capacity() {
                return Ok(false);
            }
            let mut t = s.clone();
            t.flip(inst, i);
            let (b0, b1) = (inst.benefit(&s), inst.benefit(&t));
            let formula = msg(benefit_gain_of_adding(inst, i, s.weight() as f64))?;
            let scale = b0
                .abs()
                .max(b1.abs())
                .max(inst.item(i).profit as f64)
                .max(1.0);
            if ((b1 - b0) - formula).abs() > BENEFIT_EPSILON * scale {
                return Err(format!(
                    "adding item {i} at load {}: measured gain {} but formula gives {formula}",
                    s.weight(),
                    b1 - b0
                ));
            }
            Ok(true)
        },
    )
}

/// `compare_fitness` is antisymmetric and transitive on sampled triples.
pub fn check_fitness_preorder(samples: usize, seed: u64) -> CheckReport {
    drive(
        "fitness_preorder",
        samples,
        seed,
        |rng| sample_general_instance(rng, 1..=20, 1..=3),
        |inst, rng| {
            let a = random_solution(inst, rng);
            let b = if rng.random_bool(0.2) {
                a.clone()
            } else {
                random_solution(inst, rng)
            };
            let c = random_solution(inst, rng);
            let f = [inst.fitness(&a), inst.fitness(&b), inst.fitness(&c)];
            for x in &f {
                for y in &f {
                    if compare_fitness(x, y) != compare_fitness(y, x).reverse() {
                        return Err(format!(
                            "comparison of {x:?} and {y:?} is not antisymmetric"
                        ));
                    }
                }
            }
            for x in &f {
                for y in &f {
                    for z in &f {
                        let xy = compare_fitness(x, y);
                        let yz = compare_fitness(y, z);
                        if xy != Ordering::Greater
                            && yz != Ordering::Greater
                            && compare_fitness(x, z) == Ordering::Greater
                        {
                            return Err(format!(
                                "{x:?} <= {y:?} <= {z:?} but the first beats the last"
                            ));
                        }
                    }
                }
            }
            Ok(true)
        },
    )
}

/// Over all packings of a small instance, feasible beats infeasible and a
/// smaller overweight beats a larger one.
pub fn check_dominance_enumeration(samples: usize, seed: u64) -> CheckReport {
    drive(
        "dominance_enumeration",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=10, false),
        |inst, _| {
            let fits: Vec<_> = (0..1u64 << inst.n())
                .map(|m| inst.fitness(&mask_solution(inst, m)))
                .collect();
            for (ma, a) in fits.iter().enumerate() {
                for (mb, b) in fits.iter().enumerate() {
                    let expect_greater =
                        (a.is_feasible() && !b.is_feasible()) || a.violation > b.violation;
                    if expect_greater && compare_fitness(a, b) != Ordering::Greater {
                        return Err(format!(
                            "mask {ma:#b} with {a:?} does not beat mask {mb:#b} with {b:?}"
                        ));
                    }
                }
            }
            Ok(true)
        },
    )
}

/// Add and remove thresholds strictly decrease with the item index.
pub fn check_threshold_monotonicity(samples: usize, seed: u64) -> CheckReport {
    drive(
        "threshold_monotonicity",
        samples,
        seed,
        |rng| sample_instance(rng, 2..=50, false),
        |inst, _| {
            if !inst.is_strictly_correlated() {
                return Ok(false);
            }
            let t = msg(Thresholds::compute(inst))?;
            for (name, values) in [("add", &t.add), ("remove", &t.remove)] {
                if let Some(i) = (1..values.len()).find(|&i| values[i] >= values[i - 1]) {
                    return Err(format!(
                        "{name} threshold rises from {} at item {} to {} at item {i}",
                        values[i - 1],
                        i - 1,
                        values[i]
                    ));
                }
            }
            Ok(true)
        },
    )
}

pub fn check_sign_equivalence(samples: usize, seed: u64) -> CheckReport {
    check_sign_equivalence_with(samples, seed, add_threshold)
}

/// For a feasible packing `s` and item `i`, outside the tolerance band
/// around the threshold: adding `i` (staying feasible) improves the benefit
/// exactly when `W(s)` is below the add threshold, and removing a packed `i`
/// improves it exactly when `W(s)` is above the remove threshold.
pub fn check_sign_equivalence_with(samples: usize, seed: u64, add: AddThresholdFn) -> CheckReport {
    drive(
        "sign_equivalence",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=30, false),
        |inst, rng| {
            let s = random_solution(inst, rng);
            let i = rng.random_range(0..inst.n());
            let item = inst.item(i);
            if !inst.is_feasible(&s) {
                return Ok(false);
            }
            let adding = !s.contains(i);
            if adding && s.weight() + item.weight > inst.capacity() {
                return Ok(false);
            }
            let threshold = msg(add(inst, i))? + if adding { 0.0 } else { item.weight as f64 };
            let load = s.weight() as f64;
            if (load - threshold).abs() <= BENEFIT_EPSILON * threshold.abs().max(1.0) {
                return Ok(false);
            }
            let mut t = s.clone();
            t.flip(inst, i);
            let improves = inst.benefit(&t) > inst.benefit(&s);
            let predicted = if adding {
                load < threshold
            } else {
                load > threshold
            };
            if improves != predicted {
                let verb = if adding { "adding" } else { "removing" };
                return Err(format!(
                    "{verb} item {i} at load {load} (threshold {threshold}): benefit {} -> {}, threshold predicts {}",
                    inst.benefit(&s),
                    inst.benefit(&t),
                    if predicted { "an improvement" } else { "no improvement" }
                ));
            }
            Ok(true)
        },
    )
}

/// On instances where every prefix fits, prefix benefits rise strictly up
/// to `s_o`, may stay level for the single step after `o`, and fall
/// strictly from there on.
pub fn check_unimodal_chain(samples: usize, seed: u64) -> CheckReport {
    drive(
        "unimodal_chain",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=50, true),
        |inst, _| {
            let o = msg(optimal_prefix(inst))?.o;
            let mut s = Solution::empty(inst);
            let mut benefits = vec![inst.benefit(&s)];
            for i in 0..inst.n() {
                s.flip(inst, i);
                benefits.push(inst.benefit(&s));
            }
            for j in 0..inst.n() {
                let ord = benefit_cmp(benefits[j], benefits[j + 1]);
                let ok = match j.cmp(&o) {
                    Ordering::Less => ord == Ordering::Less,
                    Ordering::Equal => ord != Ordering::Less,
                    Ordering::Greater => ord == Ordering::Greater,
                };
                if !ok {
                    return Err(format!(
                        "B(s_{j}) = {} vs B(s_{}) = {} breaks the chain peaking at o = {o}",
                        benefits[j],
                        j + 1,
                        benefits[j + 1]
                    ));
                }
            }
            Ok(true)
        },
    )
}

/// Among all packings with `i` items, `s_i` has the least weight and the
/// greatest benefit.
pub fn check_prefix_dominance(samples: usize, seed: u64) -> CheckReport {
    drive(
        "prefix_dominance",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=12, false),
        |inst, _| {
            let prefixes: Vec<(u64, f64)> = (0..=inst.n())
                .map(|i| {
                    let s = Solution::prefix(inst, i);
                    (s.weight(), inst.benefit(&s))
                })
                .collect();
            for mask in 0..1u64 << inst.n() {
                let t = mask_solution(inst, mask);
                let (w, b) = prefixes[t.cardinality()];
                if t.weight() < w || benefit_cmp(inst.benefit(&t), b) == Ordering::Greater {
                    return Err(format!(
                        "packing {} (W = {}, B = {}) beats prefix s_{} (W = {w}, B = {b})",
                        t.bits(),
                        t.weight(),
                        inst.benefit(&t),
                        t.cardinality()
                    ));
                }
            }
            Ok(true)
        },
    )
}

/// The optimal prefix matches exhaustive search in benefit.
pub fn check_optimal_prefix(samples: usize, seed: u64) -> CheckReport {
    drive(
        "optimal_prefix",
        samples,
        seed,
        |rng| sample_instance(rng, 4..=16, false),
        |inst, _| {
            let opt = msg(optimal_prefix(inst))?;
            let (best, b) = msg(brute_force_optimum(inst, DEFAULT_ENUMERATION_LIMIT))?;
            if !benefits_equal(opt.optimal_benefit, b) {
                return Err(format!(
                    "prefix s_{} has benefit {} but {} reaches {b}",
                    opt.k,
                    opt.optimal_benefit,
                    best.bits()
                ));
            }
            Ok(true)
        },
    )
}

fn objectives(inst: &Instance, front: &[Solution]) -> Vec<(u64, f64)> {
    let mut v: Vec<(u64, f64)> = front
        .iter()
        .map(|s| (s.weight(), inst.benefit(s)))
        .collect();
    v.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    v
}

/// The prefix front `{s_0, ..., s_k}` has the same objective vectors as the
/// exhaustive non-dominated set.
pub fn check_pareto_front(samples: usize, seed: u64) -> CheckReport {
    drive(
        "pareto_front",
        samples,
        seed,
        |rng| sample_instance(rng, 1..=12, false),
        |inst, _| {
            let ours = objectives(inst, &msg(pareto_front(inst))?);
            let exact = objectives(
                inst,
                &msg(brute_force_pareto_front(inst, DEFAULT_ENUMERATION_LIMIT))?,
            );
            let same = ours.len() == exact.len()
                && ours
                    .iter()
                    .zip(&exact)
                    .all(|(a, b)| a.0 == b.0 && benefits_equal(a.1, b.1));
            if !same {
                return Err(format!(
                    "prefix front {ours:?} differs from exhaustive front {exact:?}"
                ));
            }
            Ok(true)
        },
    )
}

/// Along an RLS_swap run, `h` never drops between accepted feasible
/// search points.
pub fn check_h_monotonicity(samples: usize, seed: u64) -> CheckReport {
    drive(
        "h_monotonicity",
        samples,
        seed,
        |rng| sample_instance(rng, 4..=40, false),
        |inst, rng| {
            let h = msg(HPotential::new(inst))?;
            let target = msg(optimal_prefix(inst))?.optimal_benefit;
            let n = inst.n() as u64;
            let cfg = RunConfig::new((n * n * n).max(1000), rng.random())
                .with_target(target)
                .with_init(InitMode::UniformRandom);
            let mut previous: Option<usize> = None;
            let mut violation = None;
            let mut observer = |step: &Step<'_>| {
                if violation.is_some() || !step.accepted || !step.offspring_fitness.is_feasible() {
                    return;
                }
                let value = h.eval(step.solution).expect("accepted feasible point");
                if let Some(prev) = previous {
                    if value < prev {
                        violation = Some(format!(
                            "h fell from {prev} to {value} at evaluation {} (flips {:?}, now {})",
                            step.evaluations,
                            step.flips,
                            step.solution.bits()
                        ));
                    }
                }
                previous = Some(value);
            };
            msg(algorithms::run_observed(
                Algorithm::RlsSwap,
                inst,
                &cfg,
                &mut observer,
            ))?;
            match violation {
                Some(v) => Err(v),
                None => Ok(true),
            }
        },
    )
}
