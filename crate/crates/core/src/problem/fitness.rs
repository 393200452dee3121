use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Instance, Solution};

/// Relative tolerance for benefit comparisons; absolute below magnitude 1.
pub const BENEFIT_EPSILON: f64 = 1e-9;

/// Constrained fitness `F(s) = (q(s), B(s))`, maximised lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fitness {
    /// `min(C - W(s), 0)`; zero exactly when the solution is feasible.
    pub violation: i64,
    pub benefit: f64,
}

impl Fitness {
    pub fn is_feasible(&self) -> bool {
        self.violation == 0
    }

    /// Lexicographic comparison without a tolerance band on the benefit.
    pub fn strictly_better_than(&self, other: &Fitness) -> bool {
        match self.violation.cmp(&other.violation) {
            Ordering::Equal => self.benefit > other.benefit,
            ord => ord == Ordering::Greater,
        }
    }
}

#[inline]
fn tolerance(a: f64, b: f64) -> f64 {
    BENEFIT_EPSILON * a.abs().max(b.abs()).max(1.0)
}

pub fn benefits_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= tolerance(a, b)
}

/// Benefit comparison with the tolerance band: values within it are equal.
#[inline]
pub fn benefit_cmp(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= tolerance(a, b) {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Violation first (exact), then benefit (toleranced).
#[inline]
pub fn compare_fitness(a: &Fitness, b: &Fitness) -> Ordering {
    a.violation
        .cmp(&b.violation)
        .then_with(|| benefit_cmp(a.benefit, b.benefit))
}

/// How the first solution relates to the second under the bi-objective
/// (minimise `W`, maximise `F`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// Weak dominance with at least one strict relation.
    Strong,
    /// Weak dominance with both objectives equal.
    Weak,
    Incomparable,
}

impl Dominance {
    pub fn is_weak_or_strong(self) -> bool {
        self != Dominance::Incomparable
    }
}

pub fn dominance_of(w1: u64, f1: &Fitness, w2: u64, f2: &Fitness) -> Dominance {
    let fit = compare_fitness(f1, f2);
    if w1 > w2 || fit == Ordering::Less {
        Dominance::Incomparable
    } else if w1 < w2 || fit == Ordering::Greater {
        Dominance::Strong
    } else {
        Dominance::Weak
    }
}

pub fn dominance(inst: &Instance, s1: &Solution, s2: &Solution) -> Dominance {
    dominance_of(
        s1.weight(),
        &inst.fitness(s1),
        s2.weight(),
        &inst.fitness(s2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(violation: i64, benefit: f64) -> Fitness {
        Fitness { violation, benefit }
    }

    #[test]
    fn feasible_beats_infeasible() {
        assert_eq!(
            compare_fitness(&f(0, -3500.0), &f(-1, 1e6)),
            Ordering::Greater
        );
    }

    #[test]
    fn smaller_violation_wins() {
        for (x, y) in [(1e9, -1e9), (0.0, 0.0), (-5.0, 5.0)] {
            assert_eq!(compare_fitness(&f(-5, x), &f(-2, y)), Ordering::Less);
        }
    }

    #[test]
    fn tolerance_band() {
        let b = 12345.678;
        assert_eq!(
            compare_fitness(&f(0, b), &f(0, b * (1.0 + 0.5e-9))),
            Ordering::Equal
        );
        assert_eq!(
            compare_fitness(&f(0, b), &f(0, b * (1.0 + 5e-9))),
            Ordering::Less
        );
        // absolute band below magnitude one
        assert_eq!(benefit_cmp(0.0, 0.9e-9), Ordering::Equal);
        assert_eq!(benefit_cmp(0.0, 2e-9), Ordering::Less);
    }

    #[test]
    fn dominance_cases() {
        let a = f(0, 10.0);
        assert_eq!(dominance_of(5, &a, 5, &a), Dominance::Weak);
        assert_eq!(dominance_of(4, &a, 5, &a), Dominance::Strong);
        assert_eq!(dominance_of(5, &a, 5, &f(0, 9.0)), Dominance::Strong);
        assert_eq!(dominance_of(4, &a, 5, &f(0, 11.0)), Dominance::Incomparable);
        assert_eq!(
            dominance_of(6, &a, 5, &f(-3, 100.0)),
            Dominance::Incomparable
        );
        assert_eq!(dominance_of(5, &a, 6, &f(-1, 100.0)), Dominance::Strong);
    }
}
