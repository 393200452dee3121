use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::problem::Solution;

/// Mutation operators. Each produces a list of distinct positions to flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Flip one uniformly chosen bit.
    OneBit,
    /// With probability 1/2, or whenever the string is all zeros or all
    /// ones, flip one uniformly chosen bit; otherwise flip a uniformly
    /// chosen one-bit and a uniformly chosen zero-bit together.
    OneBitOrSwap,
    /// Flip every bit independently with probability `1/n`.
    Standard,
}

/// A mutation operator bound to a string length.
pub(crate) struct Mutator {
    kind: Mutation,
    n: usize,
    gaps: Option<Geometric>,
}

impl Mutator {
    pub(crate) fn new(kind: Mutation, n: usize) -> Self {
        assert!(n > 0);
        let gaps = (kind == Mutation::Standard)
            .then(|| Geometric::new(1.0 / n as f64).expect("1/n is a valid probability"));
        Mutator { kind, n, gaps }
    }

    /// Writes the positions to flip into `flips` (cleared first).
    #[inline]
    pub(crate) fn sample(&self, s: &Solution, rng: &mut impl Rng, flips: &mut Vec<usize>) {
        flips.clear();
        match self.kind {
            Mutation::OneBit => flips.push(rng.random_range(0..self.n)),
            Mutation::OneBitOrSwap => {
                let ones = s.cardinality();
                let coin: f64 = rng.random();
                if ones == 0 || ones == self.n || coin < 0.5 {
                    flips.push(rng.random_range(0..self.n));
                } else {
                    let one = s.bits().select_one(rng.random_range(0..ones));
                    let zero = s.bits().select_zero(rng.random_range(0..self.n - ones));
                    flips.push(one.expect("rank below popcount"));
                    flips.push(zero.expect("rank below zero count"));
                }
            }
            Mutation::Standard => {
                // skip ahead by geometric gaps between successive flips
                let gaps = self.gaps.as_ref().expect("standard mutation has gap law");
                let mut pos = gaps.sample(rng);
                while pos < self.n as u64 {
                    flips.push(pos as usize);
                    pos += 1 + gaps.sample(rng);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{Instance, Item};
    use crate::rng;

    fn inst(n: usize) -> Instance {
        Instance::two_city(vec![Item::new(1, 1); n], 1.0, 1.0, 0.1, 1.0, n as u64).unwrap()
    }

    #[test]
    fn swap_branch_forced_off_at_extremes() {
        let inst = inst(6);
        let m = Mutator::new(Mutation::OneBitOrSwap, 6);
        let mut rng = rng::stream(1);
        let mut flips = Vec::new();
        for s in [Solution::empty(&inst), Solution::prefix(&inst, 6)] {
            for _ in 0..200 {
                m.sample(&s, &mut rng, &mut flips);
                assert_eq!(flips.len(), 1);
            }
        }
    }

    #[test]
    fn swap_preserves_cardinality() {
        let inst = inst(10);
        let s = Solution::from_bools(
            &inst,
            &[
                true, false, true, false, false, true, false, false, false, true,
            ],
        )
        .unwrap();
        let m = Mutator::new(Mutation::OneBitOrSwap, 10);
        let mut rng = rng::stream(2);
        let mut flips = Vec::new();
        let (mut singles, mut swaps) = (0i64, 0i64);
        for _ in 0..2000 {
            m.sample(&s, &mut rng, &mut flips);
            match flips.as_slice() {
                [_] => singles += 1,
                [a, b] => {
                    assert!(s.contains(*a) && !s.contains(*b));
                    swaps += 1;
                }
                other => panic!("unexpected flip set {other:?}"),
            }
        }
        // fair coin: 1000 ± 3 * sqrt(500)
        assert!((singles - 1000).abs() < 70, "{singles} {swaps}");
    }

    #[test]
    fn standard_mutation_rate() {
        let n = 50;
        let inst = inst(n);
        let s = Solution::empty(&inst);
        let m = Mutator::new(Mutation::Standard, n);
        let mut rng = rng::stream(3);
        let mut flips = Vec::new();
        let trials = 20_000;
        let mut total = 0;
        let mut empty = 0;
        let mut hits = vec![0usize; n];
        for _ in 0..trials {
            m.sample(&s, &mut rng, &mut flips);
            assert!(flips.windows(2).all(|w| w[0] < w[1]));
            total += flips.len();
            empty += flips.is_empty() as usize;
            for &i in &flips {
                hits[i] += 1;
            }
        }
        let mean = total as f64 / trials as f64;
        assert!((mean - 1.0).abs() < 0.03, "{mean}");
        // P(no flip) = (1 - 1/50)^50 ≈ 0.3642
        let p0 = empty as f64 / trials as f64;
        assert!((p0 - 0.3642).abs() < 0.015, "{p0}");
        assert!(hits.iter().all(|&h| h > 250 && h < 560), "{hits:?}");
    }

    #[test]
    fn single_bit_string_always_flips() {
        let inst = inst(1);
        let s = Solution::empty(&inst);
        let mut rng = rng::stream(4);
        let mut flips = Vec::new();
        for kind in [Mutation::OneBit, Mutation::OneBitOrSwap, Mutation::Standard] {
            let m = Mutator::new(kind, 1);
            for _ in 0..100 {
                m.sample(&s, &mut rng, &mut flips);
                assert_eq!(flips, [0]);
            }
        }
    }
}
