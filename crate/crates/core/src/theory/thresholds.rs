use crate::error::{PwtError, Result};
use crate::problem::Instance;

fn checked_item(inst: &Instance, i: usize) -> Result<()> {
    inst.require_two_city()?;
    if i >= inst.n() {
        return Err(PwtError::ItemIndex {
            index: i,
            n: inst.n(),
        });
    }
    Ok(())
}

/// Load below which adding item `i` (0-based) strictly increases the benefit:
///
/// `v_max / nu - (w_i / 2) * (1 + sqrt(1 + 4 R d / (nu w_i p_i)))`
pub fn add_threshold(inst: &Instance, i: usize) -> Result<f64> {
    checked_item(inst, i)?;
    let d = inst.distance()?;
    let item = inst.item(i);
    let (w, p) = (item.weight as f64, item.profit as f64);
    let nu = inst.nu();
    let root = (1.0 + 4.0 * inst.renting_rate() * d / (nu * w * p)).sqrt();
    Ok(inst.v_max() / nu - 0.5 * w * (1.0 + root))
}

/// Load above which removing item `i` strictly increases the benefit; always
/// `add_threshold(i) + w_i`.
pub fn remove_threshold(inst: &Instance, i: usize) -> Result<f64> {
    Ok(add_threshold(inst, i)? + inst.item(i).weight as f64)
}

/// `B(s + e_i) - B(s)` for a packing of weight `base` not holding item `i`,
/// on the unclamped speed model.
pub fn benefit_gain_of_adding(inst: &Instance, i: usize, base: f64) -> Result<f64> {
    checked_item(inst, i)?;
    let d = inst.distance()?;
    let item = inst.item(i);
    let (w, p) = (item.weight as f64, item.profit as f64);
    let nu = inst.nu();
    let v = inst.v_max();
    Ok(p - inst.renting_rate() * d * nu * w / ((v - nu * (base + w)) * (v - nu * base)))
}

/// Add and remove thresholds for every item.
#[derive(Clone, Debug, PartialEq)]
pub struct Thresholds {
    pub add: Vec<f64>,
    pub remove: Vec<f64>,
}

impl Thresholds {
    pub fn compute(inst: &Instance) -> Result<Self> {
        inst.require_two_city()?;
        let add = (0..inst.n())
            .map(|i| add_threshold(inst, i))
            .collect::<Result<Vec<_>>>()?;
        let remove = add
            .iter()
            .zip(inst.items())
            .map(|(t, it)| t + it.weight as f64)
            .collect();
        Ok(Thresholds { add, remove })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{benefits_equal, Item, Solution};

    fn pair() -> Instance {
        Instance::two_city(
            vec![Item::new(100, 10), Item::new(50, 20)],
            1.0,
            1.0,
            0.1,
            1.0,
            100,
        )
        .unwrap()
    }

    /// Root of `W -> B(s + e_i) - B(s)` by bisection over the loads where
    /// the unclamped speed stays positive.
    fn bisect_root(inst: &Instance, i: usize) -> f64 {
        let gain = |w: f64| benefit_gain_of_adding(inst, i, w).unwrap();
        let top = inst.v_max() / inst.nu() - inst.item(i).weight as f64 - 1e-9;
        let (mut lo, mut hi) = (0.0, top);
        assert!(gain(lo) > 0.0 && gain(hi) < 0.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if gain(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn pair_instance_threshold_matches_bisection() {
        let inst = pair();
        let t = add_threshold(&inst, 0).unwrap();
        // frozen from the 60-step bisection oracle below
        assert!((t - 100.10185898533777).abs() < 1e-9, "{t}");
        assert!((bisect_root(&inst, 0) - t).abs() < 1e-9);
    }

    #[test]
    fn zero_rent_threshold_is_capacity_bound() {
        let inst = Instance::two_city(vec![Item::new(7, 3)], 2.0, 0.0, 0.1, 1.0, 10).unwrap();
        let t = add_threshold(&inst, 0).unwrap();
        assert!(benefits_equal(t, inst.v_max() / inst.nu() - 3.0));
        assert!(t > (inst.capacity() - 3) as f64);
    }

    #[test]
    fn remove_minus_add_is_item_weight() {
        let inst = pair();
        for i in 0..2 {
            let gap = remove_threshold(&inst, i).unwrap() - add_threshold(&inst, i).unwrap();
            assert!((gap - inst.item(i).weight as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn removal_just_above_threshold_helps() {
        // an instance whose removal threshold for item 1 sits at an
        // integer-reachable load
        let items = vec![
            Item::new(900, 5),
            Item::new(40, 30),
            Item::new(30, 40),
            Item::new(20, 60),
        ];
        let inst = Instance::two_city(items, 50.0, 70.0, 0.1, 1.0, 200).unwrap();
        let rt = remove_threshold(&inst, 1).unwrap();
        let s = Solution::from_bools(&inst, &[true, true, true, true]).unwrap();
        assert!(s.weight() as f64 > rt);
        let mut without = s.clone();
        without.flip(&inst, 1);
        assert!(inst.benefit(&without) > inst.benefit(&s));
    }

    #[test]
    fn gain_vanishes_at_thresholds() {
        let inst = pair();
        for i in 0..2 {
            let t = add_threshold(&inst, i).unwrap();
            assert!(benefit_gain_of_adding(&inst, i, t).unwrap().abs() < 1e-9);
            // removal from a load equal to the removal threshold is neutral
            let rt = remove_threshold(&inst, i).unwrap();
            let w = inst.item(i).weight as f64;
            assert!(benefit_gain_of_adding(&inst, i, rt - w).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_multi_city() {
        let inst = Instance::new(
            vec![Item::new(1, 1)],
            vec![1],
            vec![1.0, 1.0],
            1.0,
            0.1,
            1.0,
            5,
        )
        .unwrap();
        assert!(matches!(
            add_threshold(&inst, 0),
            Err(PwtError::NotTwoCity { legs: 2 })
        ));
        assert!(remove_threshold(&inst, 0).is_err());
    }
}
