//! Hitting-set reduction to a graph metric.
//!
//! One candidate vertex per element, one voter vertex per set. Candidates
//! form a clique of weight-2 edges and each voter is joined by a weight-1
//! edge to every element it does NOT contain. Shortest paths then give
//! `d(c_e, v_S) = 1` for `e` outside `S` and `3` for `e` inside, so a
//! committee reaches `t = 3` with rank `lambda` exactly when it hits every
//! set at least `lambda` times.

use super::{first_subset, GroundTruth, Lcg};
use crate::error::{Error, Result};
use crate::metric::{Instance, MetricSpace};

/// Largest universe the brute-force hitting oracle accepts.
pub const HITTING_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SetSystem {
    pub universe_size: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
    /// Required hits per set; 1 is plain hitting set.
    pub multiplicity: usize,
}

impl SetSystem {
    pub fn validate(&self) -> Result<()> {
        if self.universe_size == 0 || self.sets.is_empty() {
            return Err(Error::Generator(
                "set system needs a non-empty universe and at least one set".into(),
            ));
        }
        if self.k == 0 || self.k > self.universe_size {
            return Err(Error::Generator(format!(
                "k = {} must lie in 1..={}",
                self.k, self.universe_size
            )));
        }
        if self.multiplicity == 0 || self.multiplicity > self.k {
            return Err(Error::Generator(format!(
                "multiplicity {} must lie in 1..=k",
                self.multiplicity
            )));
        }
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Generator(format!("set {i} is empty")));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= self.universe_size) {
                return Err(Error::Generator(format!(
                    "set {i} holds element {e} outside the universe"
                )));
            }
        }
        Ok(())
    }

    fn hits(&self, chosen: &[usize]) -> bool {
        self.sets
            .iter()
            .all(|s| chosen.iter().filter(|e| s.contains(e)).count() >= self.multiplicity)
    }
}

/// Exhaustive search for k elements hitting every set `multiplicity` times.
pub fn hitting_oracle(sys: &SetSystem) -> Result<GroundTruth> {
    sys.validate()?;
    if sys.universe_size > HITTING_CAP {
        return Err(Error::GroundTruthCap(format!(
            "universe of {} elements exceeds {HITTING_CAP}",
            sys.universe_size
        )));
    }
    // supersets keep hitting, so size exactly k loses nothing
    let witness = first_subset(sys.universe_size, sys.k, |s| sys.hits(s));
    Ok(GroundTruth {
        answer: witness.is_some(),
        witness,
        threshold_t: 3.0,
        note: format!(
            "hitting set: |U| = {}, |F| = {}, k = {}, multiplicity {}; exhaustive search",
            sys.universe_size,
            sys.sets.len(),
            sys.k,
            sys.multiplicity
        ),
    })
}

/// The graph-metric instance of the reduction plus its ground truth.
pub fn gen_hitting_set(sys: &SetSystem) -> Result<(Instance, GroundTruth)> {
    sys.validate()?;
    let n = sys.universe_size;
    let m = sys.sets.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push((a, b, 2.0));
        }
    }
    for (j, s) in sys.sets.iter().enumerate() {
        let voter = n + j;
        if s.len() == n {
            // a set equal to the universe has no non-member edge; weight-3
            // links keep every distance to it at exactly 3
            for e in 0..n {
                edges.push((e, voter, 3.0));
            }
            continue;
        }
        for e in (0..n).filter(|e| !s.contains(e)) {
            edges.push((e, voter, 1.0));
        }
    }
    let space = MetricSpace::graph(n + m, edges)?;
    let inst = Instance::new(
        space,
        (n..n + m).collect(),
        (0..n).collect(),
        sys.k,
        sys.multiplicity,
        Some(3.0),
    )?;
    Ok((inst, hitting_oracle(sys)?))
}

/// Adds `lambda - 1` dummy elements to every set and raises `k` by the same
/// amount. The result needs `lambda` hits per set and has a solution iff
/// the original system has a plain hitting set of size `k`.
pub fn with_dummy_elements(sys: &SetSystem, lambda: usize) -> Result<SetSystem> {
    sys.validate()?;
    if lambda == 0 {
        return Err(Error::Generator("multiplicity must be at least 1".into()));
    }
    let extra = lambda - 1;
    let dummies: Vec<usize> = (sys.universe_size..sys.universe_size + extra).collect();
    Ok(SetSystem {
        universe_size: sys.universe_size + extra,
        sets: sys
            .sets
            .iter()
            .map(|s| s.iter().copied().chain(dummies.iter().copied()).collect())
            .collect(),
        k: sys.k + extra,
        multiplicity: lambda,
    })
}

/// Random system with every set non-empty and sorted.
pub fn random_set_system(
    rng: &mut Lcg,
    universe_size: usize,
    num_sets: usize,
    k: usize,
    multiplicity: usize,
) -> SetSystem {
    let sets = (0..num_sets)
        .map(|_| {
            let mut s: Vec<usize> = (0..universe_size).filter(|_| rng.chance(0.4)).collect();
            if s.is_empty() {
                s.push(rng.below(universe_size));
            }
            s
        })
        .collect();
    SetSystem {
        universe_size,
        sets,
        k,
        multiplicity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{objective, PointRef};

    fn two_singletons(k: usize) -> SetSystem {
        SetSystem {
            universe_size: 2,
            sets: vec![vec![0], vec![1]],
            k,
            multiplicity: 1,
        }
    }

    #[test]
    fn distances_follow_membership() {
        let (inst, _) = gen_hitting_set(&two_singletons(1)).unwrap();
        assert_eq!(inst.vc(0, 0), 3.0);
        assert_eq!(inst.vc(1, 0), 1.0);
        assert_eq!(inst.cc(0, 1), 2.0);
        assert_eq!(inst.dist(PointRef::Candidate(0), PointRef::Voter(0)).unwrap(), 3.0);
    }

    #[test]
    fn both_singletons_need_two() {
        let (_, gt) = gen_hitting_set(&two_singletons(1)).unwrap();
        assert!(!gt.answer);
        let (inst, gt) = gen_hitting_set(&two_singletons(2)).unwrap();
        assert!(gt.answer);
        assert_eq!(gt.witness.as_deref(), Some(&[0, 1][..]));
        assert_eq!(objective(&inst, &[0, 1]).unwrap(), 3.0);
    }

    #[test]
    fn full_set_stays_at_three() {
        let sys = SetSystem {
            universe_size: 3,
            sets: vec![vec![0, 1, 2], vec![1]],
            k: 1,
            multiplicity: 1,
        };
        let (inst, gt) = gen_hitting_set(&sys).unwrap();
        for c in 0..3 {
            assert_eq!(inst.vc(0, c), 3.0);
        }
        assert!(gt.answer);
    }

    #[test]
    fn singleton_forces_its_element() {
        let sys = SetSystem {
            universe_size: 4,
            sets: vec![vec![2], vec![0, 1, 3]],
            k: 2,
            multiplicity: 1,
        };
        let gt = hitting_oracle(&sys).unwrap();
        assert!(gt.witness.unwrap().contains(&2));
    }

    #[test]
    fn multiplicity_above_set_size_fails() {
        let sys = SetSystem {
            universe_size: 4,
            sets: vec![vec![0, 1], vec![2, 3]],
            k: 4,
            multiplicity: 3,
        };
        assert!(!hitting_oracle(&sys).unwrap().answer);
    }

    #[test]
    fn dummy_transform_preserves_answer() {
        let mut rng = Lcg::new(3);
        for _ in 0..200 {
            let n = rng.range(1, 5);
            let (m, k) = (rng.range(1, 5), rng.range(1, n));
            let sys = random_set_system(&mut rng, n, m, k, 1);
            let lambda = rng.range(1, 3);
            let multi = with_dummy_elements(&sys, lambda).unwrap();
            assert_eq!(
                hitting_oracle(&sys).unwrap().answer,
                hitting_oracle(&multi).unwrap().answer
            );
        }
    }

    #[test]
    fn oracle_cap() {
        let sys = SetSystem {
            universe_size: 21,
            sets: vec![vec![0]],
            k: 1,
            multiplicity: 1,
        };
        assert!(matches!(hitting_oracle(&sys), Err(Error::GroundTruthCap(_))));
    }
}
