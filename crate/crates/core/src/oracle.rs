//! Exhaustive ground-truth solver over all k-subsets of the candidates.
//!
//! No pruning: every subset is evaluated with the shared objective. Work is
//! split by smallest member so results are independent of the thread count.

use rayon::prelude::*;

use crate::combinatorics::{binomial, for_each_with_first};
use crate::error::{Error, Result};
use crate::metric::{feasible_unchecked, objective_unchecked, Committee, Instance};

pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub optimal_value: f64,
    pub witness: Committee,
    pub subsets_examined: u128,
}

fn check_cap(inst: &Instance, cap: u128) -> Result<u128> {
    let subsets = binomial(inst.num_candidates(), inst.k());
    if subsets > cap {
        return Err(Error::OracleCapExceeded { subsets, cap });
    }
    Ok(subsets)
}

/// The lexicographically first k-subset that is feasible at `t`, if any.
pub fn oracle_decide(inst: &Instance, t: f64, cap: u128) -> Result<Option<Committee>> {
    check_cap(inst, cap)?;
    let (n, k) = (inst.num_candidates(), inst.k());
    let hit = (0..=n - k).into_par_iter().find_map_first(|first| {
        let mut buf = Vec::new();
        let mut found = None;
        for_each_with_first(n, k, first, |s| {
            if feasible_unchecked(inst, s, t, &mut buf) {
                found = Some(s.to_vec());
                false
            } else {
                true
            }
        });
        found
    });
    Ok(hit.map(Committee::from_sorted))
}

/// Exact optimum over all k-subsets; ties go to the lexicographically
/// smallest witness.
pub fn oracle_optimize(inst: &Instance, cap: u128) -> Result<OracleReport> {
    let total = check_cap(inst, cap)?;
    let (n, k) = (inst.num_candidates(), inst.k());
    let chunks: Vec<(f64, Vec<usize>, u128)> = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut buf = Vec::new();
            let mut best = (f64::NEG_INFINITY, Vec::new());
            let mut count = 0u128;
            for_each_with_first(n, k, first, |s| {
                count += 1;
                let val = objective_unchecked(inst, s, &mut buf);
                if val > best.0 {
                    best = (val, s.to_vec());
                }
                true
            });
            (best.0, best.1, count)
        })
        .collect();

    let mut examined = 0;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for (val, members, count) in chunks {
        examined += count;
        // chunks arrive in lexicographic order, so strict > keeps the first
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, members));
        }
    }
    let (optimal_value, members) = best.ok_or_else(|| Error::internal("oracle", "no subsets"))?;
    debug_assert_eq!(examined, total);
    Ok(OracleReport {
        optimal_value,
        witness: Committee::from_sorted(members),
        subsets_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{critical_values, objective, MetricSpace};

    fn line(voters: &[f64], cands: &[f64], k: usize, lambda: usize) -> Instance {
        let pts: Vec<Vec<f64>> = voters.iter().chain(cands).map(|&x| vec![x]).collect();
        let nv = voters.len();
        Instance::new(
            MetricSpace::euclidean(1, pts).unwrap(),
            (0..nv).collect(),
            (nv..nv + cands.len()).collect(),
            k,
            lambda,
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_candidate() {
        let inst = line(&[0.0, 3.0], &[1.0], 1, 1);
        let rep = oracle_optimize(&inst, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(rep.optimal_value, 1.0);
        assert_eq!(rep.subsets_examined, 1);
    }

    #[test]
    fn k_equals_all_tests_one_subset() {
        let inst = line(&[0.0], &[1.0, 2.0, 3.0], 3, 1);
        let rep = oracle_optimize(&inst, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(rep.subsets_examined, 1);
        assert_eq!(rep.witness.members(), &[0, 1, 2]);
    }

    #[test]
    fn decision_matches_optimum_boundary() {
        let inst = line(&[0.0, 4.0, 9.0], &[1.0, 5.0, 7.0, 12.0], 2, 1);
        let rep = oracle_optimize(&inst, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(objective(&inst, rep.witness.members()).unwrap(), rep.optimal_value);
        assert!(critical_values(&inst).contains(&rep.optimal_value));
        for t in critical_values(&inst) {
            let d = oracle_decide(&inst, t, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(d.is_some(), t <= rep.optimal_value, "t = {t}");
        }
    }

    #[test]
    fn decide_returns_lexicographically_first() {
        let inst = line(&[0.0], &[5.0, 5.0, 5.0], 2, 1);
        let c = oracle_decide(&inst, 5.0, DEFAULT_ORACLE_CAP).unwrap().unwrap();
        assert_eq!(c.members(), &[0, 1]);
    }

    #[test]
    fn cap_is_explicit() {
        let inst = line(&[0.0], &[1.0, 2.0, 3.0, 4.0], 2, 1);
        let err = oracle_optimize(&inst, 5).unwrap_err();
        assert!(err.to_string().contains("oracle cap exceeded"));
        assert!(err.is_cap_exceeded());
    }
}
