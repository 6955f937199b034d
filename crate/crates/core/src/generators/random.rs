//! Seeded random instances for the oracle-equivalence suites.

use std::collections::HashSet;

use super::Lcg;
use crate::error::{Error, Result};
use crate::metric::{Instance, MetricSpace};

/// Points uniform in the unit cube, voters first, then candidates.
pub fn gen_random_euclidean(
    num_voters: usize,
    num_candidates: usize,
    dim: usize,
    k: usize,
    lambda: usize,
    seed: u64,
) -> Result<Instance> {
    if num_voters == 0 || num_candidates == 0 || dim == 0 {
        return Err(Error::Generator("counts and dimension must be positive".into()));
    }
    let mut rng = Lcg::new(seed);
    let points: Vec<Vec<f64>> = (0..num_voters + num_candidates)
        .map(|_| (0..dim).map(|_| rng.next_f64()).collect())
        .collect();
    Instance::new(
        MetricSpace::euclidean(dim, points)?,
        (0..num_voters).collect(),
        (num_voters..num_voters + num_candidates).collect(),
        k,
        lambda,
        None,
    )
}

/// Connected random graph on voter and candidate vertices (voters first):
/// a random spanning tree plus extra edges with probability `density`,
/// integer weights in 1..=9.
pub fn gen_random_graph(
    num_voters: usize,
    num_candidates: usize,
    k: usize,
    lambda: usize,
    density: f64,
    seed: u64,
) -> Result<Instance> {
    if num_voters == 0 || num_candidates == 0 {
        return Err(Error::Generator("counts must be positive".into()));
    }
    let n = num_voters + num_candidates;
    let mut rng = Lcg::new(seed);
    let mut edges = Vec::new();
    let mut tree = HashSet::new();
    for v in 1..n {
        let u = rng.below(v);
        edges.push((u, v, rng.range(1, 9) as f64));
        tree.insert((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !tree.contains(&(u, v)) && rng.chance(density) {
                edges.push((u, v, rng.range(1, 9) as f64));
            }
        }
    }
    Instance::new(
        MetricSpace::graph(n, edges)?,
        (0..num_voters).collect(),
        (num_voters..n).collect(),
        k,
        lambda,
        None,
    )
}

/// Points uniform in `[0, side]^2`.
pub fn random_points(rng: &mut Lcg, n: usize, side: f64) -> Vec<[f64; 2]> {
    (0..n).map(|_| [rng.next_f64() * side, rng.next_f64() * side]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_instances_repeat() {
        let a = gen_random_euclidean(5, 4, 2, 2, 1, 11).unwrap();
        let b = gen_random_euclidean(5, 4, 2, 2, 1, 11).unwrap();
        assert_eq!(a, b);
        let c = gen_random_euclidean(5, 4, 2, 2, 1, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn graphs_are_connected() {
        for seed in 0..20 {
            let g = gen_random_graph(4, 5, 2, 1, 0.2, seed).unwrap();
            assert!(g.num_candidates() == 5 && g.num_voters() == 4);
        }
    }
}
