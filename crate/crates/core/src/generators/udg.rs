//! Reduction from 2-independent set in unit disk graphs (`lambda = k - 1`).
//!
//! Each point carries a co-located voter and candidate. Two points are
//! adjacent when their distance is at most 2, the scale at which the
//! equivalence holds: a committee reaches `t` iff no voter has two members
//! within distance 2, iff the members are pairwise more than two hops apart.

use super::{first_subset, GroundTruth};
use crate::error::{Error, Result};
use crate::metric::{Instance, MetricSpace};

/// Largest point set the brute-force 2-independent-set oracle accepts.
pub const TWO_IS_CAP: usize = 15;

const ADJACENT: f64 = 2.0;

// same formula as the Euclidean backend, so `t` is bit-equal to an
// instance distance
fn euclid(a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
    (dx * dx + dy * dy).sqrt()
}

pub fn udg_adjacent(a: [f64; 2], b: [f64; 2]) -> bool {
    euclid(a, b) <= ADJACENT
}

/// Exhaustive search for k points pairwise at hop distance more than 2.
pub fn two_is_oracle(points: &[[f64; 2]], k: usize) -> Result<GroundTruth> {
    let n = points.len();
    if n > TWO_IS_CAP {
        return Err(Error::GroundTruthCap(format!("{n} points exceed {TWO_IS_CAP}")));
    }
    if k == 0 || k > n {
        return Err(Error::Generator(format!("k = {k} must lie in 1..={n}")));
    }
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && udg_adjacent(points[i], points[j])).collect())
        .collect();
    // within two hops: adjacent, or sharing a neighbour
    let close = |a: usize, b: usize| adj[a][b] || (0..n).any(|q| adj[a][q] && adj[q][b]);
    let witness = first_subset(n, k, |s| {
        s.iter()
            .enumerate()
            .all(|(i, &a)| s[i + 1..].iter().all(|&b| !close(a, b)))
    });
    Ok(GroundTruth {
        answer: witness.is_some(),
        witness,
        threshold_t: f64::NAN,
        note: format!("2-independent set: {n} points, k = {k}, adjacency at distance <= 2; exhaustive search"),
    })
}

/// Instance with a voter and a candidate on every point, `lambda = k - 1`,
/// and `t` the smallest distance above 2.
pub fn gen_udg(points: &[[f64; 2]], k: usize) -> Result<(Instance, GroundTruth)> {
    if k < 2 {
        return Err(Error::Generator(format!("k = {k}: the reduction needs k >= 2")));
    }
    let n = points.len();
    let mut t = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclid(points[i], points[j]);
            if d > ADJACENT {
                t = t.min(d);
            }
        }
    }
    if !t.is_finite() {
        return Err(Error::Generator(
            "trivial no-instance: no two points are more than 2 apart".into(),
        ));
    }
    let space = MetricSpace::euclidean(2, points.iter().map(|p| p.to_vec()).collect())?;
    let inst = Instance::new(space, (0..n).collect(), (0..n).collect(), k, k - 1, Some(t))?;
    let mut truth = two_is_oracle(points, k)?;
    truth.threshold_t = t;
    Ok((inst, truth))
}
