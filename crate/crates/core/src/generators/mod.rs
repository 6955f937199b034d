//! Instance generators with exhaustive ground truth.
//!
//! The reduction generators build instances whose answer is known from a
//! brute-force search on the source problem, so solvers can be checked
//! without running the committee oracle.

mod hitting;
mod random;
mod rng;
mod udg;

use serde::{Deserialize, Serialize};

pub use hitting::{gen_hitting_set, hitting_oracle, random_set_system, with_dummy_elements, SetSystem, HITTING_CAP};
pub use random::{gen_random_euclidean, gen_random_graph, random_points};
pub use rng::Lcg;
pub use udg::{gen_udg, two_is_oracle, udg_adjacent, TWO_IS_CAP};

/// Known answer for a generated instance at `threshold_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub answer: bool,
    /// Candidate indices of a witness when the answer is yes.
    pub witness: Option<Vec<usize>>,
    pub threshold_t: f64,
    pub note: String,
}

/// First k-subset of `0..n` (lexicographic) accepted by `accept`.
fn first_subset(n: usize, k: usize, mut accept: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut found = None;
    crate::combinatorics::for_each_combination(n, k, |s| {
        if accept(s) {
            found = Some(s.to_vec());
            false
        } else {
            true
        }
    });
    found
}
