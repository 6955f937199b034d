//! Shared evaluation primitives: the rank-lambda distance, the egalitarian
//! objective, threshold feasibility, the critical-value grid and padding.

use std::fmt;

use crate::error::{Error, Result};
use crate::metric::instance::Instance;

/// Relative slack applied to every threshold comparison.
pub const REL_TOL: f64 = 1e-9;

/// `a >= b` up to the shared relative tolerance `1e-9 * max(1, |b|)`.
#[inline]
pub fn approx_ge(a: f64, b: f64) -> bool {
    a >= b - REL_TOL * b.abs().max(1.0)
}

/// A sorted, duplicate-free set of candidate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Committee(Vec<usize>);

impl Committee {
    /// Sorts and validates `members` against `num_candidates`.
    pub fn new(mut members: Vec<usize>, num_candidates: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OutOfRange("committee contains a duplicate member".into()));
        }
        if let Some(&bad) = members.iter().find(|&&c| c >= num_candidates) {
            return Err(Error::OutOfRange(format!(
                "committee member {bad} outside 0..{num_candidates}"
            )));
        }
        Ok(Committee(members))
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "c{c}")?;
        }
        write!(f, "}}")
    }
}

/// Distance from voter `v` to the `lam`-th farthest member of `s`.
pub fn d_lambda(inst: &Instance, v: usize, s: &[usize], lam: usize) -> Result<f64> {
    if v >= inst.num_voters() {
        return Err(Error::OutOfRange(format!("voter {v} outside 0..{}", inst.num_voters())));
    }
    if lam == 0 || lam > s.len() {
        return Err(Error::OutOfRange(format!("rank {lam} outside [1, |S| = {}]", s.len())));
    }
    if let Some(&bad) = s.iter().find(|&&c| c >= inst.num_candidates()) {
        return Err(Error::OutOfRange(format!(
            "candidate {bad} outside 0..{}",
            inst.num_candidates()
        )));
    }
    let mut buf = Vec::with_capacity(s.len());
    Ok(rank_distance(inst, v, s, lam, &mut buf))
}

/// Unchecked core of [`d_lambda`]; `buf` is scratch space.
pub(crate) fn rank_distance(inst: &Instance, v: usize, s: &[usize], lam: usize, buf: &mut Vec<f64>) -> f64 {
    if lam == 1 {
        return s.iter().map(|&c| inst.vc(v, c)).fold(f64::NEG_INFINITY, f64::max);
    }
    if lam == s.len() {
        return s.iter().map(|&c| inst.vc(v, c)).fold(f64::INFINITY, f64::min);
    }
    buf.clear();
    buf.extend(s.iter().map(|&c| inst.vc(v, c)));
    let (_, nth, _) = buf.select_nth_unstable_by(lam - 1, |a, b| b.total_cmp(a));
    *nth
}

/// `min_v d_lambda(v, s, inst.lambda())`.
pub fn objective(inst: &Instance, s: &[usize]) -> Result<f64> {
    if s.len() < inst.lambda() {
        return Err(Error::OutOfRange(format!(
            "committee of size {} is smaller than lambda = {}",
            s.len(),
            inst.lambda()
        )));
    }
    if let Some(&bad) = s.iter().find(|&&c| c >= inst.num_candidates()) {
        return Err(Error::OutOfRange(format!(
            "candidate {bad} outside 0..{}",
            inst.num_candidates()
        )));
    }
    let mut buf = Vec::with_capacity(s.len());
    Ok(objective_unchecked(inst, s, &mut buf))
}

pub(crate) fn objective_unchecked(inst: &Instance, s: &[usize], buf: &mut Vec<f64>) -> f64 {
    let lam = inst.lambda();
    (0..inst.num_voters())
        .map(|v| rank_distance(inst, v, s, lam, buf))
        .fold(f64::INFINITY, f64::min)
}

/// Early-exit feasibility test: every voter's rank distance clears `t`.
pub(crate) fn feasible_unchecked(inst: &Instance, s: &[usize], t: f64, buf: &mut Vec<f64>) -> bool {
    let lam = inst.lambda();
    (0..inst.num_voters()).all(|v| approx_ge(rank_distance(inst, v, s, lam, buf), t))
}

/// `objective(s) >= t` under the shared tolerance.
pub fn is_feasible(inst: &Instance, s: &[usize], t: f64) -> Result<bool> {
    Ok(approx_ge(objective(inst, s)?, t))
}

/// Sorted, deduplicated voter-candidate distances. Every committee's
/// objective is one of these values.
pub fn critical_values(inst: &Instance) -> Vec<f64> {
    let mut vals: Vec<f64> = (0..inst.num_voters())
        .flat_map(|v| (0..inst.num_candidates()).map(move |c| (v, c)))
        .map(|(v, c)| inst.vc(v, c))
        .collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    vals
}

/// Extends `s` to exactly `k` members with the lowest-index candidates not
/// already present.
pub fn pad_committee(inst: &Instance, s: &[usize], k: usize) -> Result<Committee> {
    let n = inst.num_candidates();
    if k > n {
        return Err(Error::OutOfRange(format!(
            "cannot pad to k = {k} with only {n} candidates"
        )));
    }
    let base = Committee::new(s.to_vec(), n)?;
    if base.len() > k {
        return Err(Error::OutOfRange(format!(
            "committee of size {} already exceeds k = {k}",
            base.len()
        )));
    }
    let mut members = base.into_vec();
    let mut next = 0;
    while members.len() < k {
        if members.binary_search(&next).is_err() {
            members.push(next);
            members.sort_unstable();
        }
        next += 1;
    }
    Ok(Committee::from_sorted(members))
}
