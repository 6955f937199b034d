use crate::error::{Error, Result};
use crate::metric::space::MetricSpace;

/// A point of the instance, addressed through its role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointRef {
    Voter(usize),
    Candidate(usize),
}

/// Voters and candidates embedded in a metric space, together with the
/// committee size `k`, the rank `lambda` and an optional decision threshold.
///
/// Voter and candidate indices are separate spaces even when two of them
/// refer to the same point. Instances are immutable once built; the
/// voter-candidate and candidate-candidate distances are tabulated up front.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    space: MetricSpace,
    voters: Vec<usize>,
    candidates: Vec<usize>,
    k: usize,
    lambda: usize,
    t: Option<f64>,
    vc: Vec<f64>,
    cc: Vec<f64>,
}

impl Instance {
    pub fn new(
        space: MetricSpace,
        voters: Vec<usize>,
        candidates: Vec<usize>,
        k: usize,
        lambda: usize,
        t: Option<f64>,
    ) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::invalid("at least one voter is required"));
        }
        if candidates.is_empty() {
            return Err(Error::invalid("at least one candidate is required"));
        }
        let n = space.len();
        if let Some(&bad) = voters.iter().find(|&&p| p >= n) {
            return Err(Error::invalid(format!("voter references point {bad} outside 0..{n}")));
        }
        if let Some(&bad) = candidates.iter().find(|&&p| p >= n) {
            return Err(Error::invalid(format!(
                "candidate references point {bad} outside 0..{n}"
            )));
        }
        if k == 0 {
            return Err(Error::invalid("k must be positive"));
        }
        if k > candidates.len() {
            return Err(Error::invalid(format!(
                "k = {k} exceeds the number of candidates ({})",
                candidates.len()
            )));
        }
        if lambda == 0 || lambda > k {
            return Err(Error::invalid(format!("lambda = {lambda} must lie in [1, k = {k}]")));
        }
        if let Some(t) = t {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::invalid(format!("t = {t} must be positive and finite")));
            }
        }

        let nc = candidates.len();
        let mut vc = Vec::with_capacity(voters.len() * nc);
        for &v in &voters {
            for &c in &candidates {
                vc.push(space.dist(v, c));
            }
        }
        let mut cc = Vec::with_capacity(nc * nc);
        for &a in &candidates {
            for &b in &candidates {
                cc.push(space.dist(a, b));
            }
        }
        if vc.iter().chain(&cc).any(|d| !d.is_finite()) {
            return Err(Error::invalid(
                "some voter or candidate is unreachable from a candidate (disconnected graph)",
            ));
        }

        Ok(Instance {
            space,
            voters,
            candidates,
            k,
            lambda,
            t,
            vc,
            cc,
        })
    }

    /// Same points, different committee parameters.
    pub fn with_params(&self, k: usize, lambda: usize, t: Option<f64>) -> Result<Self> {
        Instance::new(
            self.space.clone(),
            self.voters.clone(),
            self.candidates.clone(),
            k,
            lambda,
            t,
        )
    }

    pub fn with_threshold(&self, t: Option<f64>) -> Result<Self> {
        self.with_params(self.k, self.lambda, t)
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn voter_points(&self) -> &[usize] {
        &self.voters
    }

    pub fn candidate_points(&self) -> &[usize] {
        &self.candidates
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn threshold(&self) -> Option<f64> {
        self.t
    }

    /// True for Euclidean instances in the plane.
    pub fn is_planar(&self) -> bool {
        self.space.dim() == Some(2)
    }

    /// Distance from voter `v` to candidate `c` (tabulated, unchecked).
    #[inline]
    pub fn vc(&self, v: usize, c: usize) -> f64 {
        self.vc[v * self.candidates.len() + c]
    }

    /// Distance between candidates `a` and `b` (tabulated, unchecked).
    #[inline]
    pub fn cc(&self, a: usize, b: usize) -> f64 {
        self.cc[a * self.candidates.len() + b]
    }

    pub fn point_of(&self, r: PointRef) -> Result<usize> {
        match r {
            PointRef::Voter(i) => self
                .voters
                .get(i)
                .copied()
                .ok_or_else(|| Error::OutOfRange(format!("voter {i} outside 0..{}", self.voters.len()))),
            PointRef::Candidate(i) => self
                .candidates
                .get(i)
                .copied()
                .ok_or_else(|| Error::OutOfRange(format!("candidate {i} outside 0..{}", self.candidates.len()))),
        }
    }

    pub fn dist(&self, a: PointRef, b: PointRef) -> Result<f64> {
        Ok(self.space.dist(self.point_of(a)?, self.point_of(b)?))
    }

    /// Planar coordinates of a voter or candidate.
    pub fn xy(&self, r: PointRef) -> Option<[f64; 2]> {
        if !self.is_planar() {
            return None;
        }
        let p = self.point_of(r).ok()?;
        self.space.coords(p).map(|c| [c[0], c[1]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn graph_instance_distance() {
        let space = MetricSpace::graph(2, vec![(0, 1, 2.0)]).unwrap();
        let inst = Instance::new(space, vec![0], vec![1], 1, 1, None).unwrap();
        assert_eq!(inst.dist(PointRef::Voter(0), PointRef::Candidate(0)).unwrap(), 2.0);
        assert_eq!(inst.vc(0, 0), 2.0);
    }

    #[test]
    fn identity_distance() {
        let inst = line(&[0.0], &[3.0, 7.0], 1, 1);
        for c in 0..2 {
            let r = PointRef::Candidate(c);
            assert_eq!(inst.dist(r, r).unwrap(), 0.0);
        }
    }

    #[test]
    fn out_of_range_reference() {
        let inst = line(&[0.0], &[3.0], 1, 1);
        assert!(matches!(
            inst.dist(PointRef::Voter(3), PointRef::Candidate(0)),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        let inst = line(&[0.0], &[3.0, 4.0], 2, 1);
        assert!(inst.with_params(3, 1, None).is_err(), "k > |C|");
        assert!(inst.with_params(1, 2, None).is_err(), "lambda > k");
        assert!(inst.with_params(1, 0, None).is_err());
        assert!(inst.with_params(1, 1, Some(0.0)).is_err());
        assert!(inst.with_params(1, 1, Some(f64::INFINITY)).is_err());
    }

    #[test]
    fn disconnected_graph_rejected() {
        let space = MetricSpace::graph(3, vec![(0, 1, 1.0)]).unwrap();
        assert!(Instance::new(space, vec![2], vec![0], 1, 1, None).is_err());
    }
}
