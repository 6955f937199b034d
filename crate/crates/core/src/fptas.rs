//! (1 - eps) bicriteria scheme for arbitrary `lambda`.
//!
//! At threshold `t`: a large enough 2t-separated candidate set is already a
//! solution. Otherwise every candidate sits near one of the few separated
//! anchors, and a small representative set around each anchor (a fine net
//! plus a few marked neighbours per net point) contains a committee that
//! is within a factor `1 - eps` of any exact solution.

use log::{debug, warn};
use rayon::prelude::*;

use crate::approx::solve_lambda_eq_k;
use crate::combinatorics::{binomial, for_each_with_first};
use crate::error::{Error, Result};
use crate::metric::{approx_ge, critical_values, objective, pad_committee, Committee, Instance, MetricSpace};
use crate::result::{SolveResult, Status};

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FptasOptions {
    pub epsilon: f64,
    /// Largest number of k-subsets the enumeration step may visit.
    pub enum_cap: u128,
    /// Keep enumerating and return the best subset instead of the first hit.
    pub best_subset: bool,
}

impl Default for FptasOptions {
    fn default() -> Self {
        FptasOptions {
            epsilon: DEFAULT_EPSILON,
            enum_cap: DEFAULT_ENUM_CAP,
            best_subset: false,
        }
    }
}

impl FptasOptions {
    pub fn with_epsilon(epsilon: f64) -> Self {
        FptasOptions {
            epsilon,
            ..Default::default()
        }
    }
}

/// Candidates pairwise at least `separation` apart, maximal under that rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedSet {
    pub members: Vec<usize>,
    pub separation: f64,
}

impl SeparatedSet {
    /// Separation and maximality, checked exhaustively.
    pub fn check(&self, inst: &Instance) -> bool {
        let separated = self.members.iter().enumerate().all(|(i, &a)| {
            self.members[i + 1..]
                .iter()
                .all(|&b| approx_ge(inst.cc(a, b), self.separation))
        });
        let maximal = (0..inst.num_candidates()).all(|c| {
            self.members.contains(&c) || self.members.iter().any(|&m| !approx_ge(inst.cc(c, m), self.separation))
        });
        separated && maximal
    }
}

/// Representatives gathered around one anchor of the separated set.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorReps {
    pub anchor: usize,
    /// Greedy net of the anchor's 2t-ball, strictly more than eps*t/4 apart.
    pub net: Vec<usize>,
    /// Neighbours marked by the net points, in marking order.
    pub marked: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepresentativeSet {
    pub anchors: Vec<AnchorReps>,
    /// Separated set plus every anchor's net and marks, sorted.
    pub union: Vec<usize>,
    pub epsilon: f64,
    pub t: f64,
}

impl RepresentativeSet {
    /// Net separation, maximality inside each ball, and the marking bound.
    pub fn check(&self, inst: &Instance, lambda: usize) -> bool {
        let sep = self.epsilon * self.t / 4.0;
        self.anchors.iter().all(|a| {
            let ball: Vec<usize> = (0..inst.num_candidates())
                .filter(|&c| inst.cc(a.anchor, c) <= 2.0 * self.t)
                .collect();
            let separated = a
                .net
                .iter()
                .enumerate()
                .all(|(i, &x)| a.net[i + 1..].iter().all(|&y| inst.cc(x, y) > sep));
            let maximal = ball.iter().all(|&c| a.net.iter().any(|&q| inst.cc(c, q) <= sep));
            let inside = a.net.iter().all(|q| ball.contains(q));
            separated && maximal && inside && a.marked.len() <= a.net.len() * (lambda - 1)
        })
    }
}

/// Packing bound on a planar per-anchor net: disjoint eps*t/8 disks inside
/// a disk of radius 2t + eps*t/8.
pub fn planar_net_bound(epsilon: f64) -> f64 {
    (1.0 + 16.0 / epsilon).powi(2)
}

/// Index-order greedy: admit a candidate iff it is at least `sep` from
/// every admitted one.
pub fn greedy_separated(inst: &Instance, sep: f64) -> Result<SeparatedSet> {
    if sep.is_nan() || sep <= 0.0 {
        return Err(Error::OutOfRange(format!("separation must be positive, got {sep}")));
    }
    let mut members: Vec<usize> = Vec::new();
    for c in 0..inst.num_candidates() {
        if members.iter().all(|&m| approx_ge(inst.cc(c, m), sep)) {
            members.push(c);
        }
    }
    Ok(SeparatedSet {
        members,
        separation: sep,
    })
}

fn anchor_reps(inst: &Instance, anchor: usize, t: f64, eps: f64) -> AnchorReps {
    let nc = inst.num_candidates();
    let sep = eps * t / 4.0;
    let mut net: Vec<usize> = Vec::new();
    for c in (0..nc).filter(|&c| inst.cc(anchor, c) <= 2.0 * t) {
        if net.iter().all(|&q| inst.cc(c, q) > sep) {
            net.push(c);
        }
    }
    let extra = inst.lambda() - 1;
    let mut is_marked = vec![false; nc];
    let mut marked = Vec::new();
    if extra > 0 {
        for &q in &net {
            let mut pool: Vec<usize> = (0..nc).filter(|&c| !is_marked[c] && !net.contains(&c)).collect();
            pool.sort_by(|&a, &b| inst.cc(q, a).total_cmp(&inst.cc(q, b)).then(a.cmp(&b)));
            for &c in pool.iter().take(extra) {
                is_marked[c] = true;
                marked.push(c);
            }
        }
    }
    AnchorReps { anchor, net, marked }
}

/// Which step of the scheme settled a decision.
#[derive(Debug, Clone, PartialEq)]
pub enum Branch {
    /// `t <= 0`: any committee works.
    Trivial,
    /// Delegated to the exact `lambda = k` solver.
    LambdaEqK,
    /// `lambda + 1` separated candidates, exactly feasible at `t`.
    Separated,
    /// Representative set no larger than `k`, padded.
    SmallUnion,
    /// k-subsets of the representative set were enumerated.
    Enumerated { subsets_examined: u128 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FptasOutcome {
    pub committee: Option<Committee>,
    pub branch: Branch,
    pub separated: Option<SeparatedSet>,
    pub representatives: Option<RepresentativeSet>,
    /// Set for non-Euclidean inputs, where no size bound is certified.
    pub best_effort: bool,
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

fn enumerate(inst: &Instance, pool: &[usize], target: f64, opts: &FptasOptions) -> Result<(Option<Vec<usize>>, u128)> {
    let (n, k) = (pool.len(), inst.k());
    let subsets = binomial(n, k);
    if subsets > opts.enum_cap {
        return Err(Error::EnumerationCapExceeded {
            set_size: n,
            k,
            subsets,
            cap: opts.enum_cap,
        });
    }
    let evaluate = |first: usize| {
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut count = 0u128;
        let mut members = Vec::with_capacity(k);
        for_each_with_first(n, k, first, |idx| {
            count += 1;
            members.clear();
            members.extend(idx.iter().map(|&i| pool[i]));
            let val = objective(inst, &members).unwrap_or(f64::NEG_INFINITY);
            if approx_ge(val, target) && best.as_ref().is_none_or(|(b, _)| val > *b) {
                best = Some((val, members.clone()));
                return opts.best_subset;
            }
            true
        });
        (best, count)
    };
    if opts.best_subset {
        let parts: Vec<_> = (0..=n - k).into_par_iter().map(evaluate).collect();
        let mut examined = 0;
        let mut best: Option<(f64, Vec<usize>)> = None;
        for (hit, count) in parts {
            examined += count;
            if let Some((val, s)) = hit {
                if best.as_ref().is_none_or(|(b, _)| val > *b) {
                    best = Some((val, s));
                }
            }
        }
        Ok((best.map(|(_, s)| s), examined))
    } else {
        // the pool is sorted, so the first hit in lexicographic index order
        // is the lexicographically first committee
        let hit = (0..=n - k)
            .into_par_iter()
            .find_map_first(|first| evaluate(first).0.map(|(_, s)| s));
        Ok((hit, subsets))
    }
}

/// Full decision at `t` with the intermediate sets exposed.
pub fn fptas_decide_detailed(inst: &Instance, t: f64, opts: &FptasOptions) -> Result<FptasOutcome> {
    check_epsilon(opts.epsilon)?;
    let (k, lambda) = (inst.k(), inst.lambda());
    let best_effort = !matches!(inst.space(), MetricSpace::Euclidean { .. });
    let outcome = |committee, branch, separated, representatives| FptasOutcome {
        committee,
        branch,
        separated,
        representatives,
        best_effort,
    };
    if t <= 0.0 {
        return Ok(outcome(Some(pad_committee(inst, &[], k)?), Branch::Trivial, None, None));
    }
    if lambda == k {
        let r = solve_lambda_eq_k(inst, Some(t))?;
        return Ok(outcome(r.committee, Branch::LambdaEqK, None, None));
    }
    if best_effort {
        debug!(
            "fpt_as: {} metric, best-effort beyond doubling guarantee",
            inst.space().kind()
        );
    }

    let separated = greedy_separated(inst, 2.0 * t)?;
    if separated.members.len() > lambda {
        let committee = pad_committee(inst, &separated.members[..=lambda], k)?;
        if !approx_ge(objective(inst, committee.members())?, t) {
            return Err(Error::internal(
                "fpt_as",
                format!("separated committee {committee} is not feasible at t = {t}"),
            ));
        }
        return Ok(outcome(Some(committee), Branch::Separated, Some(separated), None));
    }

    let eps = opts.epsilon;
    let anchors: Vec<AnchorReps> = separated
        .members
        .iter()
        .map(|&a| anchor_reps(inst, a, t, eps))
        .collect();
    if inst.space().dim() == Some(2) {
        let bound = planar_net_bound(eps);
        if let Some(a) = anchors.iter().find(|a| a.net.len() as f64 > bound) {
            return Err(Error::internal(
                "fpt_as",
                format!(
                    "net around anchor {} has {} points, above the planar bound {bound}",
                    a.anchor,
                    a.net.len()
                ),
            ));
        }
    }
    let mut union: Vec<usize> = separated.members.clone();
    for a in &anchors {
        union.extend(&a.net);
        union.extend(&a.marked);
    }
    union.sort_unstable();
    union.dedup();
    let target = (1.0 - eps) * t;
    let reps = RepresentativeSet {
        anchors,
        union,
        epsilon: eps,
        t,
    };

    if reps.union.len() <= k {
        let committee = pad_committee(inst, &reps.union, k)?;
        let ok = approx_ge(objective(inst, committee.members())?, target);
        return Ok(outcome(
            ok.then_some(committee),
            Branch::SmallUnion,
            Some(separated),
            Some(reps),
        ));
    }
    let (hit, examined) = enumerate(inst, &reps.union, target, opts)?;
    debug!(
        "fpt_as: t = {t}, |S| = {}, {examined} subsets, hit = {}",
        reps.union.len(),
        hit.is_some()
    );
    Ok(outcome(
        hit.map(Committee::from_sorted),
        Branch::Enumerated {
            subsets_examined: examined,
        },
        Some(separated),
        Some(reps),
    ))
}

/// A committee with objective at least `(1 - eps) t`, or `None`, in which
/// case no committee reaches `t`.
pub fn fptas_decide(inst: &Instance, t: f64, opts: &FptasOptions) -> Result<Option<Committee>> {
    Ok(fptas_decide_detailed(inst, t, opts)?.committee)
}

/// Scans the critical values from the top and returns the first decision
/// that succeeds; its value is at least `(1 - eps)` times the optimum.
pub fn fptas_optimize(inst: &Instance, opts: &FptasOptions) -> Result<SolveResult> {
    check_epsilon(opts.epsilon)?;
    if inst.lambda() == inst.k() {
        let mut r = solve_lambda_eq_k(inst, None)?;
        r.algorithm = "fptas".into();
        return Ok(r);
    }
    for &t in critical_values(inst).iter().rev() {
        if let Some(committee) = fptas_decide(inst, t, opts)? {
            return SolveResult::with_committee(inst, Status::Approx, committee, Some(1.0 - opts.epsilon), "fptas");
        }
    }
    // the smallest critical value is always met, so this is unreachable
    // unless the objective disagrees with the critical grid
    warn!("fpt_as: no critical value accepted");
    Err(Error::internal("fpt_as", "no critical value accepted"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(voters: &[f64], cands: &[f64], k: usize, lambda: usize) -> Instance {
        let pts: Vec<Vec<f64>> = voters.iter().chain(cands).map(|&x| vec![x, 0.0]).collect();
        let nv = voters.len();
        Instance::new(
            MetricSpace::euclidean(2, pts).unwrap(),
            (0..nv).collect(),
            (nv..nv + cands.len()).collect(),
            k,
            lambda,
            None,
        )
        .unwrap()
    }

    #[test]
    fn separated_line() {
        let inst = line(&[0.0], &[0.0, 10.0, 20.0], 2, 1);
        let s = greedy_separated(&inst, 10.0).unwrap();
        assert_eq!(s.members, vec![0, 1, 2]);
        assert!(s.check(&inst));
        let s = greedy_separated(&inst, 100.0).unwrap();
        assert_eq!(s.members, vec![0]);
        assert!(s.check(&inst));
    }

    #[test]
    fn separated_branch_is_exact() {
        let inst = line(&[5.0], &[0.0, 10.0, 20.0], 3, 2);
        let out = fptas_decide_detailed(&inst, 5.0, &FptasOptions::with_epsilon(0.5)).unwrap();
        assert_eq!(out.branch, Branch::Separated);
        let c = out.committee.unwrap();
        assert!(objective(&inst, c.members()).unwrap() >= 5.0);
    }

    #[test]
    fn lambda_eq_k_delegates() {
        let inst = line(&[0.0], &[1.0, 2.0, 3.0], 2, 2);
        let out = fptas_decide_detailed(&inst, 2.0, &FptasOptions::default()).unwrap();
        assert_eq!(out.branch, Branch::LambdaEqK);
        assert_eq!(out.committee.unwrap().members(), &[1, 2]);
        let r = fptas_optimize(&inst, &FptasOptions::default()).unwrap();
        assert_eq!(r.value, Some(2.0));
    }

    #[test]
    fn bad_epsilon() {
        let inst = line(&[0.0], &[1.0, 2.0], 2, 1);
        for eps in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(matches!(
                fptas_decide(&inst, 1.0, &FptasOptions::with_epsilon(eps)),
                Err(Error::InvalidEpsilon(_))
            ));
        }
    }

    #[test]
    fn enumeration_cap() {
        let cands: Vec<f64> = (0..12).map(|i| i as f64 * 0.01).collect();
        let inst = line(&[0.0], &cands, 4, 2);
        let opts = FptasOptions {
            epsilon: 0.01,
            enum_cap: 3,
            best_subset: false,
        };
        assert!(matches!(
            fptas_decide(&inst, 0.05, &opts),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn representatives_are_well_formed() {
        let cands: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        let inst = line(&[1.0, 2.0], &cands, 4, 2);
        let out = fptas_decide_detailed(&inst, 1.0, &FptasOptions::with_epsilon(0.5)).unwrap();
        let reps = out.representatives.unwrap();
        assert!(reps.check(&inst, 2));
        assert!(out.separated.unwrap().check(&inst));
    }

    #[test]
    fn optimize_small() {
        let inst = line(&[0.0, 1.0], &[0.0, 0.5, 3.0, 4.0], 3, 2);
        let r = fptas_optimize(&inst, &FptasOptions::with_epsilon(0.25)).unwrap();
        assert!(r.value.unwrap() >= 0.75 * 2.0);
    }
}
