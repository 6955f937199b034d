//! Exact solver for lambda = 1 in the Euclidean plane.
//!
//! Decision at threshold `t`: voter `v` is unsatisfied by candidate `c`
//! iff `v` lies strictly inside the radius-`t` disk around `c`, so a
//! committee works iff the common intersection of its disks holds no voter.
//! Small committees are settled directly; everything else goes through the
//! arc dynamic program in [`dp`].

mod dp;
mod geometry;

use log::{debug, warn};

pub use dp::{Arc, DpKey, IntersectionPoint};
pub use geometry::{circle_pair_points, region_contains_voter, right_turn, Pt, GEOM_EPS};

use crate::error::{Error, Result};
use crate::metric::{approx_ge, critical_values, objective, pad_committee, Committee, Instance, PointRef};
use dp::Layout;
use geometry::crossing_points;

/// Perturbation retries after a degenerate layout.
pub const MAX_PERTURBATION_RETRIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreprocessOutcome {
    SolvedBySingleton(usize),
    SolvedByDisjointPair((usize, usize)),
    SolvedByEmptyTriple((usize, usize, usize)),
    Proceed,
}

impl PreprocessOutcome {
    pub fn members(&self) -> Vec<usize> {
        match *self {
            PreprocessOutcome::SolvedBySingleton(a) => vec![a],
            PreprocessOutcome::SolvedByDisjointPair((a, b)) => vec![a, b],
            PreprocessOutcome::SolvedByEmptyTriple((a, b, c)) => vec![a, b, c],
            PreprocessOutcome::Proceed => Vec::new(),
        }
    }
}

/// How a planar decision was reached.
#[derive(Debug, Clone, PartialEq)]
pub enum Route {
    /// `t <= 0`: every committee qualifies.
    Trivial,
    Preprocess(PreprocessOutcome),
    /// Boundary found by the arc search; arcs in clockwise order.
    Boundary(Vec<Arc>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCertificate {
    /// Padded to exactly k members.
    pub committee: Committee,
    /// The members the decision actually needed, before padding.
    pub core: Vec<usize>,
    pub route: Route,
    /// 0 when the unperturbed layout was used.
    pub perturbation_attempt: usize,
}

fn check_supported(inst: &Instance) -> Result<()> {
    if inst.lambda() != 1 {
        return Err(Error::Unsupported {
            module: "planar_exact",
            message: format!("lambda = {} (only lambda = 1 is solved exactly)", inst.lambda()),
        });
    }
    if !inst.is_planar() {
        return Err(Error::Unsupported {
            module: "planar_exact",
            message: format!("needs a 2-dimensional Euclidean space, got {}", inst.space().kind()),
        });
    }
    Ok(())
}

fn unit_xy(inst: &Instance, c: usize, t: f64) -> Pt {
    Pt::from(inst.xy(PointRef::Candidate(c)).expect("planar instance")) * (1.0 / t)
}

/// Whether the open unit disks around three centers have empty common
/// intersection. The closed intersection, when non-empty, always contains
/// a crossing point of two of the circles that lies in the third disk.
fn triple_is_empty(c: [Pt; 3]) -> bool {
    for (a, b, o) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let d = c[a].dist(c[b]);
        if d >= 2.0 {
            return true;
        }
        if d <= 1e-12 {
            // duplicate circle: intersection is a lens or a disk
            return c[o].dist(c[a]) >= 2.0;
        }
    }
    for (a, b, o) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        for q in crossing_points(c[a], c[b], 1.0) {
            if q.dist(c[o]) <= 1.0 + GEOM_EPS {
                return false;
            }
        }
    }
    true
}

/// Settles committees of at most three members: a candidate clear of every
/// voter, a pair at least `2t` apart, or a triple whose disks share no point.
pub fn preprocess_small(inst: &Instance, t: f64) -> Result<PreprocessOutcome> {
    check_supported(inst)?;
    let (nc, nv, k) = (inst.num_candidates(), inst.num_voters(), inst.k());
    for c in 0..nc {
        if (0..nv).all(|v| approx_ge(inst.vc(v, c), t)) {
            return Ok(PreprocessOutcome::SolvedBySingleton(c));
        }
    }
    if k >= 2 {
        for a in 0..nc {
            for b in (a + 1)..nc {
                if approx_ge(inst.cc(a, b), 2.0 * t) {
                    return Ok(PreprocessOutcome::SolvedByDisjointPair((a, b)));
                }
            }
        }
    }
    if k >= 3 {
        let unit: Vec<Pt> = (0..nc).map(|c| unit_xy(inst, c, t)).collect();
        for a in 0..nc {
            for b in (a + 1)..nc {
                for c in (b + 1)..nc {
                    if triple_is_empty([unit[a], unit[b], unit[c]]) {
                        return Ok(PreprocessOutcome::SolvedByEmptyTriple((a, b, c)));
                    }
                }
            }
        }
    }
    Ok(PreprocessOutcome::Proceed)
}

fn check_boundary(arcs: &[Arc]) -> Result<()> {
    let mut centers: Vec<usize> = arcs.iter().map(|a| a.center).collect();
    centers.sort_unstable();
    if centers.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::internal("planar_exact", "recovered boundary repeats a circle"));
    }
    if let Some(a) = arcs.iter().find(|a| !(a.span > 0.0 && a.span < std::f64::consts::PI)) {
        return Err(Error::internal(
            "planar_exact",
            format!("recovered arc on circle {} is not minor", a.center),
        ));
    }
    Ok(())
}

/// Full planar decision with the certificate of how it was reached.
pub fn planar_solve(inst: &Instance, t: f64) -> Result<Option<PlanarCertificate>> {
    check_supported(inst)?;
    let k = inst.k();
    if t <= 0.0 {
        return Ok(Some(PlanarCertificate {
            committee: pad_committee(inst, &[], k)?,
            core: Vec::new(),
            route: Route::Trivial,
            perturbation_attempt: 0,
        }));
    }

    let pre = preprocess_small(inst, t)?;
    if pre != PreprocessOutcome::Proceed {
        let core = pre.members();
        if !approx_ge(objective(inst, &core)?, t) {
            return Err(Error::internal(
                "planar_exact",
                format!("preprocessing result {pre:?} fails recheck"),
            ));
        }
        return Ok(Some(PlanarCertificate {
            committee: pad_committee(inst, &core, k)?,
            core,
            route: Route::Preprocess(pre),
            perturbation_attempt: 0,
        }));
    }
    if k == 1 {
        return Ok(None);
    }

    for attempt in 0..=MAX_PERTURBATION_RETRIES {
        let layout = match Layout::build(inst, t, attempt) {
            Ok(l) => l,
            Err(Error::Degenerate(msg)) => {
                warn!("planar_exact: degenerate layout at t = {t} (attempt {attempt}): {msg}");
                continue;
            }
            Err(e) => return Err(e),
        };
        debug!(
            "planar_exact: t = {t}, attempt {attempt}, {} crossing points",
            layout.num_points()
        );
        let Some(arcs) = layout.search(k)? else {
            return Ok(None);
        };
        check_boundary(&arcs)?;
        let mut core: Vec<usize> = arcs.iter().map(|a| a.center).collect();
        core.sort_unstable();
        if approx_ge(objective(inst, &core)?, t) {
            return Ok(Some(PlanarCertificate {
                committee: pad_committee(inst, &core, k)?,
                core,
                route: Route::Boundary(arcs),
                perturbation_attempt: attempt,
            }));
        }
        if attempt == 0 {
            return Err(Error::internal(
                "planar_exact",
                format!("recovered region for {core:?} contains a voter at t = {t}"),
            ));
        }
        warn!("planar_exact: perturbed witness {core:?} fails recheck, retrying");
    }
    Err(Error::Degenerate(format!(
        "still degenerate after {MAX_PERTURBATION_RETRIES} perturbation retries at t = {t}"
    )))
}

/// A k-committee with objective at least `t`, if one exists.
pub fn planar_decide(inst: &Instance, t: f64) -> Result<Option<Committee>> {
    Ok(planar_solve(inst, t)?.map(|c| c.committee))
}

/// Largest critical value at which [`planar_decide`] succeeds, with witness.
pub fn planar_optimize(inst: &Instance) -> Result<(f64, Committee)> {
    check_supported(inst)?;
    let crit = critical_values(inst);
    // the smallest critical value is met by every committee
    let mut best = (crit[0], pad_committee(inst, &[], inst.k())?);
    let (mut lo, mut hi) = (1usize, crit.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match planar_decide(inst, crit[mid])? {
            Some(c) => {
                best = (crit[mid], c);
                lo = mid + 1;
            }
            None => hi = mid,
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricSpace;

    fn plane(voters: &[[f64; 2]], cands: &[[f64; 2]], k: usize) -> Instance {
        let pts: Vec<Vec<f64>> = voters.iter().chain(cands).map(|p| p.to_vec()).collect();
        let nv = voters.len();
        Instance::new(
            MetricSpace::euclidean(2, pts).unwrap(),
            (0..nv).collect(),
            (nv..nv + cands.len()).collect(),
            k,
            1,
            None,
        )
        .unwrap()
    }

    #[test]
    fn disjoint_pair_preprocessing() {
        let inst = plane(&[[0.0, 0.0], [3.0, 0.0]], &[[0.0, 0.0], [3.0, 0.0]], 2);
        assert_eq!(
            preprocess_small(&inst, 1.0).unwrap(),
            PreprocessOutcome::SolvedByDisjointPair((0, 1))
        );
        let c = planar_decide(&inst, 1.0).unwrap().unwrap();
        assert_eq!(c.members(), &[0, 1]);
    }

    #[test]
    fn singleton_preprocessing() {
        let inst = plane(&[[0.0, 0.0]], &[[0.5, 0.0], [2.0, 0.0]], 1);
        assert_eq!(
            preprocess_small(&inst, 1.5).unwrap(),
            PreprocessOutcome::SolvedBySingleton(1)
        );
    }

    #[test]
    fn overlapping_triple_proceeds() {
        let inst = plane(&[[0.0, 0.0]], &[[0.2, 0.0], [-0.1, 0.17], [-0.1, -0.17]], 3);
        assert_eq!(preprocess_small(&inst, 1.0).unwrap(), PreprocessOutcome::Proceed);
        assert!(planar_decide(&inst, 1.0).unwrap().is_none());
    }

    #[test]
    fn empty_triple_detected() {
        // pairwise 1.9 apart: each pair overlaps but no common point
        let r = 1.9 / 3f64.sqrt();
        let cands: Vec<[f64; 2]> = (0..3)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 3.0;
                [r * a.cos(), r * a.sin()]
            })
            .collect();
        // a voter on every candidate rules out singletons
        let inst = plane(&cands, &cands, 3);
        assert!(matches!(
            preprocess_small(&inst, 1.0).unwrap(),
            PreprocessOutcome::SolvedByEmptyTriple(_)
        ));
    }

    #[test]
    fn voter_in_every_disk_is_infeasible() {
        let cands = [[0.1, 0.0], [-0.1, 0.1], [0.0, -0.2], [0.2, 0.2]];
        let inst = plane(&[[0.0, 0.0]], &cands, 4);
        assert!(planar_decide(&inst, 1.0).unwrap().is_none());
    }

    #[test]
    fn lens_without_voters_is_found() {
        // two overlapping disks; voters sit outside their lens
        let inst = plane(
            &[[0.5, 1.2], [0.5, -1.2], [-0.3, 0.0], [1.3, 0.0]],
            &[[0.0, 0.0], [1.0, 0.0]],
            2,
        );
        let cert = planar_solve(&inst, 1.0).unwrap().unwrap();
        assert_eq!(cert.committee.members(), &[0, 1]);
        assert!(matches!(cert.route, Route::Boundary(ref arcs) if arcs.len() == 2));
    }

    #[test]
    fn single_pair_optimum() {
        let inst = plane(&[[0.0, 0.0]], &[[3.0, 4.0]], 1);
        let (t, c) = planar_optimize(&inst).unwrap();
        assert_eq!(t, 5.0);
        assert_eq!(c.members(), &[0]);
    }

    #[test]
    fn rejects_unsupported() {
        let inst = plane(&[[0.0, 0.0]], &[[1.0, 0.0], [2.0, 0.0]], 2)
            .with_params(2, 2, None)
            .unwrap();
        assert!(matches!(planar_decide(&inst, 1.0), Err(Error::Unsupported { .. })));
    }
}
