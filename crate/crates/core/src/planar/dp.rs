//! Circular-arc dynamic program over boundaries of disk intersections.
//!
//! Coordinates are translated and divided by `t`, so every disk has unit
//! radius. A committee `S` is feasible iff no voter lies strictly inside
//! the common intersection `I(S)`. The boundary of a minimal `I(S)` is a
//! closed clockwise sequence of minor arcs, one per member, meeting at
//! circle crossing points with convex corners. Fixing the first corner `x`
//! and the first arc's circle `c1`, the region decomposes into a fan of
//! pieces around `x`: piece j is the triangle `(x, p_{j-1}, p_j)` plus the
//! cap of arc j. The search grows the boundary one arc at a time,
//! rejecting any piece that contains a voter, and closes it back at `x`.

use std::collections::HashMap;
use std::f64::consts::PI;

use log::debug;
use rayon::prelude::*;

use super::geometry::{clockwise_span, crossing_points, in_fan_piece, orient, turn_value, Pt, GEOM_EPS};
use crate::error::{Error, Result};
use crate::metric::{approx_ge, Instance, PointRef};

/// BFS back-pointers: each reached (point, circle) pair maps to its parent
/// pair and the DP state of the step that reached it.
type Predecessors = HashMap<(usize, usize), (Option<(usize, usize)>, DpKey)>;

/// Crossing point of two candidate circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionPoint {
    /// Unit-radius coordinates.
    pub coords: Pt,
    /// Indices into the deduplicated circle list.
    pub circles: (usize, usize),
    angles: (f64, f64),
}

impl IntersectionPoint {
    fn other(&self, c: usize) -> Option<usize> {
        if self.circles.0 == c {
            Some(self.circles.1)
        } else if self.circles.1 == c {
            Some(self.circles.0)
        } else {
            None
        }
    }

    fn angle_on(&self, c: usize) -> f64 {
        if self.circles.0 == c {
            self.angles.0
        } else {
            self.angles.1
        }
    }
}

/// A minor arc of a candidate circle, traversed clockwise about its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    /// Original candidate index of the circle's center.
    pub center: usize,
    pub span: f64,
}

/// One table entry: a boundary chain that starts at `x` on circle `c1`,
/// uses `i` arcs and currently ends with the arc on `c` from `y` to `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DpKey {
    pub x: usize,
    pub y: usize,
    pub p: usize,
    pub c1: usize,
    pub c: usize,
    pub i: usize,
}

/// Unit-radius picture of one decision problem.
pub(crate) struct Layout {
    centers: Vec<Pt>,
    /// Original candidate index of each circle (lowest index among co-located).
    reps: Vec<usize>,
    voters: Vec<Pt>,
    /// `inside[c * nv + v]`: voter strictly inside circle `c`.
    inside: Vec<bool>,
    points: Vec<IntersectionPoint>,
    incident: Vec<Vec<usize>>,
}

const MIN_SPAN: f64 = 1e-9;

fn perturbation(index: usize, attempt: usize) -> Pt {
    // splitmix64 finalizer over (index, attempt)
    let mut z = (index as u64)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(attempt as u64)
        .wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    let theta = (z >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU;
    Pt::new(theta.cos(), theta.sin())
}

/// Perturbation magnitude relative to `t`.
pub(crate) const PERTURB_SCALE: f64 = 1e-7;

impl Layout {
    pub(crate) fn build(inst: &Instance, t: f64, attempt: usize) -> Result<Self> {
        let nc = inst.num_candidates();
        let nv = inst.num_voters();
        let raw: Vec<Pt> = (0..nc)
            .map(|c| Pt::from(inst.xy(PointRef::Candidate(c)).expect("planar instance")))
            .collect();
        let origin = raw.iter().fold(Pt::new(0.0, 0.0), |acc, &p| acc + p) * (1.0 / nc as f64);
        let scale = 1.0 / t;

        let mut centers = Vec::new();
        let mut reps = Vec::new();
        for (c, &p) in raw.iter().enumerate() {
            let q = (p - origin) * scale;
            if centers.iter().any(|&e: &Pt| e.dist(q) <= 1e-12) {
                continue;
            }
            centers.push(q);
            reps.push(c);
        }
        if attempt > 0 {
            for (i, q) in centers.iter_mut().enumerate() {
                *q = *q + perturbation(reps[i], attempt) * PERTURB_SCALE;
            }
        }

        let voters: Vec<Pt> = (0..nv)
            .map(|v| (Pt::from(inst.xy(PointRef::Voter(v)).expect("planar instance")) - origin) * scale)
            .collect();
        let mut inside = Vec::with_capacity(centers.len() * nv);
        for &rep in &reps {
            for v in 0..nv {
                // always the original metric: a perturbation must not push
                // a voter sitting on a circle to its inside
                inside.push(!approx_ge(inst.vc(v, rep), t));
            }
        }

        let n = centers.len();
        let mut points = Vec::new();
        let mut incident = vec![Vec::new(); n];
        for a in 0..n {
            for b in (a + 1)..n {
                let d = centers[a].dist(centers[b]);
                if d >= 2.0 * (1.0 - GEOM_EPS) {
                    continue;
                }
                for q in crossing_points(centers[a], centers[b], 1.0) {
                    let id = points.len();
                    points.push(IntersectionPoint {
                        coords: q,
                        circles: (a, b),
                        angles: ((q - centers[a]).angle(), (q - centers[b]).angle()),
                    });
                    incident[a].push(id);
                    incident[b].push(id);
                }
            }
        }

        for (id, node) in points.iter().enumerate() {
            for (c, &ctr) in centers.iter().enumerate() {
                if c == node.circles.0 || c == node.circles.1 {
                    continue;
                }
                if (node.coords.dist(ctr) - 1.0).abs() < GEOM_EPS {
                    return Err(Error::Degenerate(format!(
                        "three circles meet at crossing point {id} (circles {}, {}, {})",
                        reps[node.circles.0], reps[node.circles.1], reps[c]
                    )));
                }
            }
        }

        Ok(Layout {
            centers,
            reps,
            voters,
            inside,
            points,
            incident,
        })
    }

    pub(crate) fn num_points(&self) -> usize {
        self.points.len()
    }

    fn minor_span(&self, from: usize, to: usize, c: usize) -> Option<f64> {
        let span = clockwise_span(self.points[from].angle_on(c), self.points[to].angle_on(c));
        (span > MIN_SPAN && span < PI - MIN_SPAN).then_some(span)
    }

    fn piece_has_voter(&self, apex: Option<Pt>, y: usize, p: usize, c: usize, guard: usize) -> Result<bool> {
        let nv = self.voters.len();
        let (py, pp) = (self.points[y].coords, self.points[p].coords);
        for v in 0..nv {
            if self.inside[c * nv + v] && self.inside[guard * nv + v] && in_fan_piece(apex, py, pp, self.voters[v])? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Shortest voter-free boundary with first corner `x` and first circle
    /// `c1`, using at most `k` arcs. Arcs are returned in traversal order.
    fn search_from(&self, x: usize, c1: usize, k: usize) -> Result<Option<Vec<Arc>>> {
        let xp = self.points[x].coords;
        let c1p = self.centers[c1];
        let mut pred: Predecessors = HashMap::new();
        let mut layer = Vec::new();

        // base: single arcs leaving x clockwise on c1, cap only
        for &z in &self.incident[c1] {
            if z == x || self.minor_span(x, z, c1).is_none() {
                continue;
            }
            if !self.piece_has_voter(None, x, z, c1, c1)? {
                pred.insert(
                    (z, c1),
                    (
                        None,
                        DpKey {
                            x,
                            y: x,
                            p: z,
                            c1,
                            c: c1,
                            i: 1,
                        },
                    ),
                );
                layer.push((z, c1));
            }
        }

        for i in 1..k {
            let mut closings: Vec<(usize, usize, usize)> = Vec::new();
            let mut next = Vec::new();
            for &(p, c) in &layer {
                let node = &self.points[p];
                let Some(cn) = node.other(c) else { continue };
                if cn == c1 {
                    continue;
                }
                if turn_value(node.coords, self.centers[c], self.centers[cn]) <= GEOM_EPS {
                    continue;
                }
                for &z in &self.incident[cn] {
                    if z == p || self.minor_span(p, z, cn).is_none() {
                        continue;
                    }
                    if z == x {
                        if turn_value(xp, self.centers[cn], c1p) > GEOM_EPS
                            && !self.piece_has_voter(None, p, x, cn, c1)?
                        {
                            closings.push((p, c, cn));
                        }
                        continue;
                    }
                    if i + 1 >= k || pred.contains_key(&(z, cn)) {
                        continue;
                    }
                    let zp = self.points[z].coords;
                    if zp.dist(c1p) > 1.0 + GEOM_EPS {
                        continue;
                    }
                    if orient(node.coords, zp, xp) >= -GEOM_EPS {
                        continue;
                    }
                    if self.piece_has_voter(Some(xp), p, z, cn, c1)? {
                        continue;
                    }
                    pred.insert(
                        (z, cn),
                        (
                            Some((p, c)),
                            DpKey {
                                x,
                                y: p,
                                p: z,
                                c1,
                                c: cn,
                                i: i + 1,
                            },
                        ),
                    );
                    next.push((z, cn));
                }
            }
            if !closings.is_empty() {
                let mut best: Option<(Vec<usize>, Vec<Arc>)> = None;
                for (p, c, cn) in closings {
                    let arcs = self.backtrack(&pred, x, p, c, cn);
                    let mut members: Vec<usize> = arcs.iter().map(|a| a.center).collect();
                    members.sort_unstable();
                    if best.as_ref().is_none_or(|(m, _)| members < *m) {
                        best = Some((members, arcs));
                    }
                }
                return Ok(best.map(|(_, arcs)| arcs));
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        Ok(None)
    }

    fn backtrack(
        &self,
        pred: &Predecessors,
        x: usize,
        p: usize,
        c: usize,
        closing: usize,
    ) -> Vec<Arc> {
        let arc = |from: usize, to: usize, circle: usize| Arc {
            from,
            to,
            center: self.reps[circle],
            span: self.minor_span(from, to, circle).unwrap_or(0.0),
        };
        let mut arcs = vec![arc(p, x, closing)];
        let mut state = Some((p, c));
        while let Some(s) = state {
            let (prev, key) = pred[&s];
            arcs.push(arc(key.y, key.p, key.c));
            state = prev;
        }
        arcs.reverse();
        arcs
    }

    /// Best boundary over all start corners: fewest arcs, then the
    /// lexicographically smallest member set.
    pub(crate) fn search(&self, k: usize) -> Result<Option<Vec<Arc>>> {
        let starts: Vec<(usize, usize)> = (0..self.points.len())
            .flat_map(|x| {
                let (a, b) = self.points[x].circles;
                [(x, a), (x, b)]
            })
            .collect();
        let found: Vec<Option<Vec<Arc>>> = starts
            .par_iter()
            .map(|&(x, c1)| self.search_from(x, c1, k))
            .collect::<Result<_>>()?;
        let mut best: Option<(usize, Vec<usize>, Vec<Arc>)> = None;
        for arcs in found.into_iter().flatten() {
            let mut members: Vec<usize> = arcs.iter().map(|a| a.center).collect();
            members.sort_unstable();
            let better = match &best {
                None => true,
                Some((n, m, _)) => (arcs.len(), &members) < (*n, m),
            };
            if better {
                best = Some((arcs.len(), members, arcs));
            }
        }
        if let Some((n, _, _)) = &best {
            debug!("planar dp: boundary with {n} arcs");
        }
        Ok(best.map(|(_, _, arcs)| arcs))
    }
}
