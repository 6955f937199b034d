//! General-metric solvers: the quarter approximation for `lambda = 1` and
//! the exact solver for `lambda = k`.

use log::debug;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{approx_ge, objective, pad_committee, Committee, Instance, PointRef};
use crate::result::{SolveResult, Status};

pub const QUARTER_GUARANTEE: f64 = 0.25;

/// Greedy net of the candidates inside a ball around a voter.
#[derive(Debug, Clone, PartialEq)]
pub struct Net {
    /// Admitted candidates, in index order.
    pub members: Vec<usize>,
    /// Separation: members are pairwise strictly farther apart than this.
    pub radius: f64,
    pub ball_center: PointRef,
    pub ball_radius: f64,
    /// Every candidate within `ball_radius` of the center, in index order.
    pub ball: Vec<usize>,
}

impl Net {
    /// Pairwise separation and coverage of the ball, checked exhaustively.
    pub fn check(&self, inst: &Instance) -> bool {
        let separated = self
            .members
            .iter()
            .enumerate()
            .all(|(i, &a)| self.members[i + 1..].iter().all(|&b| inst.cc(a, b) > self.radius));
        let covered = self
            .ball
            .iter()
            .all(|&c| self.members.iter().any(|&m| inst.cc(c, m) <= self.radius));
        separated && covered
    }
}

/// Scans the candidates of `B(voter, ball_radius)` in index order and admits
/// each one that is more than `sep` away from everything admitted so far.
pub fn half_net(inst: &Instance, voter: usize, ball_radius: f64, sep: f64) -> Result<Net> {
    if sep.is_nan() || sep <= 0.0 {
        return Err(Error::OutOfRange(format!("net separation must be positive, got {sep}")));
    }
    if voter >= inst.num_voters() {
        return Err(Error::OutOfRange(format!("voter {voter} out of range")));
    }
    let ball: Vec<usize> = (0..inst.num_candidates())
        .filter(|&c| inst.vc(voter, c) <= ball_radius)
        .collect();
    let mut members: Vec<usize> = Vec::new();
    for &c in &ball {
        if members.iter().all(|&m| inst.cc(c, m) > sep) {
            members.push(c);
        }
    }
    Ok(Net {
        members,
        radius: sep,
        ball_center: PointRef::Voter(voter),
        ball_radius,
        ball,
    })
}

/// Committee built for one guessed (voter, candidate) pair.
fn guess_committee(inst: &Instance, voter: usize, cand: usize) -> Result<Vec<usize>> {
    let k = inst.k();
    if k == 1 {
        // a single member cannot rely on two separated net points, so the
        // guessed candidate itself is the natural choice
        return Ok(vec![cand]);
    }
    let t = inst.vc(voter, cand);
    let net = half_net(inst, voter, t, t / 2.0)?;
    let mut chosen: Vec<usize> = net.members.iter().copied().take(k).collect();
    if chosen.len() < k {
        for &c in &net.ball {
            if chosen.len() == k {
                break;
            }
            if !chosen.contains(&c) {
                chosen.push(c);
            }
        }
    }
    if chosen.len() < k {
        debug!(
            "quarter: ball around voter {voter} holds {} < k candidates, padding from all of C",
            net.ball.len()
        );
    }
    Ok(pad_committee(inst, &chosen, k)?.into_vec())
}

/// Quarter approximation for `lambda = 1` in any metric. Every
/// (voter, candidate) pair is tried as the guess; the best committee by
/// recomputed objective wins, ties going to the lexicographically smaller.
pub fn quarter_approx(inst: &Instance) -> Result<SolveResult> {
    if inst.lambda() != 1 {
        return Err(Error::Unsupported {
            module: "metric_approx",
            message: format!("quarter approximation needs lambda = 1, got {}", inst.lambda()),
        });
    }
    let (nv, nc, k) = (inst.num_voters(), inst.num_candidates(), inst.k());
    let baseline = pad_committee(inst, &[], k)?.into_vec();
    let mut best = (objective(inst, &baseline)?, baseline);

    let found: Vec<(f64, Vec<usize>)> = (0..nv * nc)
        .into_par_iter()
        .filter(|&g| inst.vc(g / nc, g % nc) > 0.0)
        .map(|g| {
            let s = guess_committee(inst, g / nc, g % nc)?;
            Ok((objective(inst, &s)?, s))
        })
        .collect::<Result<_>>()?;
    for (val, s) in found {
        if val > best.0 || (val == best.0 && s < best.1) {
            best = (val, s);
        }
    }
    SolveResult::with_committee(
        inst,
        Status::Approx,
        Committee::from_sorted(best.1),
        Some(QUARTER_GUARANTEE),
        "quarter",
    )
}

/// Exact solver for `lambda = k`, where every member must be far from every
/// voter. With a threshold it decides; without one it maximizes.
pub fn solve_lambda_eq_k(inst: &Instance, t: Option<f64>) -> Result<SolveResult> {
    let k = inst.k();
    if inst.lambda() != k {
        return Err(Error::Unsupported {
            module: "metric_approx",
            message: format!(
                "lambda-k solver needs lambda = k, got lambda = {}, k = {k}",
                inst.lambda()
            ),
        });
    }
    let score: Vec<f64> = (0..inst.num_candidates())
        .map(|c| {
            (0..inst.num_voters())
                .map(|v| inst.vc(v, c))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let chosen: Vec<usize> = match t {
        Some(t) => {
            let far: Vec<usize> = (0..score.len()).filter(|&c| approx_ge(score[c], t)).take(k).collect();
            if far.len() < k {
                return Ok(SolveResult::infeasible("lambda-k"));
            }
            far
        }
        None => {
            let mut order: Vec<usize> = (0..score.len()).collect();
            order.sort_by(|&a, &b| score[b].total_cmp(&score[a]).then(a.cmp(&b)));
            order.truncate(k);
            order
        }
    };
    let committee = Committee::new(chosen, inst.num_candidates())?;
    SolveResult::with_committee(inst, Status::Feasible, committee, Some(1.0), "lambda-k")
}
