//! One entry point over every solver, with the automatic choice used by
//! `obnox solve`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use log::info;

use crate::approx::{quarter_approx, solve_lambda_eq_k};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::fptas::{fptas_decide, fptas_optimize, FptasOptions, DEFAULT_ENUM_CAP, DEFAULT_EPSILON};
use crate::metric::{approx_ge, objective, Instance};
use crate::oracle::{oracle_decide, oracle_optimize, DEFAULT_ORACLE_CAP};
use crate::planar::{planar_decide, planar_optimize};
use crate::result::{SolveResult, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Auto,
    Oracle,
    Planar,
    Quarter,
    Fptas,
    LambdaK,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::Planar => "planar",
            Algorithm::Quarter => "quarter",
            Algorithm::Fptas => "fptas",
            Algorithm::LambdaK => "lambda-k",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            Algorithm::Auto,
            Algorithm::Oracle,
            Algorithm::Planar,
            Algorithm::Quarter,
            Algorithm::Fptas,
            Algorithm::LambdaK,
        ]
        .into_iter()
        .find(|a| a.tag() == s)
        .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Decision threshold; `None` asks for the optimum. Overrides the
    /// instance's own `t`.
    pub t: Option<f64>,
    pub epsilon: Option<f64>,
    pub oracle_cap: u128,
    pub enum_cap: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            t: None,
            epsilon: None,
            oracle_cap: DEFAULT_ORACLE_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

fn exact(inst: &Instance, found: Option<crate::metric::Committee>, algo: &str) -> Result<SolveResult> {
    match found {
        Some(c) => SolveResult::with_committee(inst, Status::Feasible, c, Some(1.0), algo),
        None => Ok(SolveResult::infeasible(algo)),
    }
}

fn run_oracle(inst: &Instance, t: Option<f64>, cap: u128) -> Result<SolveResult> {
    match t {
        Some(t) => exact(inst, oracle_decide(inst, t, cap)?, "oracle"),
        None => {
            let report = oracle_optimize(inst, cap)?;
            SolveResult::with_committee(inst, Status::Feasible, report.witness, Some(1.0), "oracle")
        }
    }
}

fn run_planar(inst: &Instance, t: Option<f64>) -> Result<SolveResult> {
    match t {
        Some(t) => exact(inst, planar_decide(inst, t)?, "planar"),
        None => {
            let (_, c) = planar_optimize(inst)?;
            SolveResult::with_committee(inst, Status::Feasible, c, Some(1.0), "planar")
        }
    }
}

/// Quarter approximation; with a threshold, a value below `t/4` certifies
/// that nothing reaches `t`.
fn run_quarter(inst: &Instance, t: Option<f64>) -> Result<SolveResult> {
    let mut r = quarter_approx(inst)?;
    if let (Some(t), Some(value)) = (t, r.value) {
        if approx_ge(value, t) {
            r.status = Status::Feasible;
        } else if value < t / 4.0 {
            return Ok(SolveResult::infeasible("quarter"));
        }
    }
    Ok(r)
}

fn fptas_options(opts: &SolveOptions) -> FptasOptions {
    FptasOptions {
        epsilon: opts.epsilon.unwrap_or(DEFAULT_EPSILON),
        enum_cap: opts.enum_cap,
        best_subset: false,
    }
}

fn run_fptas(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    let fo = fptas_options(opts);
    match opts.t {
        Some(t) => match fptas_decide(inst, t, &fo)? {
            Some(c) => {
                let value = objective(inst, c.members())?;
                let status = if approx_ge(value, t) {
                    Status::Feasible
                } else {
                    Status::Approx
                };
                SolveResult::with_committee(inst, status, c, Some(1.0 - fo.epsilon), "fptas")
            }
            None => Ok(SolveResult::infeasible("fptas")),
        },
        None => fptas_optimize(inst, &fo),
    }
}

fn oracle_affordable(inst: &Instance, cap: u128) -> bool {
    binomial(inst.num_candidates(), inst.k()) <= cap
}

/// The approximate answer must be consistent with the exact one.
fn cross_check(approx: &SolveResult, truth: &SolveResult, t: Option<f64>) -> Result<()> {
    let fail = |m: String| {
        Err(Error::internal(
            "cli",
            format!("{} disagrees with oracle: {m}", approx.algorithm),
        ))
    };
    match t {
        None => {
            let (a, opt) = (
                approx.value.unwrap_or(f64::NEG_INFINITY),
                truth.value.unwrap_or(f64::NEG_INFINITY),
            );
            let g = approx.guarantee.unwrap_or(0.0);
            if a > opt || !approx_ge(a, g * opt) {
                return fail(format!("value {a} vs optimum {opt} at guarantee {g}"));
            }
        }
        Some(t) => {
            let feasible = truth.status == Status::Feasible;
            if approx.status == Status::Infeasible && feasible {
                return fail(format!("reported infeasible at t = {t}"));
            }
            if approx.status == Status::Feasible && !feasible {
                return fail(format!("reported feasible at t = {t}"));
            }
        }
    }
    Ok(())
}

/// Runs one solver, or picks one: `lambda = k` is exact; `lambda = 1` in
/// the plane is exact; otherwise the approximation runs and, when the
/// oracle is affordable, the exact oracle answer is returned after the
/// approximation has been checked against it.
pub fn solve(inst: &Instance, algo: Algorithm, opts: &SolveOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let t = opts.t;
    let res = match algo {
        Algorithm::Oracle => run_oracle(inst, t, opts.oracle_cap)?,
        Algorithm::Planar => run_planar(inst, t)?,
        Algorithm::Quarter => run_quarter(inst, t)?,
        Algorithm::Fptas => run_fptas(inst, opts)?,
        Algorithm::LambdaK => solve_lambda_eq_k(inst, t)?,
        Algorithm::Auto => {
            let lambda = inst.lambda();
            if lambda == inst.k() {
                solve_lambda_eq_k(inst, t)?
            } else if lambda == 1 && inst.is_planar() {
                run_planar(inst, t)?
            } else {
                let approx = if lambda == 1 {
                    run_quarter(inst, t)?
                } else {
                    run_fptas(inst, opts)?
                };
                if oracle_affordable(inst, opts.oracle_cap) {
                    let truth = run_oracle(inst, t, opts.oracle_cap)?;
                    cross_check(&approx, &truth, t)?;
                    info!("solve: {} cross-checked against oracle", approx.algorithm);
                    truth
                } else {
                    approx
                }
            }
        }
    };
    Ok(res.timed(started))
}
