use std::fmt;

use crate::error::Result;
use crate::metric::{objective, Committee, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Feasible,
    Infeasible,
    Approx,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::Approx => "approx",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of any solver. `value` is the objective of `committee`,
/// recomputed from the instance; `guarantee` is the certified factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    pub committee: Option<Committee>,
    pub value: Option<f64>,
    pub guarantee: Option<f64>,
    pub algorithm: String,
    pub wall_time_ms: u64,
}

impl SolveResult {
    pub fn with_committee(
        inst: &Instance,
        status: Status,
        committee: Committee,
        guarantee: Option<f64>,
        algorithm: impl Into<String>,
    ) -> Result<Self> {
        let value = objective(inst, committee.members())?;
        Ok(SolveResult {
            status,
            committee: Some(committee),
            value: Some(value),
            guarantee,
            algorithm: algorithm.into(),
            wall_time_ms: 0,
        })
    }

    pub fn infeasible(algorithm: impl Into<String>) -> Self {
        SolveResult {
            status: Status::Infeasible,
            committee: None,
            value: None,
            guarantee: None,
            algorithm: algorithm.into(),
            wall_time_ms: 0,
        }
    }

    pub fn timed(mut self, started: std::time::Instant) -> Self {
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        self
    }
}
