//! Solvers for obnoxious egalitarian committee selection on metric spaces.
//!
//! Given voters and candidates in a metric space, a committee size `k`, a
//! rank `lambda` and a threshold `t`, the task is to pick `k` candidates
//! such that every voter's `lambda`-th farthest committee member is at
//! least `t` away. The crate provides:
//!
//! * [`metric`]: instances, metric backends and the shared objective;
//! * [`oracle`]: exhaustive ground truth;
//! * [`planar`]: the exact arc dynamic program for `lambda = 1` in the plane;
//! * [`approx`]: the general-metric quarter approximation and the exact
//!   `lambda = k` solver;
//! * [`fptas`]: the (1 - eps) bicriteria scheme for arbitrary `lambda`;
//! * [`generators`]: reduction-based and random instances with ground truth;
//! * [`io`]: the JSON instance/result documents and solver dispatch.

pub mod approx;
pub mod combinatorics;
pub mod dispatch;
pub mod error;
pub mod fptas;
pub mod generators;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod planar;
mod result;

pub use error::{Error, Result};
pub use metric::{Committee, Instance, MetricSpace, PointRef};
pub use result::{SolveResult, Status};
