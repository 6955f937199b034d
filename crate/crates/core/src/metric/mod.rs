//! Instance model, metric backends and evaluation primitives.

mod eval;
mod instance;
mod space;

pub use eval::{approx_ge, critical_values, d_lambda, is_feasible, objective, pad_committee, Committee, REL_TOL};
pub(crate) use eval::{feasible_unchecked, objective_unchecked};
pub use instance::{Instance, PointRef};
pub use space::MetricSpace;
