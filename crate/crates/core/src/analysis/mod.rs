//! Numerical experiments on top of the metric layer: quasi-metric constant
//! searches, inequality sweeps, extremal quotients and figure data.
//!
//! Every experiment is seeded. Sample `i` of a run draws from its own
//! ChaCha stream, so results do not depend on thread count or scheduling.

mod extremum;
mod quasi;
pub mod sampling;
mod sweep;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::geometry::{Domain, Point};
use crate::metrics::MetricId;
use crate::report::ser_display;

pub use extremum::{
    c_special_closed, conjecture_sw_search, figure1_grid, h0_closed, jw_limit_closed, jw_limit_curve,
    quotient_search, special_case_extremum, FigureRow, PairRestriction, Quotient, QuotientSearch,
};
pub use quasi::{
    metric_check, metric_check_sector, metric_check_with, quasi_constant, quasi_constant_with, TripleSearch,
    METRIC_TOL, TOP_K,
};
pub use sampling::Sampler;
pub use sweep::{inequality_sweep, inequality_sweep_with, Inequality, SweepOptions};

/// Best triangle-inequality violation found for a metric on a domain. The
/// ratio is a lower bound for the quasi-metric constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleWitness {
    #[serde(serialize_with = "ser_display")]
    pub domain: Domain,
    pub metric: MetricId,
    pub x: Point,
    pub y: Point,
    pub z: Point,
    /// `d(x, y) / (d(x, z) + d(z, y))`
    pub ratio: f64,
    pub seed: u64,
    pub n_samples: usize,
    /// Accepted refinement moves leading to this witness.
    pub trace_len: usize,
}

/// Outcome of checking an inequality (or a chain of them) on many samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub inequality: String,
    #[serde(serialize_with = "ser_display")]
    pub domain: Domain,
    pub seed: u64,
    pub n_samples: usize,
    /// Minimum over samples and links of `rhs - lhs` (`-|lhs - rhs|` for
    /// equalities).
    pub worst_margin: f64,
    /// Points realising the worst margin.
    pub witness: Vec<Point>,
    pub tolerance: f64,
    pub pass: bool,
    pub details: BTreeMap<String, f64>,
}

/// Estimated supremum of a quotient of two metrics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremumReport {
    /// Such as `s/w`.
    pub quotient: String,
    #[serde(serialize_with = "ser_display")]
    pub domain: Domain,
    pub seed: Option<u64>,
    pub n_samples: usize,
    pub estimate: f64,
    pub witness: Vec<Point>,
    pub trace_len: usize,
    /// Numerical evidence only, no proof behind the value.
    pub exploratory: bool,
    pub details: BTreeMap<String, f64>,
}
