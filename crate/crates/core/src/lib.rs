//! Intrinsic metrics of planar and higher dimensional domains.
//!
//! The crate evaluates the triangular ratio metric `s`, the point pair
//! function `p`, the `j*` metric, the tilde-point quasi-metric `w`, the
//! inversion bound `low` and the hyperbolic metric on half-spaces, balls,
//! sectors, convex polygons and punctured planes, and ships numerical
//! experiments (inequality sweeps, quasi-constant searches, extremum
//! searches) on top of them.
//!
//! ```
//! use metriq::{metrics, Domain, Point};
//!
//! let disk = Domain::unit_ball(2)?;
//! let (x, y) = (Point::xy(0.5, 0.0), Point::xy(-0.5, 0.0));
//! let p = metrics::point_pair(&disk, &x, &y)?;
//! let w = metrics::w_metric(&disk, &x, &y)?;
//! assert!((p / w - 2f64.sqrt()).abs() < 1e-12);
//! # Ok::<(), metriq::Error>(())
//! ```

pub mod analysis;
pub mod cli;
mod error;
pub mod geometry;
pub mod metrics;
pub mod optimize;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use geometry::{Domain, DomainKind, Point};
pub use metrics::{MetricId, MetricKind, Strategy};
