//! Domains and purely geometric queries: membership, boundary distance,
//! nearest boundary points, tilde sets and the planar maps used by the
//! metric formulas.

mod domain;
mod maps;
mod point;

pub use domain::{Domain, DomainKind, NearestSet, TildeSet};
pub(crate) use domain::{arg_2pi, cross, edges, Shape};
pub use maps::{plane_reduce, reflect_across_line, sector_power_map, sector_power_map_inverse};
pub(crate) use maps::{plane_reduce_c, sector_power_c};
pub use point::Point;
