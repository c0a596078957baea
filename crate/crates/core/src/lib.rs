//! Exact combinatorial geometry of k-convex polygons.

pub(crate) mod arrangement;
pub mod exactgeom;
pub mod fixtures;
pub mod hardness;
pub mod io;
pub mod regions;
pub mod shape;
pub mod stabbing;
pub mod sweep;
pub mod transversals;
pub mod twoconvex;
