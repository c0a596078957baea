//! Exact rational geometry kernel.
//!
//! Every coordinate is a [`Rational`] and every predicate is evaluated without
//! rounding, so degenerate incidences (a vertex on a line, an edge lying on a
//! line) are classified exactly. Floating point never enters this module.

mod hull;
pub(crate) mod lattice;
mod polygon;
mod primitives;
mod rational;

pub use hull::{convex_hull, in_convex_position};
pub use polygon::{point_in_polygon, vertex_kind, Location, Polygon, VertexKind};
pub use primitives::{
    orientation, segment_intersection_point, segments_cross, segments_touch, Direction, Line,
    Orientation, Point, Ray, Segment, Vector,
};
pub use rational::{format_rational, parse_rational, rat, Rational};

use thiserror::Error;

/// Errors raised while validating or constructing geometric objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {count}")]
    TooFewVertices { count: usize },
    #[error("vertices {first} and {second} coincide")]
    DuplicateVertex { first: usize, second: usize },
    #[error("vertices {prev}, {index}, {next} are collinear")]
    CollinearRun { prev: usize, index: usize, next: usize },
    #[error("edges {first} and {second} intersect")]
    SelfIntersection { first: usize, second: usize },
    #[error("input points are all collinear")]
    DegenerateInput,
    #[error("zero-length direction or segment")]
    ZeroLength,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
