use num_traits::{Signed, Zero};
use std::collections::HashMap;

use super::primitives::on_segment;
use super::lattice::{first_touching_edges, Lattice};
use super::{orientation, GeomError, Orientation, Point, Rational};

/// A simple polygon with counterclockwise vertex order.
///
/// Construction goes through [`Polygon::new`], which rejects fewer than three
/// vertices, repeated vertices, three consecutive collinear vertices and
/// self-intersections, and reverses clockwise input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Convex,
    Reflex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

impl Polygon {
    /// Validates `vertices` and normalizes them to counterclockwise order.
    /// Clockwise input is reversed while keeping the first vertex first.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices { count: n });
        }
        let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if let Some(&j) = seen.get(v) {
                return Err(GeomError::DuplicateVertex { first: j, second: i });
            }
            seen.insert(v, i);
        }
        for i in 0..n {
            let (a, b, c) = (&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]);
            if orientation(a, b, c) == Orientation::Collinear {
                return Err(GeomError::CollinearRun { prev: (i + n - 1) % n, index: i, next: (i + 1) % n });
            }
        }
        let touching = match Lattice::new(&vertices) {
            Lattice::Small(l) => first_touching_edges(&l),
            Lattice::Big(l) => first_touching_edges(&l),
        };
        if let Some((first, second)) = touching {
            return Err(GeomError::SelfIntersection { first, second });
        }
        let mut vertices = vertices;
        if signed_area2(&vertices).is_negative() {
            vertices[1..].reverse();
        }
        Ok(Polygon { vertices })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        Polygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    /// Twice the (positive) area.
    pub fn area2(&self) -> Rational {
        signed_area2(&self.vertices)
    }

    pub fn area(&self) -> Rational {
        self.area2() / Rational::from_integer(2.into())
    }

    /// Same cyclic vertex sequence, possibly starting elsewhere.
    pub fn same_cycle(&self, other: &Polygon) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        match other.vertices.iter().position(|v| *v == self.vertices[0]) {
            None => false,
            Some(s) => (0..n).all(|i| self.vertices[i] == other.vertices[(s + i) % n]),
        }
    }

    pub fn is_convex(&self) -> bool {
        (0..self.len()).all(|i| vertex_kind(self, i) == VertexKind::Convex)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }

    /// Polygon on the vertices at `indices`, kept in the given order.
    pub fn sub_polygon(&self, indices: &[usize]) -> Result<Polygon, GeomError> {
        Polygon::new(indices.iter().map(|&i| self.vertex(i).clone()).collect())
    }

    /// Applies `f` to every vertex and revalidates.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Polygon, GeomError> {
        Polygon::new(self.vertices.iter().map(f).collect())
    }

    /// Vertex list rotated to start at index `k`.
    pub fn rotated(&self, k: usize) -> Polygon {
        let n = self.len();
        Polygon { vertices: (0..n).map(|i| self.vertices[(i + k) % n].clone()).collect() }
    }
}

fn signed_area2(vs: &[Point]) -> Rational {
    let n = vs.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        acc += &a.x * &b.y - &a.y * &b.x;
    }
    acc
}

/// Convex iff the turn at `i` is a left turn (the polygon is counterclockwise).
pub fn vertex_kind(p: &Polygon, i: usize) -> VertexKind {
    match orientation(p.vertex(p.prev(i)), p.vertex(i), p.vertex(p.next(i))) {
        Orientation::Left => VertexKind::Convex,
        _ => VertexKind::Reflex,
    }
}

/// Boundary test first, then crossing parity of a rightward horizontal ray.
pub fn point_in_polygon(q: &Point, p: &Polygon) -> Location {
    if p.edges().any(|(a, b)| on_segment(q, a, b)) {
        return Location::Boundary;
    }
    let mut inside = false;
    for (a, b) in p.edges() {
        if (a.y > q.y) != (b.y > q.y) {
            // q strictly left of the crossing point, for either edge direction.
            let o = orientation(a, b, q).sign();
            let upward = b.y > a.y;
            if (upward && o > 0) || (!upward && o < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}
