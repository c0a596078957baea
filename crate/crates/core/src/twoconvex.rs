//! Recognition of 2-convex polygons through their local characterization.
//!
//! A polygon is 2-convex iff no edge-extension ray at a reflex vertex meets
//! the boundary twice, no segment inside the polygon is tangent to it at two
//! reflex vertices (an inner tangent), and no line through an inflection edge
//! crosses the rest of the boundary three times. Inner tangents are found by
//! sliding a point around the boundary while keeping the reflex vertices
//! whose critical range contains it in an ordered set.
//!
//! Any witness of non-2-convexity is confirmed by exhibiting a line with at
//! least six crossings next to the witness line. Inputs outside the general
//! position assumed by the characterization (a ray through a vertex or along
//! an edge), and witnesses that fail confirmation, are decided by the exact
//! stabbing number instead; the verdict records which path was taken.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{base_line_through, best_perturbation};
use crate::exactgeom::{format_rational, orientation, vertex_kind, Line, Point, Polygon, Ray, Rational, VertexKind};
use crate::io::{line_json, point_json};
use crate::stabbing::{line_profile, stabbing_number, Event};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoConvexError {
    #[error("ray from vertex {vertex} runs along edge {edge}")]
    DegenerateOverlap { vertex: usize, edge: usize },
}

/// Position on the boundary: `t` of the way along edge `edge`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryPos {
    pub edge: usize,
    pub t: Rational,
}

impl Ord for BoundaryPos {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edge.cmp(&other.edge).then_with(|| self.t.cmp(&other.t))
    }
}

impl PartialOrd for BoundaryPos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BoundaryPos {
    pub fn vertex(i: usize) -> Self {
        BoundaryPos { edge: i, t: Rational::zero() }
    }

    pub fn point(&self, p: &Polygon) -> Point {
        let (a, b) = p.edge(self.edge);
        a.add(&b.sub(a).scale(&self.t))
    }
}

/// Counterclockwise boundary arc from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryArc {
    pub start: BoundaryPos,
    pub end: BoundaryPos,
}

impl BoundaryArc {
    /// Polygon vertices on the arc, as an inclusive cyclic index range.
    pub fn vertex_range(&self, n: usize) -> (usize, usize) {
        let first = if self.start.t.is_zero() { self.start.edge } else { (self.start.edge + 1) % n };
        (first, self.end.edge)
    }

    /// Whether the boundary position lies on the (closed) arc.
    pub fn contains(&self, x: &BoundaryPos) -> bool {
        if self.start <= self.end {
            &self.start <= x && x <= &self.end
        } else {
            x >= &self.start || x <= &self.end
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalRange {
    pub vertex: usize,
    pub arcs: [BoundaryArc; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayHit {
    pub pos: BoundaryPos,
    pub point: Point,
    pub at_vertex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    MultiHitRay { vertex: usize, ray: Ray, hits: Vec<Point> },
    InnerTangent { v: usize, w: usize },
    InflectionStabber { edge: usize, line: Line },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionPath {
    Characterization,
    /// An extension ray met a vertex or ran along an edge.
    OracleDegenerate,
    /// A characterization witness had no six-crossing line next to it.
    OracleUnconfirmedWitness,
    /// Requested explicitly.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoConvexVerdict {
    pub is_two_convex: bool,
    pub witness: Witness,
    /// A line with at least six crossings near the witness, when confirmed.
    pub confirming_line: Option<Line>,
    pub path: DecisionPath,
}

impl TwoConvexVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let witness = match &self.witness {
            Witness::None => serde_json::Value::Null,
            Witness::MultiHitRay { vertex, ray, hits } => json!({
                "kind": "multi_hit_ray",
                "vertex": vertex,
                "origin": point_json(&ray.origin),
                "direction": [format_rational(&ray.dir.dx), format_rational(&ray.dir.dy)],
                "hits": hits.iter().map(point_json).collect::<Vec<_>>(),
            }),
            Witness::InnerTangent { v, w } => json!({"kind": "inner_tangent", "v": v, "w": w}),
            Witness::InflectionStabber { edge, line } => {
                json!({"kind": "inflection_stabber", "edge": edge, "line": line_json(line)})
            }
        };
        json!({
            "is_two_convex": self.is_two_convex,
            "witness": witness,
            "confirming_line": self.confirming_line.as_ref().map(line_json),
            "path": self.path,
        })
    }
}

pub fn reflex_vertices(p: &Polygon) -> Vec<usize> {
    (0..p.len()).filter(|&i| vertex_kind(p, i) == VertexKind::Reflex).collect()
}

/// Intersections of the open ray with the boundary, nearest first. A hit at
/// a vertex is reported once, at the edge leaving that vertex.
pub fn ray_hits(r: &Ray, p: &Polygon) -> Result<Vec<RayHit>, TwoConvexError> {
    let dv = &r.dir;
    let mut hits: Vec<(Rational, RayHit)> = Vec::new();
    let vertex = p.vertices().iter().position(|v| v == &r.origin).unwrap_or(usize::MAX);
    for i in 0..p.len() {
        let (a, b) = p.edge(i);
        let e = b.sub(a);
        let ao = a.sub(&r.origin);
        let den = dv.cross(&e);
        if den.is_zero() {
            if ao.cross(dv).is_zero() {
                // Collinear: overlap with the open ray iff an endpoint lies ahead.
                let ta = ao.dot(dv);
                let tb = b.sub(&r.origin).dot(dv);
                if ta > Rational::zero() || tb > Rational::zero() {
                    return Err(TwoConvexError::DegenerateOverlap { vertex, edge: i });
                }
            }
            continue;
        }
        let s = ao.cross(&e) / &den;
        let u = ao.cross(dv) / &den;
        if s > Rational::zero() && u >= Rational::zero() && u < Rational::one() {
            let point = r.origin.add(&dv.scale(&s));
            hits.push((s, RayHit { at_vertex: u.is_zero(), pos: BoundaryPos { edge: i, t: u }, point }));
        }
    }
    hits.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(hits.into_iter().map(|(_, h)| h).collect())
}

/// The two extension rays at vertex `v`: continuing edge (v-1, v) beyond v,
/// and continuing edge (v+1, v) beyond v.
pub fn extension_rays(p: &Polygon, v: usize) -> [Ray; 2] {
    let o = p.vertex(v);
    let a = p.vertex(p.prev(v));
    let b = p.vertex(p.next(v));
    [
        Ray::new(o.clone(), o.sub(a)).expect("distinct vertices"),
        Ray::new(o.clone(), o.sub(b)).expect("distinct vertices"),
    ]
}

/// Critical range of reflex vertex `v` given the single hits `h1` of the
/// ray continuing (v-1, v) and `h2` of the ray continuing (v+1, v).
fn critical_range_from_hits(v: usize, h1: &BoundaryPos, h2: &BoundaryPos) -> CriticalRange {
    CriticalRange {
        vertex: v,
        arcs: [
            BoundaryArc { start: BoundaryPos::vertex(v), end: h1.clone() },
            BoundaryArc { start: h2.clone(), end: BoundaryPos::vertex(v) },
        ],
    }
}

/// Boundary points x such that the line through `v` and x leaves both
/// neighbours of `v` on one closed side, on the two arcs cut off by the
/// extension rays. Requires exactly one hit per extension ray.
pub fn critical_range(p: &Polygon, v: usize) -> Option<CriticalRange> {
    let [r1, r2] = extension_rays(p, v);
    let h1 = ray_hits(&r1, p).ok()?;
    let h2 = ray_hits(&r2, p).ok()?;
    match (h1.as_slice(), h2.as_slice()) {
        ([a], [b]) => Some(critical_range_from_hits(v, &a.pos, &b.pos)),
        _ => None,
    }
}

/// The line through `v` and `x` is locally tangent at `v`.
pub fn tangent_at(p: &Polygon, v: usize, x: &Point) -> bool {
    let o = p.vertex(v);
    let s1 = orientation(o, x, p.vertex(p.prev(v))).sign();
    let s2 = orientation(o, x, p.vertex(p.next(v))).sign();
    s1 * s2 >= 0
}

fn adjacent(n: usize, a: usize, b: usize) -> bool {
    a == b || (a + 1) % n == b || (b + 1) % n == a
}

/// Inner tangent by the sliding scan over critical ranges. Every reflex
/// vertex must have a critical range.
pub fn find_inner_tangent(p: &Polygon, ranges: &[CriticalRange]) -> Option<(usize, usize)> {
    let n = p.len();
    // Linear pieces of the vertex ranges, keyed by reflex vertex.
    let mut pieces: Vec<(usize, usize, usize)> = Vec::new();
    let mut own: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for cr in ranges {
        for arc in &cr.arcs {
            let (s, e) = arc.vertex_range(n);
            let split: Vec<(usize, usize)> = if s <= e { vec![(s, e)] } else { vec![(s, n - 1), (0, e)] };
            for (a, b) in split {
                pieces.push((a, b, cr.vertex));
                own.entry(cr.vertex).or_default().push((a, b));
            }
        }
    }
    let mut opens: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b, v) in &pieces {
        opens[a].push(v);
        closes[b].push(v);
    }
    let mut active: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        for &v in &opens[x] {
            *active.entry(v).or_insert(0) += 1;
        }
        if let Some(mine) = own.get(&x) {
            for &(a, b) in mine {
                if let Some((&w, _)) = active.range(a..=b).find(|(&w, _)| !adjacent(n, w, x)) {
                    return Some((x.min(w), x.max(w)));
                }
            }
        }
        for &v in &closes[x] {
            let c = active.get_mut(&v).expect("opened before closing");
            *c -= 1;
            if *c == 0 {
                active.remove(&v);
            }
        }
    }
    None
}

/// Inner tangent by checking all pairs of non-adjacent reflex vertices
/// directly: the segment between them stays in the polygon and its line is
/// tangent at both ends.
pub fn find_inner_tangent_pairwise(p: &Polygon) -> Option<(usize, usize)> {
    let n = p.len();
    let rv = reflex_vertices(p);
    for (i, &v) in rv.iter().enumerate() {
        for &w in &rv[i + 1..] {
            if adjacent(n, v, w) {
                continue;
            }
            let (a, b) = (p.vertex(v), p.vertex(w));
            if tangent_at(p, v, b) && tangent_at(p, w, a) && segment_inside(p, v, w) {
                return Some((v, w));
            }
        }
    }
    None
}

/// Closed segment between vertices `v` and `w` lies in the polygon.
fn segment_inside(p: &Polygon, v: usize, w: usize) -> bool {
    let line = Line::through(p.vertex(v), p.vertex(w)).expect("distinct vertices");
    let (t0, t1) = (line.param(p.vertex(v)), line.param(p.vertex(w)));
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let prof = line_profile(&line, p);
    prof.inside_intervals.iter().any(|iv| iv.lo <= lo && hi <= iv.hi)
}

/// An inflection edge whose line crosses the rest of the boundary at least
/// three times.
pub fn inflection_stabber_exists(p: &Polygon) -> Option<(usize, Line)> {
    let n = p.len();
    for i in 0..n {
        let j = (i + 1) % n;
        if vertex_kind(p, i) == vertex_kind(p, j) {
            continue;
        }
        let line = Line::through(p.vertex(i), p.vertex(j)).expect("distinct vertices");
        let own = {
            let (a, b) = (line.param(p.vertex(i)), line.param(p.vertex(j)));
            if a <= b { a } else { b }
        };
        let crossings = line_profile(&line, p)
            .events
            .iter()
            .filter(|e| e.is_crossing() && !matches!(e, Event::Overlap { start, .. } if *start == own))
            .count();
        if crossings >= 3 {
            return Some((i, line));
        }
    }
    None
}

/// Line near the line through vertices `u` and `v` with the most crossings,
/// if that is at least six.
fn confirm(p: &Polygon, u: usize, v: usize) -> Option<Line> {
    let pts = p.vertices();
    let b = base_line_through(pts, u, v);
    let (best, pert) = best_perturbation(&b);
    (best >= 6).then(|| b.concrete(pts, pert))
}

pub fn recognize_2convex_oracle(p: &Polygon, path: DecisionPath) -> TwoConvexVerdict {
    let c = stabbing_number(p);
    let ok = c.value <= 4;
    TwoConvexVerdict {
        is_two_convex: ok,
        witness: Witness::None,
        confirming_line: (!ok).then_some(c.witness),
        path,
    }
}

/// Decides 2-convexity; the first witness found is reported in the order
/// multi-hit ray, inner tangent, inflection stabber.
pub fn recognize_2convex(p: &Polygon) -> TwoConvexVerdict {
    let n = p.len();
    let rv = reflex_vertices(p);
    let mut ranges = Vec::with_capacity(rv.len());
    for &v in &rv {
        let rays = extension_rays(p, v);
        let mut single = Vec::with_capacity(2);
        for (k, ray) in rays.iter().enumerate() {
            let hits = match ray_hits(ray, p) {
                Ok(h) => h,
                Err(_) => return recognize_2convex_oracle(p, DecisionPath::OracleDegenerate),
            };
            if hits.iter().any(|h| h.at_vertex) {
                return recognize_2convex_oracle(p, DecisionPath::OracleDegenerate);
            }
            if hits.len() >= 2 {
                let other = if k == 0 { p.prev(v) } else { p.next(v) };
                return finish(
                    p,
                    Witness::MultiHitRay { vertex: v, ray: ray.clone(), hits: hits.into_iter().map(|h| h.point).collect() },
                    confirm(p, other, v),
                );
            }
            single.push(hits.into_iter().next().expect("a reflex extension ray enters the interior").pos);
        }
        ranges.push(critical_range_from_hits(v, &single[0], &single[1]));
    }
    if let Some((v, w)) = find_inner_tangent(p, &ranges) {
        return finish(p, Witness::InnerTangent { v, w }, confirm(p, v, w));
    }
    if let Some((e, line)) = inflection_stabber_exists(p) {
        let c = confirm(p, e, (e + 1) % n);
        return finish(p, Witness::InflectionStabber { edge: e, line }, c);
    }
    TwoConvexVerdict { is_two_convex: true, witness: Witness::None, confirming_line: None, path: DecisionPath::Characterization }
}

fn finish(p: &Polygon, witness: Witness, line: Option<Line>) -> TwoConvexVerdict {
    match line {
        Some(l) => TwoConvexVerdict {
            is_two_convex: false,
            witness,
            confirming_line: Some(l),
            path: DecisionPath::Characterization,
        },
        None => recognize_2convex_oracle(p, DecisionPath::OracleUnconfirmedWitness),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabbing::crossing_count;

    fn notch() -> Polygon {
        // Convex blob with one reflex notch at index 3.
        Polygon::from_ints(&[(0, 0), (6, 0), (6, 4), (3, 3), (0, 4), (-1, 2)]).unwrap()
    }

    #[test]
    fn reflex_list() {
        assert_eq!(reflex_vertices(&notch()), vec![3]);
        assert!(reflex_vertices(&Polygon::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap()).is_empty());
    }

    #[test]
    fn notch_rays_hit_once() {
        let p = notch();
        for r in extension_rays(&p, 3) {
            let h = ray_hits(&r, &p).unwrap();
            assert_eq!(h.len(), 1);
            assert!(!h[0].at_vertex);
        }
        let cr = critical_range(&p, 3).unwrap();
        // Arc endpoints are the ray hits.
        let [r1, r2] = extension_rays(&p, 3);
        assert_eq!(cr.arcs[0].end, ray_hits(&r1, &p).unwrap()[0].pos);
        assert_eq!(cr.arcs[1].start, ray_hits(&r2, &p).unwrap()[0].pos);
    }

    #[test]
    fn critical_range_is_tangent_set() {
        let p = notch();
        let cr = critical_range(&p, 3).unwrap();
        for e in 0..p.len() {
            for k in 0..8 {
                let x = BoundaryPos { edge: e, t: Rational::new(k.into(), 8.into()) };
                if e == 3 && k == 0 {
                    continue;
                }
                let inside = cr.arcs.iter().any(|a| a.contains(&x));
                assert_eq!(inside, tangent_at(&p, 3, &x.point(&p)), "edge {e} t {k}/8");
            }
        }
    }

    #[test]
    fn convex_and_notch_are_two_convex() {
        assert!(recognize_2convex(&Polygon::from_ints(&[(0, 0), (4, 0), (4, 4), (0, 4)]).unwrap()).is_two_convex);
        let v = recognize_2convex(&notch());
        assert!(v.is_two_convex);
        assert_eq!(v.path, DecisionPath::Characterization);
    }

    #[test]
    fn zigzag_has_multi_hit() {
        // Three teeth: the extension ray at a valley crosses several teeth.
        let p = Polygon::from_ints(&[(0, 0), (12, 0), (12, 5), (10, 1), (8, 5), (6, 1), (4, 5), (2, 1), (0, 5)])
            .unwrap();
        let v = recognize_2convex(&p);
        assert!(!v.is_two_convex);
        if let Some(l) = &v.confirming_line {
            assert!(crossing_count(l, &p) >= 6);
        }
        assert_eq!(stabbing_number(&p).value > 4, !v.is_two_convex);
    }

    #[test]
    fn facing_notches_inner_tangent() {
        // Two notches facing each other across a corridor.
        let p = Polygon::from_ints(&[(0, 0), (4, 0), (5, 2), (6, 0), (10, 0), (10, 6), (6, 6), (5, 4), (4, 6), (0, 6)])
            .unwrap();
        assert_eq!(find_inner_tangent_pairwise(&p), None);
        let q = Polygon::from_ints(&[
            (0, 0), (4, 0), (5, 2), (6, 0), (10, 0), (10, 6), (8, 6), (7, 3), (6, 6), (0, 6),
        ])
        .unwrap();
        let pair = find_inner_tangent_pairwise(&q);
        let ranges: Vec<CriticalRange> = reflex_vertices(&q).iter().filter_map(|&v| critical_range(&q, v)).collect();
        if ranges.len() == reflex_vertices(&q).len() {
            assert_eq!(find_inner_tangent(&q, &ranges).is_some(), pair.is_some());
        }
    }
}
