//! Unions and intersections of polygons, measured only along lines.
//!
//! A region expression is never turned into a polygon. Along a given line
//! each leaf contributes its closed inside intervals and the boolean
//! operators act on sorted interval lists.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::for_each_base_line;
use crate::exactgeom::{
    point_in_polygon, segment_intersection_point, segments_touch, Line, Location, Point, Polygon, Rational,
};
use crate::fixtures::{helly_family, FixtureError};
use crate::stabbing::{line_profile, Interval};
use crate::twoconvex::recognize_2convex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("unbound polygon id {0:?}")]
    UnboundId(String),
    #[error("empty expression")]
    Empty,
}

/// Sorted, pairwise disjoint, maximal closed intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    items: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// Normalizes arbitrary closed intervals by sorting and merging any that
    /// overlap or touch.
    pub fn from_intervals(mut v: Vec<Interval>) -> Self {
        v.sort();
        let mut items: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match items.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => items.push(iv),
            }
        }
        IntervalSet { items }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.items.iter().any(|iv| &iv.lo <= t && t <= &iv.hi)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut v = self.items.clone();
        v.extend(other.items.iter().cloned());
        IntervalSet::from_intervals(v)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.items, &other.items);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = (&a[i].lo).max(&b[j].lo);
            let hi = (&a[i].hi).min(&b[j].hi);
            if lo <= hi {
                out.push(Interval::new(lo.clone(), hi.clone()));
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pieces of disjoint maximal sets can only touch if both inputs had
        // touching pieces, which normalization rules out.
        IntervalSet { items: out }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionExpr {
    Leaf(String),
    Union(Vec<RegionExpr>),
    Intersect(Vec<RegionExpr>),
}

impl RegionExpr {
    pub fn leaf(id: &str) -> Self {
        RegionExpr::Leaf(id.to_string())
    }

    /// Leaf ids in first-use order, without repeats.
    pub fn ids(&self) -> Vec<String> {
        fn walk(e: &RegionExpr, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
            match e {
                RegionExpr::Leaf(id) => {
                    if seen.insert(id.clone()) {
                        out.push(id.clone());
                    }
                }
                RegionExpr::Union(c) | RegionExpr::Intersect(c) => c.iter().for_each(|x| walk(x, seen, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    /// Parses the JSON form: a string id, or `["union" | "intersect", e1, e2, ...]`.
    pub fn from_json(v: &serde_json::Value) -> Option<RegionExpr> {
        match v {
            serde_json::Value::String(s) => Some(RegionExpr::Leaf(s.clone())),
            serde_json::Value::Array(a) => {
                let (op, rest) = a.split_first()?;
                let kids: Option<Vec<RegionExpr>> = rest.iter().map(RegionExpr::from_json).collect();
                let kids = kids.filter(|k| !k.is_empty())?;
                match op.as_str()? {
                    "union" => Some(RegionExpr::Union(kids)),
                    "intersect" => Some(RegionExpr::Intersect(kids)),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

pub type Env = BTreeMap<String, Polygon>;

pub fn line_intervals(e: &RegionExpr, env: &Env, line: &Line) -> Result<IntervalSet, RegionError> {
    match e {
        RegionExpr::Leaf(id) => {
            let p = env.get(id).ok_or_else(|| RegionError::UnboundId(id.clone()))?;
            Ok(IntervalSet::from_intervals(line_profile(line, p).inside_intervals))
        }
        RegionExpr::Union(kids) | RegionExpr::Intersect(kids) => {
            let union = matches!(e, RegionExpr::Union(_));
            let mut acc: Option<IntervalSet> = None;
            for k in kids {
                let s = line_intervals(k, env, line)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) if union => a.union(&s),
                    Some(a) => a.intersection(&s),
                });
            }
            acc.ok_or(RegionError::Empty)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    #[serde(serialize_with = "crate::io::ser_line")]
    pub witness: Line,
    /// Best value found by the random batch; never above `degree`.
    pub random_max: usize,
}

/// Largest number of components of the region on any line.
///
/// The component count along a line is determined by the order of its
/// boundary crossings, which can only change when the line passes a vertex
/// or a crossing point of two edges. Candidates are therefore the lines
/// spanned by those points, together with every perturbation class around
/// them; a seeded batch of random lines cross-checks the maximum.
pub fn empirical_degree(e: &RegionExpr, env: &Env, random_lines: usize, seed: u64) -> Result<DegreeReport, RegionError> {
    let ids = e.ids();
    let polys: Vec<&Polygon> =
        ids.iter().map(|id| env.get(id).ok_or_else(|| RegionError::UnboundId(id.clone()))).collect::<Result<_, _>>()?;
    let pts = event_points(&polys);
    let mut best: Option<(usize, Line)> = None;
    let mut err = None;
    let mut consider = |line: Line, best: &mut Option<(usize, Line)>| match line_intervals(e, env, &line) {
        Ok(s) => {
            if best.as_ref().is_none_or(|(b, _)| s.len() > *b) {
                *best = Some((s.len(), line));
            }
        }
        Err(x) => err = Some(x),
    };
    for_each_base_line(&pts, |b| {
        consider(b.line(&pts), &mut best);
        for pert in b.perturbations() {
            consider(b.concrete(&pts, pert), &mut best);
        }
    });
    if let Some(x) = err {
        return Err(x);
    }
    let (degree, witness) = best.ok_or(RegionError::Empty)?;
    let random_max = random_line_max(e, env, &pts, random_lines, seed)?;
    Ok(DegreeReport { degree, witness, random_max })
}

/// Vertices of all polygons plus all crossing points of their edges,
/// deduplicated.
fn event_points(polys: &[&Polygon]) -> Vec<Point> {
    let mut set: BTreeSet<Point> = polys.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    let edges: Vec<(&Point, &Point)> = polys.iter().flat_map(|p| p.edges()).collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let ((a, b), (c, d)) = (edges[i], edges[j]);
            if segments_touch(a, b, c, d) {
                if let Some(x) = segment_intersection_point(a, b, c, d) {
                    set.insert(x);
                }
            }
        }
    }
    set.into_iter().collect()
}

fn random_line_max(e: &RegionExpr, env: &Env, pts: &[Point], trials: usize, seed: u64) -> Result<usize, RegionError> {
    if trials == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (pts[0].clone(), pts[0].clone());
    for p in pts {
        lo = Point::new(lo.x.clone().min(p.x.clone()), lo.y.clone().min(p.y.clone()));
        hi = Point::new(hi.x.clone().max(p.x.clone()), hi.y.clone().max(p.y.clone()));
    }
    const RES: i64 = 1 << 20;
    let sample = |rng: &mut ChaCha8Rng| {
        let fx = Rational::new(rng.gen_range(0..=RES).into(), RES.into());
        let fy = Rational::new(rng.gen_range(0..=RES).into(), RES.into());
        Point::new(&lo.x + (&hi.x - &lo.x) * fx, &lo.y + (&hi.y - &lo.y) * fy)
    };
    let mut best = 0;
    for _ in 0..trials {
        let (a, b) = (sample(&mut rng), sample(&mut rng));
        if let Ok(line) = Line::through(&a, &b) {
            best = best.max(line_intervals(e, env, &line)?.len());
        }
    }
    Ok(best)
}

/// A point common to all polygons, if one exists. Any nonempty intersection
/// of closed polygons contains a vertex or a crossing point of two edges (its
/// lexicographically smallest point is one), so testing those is exact.
pub fn intersection_nonempty(polys: &[Polygon]) -> Option<Point> {
    let refs: Vec<&Polygon> = polys.iter().collect();
    event_points(&refs)
        .into_iter()
        .find(|x| polys.iter().all(|p| point_in_polygon(x, p) != Location::Outside))
}

#[derive(Debug, Clone, Serialize)]
pub struct HellyReport {
    pub m: usize,
    pub members_two_convex: Vec<bool>,
    /// Witness point for the family without member `j`, per `j`.
    #[serde(serialize_with = "ser_points")]
    pub without_member: Vec<Option<Point>>,
    pub full_family_empty: bool,
    pub passed: bool,
}

fn ser_points<S: serde::Serializer>(v: &[Option<Point>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.as_ref().map(crate::io::point_json))?;
    }
    seq.end()
}

/// Builds the open-ring family for `m` and checks that every member is
/// 2-convex, that every proper subfamily has a common point and that the
/// whole family has none. Proper subfamilies are covered by the m maximal
/// ones: a common point of m-1 members is common to all their subsets.
pub fn helly_check(m: usize) -> Result<HellyReport, FixtureError> {
    let fam = helly_family(m)?;
    let members_two_convex: Vec<bool> = fam.iter().map(|p| recognize_2convex(p).is_two_convex).collect();
    let without_member: Vec<Option<Point>> = (0..m)
        .map(|j| {
            let sub: Vec<Polygon> = fam.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, p)| p.clone()).collect();
            intersection_nonempty(&sub)
        })
        .collect();
    let full_family_empty = intersection_nonempty(&fam).is_none();
    let passed = members_two_convex.iter().all(|&b| b) && without_member.iter().all(Option::is_some) && full_family_empty;
    Ok(HellyReport { m, members_two_convex, without_member, full_family_empty, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, Direction};

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(rat(a), rat(b))
    }

    fn square(x: i64, y: i64, s: i64) -> Polygon {
        Polygon::from_ints(&[(x, y), (x + s, y), (x + s, y + s), (x, y + s)]).unwrap()
    }

    #[test]
    fn interval_algebra() {
        let a = IntervalSet::from_intervals(vec![iv(0, 2), iv(5, 6), iv(2, 3)]);
        assert_eq!(a.intervals(), &[iv(0, 3), iv(5, 6)]);
        let b = IntervalSet::from_intervals(vec![iv(3, 5), iv(8, 8)]);
        assert_eq!(a.intersection(&b).intervals(), &[iv(3, 3), iv(5, 5)]);
        assert_eq!(a.union(&b).intervals(), &[iv(0, 6), iv(8, 8)]);
    }

    #[test]
    fn union_of_disjoint_squares() {
        let mut env = Env::new();
        env.insert("A".into(), square(0, 0, 2));
        env.insert("B".into(), square(4, 0, 2));
        let e = RegionExpr::Union(vec![RegionExpr::leaf("A"), RegionExpr::leaf("B")]);
        let line = Line::new(Point::from_ints(0, 1), Direction::new(rat(1), rat(0)).unwrap());
        assert_eq!(line_intervals(&e, &env, &line).unwrap().len(), 2);
        let self_meet = RegionExpr::Intersect(vec![RegionExpr::leaf("A"), RegionExpr::leaf("A")]);
        assert_eq!(
            line_intervals(&self_meet, &env, &line).unwrap(),
            line_intervals(&RegionExpr::leaf("A"), &env, &line).unwrap()
        );
        assert_eq!(empirical_degree(&e, &env, 100, 0).unwrap().degree, 2);
        assert_eq!(
            line_intervals(&RegionExpr::leaf("C"), &env, &line),
            Err(RegionError::UnboundId("C".into()))
        );
    }

    #[test]
    fn single_convex_degree() {
        let mut env = Env::new();
        env.insert("A".into(), square(0, 0, 3));
        assert_eq!(empirical_degree(&RegionExpr::leaf("A"), &env, 50, 1).unwrap().degree, 1);
    }

    #[test]
    fn square_intersections() {
        let w = intersection_nonempty(&[square(0, 0, 2), square(1, 1, 2)]).unwrap();
        assert!(w >= Point::from_ints(1, 1) && w <= Point::from_ints(2, 2));
        assert!(intersection_nonempty(&[square(0, 0, 1), square(3, 3, 1)]).is_none());
    }

    #[test]
    fn expression_json() {
        let v: serde_json::Value = serde_json::from_str(r#"["intersect", "A", ["union", "B", "C"]]"#).unwrap();
        let e = RegionExpr::from_json(&v).unwrap();
        assert_eq!(e.ids(), vec!["A", "B", "C"]);
        assert!(RegionExpr::from_json(&serde_json::json!(["xor", "A"])).is_none());
    }
}
