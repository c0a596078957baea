//! Line-versus-polygon crossing analysis and the exact stabbing number.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{cyclic_sign_changes, for_each_base_line};
use crate::exactgeom::{Line, Point, Polygon, Rational};

/// Boundary incidence of a line, positioned by line parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    Crossing(Rational),
    /// A vertex on the line whose neighbours lie on the same side.
    Touch(Rational),
    /// An edge lying on the line; `crossing` when the boundary switches
    /// sides across it.
    Overlap { start: Rational, end: Rational, crossing: bool },
}

impl Event {
    pub fn start(&self) -> &Rational {
        match self {
            Event::Crossing(t) | Event::Touch(t) => t,
            Event::Overlap { start, .. } => start,
        }
    }

    pub fn end(&self) -> &Rational {
        match self {
            Event::Crossing(t) | Event::Touch(t) => t,
            Event::Overlap { end, .. } => end,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Event::Crossing(_) | Event::Overlap { crossing: true, .. })
    }
}

/// Closed parameter interval; `lo == hi` is an isolated point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(t: Rational) -> Self {
        Interval { lo: t.clone(), hi: t }
    }
}

#[derive(Debug, Clone)]
pub struct LineProfile {
    pub line: Line,
    /// Sorted by start parameter; starts are pairwise distinct.
    pub events: Vec<Event>,
    /// Maximal parameter intervals of the line inside the closed polygon.
    pub inside_intervals: Vec<Interval>,
}

impl LineProfile {
    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_crossing()).count()
    }

    pub fn components(&self) -> usize {
        self.inside_intervals.len()
    }
}

/// Classifies every incidence of `line` with the boundary of `p`.
///
/// An on-line vertex, or an on-line edge, is a crossing iff the boundary
/// vertices just before and just after it lie on opposite sides. Inside
/// intervals follow from a parity walk along the sorted events: the line
/// starts outside and switches state at each crossing.
pub fn line_profile(line: &Line, p: &Polygon) -> LineProfile {
    let n = p.len();
    let c: Vec<Rational> = p.vertices().iter().map(|v| line.side_value(v)).collect();
    let s: Vec<i8> = c.iter().map(sign).collect();
    let t: Vec<Rational> = p.vertices().iter().map(|v| line.param(v)).collect();
    let mut events = Vec::new();

    for i in 0..n {
        let j = (i + 1) % n;
        if s[i] * s[j] < 0 {
            let tc = &t[i] + (&t[j] - &t[i]) * &c[i] / (&c[i] - &c[j]);
            events.push(Event::Crossing(tc));
        }
    }
    // Runs of on-line vertices have length at most two because consecutive
    // collinear triples are rejected by validation.
    for i in 0..n {
        if s[i] != 0 || s[(i + n - 1) % n] == 0 {
            continue;
        }
        let before = s[(i + n - 1) % n];
        let j = (i + 1) % n;
        if s[j] == 0 {
            let after = s[(i + 2) % n];
            let (lo, hi) = if t[i] <= t[j] { (&t[i], &t[j]) } else { (&t[j], &t[i]) };
            events.push(Event::Overlap { start: lo.clone(), end: hi.clone(), crossing: before != after });
        } else if before != s[j] {
            events.push(Event::Crossing(t[i].clone()));
        } else {
            events.push(Event::Touch(t[i].clone()));
        }
    }
    events.sort_by(|a, b| a.start().cmp(b.start()));

    let mut inside_intervals = Vec::new();
    let mut open: Option<Rational> = None;
    for e in &events {
        match (e, open.take()) {
            (Event::Crossing(x), None) => open = Some(x.clone()),
            (Event::Crossing(x), Some(o)) => inside_intervals.push(Interval::new(o, x.clone())),
            (Event::Touch(x), None) => inside_intervals.push(Interval::point(x.clone())),
            (Event::Overlap { start, end, crossing: false }, None) => {
                inside_intervals.push(Interval::new(start.clone(), end.clone()))
            }
            (Event::Overlap { start, crossing: true, .. }, None) => open = Some(start.clone()),
            (Event::Overlap { end, crossing: true, .. }, Some(o)) => {
                inside_intervals.push(Interval::new(o, end.clone()))
            }
            (_, o @ Some(_)) => open = o,
        }
    }
    debug_assert!(open.is_none(), "crossing count must be even");
    LineProfile { line: line.clone(), events, inside_intervals }
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of boundary crossings of `line`, by the side-change rule.
pub fn crossing_count(line: &Line, p: &Polygon) -> usize {
    cyclic_sign_changes(p.vertices().iter().map(|v| sign(&line.side_value(v))))
}

/// Connected components of the line inside the closed polygon.
pub fn components_on_line(line: &Line, p: &Polygon) -> usize {
    line_profile(line, p).components()
}

/// Connected components of the closed segment `xy` inside the polygon.
pub fn segment_components(x: &Point, y: &Point, p: &Polygon) -> usize {
    let line = Line::through(x, y).expect("segment endpoints must differ");
    let (a, b) = (line.param(x), line.param(y));
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    line_profile(&line, p)
        .inside_intervals
        .iter()
        .filter(|iv| iv.hi >= lo && iv.lo <= hi)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabbingCertificate {
    pub value: usize,
    #[serde(serialize_with = "crate::io::ser_line")]
    pub witness: Line,
}

/// Exact maximum number of boundary crossings over all lines.
///
/// Every line that misses all vertices is equivalent to one of the
/// perturbation classes around a line through two vertices (or a vertical
/// line through one vertex), so the maximum over those classes is exact.
/// Ties keep the first class in enumeration order.
pub fn stabbing_number(p: &Polygon) -> StabbingCertificate {
    let pts = p.vertices();
    let mut best: Option<(usize, crate::arrangement::BaseLine, crate::arrangement::Perturb)> = None;
    let mut buf = Vec::with_capacity(pts.len());
    for_each_base_line(pts, |b| {
        for pert in b.perturbations() {
            b.perturbed_sides(pert, &mut buf);
            let v = cyclic_sign_changes(buf.iter().copied());
            if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
                best = Some((v, b.clone(), pert));
            }
        }
    });
    let (value, base, pert) = best.expect("a polygon has at least one base line");
    let witness = base.concrete(pts, pert);
    debug_assert_eq!(crossing_count(&witness, p), value);
    StabbingCertificate { value, witness }
}

/// True iff no line meets the polygon in more than `k` components.
pub fn is_k_convex(p: &Polygon, k: usize) -> bool {
    stabbing_number(p).value <= 2 * k
}

/// Largest component count over the base lines and all their perturbations,
/// computed from full line profiles. Equals half the stabbing number; kept
/// as an independent route to the degree of convexity.
pub fn convexity_degree_by_components(p: &Polygon) -> usize {
    let pts = p.vertices();
    let mut best = 0;
    for_each_base_line(pts, |b| {
        best = best.max(components_on_line(&b.line(pts), p));
        for pert in b.perturbations() {
            best = best.max(components_on_line(&b.concrete(pts, pert), p));
        }
    });
    best
}

/// Randomized lower bound: the best of `trials` lines through pairs of
/// random rational points in a box twice the polygon's extent.
pub fn stabbing_oracle(p: &Polygon, trials: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = p.bbox();
    let (w, h) = (&hi.x - &lo.x, &hi.y - &lo.y);
    let half = Rational::new(1.into(), 2.into());
    let (x0, y0) = (&lo.x - &w * &half, &lo.y - &h * &half);
    const RES: i64 = 1 << 20;
    let sample = |rng: &mut ChaCha8Rng| {
        let fx = Rational::new(rng.gen_range(0..=2 * RES).into(), RES.into());
        let fy = Rational::new(rng.gen_range(0..=2 * RES).into(), RES.into());
        Point::new(&x0 + &w * fx, &y0 + &h * fy)
    };
    let mut best = 0;
    for _ in 0..trials {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        if let Ok(line) = Line::through(&a, &b) {
            best = best.max(crossing_count(&line, p));
        }
    }
    best
}

/// Brute-force component count by merging the intervals each edge
/// contributes to the line, ignoring the polygon's orientation. Used as an
/// oracle for `line_profile`.
#[doc(hidden)]
pub fn components_by_sampling(line: &Line, p: &Polygon) -> usize {
    use crate::exactgeom::{point_in_polygon, Location};
    let prof_params: Vec<Rational> = {
        let mut ts: Vec<Rational> = Vec::new();
        let n = p.len();
        for i in 0..n {
            let (a, b) = p.edge(i);
            let (ca, cb) = (line.side_value(a), line.side_value(b));
            if ca.is_zero() {
                ts.push(line.param(a));
            }
            if (ca.is_positive() && cb.is_negative()) || (ca.is_negative() && cb.is_positive()) {
                let (ta, tb) = (line.param(a), line.param(b));
                ts.push(&ta + (&tb - &ta) * &ca / (&ca - &cb));
            }
        }
        ts.sort();
        ts.dedup();
        ts
    };
    // Classify every critical parameter and every gap midpoint, then count
    // maximal runs of inside-or-boundary samples.
    let mut samples = Vec::new();
    for (i, t) in prof_params.iter().enumerate() {
        samples.push(t.clone());
        if let Some(u) = prof_params.get(i + 1) {
            samples.push((t + u) / Rational::from_integer(2.into()));
        }
    }
    let mut count = 0;
    let mut prev_in = false;
    for t in &samples {
        let inside = point_in_polygon(&line.point_at(t), p) != Location::Outside;
        if inside && !prev_in {
            count += 1;
        }
        prev_in = inside;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, Direction};

    fn square() -> Polygon {
        Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn horizontal(y: Rational) -> Line {
        Line::new(Point::new(rat(0), y), Direction::new(rat(1), rat(0)).unwrap())
    }

    #[test]
    fn square_midline() {
        let pr = line_profile(&horizontal(Rational::new(1.into(), 2.into())), &square());
        assert_eq!(pr.crossing_count(), 2);
        assert_eq!(pr.inside_intervals, vec![Interval::new(rat(0), rat(1))]);
    }

    #[test]
    fn square_edge_line() {
        let pr = line_profile(&horizontal(rat(0)), &square());
        assert_eq!(pr.events, vec![Event::Overlap { start: rat(0), end: rat(1), crossing: false }]);
        assert_eq!(pr.crossing_count(), 0);
        assert_eq!(pr.components(), 1);
    }

    #[test]
    fn square_corner_touch() {
        let line = Line::through(&Point::from_ints(0, 0), &Point::from_ints(1, -1)).unwrap();
        let pr = line_profile(&line, &square());
        assert!(matches!(pr.events.as_slice(), [Event::Touch(_)]));
        assert_eq!(pr.crossing_count(), 0);
        assert_eq!(pr.components(), 1);
    }

    #[test]
    fn reflex_touch_inside_keeps_one_interval() {
        // Notched square: the line y = 1 passes through the notch apex.
        let p = Polygon::from_ints(&[(0, 0), (4, 0), (4, 2), (2, 1), (0, 2)]).unwrap();
        let pr = line_profile(&horizontal(rat(1)), &p);
        assert_eq!(pr.crossing_count(), 2);
        assert_eq!(pr.components(), 1);
        let pr = line_profile(&horizontal(Rational::new(3.into(), 2.into())), &p);
        assert_eq!(pr.components(), 2);
    }

    #[test]
    fn segment_components_clip() {
        let p = Polygon::from_ints(&[(0, 0), (4, 0), (4, 2), (2, 1), (0, 2)]).unwrap();
        let y = Rational::new(3.into(), 2.into());
        let a = Point::new(Rational::new(1.into(), 4.into()), y.clone());
        let b = Point::new(Rational::new(15.into(), 4.into()), y.clone());
        assert_eq!(segment_components(&a, &b, &p), 2);
        let c = Point::new(Rational::new(1.into(), 2.into()), y);
        assert_eq!(segment_components(&a, &c, &p), 1);
    }

    #[test]
    fn convex_stabbing_is_two() {
        let c = stabbing_number(&square());
        assert_eq!(c.value, 2);
        assert_eq!(crossing_count(&c.witness, &square()), 2);
        assert!(is_k_convex(&square(), 1));
    }

    #[test]
    fn notch_stabbing_is_four() {
        let p = Polygon::from_ints(&[(0, 0), (4, 0), (4, 2), (2, 1), (0, 2)]).unwrap();
        let c = stabbing_number(&p);
        assert_eq!(c.value, 4);
        assert_eq!(crossing_count(&c.witness, &p), 4);
        assert_eq!(convexity_degree_by_components(&p), 2);
        assert!(stabbing_oracle(&p, 2000, 0) <= 4);
    }

    #[test]
    fn sampling_oracle_agrees() {
        let p = Polygon::from_ints(&[(0, 0), (4, 0), (4, 2), (2, 1), (0, 2)]).unwrap();
        for y in [0, 1, 2] {
            let l = horizontal(rat(y));
            assert_eq!(components_by_sampling(&l, &p), components_on_line(&l, &p), "y = {y}");
        }
    }
}
