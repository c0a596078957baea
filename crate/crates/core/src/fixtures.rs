//! Deterministic generators for the polygon families used as test corpora.
//!
//! Each generator documents its coordinate recipe and checks the property the
//! family is meant to exhibit before returning; a recipe that fails its check
//! yields `PropertyAssertionFailed` rather than a wrong fixture.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactgeom::{
    convex_hull, orientation, rat, segment_intersection_point, vertex_kind, GeomError, Line, Orientation,
    Point, Polygon, Rational, VertexKind,
};
use crate::regions::intersection_nonempty;
use crate::stabbing::stabbing_number;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("generated fixture lacks its defining property: {0}")]
    PropertyAssertionFailed(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type FixtureResult<T> = Result<T, FixtureError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureName {
    ConvexNgon,
    Comb,
    PseudoTriangle,
    SpikeRect,
    SpikyStar,
    ManyPockets,
    Amoeba,
    HellyFamily,
    QuadRow,
    InterlockCombs,
    Random,
    TwoConvexNotStar,
}

impl FixtureName {
    pub fn parse(s: &str) -> Option<FixtureName> {
        serde_json::from_value(serde_json::Value::String(s.replace('-', "_"))).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub name: FixtureName,
    pub params: BTreeMap<String, i64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Single(Polygon),
    Family(Vec<Polygon>),
}

impl Fixture {
    pub fn polygons(&self) -> Vec<&Polygon> {
        match self {
            Fixture::Single(p) => vec![p],
            Fixture::Family(v) => v.iter().collect(),
        }
    }
}

fn param(spec: &FixtureSpec, key: &str, default: Option<i64>) -> FixtureResult<usize> {
    let v = match (spec.params.get(key), default) {
        (Some(&v), _) | (None, Some(v)) => v,
        (None, None) => return Err(FixtureError::ParamOutOfRange(format!("missing parameter {key}"))),
    };
    usize::try_from(v).map_err(|_| FixtureError::ParamOutOfRange(format!("{key} = {v}")))
}

/// Dispatches on `spec.name`. Parameter names: `n` (convex_ngon, many_pockets,
/// random, quad_row), `k` (comb, amoeba, interlock_combs), `extra` (comb,
/// vertices per tine side), `a`/`b`/`c` (pseudo_triangle), `s` (spike_rect),
/// `m` (spiky_star, helly_family, interlock_combs).
pub fn generate(spec: &FixtureSpec) -> FixtureResult<Fixture> {
    use FixtureName::*;
    Ok(match spec.name {
        ConvexNgon => Fixture::Single(convex_ngon(param(spec, "n", Some(6))?)?),
        Comb => Fixture::Single(comb_with_extras(param(spec, "k", Some(3))?, param(spec, "extra", Some(0))?)?),
        PseudoTriangle => {
            let a = param(spec, "a", Some(3))?;
            Fixture::Single(pseudo_triangle(a, param(spec, "b", Some(a as i64))?, param(spec, "c", Some(a as i64))?)?)
        }
        SpikeRect => Fixture::Single(spike_rect(param(spec, "s", Some(2))?)?),
        SpikyStar => Fixture::Single(spiky_star(param(spec, "m", Some(5))?)?),
        ManyPockets => Fixture::Single(many_pockets(param(spec, "n", Some(16))?)?),
        Amoeba => Fixture::Single(amoeba(param(spec, "k", Some(4))?)?),
        HellyFamily => Fixture::Family(helly_family(param(spec, "m", Some(3))?)?),
        QuadRow => Fixture::Family(quad_row(param(spec, "n", Some(4))?)?),
        InterlockCombs => {
            let (a, b) = interlock_combs(param(spec, "k", Some(2))?, param(spec, "m", Some(2))?)?;
            Fixture::Family(vec![a, b])
        }
        Random => Fixture::Single(random_simple_polygon(param(spec, "n", Some(12))?, spec.seed)?),
        TwoConvexNotStar => Fixture::Single(two_convex_not_star()?),
    })
}

fn fail<T>(msg: impl Into<String>) -> FixtureResult<T> {
    Err(FixtureError::PropertyAssertionFailed(msg.into()))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pt(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

/// Exact rational point on the circle of radius `r` near angle `theta`
/// (|theta| < pi), from the rational parametrization with t ~ tan(theta/2).
pub(crate) fn circle_point(theta: f64, r: &Rational) -> Point {
    let (c, s) = rational_rotation(theta);
    Point::new(c * r, s * r)
}

/// Exact (cos, sin) pair with cos^2 + sin^2 = 1 approximating `theta`.
pub(crate) fn rational_rotation(theta: f64) -> (Rational, Rational) {
    let mut th = theta % (2.0 * PI);
    if th > PI {
        th -= 2.0 * PI;
    }
    if th < -PI {
        th += 2.0 * PI;
    }
    let t = Rational::new((((th / 2.0).tan() * 65536.0).round() as i64).into(), 65536.into());
    let one = Rational::one();
    let den = &one + &t * &t;
    ((&one - &t * &t) / &den, (&t + &t) / &den)
}

fn convex_count(p: &Polygon) -> usize {
    (0..p.len()).filter(|&i| vertex_kind(p, i) == VertexKind::Convex).count()
}

/// Convex polygon on `n` exact points of a circle of radius 1000.
pub fn convex_ngon(n: usize) -> FixtureResult<Polygon> {
    if n < 3 {
        return Err(FixtureError::ParamOutOfRange(format!("n = {n} < 3")));
    }
    let r = rat(1000);
    let pts = (0..n).map(|i| circle_point(-PI + 2.0 * PI * (i as f64 + 0.5) / n as f64, &r)).collect();
    let p = Polygon::new(pts)?;
    if !p.is_convex() {
        return fail("convex_ngon is not convex");
    }
    Ok(p)
}

/// Comb with `k` horizontal tines of height 1 separated by gaps of height 1,
/// attached to a spine `0 <= x <= 1`; 4k vertices.
pub fn comb(k: usize) -> FixtureResult<Polygon> {
    comb_with_extras(k, 0)
}

/// Comb whose tine sides carry `extra` additional vertices each, on a slight
/// outward parabolic bulge, with abscissae staggered per tine so that the
/// vertex x-order interleaves all tines. 4k + 2k·extra vertices.
pub fn comb_with_extras(k: usize, extra: usize) -> FixtureResult<Polygon> {
    let p = comb_unchecked(k, extra)?;
    let s = stabbing_number(&p).value;
    if s != 2 * k {
        return fail(format!("comb({k}) has stabbing number {s}"));
    }
    Ok(p)
}

pub fn comb_unchecked(k: usize, extra: usize) -> FixtureResult<Polygon> {
    if k < 1 {
        return Err(FixtureError::ParamOutOfRange("comb needs k >= 1".into()));
    }
    let bulge = q(1, 4);
    let xs = |i: usize| -> Vec<Rational> {
        let off = q(i as i64, k as i64 + 1);
        (1..=extra)
            .map(|j| rat(1) + rat(3) * (rat(j as i64) - rat(1) + &off + q(1, 2)) / rat(extra as i64 + 1))
            .collect()
    };
    let bump = |x: &Rational| {
        let u = (x - rat(1)) / rat(3);
        &bulge * &u * (rat(1) - &u)
    };
    let mut v = Vec::with_capacity(4 * k + 2 * k * extra);
    for i in 0..k {
        let (y0, y1) = (rat(2 * i as i64), rat(2 * i as i64 + 1));
        v.push(if i == 0 { pt(rat(0), rat(0)) } else { pt(rat(1), y0.clone()) });
        let ex = xs(i);
        for x in &ex {
            v.push(pt(x.clone(), &y0 - bump(x)));
        }
        v.push(pt(rat(4), y0));
        v.push(pt(rat(4), y1.clone()));
        for x in ex.iter().rev() {
            v.push(pt(x.clone(), &y1 + bump(x)));
        }
        v.push(if i == k - 1 { pt(rat(0), y1) } else { pt(rat(1), y1) });
    }
    Ok(Polygon::new(v)?)
}

/// Pseudo-triangle with corners (0,0), (24,0), (12,20) and `a`, `b`, `c`
/// vertices on inward parabolic dents of the three sides.
pub fn pseudo_triangle(a: usize, b: usize, c: usize) -> FixtureResult<Polygon> {
    let corners = [pt(rat(0), rat(0)), pt(rat(24), rat(0)), pt(rat(12), rat(20))];
    let mut v = Vec::new();
    for (s, &cnt) in [a, b, c].iter().enumerate() {
        let (p0, p1) = (&corners[s], &corners[(s + 1) % 3]);
        let d = p1.sub(p0);
        let inward = d.perp();
        v.push(p0.clone());
        for j in 1..=cnt {
            let u = q(j as i64, cnt as i64 + 1);
            let dent = q(1, 2) * &u * (rat(1) - &u);
            v.push(p0.add(&d.scale(&u)).add(&inward.scale(&dent)));
        }
    }
    let p = Polygon::new(v)?;
    if convex_count(&p) != 3 {
        return fail("pseudo-triangle must have exactly three convex vertices");
    }
    if stabbing_number(&p).value > 4 {
        return fail("pseudo-triangle stabbing number exceeds 4");
    }
    Ok(p)
}

/// Square of side 4s+1 with `s` thin outward triangular spikes on each side.
/// Each spike contributes base, apex, base vertices; apex is convex, both
/// bases reflex.
pub fn spike_rect(s: usize) -> FixtureResult<Polygon> {
    if s < 1 {
        return Err(FixtureError::ParamOutOfRange("spike_rect needs s >= 1".into()));
    }
    let w = rat(4 * s as i64 + 1);
    let mut side = vec![pt(rat(0), rat(0))];
    for j in 0..s {
        let x = rat(4 * j as i64 + 2);
        side.push(pt(x.clone(), rat(0)));
        side.push(pt(&x + q(1, 4), rat(-3)));
        side.push(pt(&x + q(1, 2), rat(0)));
    }
    let c = &w / rat(2);
    let mut v = Vec::new();
    let mut cur = side;
    for _ in 0..4 {
        v.extend(cur.iter().cloned());
        // Quarter turn counterclockwise about the centre.
        cur = cur.iter().map(|p| pt(&c - (&p.y - &c), &c + (&p.x - &c))).collect();
    }
    let p = Polygon::new(v)?;
    for i in 0..p.len() {
        if i % (3 * s + 1) != 0 && (i % (3 * s + 1)) % 3 == 2 {
            let ok = vertex_kind(&p, i) == VertexKind::Convex
                && vertex_kind(&p, i - 1) == VertexKind::Reflex
                && vertex_kind(&p, i + 1) == VertexKind::Reflex;
            if !ok {
                return fail("spike apex must be convex with reflex neighbours");
            }
        }
    }
    Ok(p)
}

/// Star-shaped fan of `m` long spikes inside a 120 degree sector at the
/// origin. Every spike can be crossed by one line, so the stabbing number is
/// 2m = n.
pub fn spiky_star(m: usize) -> FixtureResult<Polygon> {
    if m < 2 {
        return Err(FixtureError::ParamOutOfRange("spiky_star needs m >= 2".into()));
    }
    let (big, small) = (rat(20), rat(2));
    let alpha = PI / 3.0;
    let ang = |i: f64| PI / 2.0 - alpha + 2.0 * alpha * i / (m as f64 - 1.0);
    let mut v = vec![pt(rat(0), rat(0))];
    for i in 0..m {
        v.push(circle_point(ang(i as f64), &big));
        if i + 1 < m {
            v.push(circle_point(ang(i as f64 + 0.5), &small));
        }
    }
    let p = Polygon::new(v)?;
    if stabbing_number(&p).value != 2 * m {
        return fail("spiky star must have stabbing number 2m");
    }
    if kernel_point(&p).is_none() {
        return fail("spiky star must be star-shaped");
    }
    Ok(p)
}

/// `n/2` exact points on a circle alternating with shallow notches at the
/// chord midpoints: 2-convex with n/2 pockets.
pub fn many_pockets(n: usize) -> FixtureResult<Polygon> {
    if n < 6 || n % 2 == 1 {
        return Err(FixtureError::ParamOutOfRange(format!("many_pockets needs even n >= 6, got {n}")));
    }
    let h = n / 2;
    let r = rat(1000);
    let hull: Vec<Point> =
        (0..h).map(|i| circle_point(-PI + 2.0 * PI * (i as f64 + 0.5) / h as f64, &r)).collect();
    let lambda = q(1, 4 * (h * h) as i64);
    let mut v = Vec::with_capacity(n);
    for i in 0..h {
        let mid = hull[i].midpoint(&hull[(i + 1) % h]);
        v.push(hull[i].clone());
        v.push(pt(&mid.x * (rat(1) - &lambda), &mid.y * (rat(1) - &lambda)));
    }
    let p = Polygon::new(v)?;
    if convex_hull(p.vertices())?.len() != h {
        return fail("many_pockets hull must have n/2 vertices");
    }
    if stabbing_number(&p).value > 4 {
        return fail("many_pockets must be 2-convex");
    }
    Ok(p)
}

/// Amoeba with `k` hull vertices and 2k^2 vertices. Each hull edge of a
/// near-regular k-gon is replaced by a shallow dip following
/// 16 h x^2 (1-x)^2: convex shoulders near the corners and k reflex vertices
/// at the bottom. Each corner with its two shoulders is a convex chain of k
/// vertices, each bottom a reflex chain of k vertices.
pub fn amoeba(k: usize) -> FixtureResult<Polygon> {
    if k < 3 {
        return Err(FixtureError::ParamOutOfRange("amoeba needs k >= 3".into()));
    }
    let kk = k as i64;
    let radius = rat(8 * kk);
    let corners: Vec<Point> = (0..k).map(|i| circle_point(2.0 * PI * i as f64 / k as f64, &radius)).collect();
    let depth = q(1, 4 * kk);
    // shoulder vertices after the corner (a) and before the next one (b)
    let a = k / 2;
    let b = k - 1 - a;
    let mut xs: Vec<Rational> = Vec::with_capacity(2 * k - 1);
    xs.extend((1..=a as i64).map(|j| q(j, 5 * (a as i64 + 1))));
    xs.extend((0..kk).map(|j| q(1, 4) + q(j, 2 * (kk - 1))));
    xs.extend((1..=b as i64).rev().map(|j| rat(1) - q(j, 5 * (b as i64 + 1))));
    let mut v = Vec::with_capacity(2 * k * k);
    for i in 0..k {
        let c0 = &corners[i];
        let d = corners[(i + 1) % k].sub(c0);
        let inward = d.perp();
        v.push(c0.clone());
        for x in &xs {
            let om = rat(1) - x;
            let s = rat(16) * x * x * &om * &om * &depth;
            v.push(c0.add(&d.scale(x)).add(&inward.scale(&s)));
        }
    }
    let p = Polygon::new(v)?;
    let reflex_ok = (0..2 * k * k).all(|i| {
        let j = i % (2 * k);
        (vertex_kind(&p, i) == VertexKind::Reflex) == (j > a && j <= a + k)
    });
    if !reflex_ok {
        return fail(format!("amoeba({k}) shoulders and bottoms are not convex and reflex runs"));
    }
    if convex_hull(p.vertices())?.len() != k {
        return fail(format!("amoeba({k}) hull size differs from {k}"));
    }
    let s = stabbing_number(&p).value;
    if s > 4 {
        return fail(format!("amoeba({k}) has stabbing number {s}"));
    }
    Ok(p)
}

/// Thick open rings around a near-regular m-gon: member i follows the
/// boundary without edge i and without a short piece of its two neighbours,
/// thickened radially by a factor 1 +- tau. Every m-1 members share the
/// midpoint of the edge missing from the remaining one, but no point lies in
/// all m members.
pub fn helly_family(m: usize) -> FixtureResult<Vec<Polygon>> {
    if m < 3 {
        return Err(FixtureError::ParamOutOfRange("helly_family needs m >= 3".into()));
    }
    let mm = (m * m) as i64;
    let trim = q(1, 10 * mm);
    let mut tau = q(1, 10 * mm);
    for _ in 0..24 {
        let fam = helly_members(m, &tau, &trim)?;
        if helly_verified(&fam) {
            return Ok(fam);
        }
        tau /= rat(2);
    }
    fail(format!("helly_family({m}) did not verify"))
}

fn helly_members(m: usize, tau: &Rational, trim: &Rational) -> FixtureResult<Vec<Polygon>> {
    let r = rat(1000);
    let corners: Vec<Point> =
        (0..m).map(|i| circle_point(-PI + 2.0 * PI * (i as f64 + 0.5) / m as f64, &r)).collect();
    let at = |i: usize| &corners[i % m];
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        // Edge i joins corners i and i+1; walk from corner i+1 around to i.
        let mut chain: Vec<Point> = Vec::with_capacity(m);
        let s = at(i + 1).add(&at(i + 2).sub(at(i + 1)).scale(trim));
        let e = at(i).add(&at(i + m - 1).sub(at(i)).scale(trim));
        chain.push(s);
        for j in 2..m {
            chain.push(at(i + j).clone());
        }
        chain.push(e);
        let outer = rat(1) + tau;
        let inner = rat(1) - tau;
        let mut v: Vec<Point> = chain.iter().map(|p| pt(&p.x * &outer, &p.y * &outer)).collect();
        v.extend(chain.iter().rev().map(|p| pt(&p.x * &inner, &p.y * &inner)));
        out.push(Polygon::new(v)?);
    }
    Ok(out)
}

fn helly_verified(fam: &[Polygon]) -> bool {
    if fam.iter().any(|p| stabbing_number(p).value > 4) {
        return false;
    }
    if intersection_nonempty(fam).is_some() {
        return false;
    }
    (0..fam.len()).all(|skip| {
        let sub: Vec<Polygon> =
            fam.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| p.clone()).collect();
        intersection_nonempty(&sub).is_some()
    })
}

/// Row of `n` chevron quadrilaterals. Vertex order of each quad is
/// a (reflex notch), d (right tip), c (apex), b (left tip). The notches
/// a_i = (6i, i^2/D) lie on a parabola, so no three are collinear, and D is
/// doubled until every line a_i a_j passes above b_k and d_k and below c_k.
pub fn quad_row(n: usize) -> FixtureResult<Vec<Polygon>> {
    if n < 1 {
        return Err(FixtureError::ParamOutOfRange("quad_row needs n >= 1".into()));
    }
    let mut den = 16i64;
    for _ in 0..40 {
        let quads: Vec<Polygon> = (0..n)
            .map(|i| {
                let x = rat(6 * i as i64);
                let dy = q((i * i) as i64, den);
                Polygon::new(vec![
                    pt(x.clone(), dy),
                    pt(&x + rat(2), rat(-1)),
                    pt(x.clone(), rat(2)),
                    pt(&x - rat(2), rat(-1)),
                ])
            })
            .collect::<Result<_, _>>()?;
        if quad_row_verified(&quads) {
            return Ok(quads);
        }
        den *= 2;
    }
    fail("quad_row perturbation did not verify")
}

fn quad_row_verified(quads: &[Polygon]) -> bool {
    let n = quads.len();
    if quads.iter().any(|p| vertex_kind(p, 0) != VertexKind::Reflex) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let (ai, aj) = (quads[i].vertex(0), quads[j].vertex(0));
            for (k, qk) in quads.iter().enumerate() {
                if k != i && k != j && orientation(ai, aj, qk.vertex(0)) == Orientation::Collinear {
                    return false;
                }
                let below = |v: &Point| orientation(ai, aj, v) == Orientation::Right;
                let above = |v: &Point| orientation(ai, aj, v) == Orientation::Left;
                if !(below(qk.vertex(1)) && above(qk.vertex(2)) && below(qk.vertex(3))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Vertical comb: tines over the x-intervals `tines`, from y = 0 up to
/// `height`, on a spine -1 <= y <= 0.
fn vertical_comb(tines: &[(Rational, Rational)], height: &Rational) -> FixtureResult<Polygon> {
    let t = tines.len();
    let mut v = vec![pt(tines[0].0.clone(), rat(-1)), pt(tines[t - 1].1.clone(), rat(-1))];
    for i in (0..t).rev() {
        v.push(pt(tines[i].1.clone(), height.clone()));
        v.push(pt(tines[i].0.clone(), height.clone()));
        if i > 0 {
            v.push(pt(tines[i].0.clone(), rat(0)));
            v.push(pt(tines[i - 1].1.clone(), rat(0)));
        }
    }
    Ok(Polygon::new(v)?)
}

/// Two interlocking vertical combs with `k` and `m` tines (|k - m| <= 1):
/// the first rises from below with tines over [4i, 4i+3], the second hangs
/// from above with tines over [4j+2, 4j+5]. A horizontal line through the
/// overlap meets their intersection in k + m - 1 components.
pub fn interlock_combs(k: usize, m: usize) -> FixtureResult<(Polygon, Polygon)> {
    if k < 1 || m < 1 || k.abs_diff(m) > 1 {
        return Err(FixtureError::ParamOutOfRange(format!("interlock_combs needs |k - m| <= 1, got {k}, {m}")));
    }
    let lower: Vec<(Rational, Rational)> =
        (0..k as i64).map(|i| (rat(4 * i), rat(4 * i + 3))).collect();
    let j0: i64 = if m > k { -1 } else { 0 };
    let upper: Vec<(Rational, Rational)> =
        (j0..j0 + m as i64).map(|j| (rat(4 * j + 2), rat(4 * j + 5))).collect();
    let q1 = vertical_comb(&lower, &rat(10))?;
    let q2 = vertical_comb(&upper, &rat(10))?.map_points(|p| pt(p.x.clone(), rat(12) - &p.y))?;
    check_degree(&q1, k)?;
    check_degree(&q2, m)?;
    Ok((q1, q2))
}

/// Two disjoint horizontal combs with `k` and `m` tines stacked so that a
/// vertical line crosses every tine of both.
pub fn aligned_combs(k: usize, m: usize) -> FixtureResult<(Polygon, Polygon)> {
    let q1 = comb(k)?;
    let shift = rat(2 * k as i64 + 1);
    let q2 = comb(m)?.map_points(|p| pt(p.x.clone(), &p.y + &shift))?;
    Ok((q1, q2))
}

/// `m` vertical combs with `k` tines each over the common span [0, 2G+1],
/// G = m(k-1). Slot g = [2g+1, 2g+2] is a gap of comb g mod m, so all gaps
/// are disjoint and a horizontal line meets the intersection in G + 1
/// components.
pub fn comb_family(m: usize, k: usize) -> FixtureResult<Vec<Polygon>> {
    if m < 1 || k < 1 {
        return Err(FixtureError::ParamOutOfRange("comb_family needs m, k >= 1".into()));
    }
    let g = (m * (k - 1)) as i64;
    (0..m)
        .map(|i| {
            let mut tines = Vec::new();
            let mut start = rat(0);
            for slot in (0..g).filter(|s| (*s as usize) % m == i) {
                tines.push((start.clone(), rat(2 * slot + 1)));
                start = rat(2 * slot + 2);
            }
            tines.push((start, rat(2 * g + 1)));
            let p = vertical_comb(&tines, &rat(10))?;
            check_degree(&p, k)?;
            Ok(p)
        })
        .collect()
}

fn check_degree(p: &Polygon, k: usize) -> FixtureResult<()> {
    let s = stabbing_number(p).value;
    if s != 2 * k {
        return fail(format!("comb expected stabbing number {}, got {s}", 2 * k));
    }
    Ok(())
}

/// A point of the kernel (points seeing the whole polygon), if any. The
/// kernel is the intersection of the inner half-planes of all edges; when
/// nonempty it contains a point where two edge lines meet.
pub fn kernel_point(p: &Polygon) -> Option<Point> {
    let n = p.len();
    let in_kernel =
        |x: &Point| (0..n).all(|i| orientation(p.vertex(i), p.vertex(i + 1), x) != Orientation::Right);
    if let Some(v) = p.vertices().iter().find(|v| in_kernel(v)) {
        return Some(v.clone());
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = p.edge(i);
            let (c, d) = p.edge(j);
            if let Some(x) = segment_intersection_point(a, b, c, d) {
                if in_kernel(&x) {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// A 2-convex polygon with empty kernel: one member of the five-member Helly
/// family (a thick ring with one side missing).
pub fn two_convex_not_star() -> FixtureResult<Polygon> {
    let p = helly_family(5)?.swap_remove(0);
    if stabbing_number(&p).value > 4 || kernel_point(&p).is_some() {
        return fail("two_convex_not_star must be 2-convex with empty kernel");
    }
    Ok(p)
}

/// Random simple polygon on `n` random lattice points by recursive space
/// partitioning: the points are split by the line through two of them, and
/// every half is turned into a chain by repeatedly splitting at a random
/// point with a random line through it that meets the chain's base segment.
pub fn random_simple_polygon(n: usize, seed: u64) -> FixtureResult<Polygon> {
    if n < 3 {
        return Err(FixtureError::ParamOutOfRange(format!("n = {n} < 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let pts = random_points(&mut rng, n);
        if let Some(poly) = partition_polygon(&mut rng, &pts) {
            if let Ok(p) = Polygon::new(poly) {
                return Ok(p);
            }
        }
    }
    fail("random polygon generation did not converge")
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    let side = (16 * n as i64).max(64);
    loop {
        let pts: Vec<Point> =
            (0..n).map(|_| Point::from_ints(rng.gen_range(0..side), rng.gen_range(0..side))).collect();
        let general = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                pts[i] != pts[j]
                    && (j + 1..n).all(|k| orientation(&pts[i], &pts[j], &pts[k]) != Orientation::Collinear)
            })
        });
        if general {
            return pts;
        }
    }
}

fn partition_polygon(rng: &mut ChaCha8Rng, pts: &[Point]) -> Option<Vec<Point>> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.shuffle(rng);
    let (f, l) = (idx[0], idx[1]);
    let (mut upper, mut lower) = (Vec::new(), Vec::new());
    for &i in &idx[2..] {
        match orientation(&pts[f], &pts[l], &pts[i]) {
            Orientation::Left => upper.push(i),
            Orientation::Right => lower.push(i),
            Orientation::Collinear => return None,
        }
    }
    let mut a = chain(rng, pts, f, l, upper)?;
    let b = chain(rng, pts, f, l, lower)?;
    a.extend(b[1..b.len() - 1].iter().rev());
    Some(a.into_iter().map(|i| pts[i].clone()).collect())
}

/// Chain from `f` to `l` through all of `set`, which lies on one side of fl.
fn chain(rng: &mut ChaCha8Rng, pts: &[Point], f: usize, l: usize, set: Vec<usize>) -> Option<Vec<usize>> {
    if set.is_empty() {
        return Some(vec![f, l]);
    }
    let s = set[rng.gen_range(0..set.len())];
    // Random point strictly inside segment fl fixes the splitting line.
    let u = Rational::new(rng.gen_range(1..1024).into(), 1024.into());
    let on_base = pts[f].add(&pts[l].sub(&pts[f]).scale(&u));
    let split = Line::through(&pts[s], &on_base).ok()?;
    let side_f = split.side_value(&pts[f]);
    let (mut near_f, mut near_l) = (Vec::new(), Vec::new());
    for &i in set.iter().filter(|&&i| i != s) {
        let v = split.side_value(&pts[i]);
        if v.is_zero() {
            return None;
        }
        if v.is_positive() == side_f.is_positive() {
            near_f.push(i);
        } else {
            near_l.push(i);
        }
    }
    let mut a = chain(rng, pts, f, s, near_f)?;
    let b = chain(rng, pts, s, l, near_l)?;
    a.pop();
    a.extend(b);
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{in_convex_position, point_in_polygon, Location};

    #[test]
    fn circle_points_are_exact() {
        for i in 0..12 {
            let p = circle_point(i as f64, &rat(5));
            assert_eq!(&p.x * &p.x + &p.y * &p.y, rat(25));
        }
    }

    #[test]
    fn comb_shapes() {
        let c1 = comb(1).unwrap();
        assert_eq!(c1.len(), 4);
        assert_eq!(stabbing_number(&c1).value, 2);
        let c3 = comb(3).unwrap();
        assert_eq!(c3.len(), 12);
        let c = comb_with_extras(4, 3).unwrap();
        assert_eq!(c.len(), 4 * 4 + 2 * 4 * 3);
    }

    #[test]
    fn pseudo_triangles() {
        for l in [0, 1, 3, 7] {
            let p = pseudo_triangle(l, l, l).unwrap();
            assert_eq!(p.len(), 3 + 3 * l);
        }
    }

    #[test]
    fn spikes_and_stars() {
        let p = spike_rect(2).unwrap();
        assert_eq!(p.len(), 4 * (1 + 3 * 2));
        let s = spiky_star(5).unwrap();
        assert_eq!(s.len(), 10);
        assert!(kernel_point(&s).is_some());
    }

    #[test]
    fn pockets() {
        let p = many_pockets(16).unwrap();
        assert_eq!(convex_hull(p.vertices()).unwrap().len(), 8);
    }

    #[test]
    fn amoeba_small() {
        for k in 3..=5 {
            let p = amoeba(k).unwrap();
            assert_eq!(p.len(), 2 * k * k);
        }
    }

    #[test]
    fn helly_three() {
        let fam = helly_family(3).unwrap();
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn quad_row_conditions() {
        let quads = quad_row(4).unwrap();
        let notches: Vec<Point> = quads.iter().map(|p| p.vertex(0).clone()).collect();
        assert!((0..4).all(|i| vertex_kind(&quads[i], 0) == VertexKind::Reflex));
        assert!(in_convex_position(&notches));
    }

    #[test]
    fn interlock_and_families() {
        let (a, b) = interlock_combs(2, 3).unwrap();
        assert_eq!(stabbing_number(&a).value, 4);
        assert_eq!(stabbing_number(&b).value, 6);
        let fam = comb_family(3, 2).unwrap();
        assert_eq!(fam.len(), 3);
        let (u, v) = aligned_combs(2, 3).unwrap();
        assert!(point_in_polygon(&Point::from_ints(2, 0), &u) != Location::Outside);
        assert_eq!(point_in_polygon(&Point::from_ints(2, 0), &v), Location::Outside);
    }

    #[test]
    fn random_polygons_are_deterministic() {
        let a = random_simple_polygon(20, 7).unwrap();
        let b = random_simple_polygon(20, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(random_simple_polygon(3, 1).unwrap().len(), 3);
        for seed in 0..5 {
            assert_eq!(random_simple_polygon(40, seed).unwrap().len(), 40);
        }
    }

    #[test]
    fn not_star_shaped() {
        let p = two_convex_not_star().unwrap();
        assert!(kernel_point(&p).is_none());
    }
}
