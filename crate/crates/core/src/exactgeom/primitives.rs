use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use super::{GeomError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Collinear,
    Right,
}

impl Orientation {
    pub fn from_sign(s: &Rational) -> Self {
        match s.cmp(&Rational::zero()) {
            Ordering::Greater => Orientation::Left,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Less => Orientation::Right,
        }
    }

    /// +1 for left, 0 for collinear, -1 for right.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Left => 1,
            Orientation::Collinear => 0,
            Orientation::Right => -1,
        }
    }
}

/// A point with exact rational coordinates. Ordered lexicographically by
/// `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.dx, &self.y + &v.dy)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = Rational::from_integer(2.into());
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A free vector; unlike [`Direction`] it keeps its sign and length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub dx: Rational,
    pub dy: Rational,
}

impl Vector {
    pub fn new(dx: Rational, dy: Rational) -> Self {
        Vector { dx, dy }
    }

    pub fn cross(&self, other: &Vector) -> Rational {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        &self.dx * &other.dx + &self.dy * &other.dy
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector::new(&self.dx * s, &self.dy * s)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector::new(&self.dx + &other.dx, &self.dy + &other.dy)
    }

    pub fn neg(&self) -> Vector {
        Vector::new(-&self.dx, -&self.dy)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(&self) -> Vector {
        Vector::new(-&self.dy, self.dx.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }
}

/// Orientation of a line, without sign: normalized to coprime integer
/// components whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    dx: Rational,
    dy: Rational,
}

impl Direction {
    pub fn new(dx: Rational, dy: Rational) -> Result<Self, GeomError> {
        if dx.is_zero() && dy.is_zero() {
            return Err(GeomError::ZeroLength);
        }
        let l = dx.denom().lcm(dy.denom());
        let mut nx: BigInt = (&dx * Rational::from_integer(l.clone())).to_integer();
        let mut ny: BigInt = (&dy * Rational::from_integer(l)).to_integer();
        let g = nx.gcd(&ny);
        nx /= &g;
        ny /= &g;
        if nx.is_negative() || (nx.is_zero() && ny.is_negative()) {
            nx = -nx;
            ny = -ny;
        }
        Ok(Direction { dx: Rational::from_integer(nx), dy: Rational::from_integer(ny) })
    }

    pub fn from_vector(v: &Vector) -> Result<Self, GeomError> {
        Direction::new(v.dx.clone(), v.dy.clone())
    }

    pub fn dx(&self) -> &Rational {
        &self.dx
    }

    pub fn dy(&self) -> &Rational {
        &self.dy
    }

    pub fn vector(&self) -> Vector {
        Vector::new(self.dx.clone(), self.dy.clone())
    }
}

/// `anchor + t * dir` for real `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub anchor: Point,
    pub dir: Direction,
}

impl Line {
    pub fn new(anchor: Point, dir: Direction) -> Self {
        Line { anchor, dir }
    }

    pub fn through(p: &Point, q: &Point) -> Result<Self, GeomError> {
        Ok(Line::new(p.clone(), Direction::from_vector(&q.sub(p))?))
    }

    pub fn vertical(x: Rational) -> Self {
        Line::new(
            Point::new(x, Rational::zero()),
            Direction::new(Rational::zero(), Rational::one()).expect("nonzero"),
        )
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    pub fn param(&self, p: &Point) -> Rational {
        let d = self.dir.vector();
        d.dot(&p.sub(&self.anchor)) / d.dot(&d)
    }

    pub fn point_at(&self, t: &Rational) -> Point {
        self.anchor.add(&self.dir.vector().scale(t))
    }

    /// Signed side of `p`: positive when left of the direction.
    pub fn side_value(&self, p: &Point) -> Rational {
        self.dir.vector().cross(&p.sub(&self.anchor))
    }

    pub fn side(&self, p: &Point) -> Orientation {
        Orientation::from_sign(&self.side_value(p))
    }

    /// The constant `c` with `cross(dir, p) = c` for every point on the line.
    /// Together with `dir` it identifies the line uniquely.
    pub fn offset(&self) -> Rational {
        self.dir.vector().cross(&Vector::new(self.anchor.x.clone(), self.anchor.y.clone()))
    }

    /// Total order on lines, used for deterministic tie-breaking.
    pub fn canonical_cmp(&self, other: &Line) -> Ordering {
        self.dir.cmp(&other.dir).then_with(|| self.offset().cmp(&other.offset()))
    }

    pub fn same_line(&self, other: &Line) -> bool {
        self.dir == other.dir && self.offset() == other.offset()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::ZeroLength);
        }
        Ok(Segment { a, b })
    }
}

/// Half-line `origin + t * dir`, `t >= 0`. The direction keeps its sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    pub origin: Point,
    pub dir: Vector,
}

impl Ray {
    pub fn new(origin: Point, dir: Vector) -> Result<Self, GeomError> {
        if dir.is_zero() {
            return Err(GeomError::ZeroLength);
        }
        Ok(Ray { origin, dir })
    }
}

/// Sign of the determinant `(q - p) x (r - p)`; left means counterclockwise.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(&q.sub(p).cross(&r.sub(p)))
}

/// `p` lies on the closed segment `ab` (assumes `a != b` or `p == a`).
pub(crate) fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == Orientation::Collinear
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_touch(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Segments cross at a single point interior to both.
pub fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Intersection point of the supporting lines of `ab` and `cd`, if they are
/// not parallel.
pub fn segment_intersection_point(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = r.cross(&s);
    if denom.is_zero() {
        return None;
    }
    let t = c.sub(a).cross(&s) / denom;
    Some(a.add(&r.scale(&t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        // Points on y = x^3 with 1 + 2 + 3 != 0 are never collinear.
        assert_ne!(orientation(&p(1, 1), &p(2, 8), &p(3, 27)), Orientation::Collinear);
    }

    #[test]
    fn direction_is_canonical() {
        let d = Direction::new(rat(-2), rat(-4)).unwrap();
        assert_eq!((d.dx().clone(), d.dy().clone()), (rat(1), rat(2)));
        let d = Direction::new(rat(0), Rational::new((-3).into(), 7.into())).unwrap();
        assert_eq!((d.dx().clone(), d.dy().clone()), (rat(0), rat(1)));
        assert!(Direction::new(rat(0), rat(0)).is_err());
    }

    #[test]
    fn line_params_and_sides() {
        let l = Line::through(&p(0, 0), &p(2, 0)).unwrap();
        assert_eq!(l.param(&p(3, 5)), rat(3));
        assert_eq!(l.side(&p(3, 5)), Orientation::Left);
        assert_eq!(l.point_at(&rat(4)), p(4, 0));
        let m = Line::through(&p(7, 0), &p(-1, 0)).unwrap();
        assert!(l.same_line(&m));
    }

    #[test]
    fn segment_predicates() {
        assert!(segments_cross(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(!segments_cross(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 3)));
        assert!(segments_touch(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 3)));
        assert!(segments_touch(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(!segments_touch(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
        let x = segment_intersection_point(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)).unwrap();
        assert_eq!(x, p(1, 1));
    }
}
