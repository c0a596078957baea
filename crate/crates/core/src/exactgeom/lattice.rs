//! Integer images of rational point sets.
//!
//! Sign predicates are invariant under positive scaling, so a point set is
//! multiplied by the lcm of its denominators and evaluated in `i128` when the
//! coordinates are small enough, falling back to `BigInt` otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Mul, Sub};

use super::Point;

pub(crate) trait Coord:
    Clone + Ord + Zero + Signed + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl Coord for i128 {}
impl Coord for BigInt {}

pub(crate) type IPoint<T> = [T; 2];

pub(crate) enum Lattice {
    Small(Vec<IPoint<i128>>),
    Big(Vec<IPoint<BigInt>>),
}

// |coordinate| < 2^61 keeps every 2x2 determinant of differences within i128.
const SMALL_LIMIT: i64 = 1 << 61;

impl Lattice {
    pub(crate) fn new(points: &[Point]) -> Lattice {
        let mut l = BigInt::one();
        for p in points {
            l = l.lcm(p.x.denom());
            l = l.lcm(p.y.denom());
        }
        let big: Vec<IPoint<BigInt>> = points
            .iter()
            .map(|p| {
                [
                    p.x.numer() * (&l / p.x.denom()),
                    p.y.numer() * (&l / p.y.denom()),
                ]
            })
            .collect();
        let small: Option<Vec<IPoint<i128>>> = big
            .iter()
            .map(|[x, y]| {
                let x = x.to_i64().filter(|v| v.abs() < SMALL_LIMIT)?;
                let y = y.to_i64().filter(|v| v.abs() < SMALL_LIMIT)?;
                Some([x as i128, y as i128])
            })
            .collect();
        match small {
            Some(s) => Lattice::Small(s),
            None => Lattice::Big(big),
        }
    }
}

pub(crate) fn cross<T: Coord>(a: &IPoint<T>, b: &IPoint<T>, c: &IPoint<T>) -> T {
    let (ux, uy) = (b[0].clone() - a[0].clone(), b[1].clone() - a[1].clone());
    let (vx, vy) = (c[0].clone() - a[0].clone(), c[1].clone() - a[1].clone());
    ux * vy - uy * vx
}

pub(crate) fn sign<T: Coord>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn on_seg<T: Coord>(p: &IPoint<T>, a: &IPoint<T>, b: &IPoint<T>) -> bool {
    let within = |k: usize| {
        let (lo, hi) = if a[k] <= b[k] { (&a[k], &b[k]) } else { (&b[k], &a[k]) };
        lo <= &p[k] && &p[k] <= hi
    };
    cross(a, b, p).is_zero() && within(0) && within(1)
}

/// Closed segments `ab` and `cd` share a point.
pub(crate) fn touch<T: Coord>(a: &IPoint<T>, b: &IPoint<T>, c: &IPoint<T>, d: &IPoint<T>) -> bool {
    let (o1, o2) = (sign(&cross(a, b, c)), sign(&cross(a, b, d)));
    let (o3, o4) = (sign(&cross(c, d, a)), sign(&cross(c, d, b)));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_seg(c, a, b) || on_seg(d, a, b) || on_seg(a, c, d) || on_seg(b, c, d)
}

/// Lowest pair of non-adjacent boundary edges of the closed chain `pts` that
/// touch, found by sweeping edges in order of their left ends.
pub(crate) fn first_touching_edges<T: Coord>(pts: &[IPoint<T>]) -> Option<(usize, usize)> {
    let n = pts.len();
    let span = |i: usize| {
        let (a, b) = (&pts[i][0], &pts[(i + 1) % n][0]);
        if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }
    };
    let spans: Vec<(T, T)> = (0..n).map(span).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| spans[i].0.cmp(&spans[j].0));
    let mut best: Option<(usize, usize)> = None;
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[oi + 1..] {
            if spans[j].0 > spans[i].1 {
                break;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            if hi == lo + 1 || (lo == 0 && hi == n - 1) {
                continue;
            }
            if touch(&pts[lo], &pts[(lo + 1) % n], &pts[hi], &pts[(hi + 1) % n]) && best.is_none_or(|b| (lo, hi) < b) {
                best = Some((lo, hi));
            }
        }
    }
    best
}
