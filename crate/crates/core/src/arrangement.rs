//! Enumeration of one representative line per cell of the dual arrangement
//! of a point set.
//!
//! Two lines that see every point of the set on the same side are
//! combinatorially equivalent for anything decided by edge crossings. Each
//! such class (a cell of the dual line arrangement) has in its closure a line
//! through at least two of the points, or a vertical line through one point.
//! Around such a base line, the nearby generic lines are classified by where
//! they cross the base line (between which two consecutive on-line points, or
//! not at all) and by the sign of the rotation. Every class is produced
//! symbolically as a sign vector and, on demand, as a concrete rational line.

use num_traits::{Signed, Zero};

use crate::exactgeom::lattice::{cross, sign, Coord, IPoint, Lattice};
use crate::exactgeom::{orientation, Direction, Line, Point, Rational, Vector};

/// A line through at least two of the points (or a vertical line through one
/// point that shares its abscissa with no other point).
#[derive(Debug, Clone)]
pub(crate) struct BaseLine {
    pub anchor: usize,
    /// Second defining point; `None` for a vertical line.
    pub toward: Option<usize>,
    /// Points on the line, sorted along the direction `anchor -> toward`.
    pub on_line: Vec<usize>,
    /// Side of every point: +1 left, -1 right, 0 on the line.
    pub sides: Vec<i8>,
}

/// A perturbation class of lines near a base line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Perturb {
    /// Parallel shift; all on-line points end up on side `sign`.
    Translate(i8),
    /// Rotation about a pivot strictly between `on_line[gap]` and
    /// `on_line[gap + 1]`.
    Rotate { gap: usize, sign: i8 },
}

impl BaseLine {
    pub fn perturbations(&self) -> Vec<Perturb> {
        let mut out = vec![Perturb::Translate(1), Perturb::Translate(-1)];
        for gap in 0..self.on_line.len().saturating_sub(1) {
            out.push(Perturb::Rotate { gap, sign: 1 });
            out.push(Perturb::Rotate { gap, sign: -1 });
        }
        out
    }

    /// Side vector of the perturbed line; never zero.
    pub fn perturbed_sides(&self, p: Perturb, out: &mut Vec<i8>) {
        out.clear();
        out.extend_from_slice(&self.sides);
        for (rank, &i) in self.on_line.iter().enumerate() {
            out[i] = match p {
                Perturb::Translate(s) => s,
                Perturb::Rotate { gap, sign } => {
                    if rank > gap {
                        -sign
                    } else {
                        sign
                    }
                }
            };
        }
    }

    fn direction(&self, pts: &[Point]) -> Vector {
        match self.toward {
            Some(v) => pts[v].sub(&pts[self.anchor]),
            None => Vector::new(Rational::zero(), Rational::from_integer(1.into())),
        }
    }

    /// The unperturbed line itself.
    pub fn line(&self, pts: &[Point]) -> Line {
        let d = self.direction(pts);
        Line::new(pts[self.anchor].clone(), Direction::from_vector(&d).expect("distinct points"))
    }

    /// A rational line realizing the perturbation class `p`: no point of
    /// `pts` lies on it and its side vector equals `perturbed_sides(p)` up to
    /// a global sign flip.
    pub fn concrete(&self, pts: &[Point], p: Perturb) -> Line {
        let d = self.direction(pts);
        let n = d.perp();
        let a = &pts[self.anchor];
        let half = Rational::new(1.into(), 2.into());
        match p {
            Perturb::Translate(s) => {
                let dd = d.dot(&d);
                let eta = pts
                    .iter()
                    .map(|q| d.cross(&q.sub(a)).abs())
                    .filter(|c| !c.is_zero())
                    .min()
                    .map(|c| c / &dd * &half)
                    .unwrap_or_else(|| Rational::from_integer(1.into()));
                let shift = n.scale(&(eta * Rational::from_integer((-s).into())));
                Line::new(a.add(&shift), Direction::from_vector(&d).expect("nonzero"))
            }
            Perturb::Rotate { gap, sign } => {
                let o = pts[self.on_line[gap]].midpoint(&pts[self.on_line[gap + 1]]);
                let eta = pts
                    .iter()
                    .filter_map(|q| {
                        let c = d.cross(&q.sub(&o)).abs();
                        let m = n.cross(&q.sub(&o)).abs();
                        (!c.is_zero() && !m.is_zero()).then(|| c / m)
                    })
                    .min()
                    .map(|r| r * &half)
                    .unwrap_or_else(|| Rational::from_integer(1.into()));
                let dir = d.add(&n.scale(&(eta * Rational::from_integer(sign.into()))));
                Line::new(o, Direction::from_vector(&dir).expect("nonzero"))
            }
        }
    }
}

/// The base line through `pts[u]` and `pts[v]`, with sides computed exactly.
pub(crate) fn base_line_through(pts: &[Point], u: usize, v: usize) -> BaseLine {
    let d = pts[v].sub(&pts[u]);
    let sides: Vec<i8> = pts.iter().map(|w| orientation(&pts[u], &pts[v], w).sign()).collect();
    let mut on_line: Vec<usize> = (0..pts.len()).filter(|&w| sides[w] == 0).collect();
    on_line.sort_by_key(|&w| d.dot(&pts[w].sub(&pts[u])));
    BaseLine { anchor: u, toward: Some(v), on_line, sides }
}

/// Largest crossing count among the perturbation classes of `b`, where the
/// side vector is read in cyclic polygon order.
pub(crate) fn best_perturbation(b: &BaseLine) -> (usize, Perturb) {
    let mut buf = Vec::with_capacity(b.sides.len());
    let mut best = (0, Perturb::Translate(1));
    for pert in b.perturbations() {
        b.perturbed_sides(pert, &mut buf);
        let v = cyclic_sign_changes(buf.iter().copied());
        if v > best.0 {
            best = (v, pert);
        }
    }
    best
}

/// Calls `f` once per distinct base line of `pts` (duplicates in `pts` are
/// not allowed).
pub(crate) fn for_each_base_line(pts: &[Point], mut f: impl FnMut(&BaseLine)) {
    match Lattice::new(pts) {
        Lattice::Small(l) => base_lines(&l, &mut f),
        Lattice::Big(l) => base_lines(&l, &mut f),
    }
}

fn base_lines<T: Coord>(pts: &[IPoint<T>], f: &mut impl FnMut(&BaseLine)) {
    let n = pts.len();
    let mut sides = vec![0i8; n];
    for u in 0..n {
        for v in u + 1..n {
            let mut skip = false;
            let mut on_line = Vec::new();
            for w in 0..n {
                let s = sign(&cross(&pts[u], &pts[v], &pts[w]));
                sides[w] = s;
                if s == 0 {
                    if w < v && w != u {
                        skip = true;
                        break;
                    }
                    on_line.push(w);
                }
            }
            if skip {
                continue;
            }
            let d = [pts[v][0].clone() - pts[u][0].clone(), pts[v][1].clone() - pts[u][1].clone()];
            on_line.sort_by_key(|&w| {
                let dx = pts[w][0].clone() - pts[u][0].clone();
                let dy = pts[w][1].clone() - pts[u][1].clone();
                d[0].clone() * dx + d[1].clone() * dy
            });
            f(&BaseLine { anchor: u, toward: Some(v), on_line, sides: sides.clone() });
        }
    }
    for u in 0..n {
        if (0..n).any(|w| w != u && pts[w][0] == pts[u][0]) {
            continue;
        }
        let sides: Vec<i8> = (0..n).map(|w| sign(&(pts[u][0].clone() - pts[w][0].clone()))).collect();
        f(&BaseLine { anchor: u, toward: None, on_line: vec![u], sides });
    }
}

/// Number of sign changes around the cyclic sequence after dropping zeros.
/// For a polygon's vertex sides this is exactly the crossing count of the
/// line: an on-line vertex or edge counts iff the sides before and after it
/// differ.
pub(crate) fn cyclic_sign_changes(sides: impl Iterator<Item = i8>) -> usize {
    let nz: Vec<i8> = sides.filter(|&s| s != 0).collect();
    if nz.is_empty() {
        return 0;
    }
    (0..nz.len()).filter(|&i| nz[i] != nz[(i + 1) % nz.len()]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[(i64, i64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn each_line_reported_once() {
        let p = pts(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
        let mut lines = Vec::new();
        for_each_base_line(&p, |b| lines.push((b.anchor, b.toward, b.on_line.clone())));
        // y = 0 holds three points and the other pairs span three more lines.
        // Only x = 1 and x = 2 are unique abscissae.
        let through: Vec<_> = lines.iter().filter(|l| l.1.is_some()).collect();
        assert_eq!(through.len(), 4);
        assert!(through.iter().any(|l| l.2 == vec![0, 1, 2]));
        assert_eq!(lines.iter().filter(|l| l.1.is_none()).count(), 2);
    }

    #[test]
    fn concrete_lines_match_symbolic_sides() {
        let p = pts(&[(0, 0), (1, 0), (3, 0), (0, 2), (2, 5), (4, -3)]);
        for_each_base_line(&p, |b| {
            let mut sym = Vec::new();
            for pert in b.perturbations() {
                b.perturbed_sides(pert, &mut sym);
                let line = b.concrete(&p, pert);
                let real: Vec<i8> = p.iter().map(|q| line.side(q).sign()).collect();
                assert!(real.iter().all(|&s| s != 0));
                let same = real.iter().zip(&sym).all(|(a, b)| a == b);
                let flipped = real.iter().zip(&sym).all(|(a, b)| *a == -*b);
                assert!(same || flipped, "{:?} vs {:?}", real, sym);
            }
        });
    }

    #[test]
    fn sign_changes() {
        assert_eq!(cyclic_sign_changes([1, 0, -1, -1].into_iter()), 2);
        assert_eq!(cyclic_sign_changes([1, 0, 1, -1].into_iter()), 2);
        assert_eq!(cyclic_sign_changes([1, 0, 0, 1, 1].into_iter()), 0);
    }
}
