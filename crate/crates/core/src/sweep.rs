//! Vertex sorting along the boundary and sweep-line triangulation.
//!
//! Vertices are ordered by (x, y, index). Sorting walks the boundary and
//! inserts each vertex starting from where the previous one went, either by
//! a linear walk in a sorted list or through a splay tree (whose insertion
//! cost is logarithmic in the rank distance to the previous insertion). The
//! triangulation sweeps the sorted vertices, keeps every edge that crosses
//! the sweep line in the status, adds the diagonals that cut the polygon into
//! monotone pieces and triangulates each piece with the reflex-chain stack.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::exactgeom::lattice::{cross, sign, touch, Coord, IPoint, Lattice};
use crate::exactgeom::{orientation, Orientation, Point, Polygon, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortedVertices {
    pub order: Vec<usize>,
    pub comparison_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub comparison_count: u64,
    /// Largest number of edges crossing the sweep line after any event.
    pub max_status: usize,
    pub diagonals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SortMethod {
    Scan,
    Finger,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum TriangulationError {
    #[error("expected {expected} triangles, got {got}")]
    Count { expected: usize, got: usize },
    #[error("triangle {triangle} uses a vertex index out of range")]
    IndexOutOfRange { triangle: usize },
    #[error("triangle {triangle} is not counterclockwise with positive area")]
    NonPositiveArea { triangle: usize },
    #[error("triangle areas sum to {got}, polygon area is {expected}")]
    AreaMismatch { expected: String, got: String },
    #[error("edges {first:?} and {second:?} cross")]
    EdgesCross { first: (usize, usize), second: (usize, usize) },
    #[error("diagonal {0:?} is not inside the polygon")]
    DiagonalOutside((usize, usize)),
}

fn cmp_points(pts: &[Point], a: usize, b: usize) -> Ordering {
    pts[a].cmp(&pts[b]).then(a.cmp(&b))
}

/// Insertion sort over a linked list, each search starting at the previous
/// insertion. Works on any vertex sequence, simple or not.
pub fn sort_scan_points(pts: &[Point]) -> SortedVertices {
    let n = pts.len();
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let mut count = 0u64;
    let mut cmp = |a: usize, b: usize| {
        count += 1;
        cmp_points(pts, a, b)
    };
    let mut head = 0;
    let mut last = 0;
    for v in 1..n {
        let mut cur = last;
        if cmp(v, cur) == Ordering::Greater {
            while next[cur] != usize::MAX && cmp(v, next[cur]) == Ordering::Greater {
                cur = next[cur];
            }
            // insert after cur
            let nx = next[cur];
            next[v] = nx;
            prev[v] = cur;
            next[cur] = v;
            if nx != usize::MAX {
                prev[nx] = v;
            }
        } else {
            while prev[cur] != usize::MAX && cmp(v, prev[cur]) == Ordering::Less {
                cur = prev[cur];
            }
            // insert before cur
            let pv = prev[cur];
            prev[v] = pv;
            next[v] = cur;
            prev[cur] = v;
            if pv == usize::MAX {
                head = v;
            } else {
                next[pv] = v;
            }
        }
        last = v;
    }
    let mut order = Vec::with_capacity(n);
    let mut cur = if n == 0 { usize::MAX } else { head };
    while cur != usize::MAX {
        order.push(cur);
        cur = next[cur];
    }
    SortedVertices { order, comparison_count: count }
}

pub fn sort_scan(p: &Polygon) -> SortedVertices {
    sort_scan_points(p.vertices())
}

const NIL: usize = usize::MAX;

struct Splay {
    left: Vec<usize>,
    right: Vec<usize>,
    parent: Vec<usize>,
    root: usize,
}

impl Splay {
    fn new(n: usize) -> Self {
        Splay { left: vec![NIL; n], right: vec![NIL; n], parent: vec![NIL; n], root: NIL }
    }

    fn rotate(&mut self, x: usize) {
        let p = self.parent[x];
        let g = self.parent[p];
        if self.left[p] == x {
            let b = self.right[x];
            self.left[p] = b;
            if b != NIL {
                self.parent[b] = p;
            }
            self.right[x] = p;
        } else {
            let b = self.left[x];
            self.right[p] = b;
            if b != NIL {
                self.parent[b] = p;
            }
            self.left[x] = p;
        }
        self.parent[p] = x;
        self.parent[x] = g;
        if g == NIL {
            self.root = x;
        } else if self.left[g] == p {
            self.left[g] = x;
        } else {
            self.right[g] = x;
        }
    }

    fn splay(&mut self, x: usize) {
        while self.parent[x] != NIL {
            let p = self.parent[x];
            let g = self.parent[p];
            if g != NIL {
                let zigzig = (self.left[g] == p) == (self.left[p] == x);
                self.rotate(if zigzig { p } else { x });
            }
            self.rotate(x);
        }
    }

    fn insert(&mut self, v: usize, mut cmp: impl FnMut(usize, usize) -> Ordering) {
        if self.root == NIL {
            self.root = v;
            return;
        }
        let mut cur = self.root;
        loop {
            let go_left = cmp(v, cur) == Ordering::Less;
            let child = if go_left { self.left[cur] } else { self.right[cur] };
            if child == NIL {
                if go_left {
                    self.left[cur] = v;
                } else {
                    self.right[cur] = v;
                }
                self.parent[v] = cur;
                break;
            }
            cur = child;
        }
        self.splay(v);
    }

    fn in_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.left.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.left[cur];
            }
            let x = stack.pop().expect("nonempty");
            out.push(x);
            cur = self.right[x];
        }
        out
    }
}

/// Boundary-order insertion into a splay tree. The inserted vertex is
/// splayed to the root, so the next search starts from it.
pub fn sort_finger_points(pts: &[Point]) -> SortedVertices {
    let n = pts.len();
    let mut t = Splay::new(n);
    let mut count = 0u64;
    for v in 0..n {
        t.insert(v, |a, b| {
            count += 1;
            cmp_points(pts, a, b)
        });
    }
    SortedVertices { order: t.in_order(), comparison_count: count }
}

pub fn sort_finger(p: &Polygon) -> SortedVertices {
    sort_finger_points(p.vertices())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Start,
    Split,
    End,
    Merge,
    RegularLower,
    RegularUpper,
}

struct Sweep<'a> {
    pts: &'a [Point],
    n: usize,
    rank: Vec<usize>,
    status: Vec<usize>,
    helper: Vec<usize>,
    merge: Vec<bool>,
    diagonals: Vec<(usize, usize)>,
}

impl Sweep<'_> {
    /// Endpoints of edge e ordered by rank.
    fn ends(&self, e: usize) -> (usize, usize) {
        let (a, b) = (e, (e + 1) % self.n);
        if self.rank[a] < self.rank[b] { (a, b) } else { (b, a) }
    }

    fn above(&self, e: usize, v: usize) -> bool {
        let (l, r) = self.ends(e);
        orientation(&self.pts[l], &self.pts[r], &self.pts[v]) == Orientation::Left
    }

    /// Edge of the status directly below `v`.
    fn below(&self, v: usize) -> usize {
        let pos = self.status.partition_point(|&s| self.above(s, v));
        self.status[pos.checked_sub(1).expect("an edge below an interior point")]
    }

    fn insert(&mut self, e: usize) {
        let (l, r) = self.ends(e);
        let pos = self.status.partition_point(|&s| {
            let (sl, sr) = self.ends(s);
            if sl == l {
                orientation(&self.pts[l], &self.pts[sr], &self.pts[r]) == Orientation::Left
            } else {
                orientation(&self.pts[sl], &self.pts[sr], &self.pts[l]) == Orientation::Left
            }
        });
        self.status.insert(pos, e);
    }

    fn remove(&mut self, e: usize) {
        let pos = self.status.iter().position(|&s| s == e).expect("edge in status");
        self.status.remove(pos);
    }

    fn diagonal_to_helper(&mut self, v: usize, e: usize) {
        let h = self.helper[e];
        if self.merge[h] {
            self.diagonals.push((v, h));
        }
    }
}

fn kind(p: &Polygon, rank: &[usize], v: usize) -> Kind {
    let (pv, nx) = (p.prev(v), p.next(v));
    let convex = orientation(p.vertex(pv), p.vertex(v), p.vertex(nx)) == Orientation::Left;
    match (rank[pv] > rank[v], rank[nx] > rank[v]) {
        (true, true) => {
            if convex {
                Kind::Start
            } else {
                Kind::Split
            }
        }
        (false, false) => {
            if convex {
                Kind::End
            } else {
                Kind::Merge
            }
        }
        (false, true) => Kind::RegularLower,
        (true, false) => Kind::RegularUpper,
    }
}

/// Diagonals splitting `p` into pieces monotone in the sweep order.
fn monotone_diagonals(p: &Polygon, order: &[usize]) -> (Vec<(usize, usize)>, usize, Vec<usize>) {
    let n = p.len();
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let merge: Vec<bool> = (0..n).map(|v| kind(p, &rank, v) == Kind::Merge).collect();
    let mut s = Sweep {
        pts: p.vertices(),
        n,
        rank,
        status: Vec::new(),
        helper: vec![NIL; n],
        merge,
        diagonals: Vec::new(),
    };
    let mut max_status = 0;
    for &v in order {
        let pe = (v + n - 1) % n; // edge prev -> v
        let ne = v; // edge v -> next
        match kind(p, &s.rank, v) {
            Kind::Start => {
                s.insert(ne);
                s.helper[ne] = v;
                s.insert(pe);
            }
            Kind::End => {
                s.diagonal_to_helper(v, pe);
                s.remove(pe);
                s.remove(ne);
            }
            Kind::Split => {
                let ej = s.below(v);
                s.diagonals.push((v, s.helper[ej]));
                s.helper[ej] = v;
                s.insert(ne);
                s.helper[ne] = v;
                s.insert(pe);
            }
            Kind::Merge => {
                s.diagonal_to_helper(v, pe);
                s.remove(pe);
                s.remove(ne);
                let ej = s.below(v);
                s.diagonal_to_helper(v, ej);
                s.helper[ej] = v;
            }
            Kind::RegularLower => {
                s.diagonal_to_helper(v, pe);
                s.remove(pe);
                s.insert(ne);
                s.helper[ne] = v;
            }
            Kind::RegularUpper => {
                s.remove(ne);
                let ej = s.below(v);
                s.diagonal_to_helper(v, ej);
                s.helper[ej] = v;
                s.insert(pe);
            }
        }
        max_status = max_status.max(s.status.len());
    }
    debug_assert!(s.status.is_empty());
    let mut d: Vec<(usize, usize)> = s.diagonals.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    d.sort_unstable();
    d.dedup();
    (d, max_status, s.rank)
}

fn split_pieces(p: &Polygon, diagonals: &[(usize, usize)]) -> Vec<Vec<usize>> {
    match Lattice::new(p.vertices()) {
        Lattice::Small(l) if small_enough(&l) => split_pieces_in(&l, diagonals),
        Lattice::Small(l) => split_pieces_in(&widen(&l), diagonals),
        Lattice::Big(l) => split_pieces_in(&l, diagonals),
    }
}

/// Pieces may have collinear consecutive vertices, so membership of the
/// diagonal's midpoint is tested on raw lattice points.
fn split_pieces_in<T: Coord>(pts: &[IPoint<T>], diagonals: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let n = pts.len();
    let doubled = double(pts);
    let mut pieces: Vec<Vec<usize>> = vec![(0..n).collect()];
    for &(a, b) in diagonals {
        let mid = [pts[a][0].clone() + pts[b][0].clone(), pts[a][1].clone() + pts[b][1].clone()];
        let idx = pieces
            .iter()
            .position(|pc| {
                let (Some(i), Some(j)) = (pc.iter().position(|&x| x == a), pc.iter().position(|&x| x == b)) else {
                    return false;
                };
                let m = pc.len();
                if (i + 1) % m == j || (j + 1) % m == i {
                    return false;
                }
                let ring: Vec<IPoint<T>> = pc.iter().map(|&x| doubled[x].clone()).collect();
                strictly_inside(&ring, &mid)
            })
            .expect("each diagonal lies inside one piece");
        let pc = pieces.swap_remove(idx);
        let i = pc.iter().position(|&x| x == a).expect("present");
        let j = pc.iter().position(|&x| x == b).expect("present");
        let (i, j) = (i.min(j), i.max(j));
        let first: Vec<usize> = pc[i..=j].to_vec();
        let mut second: Vec<usize> = pc[j..].to_vec();
        second.extend_from_slice(&pc[..=i]);
        pieces.push(first);
        pieces.push(second);
    }
    pieces
}

fn double<T: Coord>(pts: &[IPoint<T>]) -> Vec<IPoint<T>> {
    let two = |v: &T| v.clone() + v.clone();
    pts.iter().map(|p| [two(&p[0]), two(&p[1])]).collect()
}

fn widen(l: &[IPoint<i128>]) -> Vec<IPoint<num_bigint::BigInt>> {
    l.iter().map(|q| [q[0].into(), q[1].into()]).collect()
}

fn ccw(pts: &[Point], t: [usize; 3]) -> [usize; 3] {
    if orientation(&pts[t[0]], &pts[t[1]], &pts[t[2]]) == Orientation::Right {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}

/// Triangulates a piece monotone in the sweep order, given in
/// counterclockwise order.
fn triangulate_monotone(pts: &[Point], rank: &[usize], piece: &[usize], out: &mut Vec<[usize; 3]>) {
    let m = piece.len();
    if m == 3 {
        out.push(ccw(pts, [piece[0], piece[1], piece[2]]));
        return;
    }
    let s = (0..m).min_by_key(|&i| rank[piece[i]]).expect("nonempty");
    let t = (0..m).max_by_key(|&i| rank[piece[i]]).expect("nonempty");
    // true for the lower chain (counterclockwise from s to t)
    let mut lower = vec![false; m];
    let mut i = s;
    while i != t {
        lower[i] = true;
        i = (i + 1) % m;
    }
    let mut u: Vec<usize> = (0..m).collect();
    u.sort_by_key(|&i| rank[piece[i]]);
    let v = |i: usize| piece[i];
    let mut stack = vec![u[0], u[1]];
    for &uj in &u[2..m - 1] {
        let top = *stack.last().expect("nonempty");
        if lower[uj] != lower[top] {
            for w in stack.windows(2) {
                out.push(ccw(pts, [v(uj), v(w[0]), v(w[1])]));
            }
            let prev = top;
            stack.clear();
            stack.push(prev);
            stack.push(uj);
        } else {
            let mut last = stack.pop().expect("nonempty");
            while let Some(&tp) = stack.last() {
                let o = orientation(&pts[v(tp)], &pts[v(last)], &pts[v(uj)]);
                let ok = if lower[uj] { o == Orientation::Left } else { o == Orientation::Right };
                if !ok {
                    break;
                }
                out.push(ccw(pts, [v(tp), v(last), v(uj)]));
                last = stack.pop().expect("nonempty");
            }
            stack.push(last);
            stack.push(uj);
        }
    }
    let um = u[m - 1];
    for w in stack.windows(2) {
        out.push(ccw(pts, [v(um), v(w[0]), v(w[1])]));
    }
}

pub fn triangulate_with(p: &Polygon, method: SortMethod) -> (Triangulation, SweepStats) {
    let sorted = match method {
        SortMethod::Scan => sort_scan(p),
        SortMethod::Finger => sort_finger(p),
    };
    let (diagonals, max_status, rank) = monotone_diagonals(p, &sorted.order);
    let pieces = split_pieces(p, &diagonals);
    let mut triangles = Vec::with_capacity(p.len() - 2);
    for pc in &pieces {
        triangulate_monotone(p.vertices(), &rank, pc, &mut triangles);
    }
    let stats = SweepStats { comparison_count: sorted.comparison_count, max_status, diagonals: diagonals.len() };
    (Triangulation { triangles }, stats)
}

pub fn triangulate(p: &Polygon) -> Triangulation {
    triangulate_with(p, SortMethod::Finger).0
}

fn first_crossing<T: Coord>(pts: &[IPoint<T>], segs: &[(usize, usize)]) -> Option<(usize, usize)> {
    let span = |&(a, b): &(usize, usize)| {
        let (x, y) = (&pts[a][0], &pts[b][0]);
        if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) }
    };
    let spans: Vec<(T, T)> = segs.iter().map(span).collect();
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by(|&i, &j| spans[i].0.cmp(&spans[j].0));
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[oi + 1..] {
            if spans[j].0 > spans[i].1 {
                break;
            }
            let ((a, b), (c, d)) = (segs[i], segs[j]);
            let shared = [a, b].iter().filter(|x| **x == c || **x == d).count();
            let bad = match shared {
                0 => touch(&pts[a], &pts[b], &pts[c], &pts[d]),
                // overlap along a common endpoint
                1 => {
                    let (s, x, y) = if a == c {
                        (a, b, d)
                    } else if a == d {
                        (a, b, c)
                    } else if b == c {
                        (b, a, d)
                    } else {
                        (b, a, c)
                    };
                    let ux = [pts[x][0].clone() - pts[s][0].clone(), pts[x][1].clone() - pts[s][1].clone()];
                    let uy = [pts[y][0].clone() - pts[s][0].clone(), pts[y][1].clone() - pts[s][1].clone()];
                    cross(&pts[s], &pts[x], &pts[y]).is_zero()
                        && (ux[0].clone() * uy[0].clone() + ux[1].clone() * uy[1].clone()).is_positive()
                }
                _ => false,
            };
            if bad {
                return Some((i, j));
            }
        }
    }
    None
}

/// Doubled coordinates of `q` strictly inside the polygon with doubled
/// vertices `pts`.
fn strictly_inside<T: Coord>(pts: &[IPoint<T>], q: &IPoint<T>) -> bool {
    let n = pts.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        let c = cross(a, b, q);
        let within = |k: usize| {
            let (lo, hi) = if a[k] <= b[k] { (&a[k], &b[k]) } else { (&b[k], &a[k]) };
            lo <= &q[k] && &q[k] <= hi
        };
        if c.is_zero() && within(0) && within(1) {
            return false;
        }
        if (a[1] > q[1]) != (b[1] > q[1]) {
            // upward edges count when q is left of them, downward when right
            let s = sign(&c);
            if (b[1] > a[1] && s > 0) || (b[1] < a[1] && s < 0) {
                inside = !inside;
            }
        }
    }
    inside
}

fn validate_lattice<T: Coord>(
    n: usize,
    pts: &[IPoint<T>],
    t: &Triangulation,
) -> Result<(), TriangulationError> {
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * t.triangles.len());
    for tri in &t.triangles {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    if let Some((i, j)) = first_crossing(pts, &edges) {
        return Err(TriangulationError::EdgesCross { first: edges[i], second: edges[j] });
    }
    let doubled = double(pts);
    for &(a, b) in &edges {
        if b == a + 1 || (a == 0 && b == n - 1) {
            continue;
        }
        let mid = [pts[a][0].clone() + pts[b][0].clone(), pts[a][1].clone() + pts[b][1].clone()];
        let blocked = (0..n).any(|w| {
            w != a && w != b && {
                let (p, q, r) = (&pts[a], &pts[b], &pts[w]);
                cross(p, q, r).is_zero()
                    && (0..2).all(|k| {
                        let (lo, hi) = if p[k] <= q[k] { (&p[k], &q[k]) } else { (&q[k], &p[k]) };
                        lo <= &r[k] && &r[k] <= hi
                    })
            }
        });
        if blocked || !strictly_inside(&doubled, &mid) {
            return Err(TriangulationError::DiagonalOutside((a, b)));
        }
    }
    Ok(())
}

/// Checks count, orientation, exact area, non-crossing edges and interior
/// diagonals, reporting the first failure.
pub fn validate_triangulation(p: &Polygon, t: &Triangulation) -> Result<(), TriangulationError> {
    let n = p.len();
    if t.triangles.len() != n - 2 {
        return Err(TriangulationError::Count { expected: n - 2, got: t.triangles.len() });
    }
    let pts = p.vertices();
    let mut sum = Rational::from_integer(0.into());
    for (i, tri) in t.triangles.iter().enumerate() {
        if tri.iter().any(|&v| v >= n) {
            return Err(TriangulationError::IndexOutOfRange { triangle: i });
        }
        let c = pts[tri[1]].sub(&pts[tri[0]]).cross(&pts[tri[2]].sub(&pts[tri[0]]));
        if c <= Rational::from_integer(0.into()) {
            return Err(TriangulationError::NonPositiveArea { triangle: i });
        }
        sum += c;
    }
    if sum != p.area2() {
        use crate::exactgeom::format_rational;
        return Err(TriangulationError::AreaMismatch {
            expected: format_rational(&(p.area2() / Rational::from_integer(2.into()))),
            got: format_rational(&(sum / Rational::from_integer(2.into()))),
        });
    }
    match Lattice::new(pts) {
        Lattice::Small(l) if small_enough(&l) => validate_lattice(n, &l, t),
        Lattice::Small(l) => validate_lattice(n, &widen(&l), t),
        Lattice::Big(l) => validate_lattice(n, &l, t),
    }
}

// Doubling must keep coordinates within the i128 cross-product budget.
fn small_enough(l: &[IPoint<i128>]) -> bool {
    l.iter().all(|q| q[0].abs() < 1 << 60 && q[1].abs() < 1 << 60)
}
