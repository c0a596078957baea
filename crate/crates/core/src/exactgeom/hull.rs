use super::{orientation, GeomError, Orientation, Point};

/// Indices of the extreme points of `points` in counterclockwise order,
/// starting from the lexicographically smallest. Points in the relative
/// interior of hull edges are dropped; repeated points keep their first index.
pub fn convex_hull(points: &[Point]) -> Result<Vec<usize>, GeomError> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return Err(GeomError::DegenerateInput);
    }
    let turn_left = |h: &[usize], c: usize| {
        let k = h.len();
        orientation(&points[h[k - 2]], &points[h[k - 1]], &points[c]) == Orientation::Left
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && !turn_left(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && !turn_left(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeomError::DegenerateInput);
    }
    Ok(lower)
}

/// True when every point of `points` is a vertex of their convex hull.
pub fn in_convex_position(points: &[Point]) -> bool {
    match points.len() {
        0..=2 => true,
        n => convex_hull(points).map(|h| h.len() == n).unwrap_or(false),
    }
}
