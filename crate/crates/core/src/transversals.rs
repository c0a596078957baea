//! Generalized geometric permutations: the order in which a line transversal
//! visits the members of a family of disjoint polygons, with nonconvex
//! members allowed to show up twice.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::for_each_base_line;
use crate::exactgeom::{Line, Point, Polygon};
use crate::stabbing::line_profile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransversalError {
    #[error("components of {first} and {second} share a parameter on the line")]
    OverlapAmbiguity { first: String, second: String },
}

/// Visit sequence, stored as the smaller of itself and its reversal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Ggp(Vec<String>);

impl Ggp {
    pub fn canonical(seq: Vec<String>) -> Ggp {
        let mut rev = seq.clone();
        rev.reverse();
        Ggp(seq.min(rev))
    }

    pub fn ids(&self) -> &[String] {
        &self.0
    }

    pub fn occurrences(&self, id: &str) -> usize {
        self.0.iter().filter(|s| *s == id).count()
    }
}

pub type Family = BTreeMap<String, Polygon>;

/// `None` when some member misses the line.
pub fn transversal_sequence(line: &Line, polys: &Family) -> Result<Option<Ggp>, TransversalError> {
    let mut comps = Vec::new();
    for (id, p) in polys {
        let prof = line_profile(line, p);
        if prof.inside_intervals.is_empty() {
            return Ok(None);
        }
        comps.extend(prof.inside_intervals.into_iter().map(|iv| (iv, id)));
    }
    comps.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    for w in comps.windows(2) {
        if w[1].0.lo <= w[0].0.hi && w[0].1 != w[1].1 {
            return Err(TransversalError::OverlapAmbiguity { first: w[0].1.clone(), second: w[1].1.clone() });
        }
    }
    Ok(Some(Ggp::canonical(comps.into_iter().map(|(_, id)| id.clone()).collect())))
}

fn family_points(polys: &Family) -> Vec<Point> {
    let set: BTreeSet<(&_, &_)> = polys.values().flat_map(|p| p.vertices().iter().map(|v| (&v.x, &v.y))).collect();
    set.into_iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect()
}

/// Every Ggp with one line realizing it. Candidates are the lines through
/// two family vertices (and verticals through one), plus one generic line
/// for each perturbation class around them.
pub fn enumerate_ggp_with_witnesses(polys: &Family) -> Result<BTreeMap<Ggp, Line>, TransversalError> {
    let pts = family_points(polys);
    let mut out = BTreeMap::new();
    let mut err = None;
    for_each_base_line(&pts, |b| {
        if err.is_some() {
            return;
        }
        let cands = std::iter::once(b.line(&pts)).chain(b.perturbations().into_iter().map(|p| b.concrete(&pts, p)));
        for l in cands {
            match transversal_sequence(&l, polys) {
                Ok(Some(g)) => {
                    out.entry(g).or_insert(l);
                }
                Ok(None) => {}
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

pub fn enumerate_ggp(polys: &Family) -> Result<BTreeSet<Ggp>, TransversalError> {
    Ok(enumerate_ggp_with_witnesses(polys)?.into_keys().collect())
}

/// Cells in an arrangement of 2E lines, E the total edge count.
pub fn ggp_cell_bound(polys: &Family) -> usize {
    let e: usize = polys.values().map(Polygon::len).sum();
    let l = 2 * e;
    l * (l - 1) / 2 + l + 1
}

pub fn ggp_upper_check(polys: &Family) -> Result<bool, TransversalError> {
    Ok(enumerate_ggp(polys)?.len() <= ggp_cell_bound(polys))
}

/// Names members A, B, .., Z, then P26, P27, ..
pub fn label_family(polys: Vec<Polygon>) -> Family {
    polys
        .into_iter()
        .enumerate()
        .map(|(i, p)| (if i < 26 { ((b'A' + i as u8) as char).to_string() } else { format!("P{i}") }, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{orientation, Orientation};
    use crate::fixtures::quad_row;

    fn sq(x: i64) -> Polygon {
        Polygon::from_ints(&[(x, 0), (x + 2, 0), (x + 2, 2), (x, 2)]).unwrap()
    }

    fn chevron() -> Polygon {
        Polygon::from_ints(&[(0, 0), (4, -2), (0, 4), (-4, -2)]).unwrap()
    }

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn canonical_form() {
        let g = Ggp::canonical(ids(&["B", "A", "A"]));
        assert_eq!(g.ids(), ids(&["A", "A", "B"]).as_slice());
        assert_eq!(g, Ggp::canonical(ids(&["A", "A", "B"])));
    }

    #[test]
    fn two_squares() {
        let fam = label_family(vec![sq(0), sq(5)]);
        let l = Line::through(&Point::from_ints(0, 1), &Point::from_ints(1, 1)).unwrap();
        assert_eq!(transversal_sequence(&l, &fam).unwrap().unwrap().ids(), ids(&["A", "B"]).as_slice());
        let all = enumerate_ggp(&fam).unwrap();
        assert_eq!(all.len(), 1);
        assert!(ggp_upper_check(&fam).unwrap());
    }

    #[test]
    fn single_chevron() {
        let fam = label_family(vec![chevron()]);
        let prongs = Line::through(&Point::from_ints(-3, -1), &Point::from_ints(3, -1)).unwrap();
        assert_eq!(transversal_sequence(&prongs, &fam).unwrap().unwrap().ids(), ids(&["A", "A"]).as_slice());
        let all: Vec<Vec<String>> = enumerate_ggp(&fam).unwrap().into_iter().map(|g| g.0).collect();
        assert_eq!(all, vec![ids(&["A"]), ids(&["A", "A"])]);
    }

    #[test]
    fn overlap_is_flagged() {
        let fam = label_family(vec![sq(0), sq(1)]);
        let l = Line::through(&Point::from_ints(0, 1), &Point::from_ints(1, 1)).unwrap();
        assert!(matches!(transversal_sequence(&l, &fam), Err(TransversalError::OverlapAmbiguity { .. })));
    }

    #[test]
    fn notch_lines_split_the_row() {
        let quads = quad_row(4).unwrap();
        let fam = label_family(quads.clone());
        let names: Vec<String> = fam.keys().cloned().collect();
        for i in 0..4 {
            for j in i + 1..4 {
                let (ai, aj) = (quads[i].vertex(0), quads[j].vertex(0));
                let g = transversal_sequence(&Line::through(ai, aj).unwrap(), &fam).unwrap().unwrap();
                for k in (0..4).filter(|&k| k != i && k != j) {
                    let above = orientation(ai, aj, quads[k].vertex(0)) == Orientation::Left;
                    assert_eq!(g.occurrences(&names[k]), if above { 2 } else { 1 });
                }
            }
        }
    }

    #[test]
    fn quad_row_counts() {
        for n in 3..=4 {
            let fam = label_family(quad_row(n).unwrap());
            let c = enumerate_ggp(&fam).unwrap().len();
            assert!(c >= n * (n - 1) / 2 && c <= ggp_cell_bound(&fam), "n={n} count={c}");
        }
    }
}
