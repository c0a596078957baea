//! Pockets, convex chains and convex-position subsets of 2-convex polygons.

use serde::Serialize;
use thiserror::Error;

use crate::exactgeom::{convex_hull, in_convex_position, vertex_kind, GeomError, Polygon, VertexKind};
use crate::twoconvex::recognize_2convex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("pocket {pocket}: vertex {index} breaks the convex/reflex/convex pattern")]
    PatternViolation { pocket: usize, index: usize },
    #[error("{chains} convex chains for a hull of {hull} vertices")]
    TooManyChains { chains: usize, hull: usize },
    #[error("induced polygon of round {round} is invalid: {reason}")]
    SubpolygonInvalid { round: usize, reason: String },
    #[error("polygon is not 2-convex")]
    NotTwoConvex,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Cyclic run of `len` vertex indices starting at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    pub start: usize,
    pub len: usize,
}

impl Run {
    pub fn indices(&self, n: usize) -> Vec<usize> {
        (0..self.len).map(|j| (self.start + j) % n).collect()
    }
}

/// A pocket's chain from hull vertex `p0` to hull vertex `pt`, split into
/// convex prefix, reflex middle and convex suffix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pocket {
    pub c1: Run,
    pub c2: Run,
    pub c3: Run,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PocketChains {
    pub pockets: Vec<Pocket>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub chains: Vec<Run>,
}

fn hull_of(p: &Polygon) -> Result<Vec<usize>, ShapeError> {
    let mut h = convex_hull(p.vertices())?;
    h.sort_unstable();
    Ok(h)
}

/// Splits every pocket without checking 2-convexity first.
pub fn pocket_chains_unchecked(p: &Polygon) -> Result<PocketChains, ShapeError> {
    let n = p.len();
    let hull = hull_of(p)?;
    let reflex: Vec<bool> = (0..n).map(|i| vertex_kind(p, i) == VertexKind::Reflex).collect();
    let mut pockets = Vec::new();
    for (pi, w) in (0..hull.len()).map(|i| (i, (hull[i], hull[(i + 1) % hull.len()]))) {
        let (a, b) = w;
        let span = (b + n - a) % n;
        let span = if span == 0 { n } else { span };
        if span == 1 {
            continue;
        }
        // chain a, a+1, .., b (span + 1 vertices)
        let chain: Vec<usize> = (0..=span).map(|j| (a + j) % n).collect();
        let mut j = 0;
        while j < chain.len() && !reflex[chain[j]] {
            j += 1;
        }
        let c1 = j;
        while j < chain.len() && reflex[chain[j]] {
            j += 1;
        }
        let c2 = j - c1;
        let rest = chain.len() - j;
        if let Some(bad) = chain[j..].iter().find(|&&v| reflex[v]) {
            return Err(ShapeError::PatternViolation { pocket: pi, index: *bad });
        }
        pockets.push(Pocket {
            c1: Run { start: a, len: c1 },
            c2: Run { start: (a + c1) % n, len: c2 },
            c3: Run { start: (a + c1 + c2) % n, len: rest },
        });
    }
    Ok(PocketChains { pockets })
}

fn require_two_convex(p: &Polygon) -> Result<(), ShapeError> {
    if recognize_2convex(p).is_two_convex {
        Ok(())
    } else {
        Err(ShapeError::NotTwoConvex)
    }
}

pub fn pocket_chains(p: &Polygon) -> Result<PocketChains, ShapeError> {
    require_two_convex(p)?;
    pocket_chains_unchecked(p)
}

/// Maximal runs of convex vertices and of reflex vertices, each cut
/// greedily into the longest pieces whose vertices are in convex position.
/// A convex run may pass several hull vertices and wrap into a neighbouring
/// pocket, which is why a run alone is not enough. Cutting greedily is
/// optimal because sub-runs of a convex-position run stay in convex
/// position. Fails if more than twice the hull size pieces come out.
pub fn convex_chains_unchecked(p: &Polygon) -> Result<ChainDecomposition, ShapeError> {
    pocket_chains_unchecked(p)?;
    let n = p.len();
    let kinds: Vec<VertexKind> = (0..n).map(|i| vertex_kind(p, i)).collect();
    let mut runs = Vec::new();
    match (0..n).find(|&i| kinds[i] != kinds[(i + n - 1) % n]) {
        None => runs.push(Run { start: 0, len: n }),
        Some(cut) => {
            let mut start = cut;
            let mut len = 0;
            for j in 0..n {
                let i = (cut + j) % n;
                if len > 0 && kinds[i] != kinds[start] {
                    runs.push(Run { start, len });
                    start = i;
                    len = 0;
                }
                len += 1;
            }
            runs.push(Run { start, len });
        }
    }
    let mut chains = Vec::new();
    for r in runs {
        let idx = r.indices(n);
        let mut from = 0;
        while from < idx.len() {
            let mut pts = vec![p.vertex(idx[from]).clone()];
            let mut to = from + 1;
            while to < idx.len() {
                pts.push(p.vertex(idx[to]).clone());
                if !in_convex_position(&pts) {
                    break;
                }
                to += 1;
            }
            chains.push(Run { start: idx[from], len: to - from });
            from = to;
        }
    }
    chains.sort_by_key(|r| r.start);
    let hull = hull_of(p)?.len();
    if chains.len() > 2 * hull {
        return Err(ShapeError::TooManyChains { chains: chains.len(), hull });
    }
    Ok(ChainDecomposition { chains })
}

pub fn convex_chains(p: &Polygon) -> Result<ChainDecomposition, ShapeError> {
    require_two_convex(p)?;
    convex_chains_unchecked(p)
}

fn largest_unchecked(p: &Polygon) -> Result<Vec<usize>, ShapeError> {
    let n = p.len();
    let hull = hull_of(p)?;
    let chains = convex_chains_unchecked(p)?;
    // lowest start wins ties: chains are sorted by start and max_by_key keeps the last max
    let best = chains.chains.iter().rev().max_by_key(|r| r.len).expect("at least one chain");
    let out = if best.len > hull.len() {
        let mut v = best.indices(n);
        v.sort_unstable();
        v
    } else {
        hull
    };
    let pts: Vec<_> = out.iter().map(|&i| p.vertex(i).clone()).collect();
    debug_assert!(in_convex_position(&pts));
    Ok(out)
}

/// The hull vertices or the longest convex chain, whichever is larger.
pub fn largest_convex_subset(p: &Polygon) -> Result<Vec<usize>, ShapeError> {
    require_two_convex(p)?;
    largest_unchecked(p)
}

/// Repeatedly removes a largest convex subset and continues on the polygon
/// induced by the remaining vertices in boundary order.
pub fn convex_partition(p: &Polygon) -> Result<Vec<Vec<usize>>, ShapeError> {
    require_two_convex(p)?;
    let mut parts = Vec::new();
    let mut alive: Vec<usize> = (0..p.len()).collect();
    let mut current = p.clone();
    let mut round = 0;
    loop {
        let local = largest_unchecked(&current)?;
        let mut part: Vec<usize> = local.iter().map(|&i| alive[i]).collect();
        part.sort_unstable();
        parts.push(part);
        let mut taken = vec![false; alive.len()];
        for &i in &local {
            taken[i] = true;
        }
        alive = alive.iter().zip(&taken).filter(|(_, &t)| !t).map(|(&v, _)| v).collect();
        if alive.is_empty() {
            break;
        }
        if alive.len() <= 3 {
            parts.push(alive);
            break;
        }
        round += 1;
        current = p
            .sub_polygon(&alive)
            .map_err(|e| ShapeError::SubpolygonInvalid { round, reason: e.to_string() })?;
        if !recognize_2convex(&current).is_two_convex {
            return Err(ShapeError::SubpolygonInvalid { round, reason: "not 2-convex".into() });
        }
    }
    Ok(parts)
}

/// ceil(sqrt(n / 2))
pub fn subset_bound(n: usize) -> usize {
    (0..).find(|&s| 2 * s * s >= n).expect("finite")
}

/// ceil(2 sqrt(2n))
pub fn partition_bound(n: usize) -> usize {
    (0..).find(|&s| s * s >= 8 * n).expect("finite")
}
