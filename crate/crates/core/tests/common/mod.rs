#![allow(dead_code)]

pub mod props;

use kconvex::exactgeom::Polygon;
use kconvex::fixtures::*;

pub struct Entry {
    pub name: String,
    pub poly: Polygon,
}

fn push(out: &mut Vec<Entry>, name: String, r: FixtureResult<Polygon>) {
    out.push(Entry { name: name.clone(), poly: r.unwrap_or_else(|e| panic!("{name}: {e}")) });
}

fn push_all(out: &mut Vec<Entry>, name: String, r: FixtureResult<Vec<Polygon>>) {
    let v = r.unwrap_or_else(|e| panic!("{name}: {e}"));
    out.extend(v.into_iter().enumerate().map(|(i, poly)| Entry { name: format!("{name}[{i}]"), poly }));
}

/// Every fixture at three sizes (families contribute their members).
pub fn fixture_corpus() -> Vec<Entry> {
    let mut c = Vec::new();
    for n in [3, 8, 24] {
        push(&mut c, format!("convex_ngon({n})"), convex_ngon(n));
    }
    for k in [1, 3, 6] {
        push(&mut c, format!("comb({k})"), comb(k));
    }
    for (k, e) in [(2, 1), (3, 2), (4, 3)] {
        push(&mut c, format!("comb_with_extras({k},{e})"), comb_with_extras(k, e));
    }
    for l in [1, 3, 7] {
        push(&mut c, format!("pseudo_triangle({l})"), pseudo_triangle(l, l, l));
    }
    for s in [1, 2, 4] {
        push(&mut c, format!("spike_rect({s})"), spike_rect(s));
    }
    for m in [3, 5, 8] {
        push(&mut c, format!("spiky_star({m})"), spiky_star(m));
    }
    for n in [8, 16, 32] {
        push(&mut c, format!("many_pockets({n})"), many_pockets(n));
    }
    for k in [3, 4, 6] {
        push(&mut c, format!("amoeba({k})"), amoeba(k));
    }
    for m in [3, 5, 7] {
        push_all(&mut c, format!("helly_family({m})"), helly_family(m));
    }
    for n in [3, 4, 5] {
        push_all(&mut c, format!("quad_row({n})"), quad_row(n));
    }
    for (k, m) in [(2, 2), (2, 3), (3, 2)] {
        push_all(&mut c, format!("interlock_combs({k},{m})"), interlock_combs(k, m).map(|(a, b)| vec![a, b]));
        push_all(&mut c, format!("comb_family({m},{k})"), comb_family(m, k));
    }
    push(&mut c, "two_convex_not_star".into(), two_convex_not_star());
    c
}

pub fn random_corpus(count: usize) -> Vec<Entry> {
    (0..count as u64)
        .map(|seed| {
            let n = 4 + (seed as usize * 7) % 57;
            Entry { name: format!("random({n},{seed})"), poly: random_simple_polygon(n, seed).unwrap() }
        })
        .collect()
}

/// Fixtures plus at least 100 random simple polygons with n <= 60, at least
/// 200 polygons in total.
pub fn corpus() -> Vec<Entry> {
    let mut c = fixture_corpus();
    let extra = 100.max(200usize.saturating_sub(c.len()));
    c.extend(random_corpus(extra));
    c
}
