//! Deterministic SVG output. Exact coordinates are converted to f64 and
//! printed with six decimals; nothing here feeds back into analysis.

use std::fmt::Write;

use kconvex::exactgeom::{Line, Point, Polygon};

const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

#[derive(Debug, Clone)]
pub struct Styled {
    pub poly: Polygon,
    pub fill: String,
}

#[derive(Debug, Clone, Default)]
pub struct RenderSpec {
    pub polygons: Vec<Styled>,
    pub lines: Vec<(Line, String)>,
    /// Open polylines (chains, triangle outlines), with a stroke color.
    pub paths: Vec<(Vec<Point>, String)>,
    pub points: Vec<(Point, String)>,
}

impl RenderSpec {
    pub fn polygons(polys: &[Polygon]) -> Self {
        RenderSpec {
            polygons: polys.iter().enumerate().map(|(i, p)| Styled { poly: p.clone(), fill: color(i).into() }).collect(),
            ..Default::default()
        }
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct View {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        // flip y so the picture matches the usual axes
        ((x - self.x0) * self.scale + 10.0, (self.y1 - y) * self.scale + 10.0)
    }
}

/// Clips an infinite line to the axis-aligned box.
fn clip(l: &Line, lo: (f64, f64), hi: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (ax, ay) = l.anchor.to_f64();
    let (dx, dy) = (l.dir.dx().to_f64(), l.dir.dy().to_f64());
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (a, d, lo, hi) in [(ax, dx, lo.0, hi.0), (ay, dy, lo.1, hi.1)] {
        if d == 0.0 {
            if a < lo || a > hi {
                return None;
            }
            continue;
        }
        let (u, v) = ((lo - a) / d, (hi - a) / d);
        t0 = t0.max(u.min(v));
        t1 = t1.min(u.max(v));
    }
    (t0 <= t1).then_some(((ax + t0 * dx, ay + t0 * dy), (ax + t1 * dx, ay + t1 * dy)))
}

trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for kconvex::exactgeom::Rational {
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(0.0)
    }
}

pub fn render(spec: &RenderSpec) -> String {
    let mut pts: Vec<(f64, f64)> = spec.polygons.iter().flat_map(|s| s.poly.vertices().iter().map(Point::to_f64)).collect();
    pts.extend(spec.paths.iter().flat_map(|(p, _)| p.iter().map(Point::to_f64)));
    pts.extend(spec.points.iter().map(|(p, _)| p.to_f64()));
    if pts.is_empty() {
        pts.push((0.0, 0.0));
    }
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for &(x, y) in &pts {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let pad = 0.05 * (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    lo = (lo.0 - pad, lo.1 - pad);
    hi = (hi.0 + pad, hi.1 + pad);
    let scale = 600.0 / (hi.0 - lo.0).max(hi.1 - lo.1);
    let view = View { x0: lo.0, y1: hi.1, scale };
    let (w, h) = ((hi.0 - lo.0) * scale + 20.0, (hi.1 - lo.1) * scale + 20.0);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(w),
        f(h),
        f(w),
        f(h)
    )
    .unwrap();
    for st in &spec.polygons {
        let coords: Vec<String> = st
            .poly
            .vertices()
            .iter()
            .map(|p| {
                let (x, y) = view.map(p.to_f64());
                format!("{},{}", f(x), f(y))
            })
            .collect();
        writeln!(
            s,
            r#"<polygon points="{}" fill="{}" fill-opacity="0.35" stroke="{}" stroke-width="1"/>"#,
            coords.join(" "),
            st.fill,
            st.fill
        )
        .unwrap();
    }
    for (path, c) in &spec.paths {
        let coords: Vec<String> = path
            .iter()
            .map(|p| {
                let (x, y) = view.map(p.to_f64());
                format!("{},{}", f(x), f(y))
            })
            .collect();
        writeln!(s, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#, coords.join(" "), c).unwrap();
    }
    for (l, c) in &spec.lines {
        if let Some((a, b)) = clip(l, lo, hi) {
            let (a, b) = (view.map(a), view.map(b));
            writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>"#,
                f(a.0),
                f(a.1),
                f(b.0),
                f(b.1),
                c
            )
            .unwrap();
        }
    }
    for (p, c) in &spec.points {
        let (x, y) = view.map(p.to_f64());
        writeln!(s, r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#, f(x), f(y), c).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn polygon_only() {
        let s = render(&RenderSpec::polygons(&[square()]));
        assert_eq!(s.matches("<polygon").count(), 1);
        assert!(!s.contains("<line"));
        assert!(s.ends_with("</svg>\n"));
    }

    #[test]
    fn line_is_clipped_once() {
        let mut spec = RenderSpec::polygons(&[square()]);
        let l = Line::through(&Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        spec.lines.push((l, "#000".into()));
        let s = render(&spec);
        assert_eq!(s.matches("<line").count(), 1);
        assert_eq!(s, render(&spec));
    }
}
