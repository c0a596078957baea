//! JSON encoding of exact geometry. Coordinates are strings `"n"` or `"n/d"`.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::exactgeom::{format_rational, parse_rational, GeomError, Line, Point, Polygon, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[String; 2]>,
}

pub fn point_json(p: &Point) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

pub fn polygon_to_json(p: &Polygon) -> PolygonJson {
    PolygonJson { vertices: p.vertices().iter().map(point_json).collect() }
}

pub fn polygon_to_value(p: &Polygon) -> Value {
    serde_json::to_value(polygon_to_json(p)).expect("serializable")
}

pub fn parse_point(c: &[String; 2]) -> Result<Point, GeomError> {
    Ok(Point::new(parse_rational(&c[0])?, parse_rational(&c[1])?))
}

pub fn polygon_from_json(j: &PolygonJson) -> Result<Polygon, GeomError> {
    Polygon::new(j.vertices.iter().map(parse_point).collect::<Result<_, _>>()?)
}

pub fn polygon_from_str(s: &str) -> Result<Polygon, GeomError> {
    let j: PolygonJson = serde_json::from_str(s).map_err(|e| GeomError::Parse(e.to_string()))?;
    polygon_from_json(&j)
}

pub fn polygon_from_value(v: &Value) -> Result<Polygon, GeomError> {
    let j: PolygonJson = serde_json::from_value(v.clone()).map_err(|e| GeomError::Parse(e.to_string()))?;
    polygon_from_json(&j)
}

pub fn line_json(l: &Line) -> Value {
    json!({
        "anchor": point_json(&l.anchor),
        "dir": [format_rational(l.dir.dx()), format_rational(l.dir.dy())],
    })
}

pub(crate) fn ser_line<S: Serializer>(l: &Line, s: S) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(2))?;
    m.serialize_entry("anchor", &point_json(&l.anchor))?;
    m.serialize_entry("dir", &[format_rational(l.dir.dx()), format_rational(l.dir.dy())])?;
    m.end()
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = Polygon::new(vec![
            Point::from_ints(0, 0),
            Point::new(parse_rational("7/2").unwrap(), parse_rational("-1/3").unwrap()),
            Point::from_ints(1, 5),
        ])
        .unwrap();
        let s = serde_json::to_string(&polygon_to_json(&p)).unwrap();
        assert!(s.contains("\"7/2\""));
        assert_eq!(polygon_from_str(&s).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(polygon_from_str("{\"vertices\": 3}"), Err(GeomError::Parse(_))));
        assert!(matches!(
            polygon_from_str("{\"vertices\": [[\"0\",\"0\"],[\"1\",\"x\"],[\"0\",\"1\"]]}"),
            Err(GeomError::Parse(_))
        ));
    }
}
