//! SVG drawings of curves on the unfolded cross net of a box.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{BoxGeometry, FaceId, FacePoint, VertexId};
use crate::rational::{fmt_decimal, int, rat, Direction, Rational, Vec2};
use crate::search::QuasiGeo;
use crate::tracer::{trace_closed_geodesic, Crossing};

const SCALE: i128 = 100;
const MARGIN: i128 = 20;
const PLACES: u32 = 6;

/// A curve to draw: its pieces in face coordinates and the vertices it uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetCurve {
    pub title: String,
    pub dims: [Rational; 3],
    pub pieces: Vec<Crossing>,
    pub vertices: Vec<VertexId>,
}

impl NetCurve {
    pub fn from_quasigeo(title: impl Into<String>, q: &QuasiGeo) -> Self {
        Self {
            title: title.into(),
            dims: q.dims(),
            pieces: q.segments().iter().flat_map(|s| s.crossings.iter().copied()).collect(),
            vertices: q.vertex_cycle(),
        }
    }
}

/// Lower-left corner of each face in the cross layout: L, F, R, K in a row,
/// T above F and B below it.
pub fn net_offset(geom: &BoxGeometry, face: FaceId) -> Vec2 {
    let [a, b, c] = geom.dims();
    let z = Rational::from_integer(0);
    match face {
        FaceId::L => Vec2::new(-b, z),
        FaceId::F => Vec2::new(z, z),
        FaceId::R => Vec2::new(a, z),
        FaceId::K => Vec2::new(a + b, z),
        FaceId::T => Vec2::new(z, c),
        FaceId::B => Vec2::new(z, -b),
    }
}

/// Position of a face point in the net.
pub fn net_point(geom: &BoxGeometry, fp: FacePoint) -> Vec2 {
    net_offset(geom, fp.face) + fp.pos
}

struct Canvas {
    min: Vec2,
    max: Vec2,
}

impl Canvas {
    fn new(geom: &BoxGeometry) -> Self {
        let [a, b, c] = geom.dims();
        Self {
            min: Vec2::new(-b, -b),
            max: Vec2::new(a + b + a, c + b),
        }
    }

    fn x(&self, v: Rational) -> String {
        fmt_decimal((v - self.min.x) * int(SCALE) + int(MARGIN), PLACES)
    }

    fn y(&self, v: Rational) -> String {
        fmt_decimal((self.max.y - v) * int(SCALE) + int(MARGIN), PLACES)
    }

    fn width(&self) -> String {
        fmt_decimal((self.max.x - self.min.x) * int(SCALE) + int(2 * MARGIN), PLACES)
    }

    fn height(&self) -> String {
        fmt_decimal((self.max.y - self.min.y) * int(SCALE) + int(2 * MARGIN), PLACES)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `curve` on the net of `geom`. Output is byte-identical for equal inputs.
pub fn emit_svg(geom: &BoxGeometry, curve: &NetCurve) -> Result<String> {
    if curve.dims != geom.dims() {
        return Err(Error::GeometryMismatch);
    }
    let cv = Canvas::new(geom);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = cv.width(),
        h = cv.height()
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&curve.title));
    let _ = writeln!(s, r##"<g fill="#f4f4f4" stroke="#555" stroke-width="1">"##);
    for face in FaceId::ALL {
        let o = net_offset(geom, face);
        let (w, h) = geom.size(face);
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
            cv.x(o.x),
            cv.y(o.y + h),
            fmt_decimal(w * int(SCALE), PLACES),
            fmt_decimal(h * int(SCALE), PLACES)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g font-family="sans-serif" font-size="14" fill="#888" text-anchor="middle">"##);
    for face in FaceId::ALL {
        let o = net_offset(geom, face);
        let (w, h) = geom.size(face);
        let c = o + Vec2::new(w, h) * rat(1, 2);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, cv.x(c.x), cv.y(c.y), face);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#c0392b" stroke-width="2.5" stroke-linecap="round">"##);
    for c in &curve.pieces {
        let p = net_point(geom, FacePoint { face: c.face, pos: c.entry });
        let q = net_point(geom, FacePoint { face: c.face, pos: c.exit });
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            cv.x(p.x),
            cv.y(p.y),
            cv.x(q.x),
            cv.y(q.y)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#1f3a93" font-family="sans-serif" font-size="12">"##);
    for &vx in &curve.vertices {
        let face = geom.faces_at(vx).into_iter().min().expect("three faces");
        let p = net_point(geom, FacePoint { face, pos: geom.local_corner(face, vx).expect("incident") });
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4"/>"#, cv.x(p.x), cv.y(p.y));
        let _ = writeln!(s, r#"<text x="{}" y="{}" dx="5" dy="-5">{}</text>"#, cv.x(p.x), cv.y(p.y), vx);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

/// The three simple closed geodesics of the cube, each at the middle of the
/// parallel family it slides in.
pub fn known_geodesics(geom: &BoxGeometry) -> Result<Vec<NetCurve>> {
    if !geom.is_cube() {
        return Err(Error::NotCube);
    }
    let half = rat(1, 2);
    let specs = [
        ("equatorial band", Vec2::new(half, half), (1, 0)),
        ("hexagonal band", Vec2::new(rat(1, 4), rat(3, 4)), (1, 1)),
        ("slope 1/2 band", Vec2::new(half, half), (2, 1)),
    ];
    specs
        .into_iter()
        .map(|(title, pos, (dx, dy))| {
            let start = FacePoint { face: FaceId::F, pos };
            let pieces = trace_closed_geodesic(geom, start, Direction::new(dx, dy)?, 32)
                .ok_or_else(|| Error::InvalidCurve(format!("{title} does not close")))?;
            Ok(NetCurve {
                title: title.into(),
                dims: geom.dims(),
                pieces,
                vertices: Vec::new(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn net_edges_line_up() {
        let g = BoxGeometry::new(int(1), rat(3, 2), int(2)).unwrap();
        // F's right edge is R's left edge in the net, and likewise for T over F
        for face in [FaceId::R, FaceId::T, FaceId::L, FaceId::B] {
            let e = g.shared_edge(FaceId::F, face).unwrap();
            for k in [e, (e + 1) % 4] {
                let vx = g.face_corners(FaceId::F)[k];
                let here = net_point(&g, FacePoint { face: FaceId::F, pos: g.local_corner(FaceId::F, vx).unwrap() });
                let there = net_point(&g, FacePoint { face, pos: g.local_corner(face, vx).unwrap() });
                assert_eq!(here, there, "{face} at {vx}");
            }
        }
    }

    #[test]
    fn equatorial_band_crosses_four_faces() {
        let cube = BoxGeometry::cube();
        let known = known_geodesics(&cube).unwrap();
        let faces: Vec<_> = known[0].pieces.iter().map(|c| c.face).collect();
        assert_eq!(faces, [FaceId::F, FaceId::R, FaceId::K, FaceId::L, FaceId::F]);
        assert!(known[0].pieces.iter().all(|c| c.entry.y == rat(1, 2) && c.exit.y == rat(1, 2)));
        assert_eq!(known[1].pieces.len(), 7);
        assert_eq!(known[2].pieces.len(), 7);
    }

    #[test]
    fn deterministic_and_checked() {
        let cube = BoxGeometry::cube();
        let band = &known_geodesics(&cube).unwrap()[0];
        let a = emit_svg(&cube, band).unwrap();
        assert_eq!(a, emit_svg(&cube, band).unwrap());
        assert!(a.contains("<line"));
        let other = BoxGeometry::new(int(1), int(1), int(2)).unwrap();
        assert_eq!(emit_svg(&other, band), Err(Error::GeometryMismatch));
        assert_eq!(known_geodesics(&other), Err(Error::NotCube));
    }
}
