//! Re-validation of quasigeodesics in space, separate from the search path.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::geometry::{BoxGeometry, FacePoint, VertexId};
use crate::intersect::{intersect_segments_3d, Intersection3, Point3};
use crate::rational::{int, rat, Rational};
use crate::search::QuasiGeo;
use crate::tracer::{trace_ray, GeodesicSegment};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub closed: bool,
    pub straight: bool,
    pub angles: bool,
    pub simple: bool,
    /// `None` off the cube, where the property is not expected.
    pub corollary: Option<bool>,
    pub problems: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.closed && self.straight && self.angles && self.simple && self.corollary != Some(false)
    }
}

fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point3, b: Point3) -> Rational {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axis(i: usize, s: Rational) -> Point3 {
    let mut a = [Rational::zero(); 3];
    a[i] = s;
    a
}

/// The three edge directions leaving a vertex, counterclockwise seen from outside.
fn edge_star(geom: &BoxGeometry, vx: VertexId) -> [Point3; 3] {
    let p = geom.position(vx);
    let d = geom.dims();
    let half = rat(1, 2);
    let outward: Point3 = std::array::from_fn(|i| p[i] - d[i] * half);
    let e: [Point3; 3] = std::array::from_fn(|i| axis(i, if p[i].is_zero() { int(1) } else { int(-1) }));
    if dot(cross(e[0], e[1]), outward).is_positive() {
        [e[0], e[1], e[2]]
    } else {
        [e[0], e[2], e[1]]
    }
}

/// Sector index and coordinates of a tangent direction in a vertex star.
fn star_angle(star: &[Point3; 3], d: Point3) -> Option<(usize, Rational, Rational)> {
    (0..3).find_map(|k| {
        let (a, b, c) = (dot(d, star[k]), dot(d, star[(k + 1) % 3]), dot(d, star[(k + 2) % 3]));
        (c.is_zero() && a.is_positive() && !b.is_negative()).then_some((k, a, b))
    })
}

/// Whether the counterclockwise span from `from` to `to` lies in `[π/2, π]`.
fn span_ok(from: (usize, Rational, Rational), to: (usize, Rational, Rational)) -> bool {
    let mut quarters = (to.0 + 3 - from.0) % 3;
    let turn = from.1 * to.2 - from.2 * to.1;
    if quarters == 0 && turn.is_negative() {
        quarters = 3;
    }
    let ge_half = quarters >= 2 || (quarters == 1 && !turn.is_negative());
    let le_pi = quarters < 2 || (quarters == 2 && !turn.is_positive());
    ge_half && le_pi
}

fn piece_vector(geom: &BoxGeometry, seg: &GeodesicSegment, i: usize) -> Point3 {
    let c = seg.crossings[i];
    geom.embed_vector(c.face, c.exit - c.entry)
}

fn check_straight(geom: &BoxGeometry, seg: &GeodesicSegment, problems: &mut Vec<String>) {
    let label = format!("{}->{}", seg.start, seg.end);
    let cs = &seg.crossings;
    let embed = |face, pos| geom.embed(FacePoint { face, pos });
    if embed(cs[0].face, cs[0].entry) != geom.position(seg.start)
        || embed(cs[cs.len() - 1].face, cs[cs.len() - 1].exit) != geom.position(seg.end)
    {
        problems.push(format!("{label}: endpoints are not at its vertices"));
    }
    for w in cs.windows(2) {
        let joint = embed(w[0].face, w[0].exit);
        if joint != embed(w[1].face, w[1].entry) {
            problems.push(format!("{label}: pieces do not join"));
        }
        if geom.vertex_at_position(joint).is_some() {
            problems.push(format!("{label}: passes through a vertex"));
        }
    }
    if cs.iter().any(|c| !geom.contains(c.face, c.entry) || !geom.contains(c.face, c.exit) || c.entry == c.exit) {
        problems.push(format!("{label}: piece outside its face"));
    }
    match geom.develop(&seg.faces()) {
        Ok(frames) => {
            let pts: Vec<_> = cs
                .iter()
                .zip(&frames)
                .flat_map(|(c, t)| [t.apply(c.entry), t.apply(c.exit)])
                .collect();
            let origin = pts[0];
            let heading = pts[pts.len() - 1] - origin;
            let on_line = pts.iter().all(|p| (*p - origin).cross(heading).is_zero());
            let ordered = pts.windows(2).all(|w| !(w[1] - w[0]).dot(heading).is_negative());
            let length_sq = heading.norm_sq();
            if !on_line || !ordered || length_sq != seg.length_sq {
                problems.push(format!("{label}: not straight in its development"));
            }
        }
        Err(e) => problems.push(format!("{label}: {e}")),
    }
    match trace_ray(geom, seg.start, seg.start_face, seg.direction, seg.crossings.len()) {
        Ok(outcome) if outcome.clone().segment().as_ref() == Some(seg) => {}
        _ => problems.push(format!("{label}: re-tracing gives a different curve")),
    }
}

/// Checks closure, straightness, both junction angles and simplicity of `q`
/// from 3D data, and on the cube that no face is crossed twice.
pub fn verify_quasigeo(geom: &BoxGeometry, q: &QuasiGeo) -> VerifyReport {
    let mut r = VerifyReport::default();
    let segs = q.segments();
    let n = segs.len();
    if q.dims() != geom.dims() || n == 0 {
        r.problems.push("curve is not on this box".into());
        return r;
    }

    r.closed = (0..n).all(|i| segs[i].end == segs[(i + 1) % n].start);
    let mut starts: Vec<_> = segs.iter().map(|s| s.start).collect();
    starts.sort();
    starts.dedup();
    if starts.len() != n {
        r.closed = false;
        r.problems.push("a vertex is visited twice".into());
    }

    let before = r.problems.len();
    for s in segs {
        check_straight(geom, s, &mut r.problems);
    }
    r.straight = r.problems.len() == before;

    r.angles = r.closed
        && (0..n).all(|i| {
            let (prev, next) = (&segs[i], &segs[(i + 1) % n]);
            let star = edge_star(geom, next.start);
            let out = star_angle(&star, piece_vector(geom, next, 0));
            let back = star_angle(&star, sub([Rational::zero(); 3], piece_vector(geom, prev, prev.crossings.len() - 1)));
            match (out, back) {
                (Some(o), Some(b)) => span_ok(o, b),
                _ => false,
            }
        });
    if !r.angles {
        r.problems.push("a junction has more than π on one side".into());
    }

    let pieces: Vec<(Point3, Point3)> = segs.iter().flat_map(|s| s.pieces_3d(geom)).collect();
    let m = pieces.len();
    r.simple = (0..m).all(|i| {
        (i + 1..m).all(|j| match intersect_segments_3d(pieces[i].0, pieces[i].1, pieces[j].0, pieces[j].1) {
            Intersection3::Disjoint => true,
            Intersection3::Point(x) => {
                (j == i + 1 && x == pieces[i].1 && x == pieces[j].0) || (i == 0 && j == m - 1 && x == pieces[0].0 && x == pieces[j].1)
            }
            Intersection3::Overlap(..) => false,
        })
    });
    if !r.simple {
        r.problems.push("curve meets itself".into());
    }

    if geom.is_cube() {
        let ok = crate::lemma::verify_corollary(std::slice::from_ref(q));
        r.corollary = Some(ok);
        if !ok {
            r.problems.push("a face is crossed more than once".into());
        }
    }
    r
}
