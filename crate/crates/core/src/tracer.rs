//! Straight rays on the glued box surface and vertex-to-vertex geodesic segments.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::VertexAngle;
use crate::error::{Error, Result};
use crate::geometry::{BoxGeometry, FaceId, FacePoint, PlanarTransform, VertexId};
use crate::intersect::{intersect_segments, Intersection, Point3};
use crate::rational::{int, serialize_rational, Direction, Rational, Slope, Vec2};

/// Crossing budget used for the cube.
pub const DEFAULT_CUBE_MAX_CROSSINGS: usize = 16;

/// The five slopes a segment of a simple closed quasigeodesic on the cube can have.
pub const CUBE_SLOPES: [Slope; 5] = [
    Slope::new(0, 1),
    Slope::new(1, 3),
    Slope::new(1, 2),
    Slope::new(2, 3),
    Slope::new(1, 1),
];

/// One straight piece of a segment inside a single face, in that face's frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub face: FaceId,
    pub entry: Vec2,
    pub exit: Vec2,
}

impl Crossing {
    pub fn direction(&self) -> Direction {
        Direction::from_vec(self.exit - self.entry).expect("pieces have positive length")
    }

    pub fn reversed(&self) -> Crossing {
        Crossing {
            face: self.face,
            entry: self.exit,
            exit: self.entry,
        }
    }
}

/// Where a segment leaves a vertex: the face it enters and its direction in that face's frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Departure {
    pub vertex: VertexId,
    pub face: FaceId,
    pub dir: Direction,
}

impl Departure {
    pub fn angle(&self, geom: &BoxGeometry) -> Result<VertexAngle> {
        VertexAngle::of(geom, self.vertex, self.face, self.dir)
    }

    /// Edge-following departures are owned by the lower of their two faces.
    pub fn canonical(&self, geom: &BoxGeometry) -> Result<Departure> {
        let angle = self.angle(geom)?;
        Ok(angle
            .realizations(geom, self.vertex)
            .into_iter()
            .map(|(face, dir)| Departure {
                vertex: self.vertex,
                face,
                dir,
            })
            .min()
            .expect("at least one realization"))
    }
}

/// A straight vertex-to-vertex path whose interior avoids every vertex and itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeodesicSegment {
    pub start: VertexId,
    pub end: VertexId,
    pub start_face: FaceId,
    pub direction: Direction,
    pub crossings: Vec<Crossing>,
    pub length_sq: Rational,
}

impl GeodesicSegment {
    pub fn departure(&self) -> Departure {
        Departure {
            vertex: self.start,
            face: self.start_face,
            dir: self.direction,
        }
    }

    /// Departure of the same segment traversed from its end.
    pub fn return_departure(&self) -> Departure {
        let last = self.crossings.last().expect("segments have at least one piece");
        Departure {
            vertex: self.end,
            face: last.face,
            dir: last.direction().reversed(),
        }
    }

    pub fn reversed(&self) -> GeodesicSegment {
        let back = self.return_departure();
        GeodesicSegment {
            start: self.end,
            end: self.start,
            start_face: back.face,
            direction: back.dir,
            crossings: self.crossings.iter().rev().map(Crossing::reversed).collect(),
            length_sq: self.length_sq,
        }
    }

    /// Orientation-independent identity of the segment on the surface.
    pub fn key(&self, geom: &BoxGeometry) -> Departure {
        let a = self.departure().canonical(geom).expect("valid departure");
        let b = self.return_departure().canonical(geom).expect("valid departure");
        a.min(b)
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }

    pub fn is_edge(&self) -> bool {
        self.direction.dx == 0 || self.direction.dy == 0
    }

    pub fn slope(&self) -> Slope {
        self.direction.slope()
    }

    pub fn faces(&self) -> Vec<FaceId> {
        self.crossings.iter().map(|c| c.face).collect()
    }

    /// Number of separate visits to each face, indexed by `FaceId::index`.
    pub fn face_visits(&self) -> [usize; 6] {
        let mut counts = [0; 6];
        for c in &self.crossings {
            counts[c.face.index()] += 1;
        }
        counts
    }

    pub fn pieces_3d(&self, geom: &BoxGeometry) -> Vec<(Point3, Point3)> {
        self.crossings
            .iter()
            .map(|c| {
                (
                    geom.embed(FacePoint { face: c.face, pos: c.entry }),
                    geom.embed(FacePoint { face: c.face, pos: c.exit }),
                )
            })
            .collect()
    }

    pub fn record(&self) -> SegmentRecord {
        SegmentRecord {
            start: self.start,
            end: self.end,
            start_face: self.start_face,
            slope: self.slope(),
            direction: self.direction,
            faces: self.faces(),
            length_sq: self.length_sq,
        }
    }
}

/// Stable external form of a segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentRecord {
    pub start: VertexId,
    pub end: VertexId,
    pub start_face: FaceId,
    pub slope: Slope,
    pub direction: Direction,
    pub faces: Vec<FaceId>,
    #[serde(serialize_with = "serialize_rational")]
    pub length_sq: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOutcome {
    Segment(GeodesicSegment),
    SelfCrossing {
        /// First point (along the ray) where the ray meets its own earlier trace.
        witness: FacePoint,
        /// First face the ray entered a second time.
        revisited: FaceId,
        earlier_dir: Direction,
        later_dir: Direction,
        /// Pieces traced up to the crossing, the last one cut at the witness.
        crossings: Vec<Crossing>,
    },
    Unbounded {
        crossings: usize,
    },
}

impl TraceOutcome {
    pub fn segment(self) -> Option<GeodesicSegment> {
        match self {
            TraceOutcome::Segment(s) => Some(s),
            _ => None,
        }
    }
}

/// Parameter at which the ray `p + t d` leaves the face rectangle.
fn exit_param(geom: &BoxGeometry, face: FaceId, p: Vec2, d: Vec2) -> Rational {
    let (w, h) = geom.size(face);
    let mut best: Option<Rational> = None;
    let mut consider = |t: Rational| {
        if best.is_none_or(|b| t < b) {
            best = Some(t);
        }
    };
    let zero = Rational::zero();
    if d.x > zero {
        consider((w - p.x) / d.x);
    } else if d.x < zero {
        consider(-p.x / d.x);
    }
    if d.y > zero {
        consider((h - p.y) / d.y);
    } else if d.y < zero {
        consider(-p.y / d.y);
    }
    best.expect("nonzero direction")
}

/// Follows the straight development from `start` into `start_face` along `dir`.
///
/// Stops at the first vertex hit, at the first self-intersection, or after
/// `max_crossings` face visits.
pub fn trace_ray(
    geom: &BoxGeometry,
    start: VertexId,
    start_face: FaceId,
    dir: Direction,
    max_crossings: usize,
) -> Result<TraceOutcome> {
    walk(geom, start, start_face, dir, max_crossings, true)
}

/// Like [`trace_ray`] but passes through its own trace, so the result is the
/// vertex-to-vertex geodesic along `dir` whether or not it is simple.
/// `SelfCrossing` is never returned.
pub fn trace_geodesic(
    geom: &BoxGeometry,
    start: VertexId,
    start_face: FaceId,
    dir: Direction,
    max_crossings: usize,
) -> Result<TraceOutcome> {
    walk(geom, start, start_face, dir, max_crossings, false)
}

fn walk(
    geom: &BoxGeometry,
    start: VertexId,
    start_face: FaceId,
    dir: Direction,
    max_crossings: usize,
    stop_on_crossing: bool,
) -> Result<TraceOutcome> {
    if max_crossings == 0 {
        return Err(Error::NonPositiveBound("max_crossings"));
    }
    VertexAngle::of(geom, start, start_face, dir)?;
    let mut face = start_face;
    let mut p = geom.local_corner(start_face, start).expect("checked incidence");
    let mut d = dir.to_vec();
    let mut pieces: Vec<Crossing> = Vec::new();
    let mut revisited: Option<FaceId> = None;
    let mut total_t = Rational::zero();

    loop {
        if pieces.len() == max_crossings {
            return Ok(TraceOutcome::Unbounded {
                crossings: pieces.len(),
            });
        }
        let t = exit_param(geom, face, p, d);
        let q = p + d * t;
        let ends_at_start = geom.vertex_at(face, q) == Some(start);

        if revisited.is_none() && pieces.iter().any(|c| c.face == face) {
            revisited = Some(face);
        }

        // earliest meeting with an earlier piece on this face
        let mut hit: Option<(Rational, Vec2, usize)> = None;
        let earlier = pieces.iter().enumerate().filter(|(_, c)| stop_on_crossing && c.face == face);
        for (i, prev) in earlier {
            let (s, at) = match intersect_segments(p, q, prev.entry, prev.exit) {
                Intersection::Disjoint => continue,
                Intersection::Point { at, t } => {
                    if ends_at_start && i == 0 && at == q {
                        continue;
                    }
                    (t, at)
                }
                Intersection::Overlap { from, .. } => ((from - p).dot(q - p) / (q - p).norm_sq(), from),
            };
            if hit.is_none_or(|(best, _, _)| s < best) {
                hit = Some((s, at, i));
            }
        }
        if let Some((_, at, i)) = hit {
            let earlier_dir = pieces[i].direction();
            pieces.push(Crossing {
                face,
                entry: p,
                exit: at,
            });
            return Ok(TraceOutcome::SelfCrossing {
                witness: FacePoint { face, pos: at },
                revisited: revisited.unwrap_or(face),
                earlier_dir,
                later_dir: Direction::from_vec(d)?,
                crossings: pieces,
            });
        }

        pieces.push(Crossing { face, entry: p, exit: q });
        total_t += t;

        if let Some(end) = geom.vertex_at(face, q) {
            return Ok(TraceOutcome::Segment(GeodesicSegment {
                start,
                end,
                start_face,
                direction: dir,
                crossings: pieces,
                length_sq: total_t * total_t * dir.to_vec().norm_sq(),
            }));
        }
        let e = geom
            .edge_containing(face, q)
            .expect("exit point lies on the face boundary");
        let g = geom.gluing(face, e);
        let inv = g.to_self.inverse();
        p = inv.apply(q);
        d = inv.apply_vector(d);
        face = g.neighbor;
    }
}

/// Traces a closed geodesic through an interior face point, returning its pieces
/// once the ray comes back to `start` with its initial direction. `None` if the
/// ray hits a vertex or the budget runs out first.
pub fn trace_closed_geodesic(
    geom: &BoxGeometry,
    start: FacePoint,
    dir: Direction,
    max_crossings: usize,
) -> Option<Vec<Crossing>> {
    let mut face = start.face;
    let mut p = start.pos;
    let mut d = dir.to_vec();
    let mut pieces = Vec::new();
    while pieces.len() < max_crossings {
        let t = exit_param(geom, face, p, d);
        let q = p + d * t;
        if !pieces.is_empty() && face == start.face && Direction::from_vec(d).ok() == Some(dir) {
            let along = start.pos - p;
            if along.cross(d).is_zero() && along.dot(d) > Rational::zero() && along.dot(d) <= (q - p).dot(d) {
                pieces.push(Crossing {
                    face,
                    entry: p,
                    exit: start.pos,
                });
                return Some(pieces);
            }
        }
        pieces.push(Crossing { face, entry: p, exit: q });
        geom.vertex_at(face, q).is_none().then_some(())?;
        let e = geom.edge_containing(face, q)?;
        let g = geom.gluing(face, e);
        let inv = g.to_self.inverse();
        p = inv.apply(q);
        d = inv.apply_vector(d);
        face = g.neighbor;
    }
    None
}

/// Re-traces `seg` from its key departure so that equal surface curves have
/// identical representations.
fn canonical_form(geom: &BoxGeometry, seg: &GeodesicSegment, budget: usize) -> GeodesicSegment {
    let key = seg.key(geom);
    if key == seg.departure() {
        return seg.clone();
    }
    trace_ray(geom, key.vertex, key.face, key.dir, budget.max(seg.crossings.len()))
        .ok()
        .and_then(TraceOutcome::segment)
        .expect("a segment traced from its other end is the same segment")
}

fn dedupe(geom: &BoxGeometry, segs: Vec<GeodesicSegment>, budget: usize) -> Vec<GeodesicSegment> {
    let mut keyed: Vec<(Departure, GeodesicSegment)> = segs
        .iter()
        .map(|s| {
            let c = canonical_form(geom, s, budget);
            (c.departure(), c)
        })
        .collect();
    keyed.sort_by_key(|a| a.0);
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, s)| s).collect()
}

/// All cube segments leaving a vertex at one of the five lemma slopes, each
/// listed once regardless of traversal direction.
pub fn enumerate_segments_cube(geom: &BoxGeometry) -> Result<Vec<GeodesicSegment>> {
    if !geom.is_cube() {
        return Err(Error::NotCube);
    }
    let mut found = Vec::new();
    for vx in VertexId::all() {
        for (face, corner) in geom.star(vx) {
            for s in CUBE_SLOPES {
                let mut dirs = vec![(s.run, s.rise), (s.rise, s.run)];
                dirs.dedup();
                for (x, y) in dirs {
                    let dir = Direction::new(x, y)?.rotate(corner as u8);
                    if let TraceOutcome::Segment(seg) =
                        trace_ray(geom, vx, face, dir, DEFAULT_CUBE_MAX_CROSSINGS)?
                    {
                        if !seg.is_loop() {
                            found.push(seg);
                        }
                    }
                }
            }
        }
    }
    Ok(dedupe(geom, found, DEFAULT_CUBE_MAX_CROSSINGS))
}

fn dist_sq_to_segment(a: Vec2, b: Vec2) -> Rational {
    let ab = b - a;
    let t = (-a.dot(ab) / ab.norm_sq()).clamp(Rational::zero(), int(1));
    (a + ab * t).norm_sq()
}

/// Candidate directions from one vertex corner, found by unfolding face strips.
fn strip_directions(
    geom: &BoxGeometry,
    face: FaceId,
    corner: usize,
    bound: Rational,
    max_crossings: usize,
) -> BTreeSet<Direction> {
    struct Node {
        face: FaceId,
        place: PlanarTransform,
        lo: Vec2,
        hi: Vec2,
        depth: usize,
        entered: Option<usize>,
    }
    let origin = geom.corner_point(face, corner);
    let mut out = BTreeSet::new();
    let mut stack = vec![Node {
        face,
        place: PlanarTransform::identity(),
        lo: Vec2::ints(1, 0).rotate(corner as u8),
        hi: Vec2::ints(0, 1).rotate(corner as u8),
        depth: 1,
        entered: None,
    }];
    while let Some(n) = stack.pop() {
        for k in 0..4 {
            let d = n.place.apply(geom.corner_point(n.face, k)) - origin;
            if d.is_zero() || d.norm_sq() > bound {
                continue;
            }
            if n.lo.cross(d) >= Rational::zero() && d.cross(n.hi) >= Rational::zero() {
                out.insert(Direction::from_vec(d).expect("nonzero"));
            }
        }
        if n.depth >= max_crossings {
            continue;
        }
        for e in (0..4).filter(|e| Some(*e) != n.entered) {
            let mut a = n.place.apply(geom.corner_point(n.face, e)) - origin;
            let mut b = n.place.apply(geom.corner_point(n.face, e + 1)) - origin;
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let c = a.cross(b);
            if c.is_zero() {
                continue;
            }
            if c < Rational::zero() {
                std::mem::swap(&mut a, &mut b);
            }
            let lo = if n.lo.cross(a) > Rational::zero() { a } else { n.lo };
            let hi = if b.cross(n.hi) > Rational::zero() { b } else { n.hi };
            if lo.cross(hi) <= Rational::zero() || dist_sq_to_segment(a, b) > bound {
                continue;
            }
            let g = geom.gluing(n.face, e);
            stack.push(Node {
                face: g.neighbor,
                place: n.place.compose(&g.to_self),
                lo,
                hi,
                depth: n.depth + 1,
                entered: Some(g.neighbor_edge),
            });
        }
    }
    out
}

/// All segments (any slope, loops included) with `length_sq <= length_sq_bound`
/// crossing at most `max_crossings` faces.
pub fn enumerate_segments_box(
    geom: &BoxGeometry,
    length_sq_bound: Rational,
    max_crossings: usize,
) -> Result<Vec<GeodesicSegment>> {
    if max_crossings == 0 {
        return Err(Error::NonPositiveBound("max_crossings"));
    }
    if length_sq_bound <= Rational::zero() {
        return Ok(Vec::new());
    }
    let starts: Vec<(VertexId, FaceId, usize)> = VertexId::all()
        .flat_map(|vx| geom.star(vx).map(|(f, k)| (vx, f, k)))
        .collect();
    let found: Vec<GeodesicSegment> = starts
        .par_iter()
        .flat_map_iter(|&(vx, face, corner)| {
            strip_directions(geom, face, corner, length_sq_bound, max_crossings)
                .into_iter()
                .filter_map(move |dir| {
                    trace_ray(geom, vx, face, dir, max_crossings)
                        .ok()
                        .and_then(TraceOutcome::segment)
                        .filter(|s| s.length_sq <= length_sq_bound)
                })
        })
        .collect();
    Ok(dedupe(geom, found, max_crossings))
}
