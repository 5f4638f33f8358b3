//! Depth-first assembly of geodesic segments into simple closed quasigeodesics.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{junction_ok, VertexAngle};
use crate::error::{Error, Result};
use crate::geometry::{BoxGeometry, FaceId, FacePoint, VertexId};
use crate::intersect::{intersect_segments, Intersection};
use crate::rational::{Rational, Slope, Vec2};
use crate::tracer::{Departure, GeodesicSegment, SegmentRecord};

/// Cube categories, by the longest slope a quasigeodesic uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Category {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Category {
    pub const ALL: [Category; 5] = [Category::A, Category::B, Category::C, Category::D, Category::E];

    /// Category of a single slope; the five slopes in increasing cube length
    /// `0/1 < 1/1 < 1/2 < 1/3 < 2/3`.
    pub fn of_slope(s: Slope) -> Option<Category> {
        match (s.rise, s.run) {
            (0, 1) => Some(Category::A),
            (1, 1) => Some(Category::B),
            (1, 2) => Some(Category::C),
            (1, 3) => Some(Category::D),
            (2, 3) => Some(Category::E),
            _ => None,
        }
    }
}

/// One traversed segment of a curve, identified by its canonical departures
/// from both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leg {
    pub forward: Departure,
    pub backward: Departure,
}

impl Leg {
    pub fn of(geom: &BoxGeometry, seg: &GeodesicSegment) -> Leg {
        Leg {
            forward: seg.departure().canonical(geom).expect("valid departure"),
            backward: seg.return_departure().canonical(geom).expect("valid departure"),
        }
    }

    pub fn flipped(self) -> Leg {
        Leg {
            forward: self.backward,
            backward: self.forward,
        }
    }
}

/// Least encoding over cyclic rotations and reversal; returns the canonical
/// legs together with `(rotation, reversed)` that produced them.
pub(crate) fn canonical_cycle(legs: &[Leg]) -> (Vec<Leg>, usize, bool) {
    let n = legs.len();
    let reversed: Vec<Leg> = legs.iter().rev().map(|l| l.flipped()).collect();
    let key = |seq: &[Leg], r: usize| -> Vec<Departure> {
        (0..n).map(|i| seq[(r + i) % n].forward).collect()
    };
    let mut best: Option<(Vec<Departure>, usize, bool)> = None;
    for (seq, rev) in [(legs, false), (reversed.as_slice(), true)] {
        for r in 0..n {
            let k = key(seq, r);
            if best.as_ref().is_none_or(|(b, _, _)| k < *b) {
                best = Some((k, r, rev));
            }
        }
    }
    let (_, r, rev) = best.expect("nonempty cycle");
    let seq = if rev { &reversed } else { legs };
    ((0..n).map(|i| seq[(r + i) % n]).collect(), r, rev)
}

/// A simple closed quasigeodesic made of directed geodesic segments, stored in
/// its canonical rotation and orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiGeo {
    dims: [Rational; 3],
    segments: Vec<GeodesicSegment>,
    legs: Vec<Leg>,
}

impl QuasiGeo {
    /// Wraps a closed chain of directed segments; does not re-check validity.
    pub fn from_cycle(geom: &BoxGeometry, segments: Vec<GeodesicSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidCurve("empty chain".into()));
        }
        let n = segments.len();
        for i in 0..n {
            let (a, b) = (&segments[i], &segments[(i + 1) % n]);
            if a.end != b.start {
                return Err(Error::JunctionMismatch {
                    end: a.end,
                    start: b.start,
                });
            }
        }
        let legs: Vec<Leg> = segments.iter().map(|s| Leg::of(geom, s)).collect();
        let (legs, r, rev) = canonical_cycle(&legs);
        let ordered: Vec<GeodesicSegment> = if rev {
            segments.iter().rev().map(GeodesicSegment::reversed).collect()
        } else {
            segments
        };
        let segments = (0..n).map(|i| ordered[(r + i) % n].clone()).collect();
        Ok(Self {
            dims: geom.dims(),
            segments,
            legs,
        })
    }

    pub fn dims(&self) -> [Rational; 3] {
        self.dims
    }

    pub fn segments(&self) -> &[GeodesicSegment] {
        &self.segments
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    /// Canonical labeled encoding; equal encodings mean the same labeled curve.
    pub fn encoding(&self) -> Vec<Departure> {
        self.legs.iter().map(|l| l.forward).collect()
    }

    pub fn vertex_cycle(&self) -> Vec<VertexId> {
        self.segments.iter().map(|s| s.start).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.segments.len()
    }

    pub fn slopes(&self) -> Vec<Slope> {
        let mut s: Vec<Slope> = self.segments.iter().map(|s| s.slope()).collect();
        s.sort();
        s
    }

    pub fn length_sq_terms(&self) -> Vec<Rational> {
        let mut l: Vec<Rational> = self.segments.iter().map(|s| s.length_sq).collect();
        l.sort();
        l
    }

    pub fn category(&self) -> Option<Category> {
        classify(self)
    }

    /// Interior face crossings per face, indexed by `FaceId::index`.
    /// Edge segments run along faces and cross none.
    pub fn face_visits(&self) -> [usize; 6] {
        let mut counts = [0; 6];
        for s in self.segments.iter().filter(|s| !s.is_edge()) {
            for c in &s.crossings {
                counts[c.face.index()] += 1;
            }
        }
        counts
    }

    pub fn records(&self) -> Vec<SegmentRecord> {
        self.segments.iter().map(GeodesicSegment::record).collect()
    }
}

/// Cube category: the longest slope present (by cube length) decides.
/// `None` when some segment has a slope outside the five.
pub fn classify(q: &QuasiGeo) -> Option<Category> {
    q.segments
        .iter()
        .map(|s| Category::of_slope(s.slope()))
        .collect::<Option<Vec<_>>>()?
        .into_iter()
        .max()
}

/// Whether both surface angles at the junction `prev -> next` are at most π.
pub fn angle_ok(geom: &BoxGeometry, prev: &GeodesicSegment, next: &GeodesicSegment) -> Result<bool> {
    if prev.end != next.start {
        return Err(Error::JunctionMismatch {
            end: prev.end,
            start: next.start,
        });
    }
    let back = prev.return_departure().angle(geom)?;
    let out = next.departure().angle(geom)?;
    Ok(junction_ok(out, back))
}

pub(crate) type FacePieces = [Vec<(Vec2, Vec2)>; 6];

pub(crate) fn face_pieces(seg: &GeodesicSegment) -> FacePieces {
    let mut out: FacePieces = Default::default();
    for c in &seg.crossings {
        out[c.face.index()].push((c.entry, c.exit));
    }
    out
}

/// First forbidden meeting point of two different segments. Meetings at the
/// `permitted` vertices are allowed.
pub(crate) fn forbidden_meeting(
    geom: &BoxGeometry,
    a: &FacePieces,
    b: &FacePieces,
    permitted: &[VertexId],
) -> Option<FacePoint> {
    for face in FaceId::ALL {
        let (pa, pb) = (&a[face.index()], &b[face.index()]);
        if pa.is_empty() || pb.is_empty() {
            continue;
        }
        for &(a0, a1) in pa {
            for &(b0, b1) in pb {
                match intersect_segments(a0, a1, b0, b1) {
                    Intersection::Disjoint => {}
                    Intersection::Point { at, .. } => {
                        let allowed = geom
                            .vertex_at(face, at)
                            .is_some_and(|vx| permitted.contains(&vx));
                        if !allowed {
                            return Some(FacePoint { face, pos: at });
                        }
                    }
                    Intersection::Overlap { from, .. } => return Some(FacePoint { face, pos: from }),
                }
            }
        }
    }
    None
}

pub(crate) fn shared_endpoints(a: &GeodesicSegment, b: &GeodesicSegment) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = [a.start, a.end]
        .into_iter()
        .filter(|x| *x == b.start || *x == b.end)
        .collect();
    out.dedup();
    out
}

/// Meeting point of two segments outside their shared endpoints, if any.
pub fn segments_meet(geom: &BoxGeometry, a: &GeodesicSegment, b: &GeodesicSegment) -> Option<FacePoint> {
    forbidden_meeting(geom, &face_pieces(a), &face_pieces(b), &shared_endpoints(a, b))
}

fn self_simple(geom: &BoxGeometry, seg: &GeodesicSegment) -> bool {
    let cs = &seg.crossings;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i].face != cs[j].face {
                continue;
            }
            match intersect_segments(cs[i].entry, cs[i].exit, cs[j].entry, cs[j].exit) {
                Intersection::Disjoint => {}
                Intersection::Point { at, .. } => {
                    let closing_corner = seg.is_loop()
                        && i == 0
                        && j == cs.len() - 1
                        && geom.vertex_at(cs[i].face, at) == Some(seg.start);
                    if !closing_corner {
                        return false;
                    }
                }
                Intersection::Overlap { .. } => return false,
            }
        }
    }
    true
}

/// Simplicity of a junction-consistent chain: every segment is simple, no two
/// segments meet except at a shared junction vertex, and no vertex is passed
/// twice. With `closing`, the chain must end where it starts.
pub fn simple_check(geom: &BoxGeometry, chain: &[GeodesicSegment], closing: bool) -> bool {
    let n = chain.len();
    if n == 0 {
        return true;
    }
    let last_end = chain[n - 1].end;
    if closing != (last_end == chain[0].start) {
        return false;
    }
    let mut starts: Vec<VertexId> = chain.iter().map(|s| s.start).collect();
    if !closing {
        starts.push(last_end);
    }
    let mut seen = starts.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != starts.len() {
        return false;
    }
    if !chain.iter().all(|s| self_simple(geom, s)) {
        return false;
    }
    let pieces: Vec<FacePieces> = chain.iter().map(face_pieces).collect();
    for i in 0..n {
        for j in i + 1..n {
            let permitted = shared_endpoints(&chain[i], &chain[j]);
            if forbidden_meeting(geom, &pieces[i], &pieces[j], &permitted).is_some() {
                return false;
            }
        }
    }
    true
}

/// Precomputed directed segments for searching.
pub(crate) struct SegmentIndex {
    pub segs: Vec<GeodesicSegment>,
    pub undirected: Vec<usize>,
    pub depart: Vec<VertexAngle>,
    pub back: Vec<VertexAngle>,
    pub pieces: Vec<FacePieces>,
    /// Directed segment ids leaving each vertex, longest first.
    pub out: Vec<Vec<usize>>,
}

impl SegmentIndex {
    pub fn new(geom: &BoxGeometry, segments: &[GeodesicSegment]) -> Result<Self> {
        let mut segs = Vec::with_capacity(2 * segments.len());
        let mut undirected = Vec::with_capacity(2 * segments.len());
        let mut pieces = Vec::with_capacity(segments.len());
        for (i, s) in segments.iter().enumerate() {
            segs.push(s.clone());
            undirected.push(i);
            segs.push(s.reversed());
            undirected.push(i);
            pieces.push(face_pieces(s));
        }
        let depart = segs.iter().map(|s| s.departure().angle(geom)).collect::<Result<Vec<_>>>()?;
        let back = segs
            .iter()
            .map(|s| s.return_departure().angle(geom))
            .collect::<Result<Vec<_>>>()?;
        let mut out = vec![Vec::new(); 8];
        for (i, s) in segs.iter().enumerate() {
            out[s.start.label() as usize - 1].push(i);
        }
        for list in &mut out {
            list.sort_by(|&a, &b| segs[b].length_sq.cmp(&segs[a].length_sq).then(a.cmp(&b)));
        }
        Ok(Self {
            segs,
            undirected,
            depart,
            back,
            pieces,
            out,
        })
    }

    pub fn outgoing(&self, vx: VertexId) -> &[usize] {
        &self.out[vx.label() as usize - 1]
    }

    pub fn meets(&self, geom: &BoxGeometry, a: usize, b: usize) -> Option<FacePoint> {
        let permitted = shared_endpoints(&self.segs[a], &self.segs[b]);
        forbidden_meeting(
            geom,
            &self.pieces[self.undirected[a]],
            &self.pieces[self.undirected[b]],
            &permitted,
        )
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutput {
    /// Distinct labeled quasigeodesics in canonical order.
    pub quasigeos: Vec<QuasiGeo>,
    /// Closed chains emitted by the search, one per traversal orientation.
    pub raw_emissions: usize,
}

fn vbit(vx: VertexId) -> u16 {
    1 << vx.label()
}

fn extend(geom: &BoxGeometry, ix: &SegmentIndex, chain: &mut Vec<usize>, used: u16, found: &mut Vec<Vec<usize>>) {
    let root = chain[0];
    let last = *chain.last().unwrap();
    let start = ix.segs[root].start;
    for &cand in ix.outgoing(ix.segs[last].end) {
        if ix.undirected[cand] <= ix.undirected[root] {
            continue;
        }
        if !junction_ok(ix.depart[cand], ix.back[last]) {
            continue;
        }
        let end = ix.segs[cand].end;
        let closing = end == start;
        if !closing && used & vbit(end) != 0 {
            continue;
        }
        if closing && !junction_ok(ix.depart[root], ix.back[cand]) {
            continue;
        }
        if chain.iter().any(|&j| ix.meets(geom, cand, j).is_some()) {
            continue;
        }
        chain.push(cand);
        if closing {
            found.push(chain.clone());
        } else {
            extend(geom, ix, chain, used | vbit(end), found);
        }
        chain.pop();
    }
}

fn search_from(geom: &BoxGeometry, ix: &SegmentIndex, root: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    let s = &ix.segs[root];
    if s.is_loop() {
        if junction_ok(ix.depart[root], ix.back[root]) {
            found.push(vec![root]);
        }
        return found;
    }
    let mut chain = vec![root];
    extend(geom, ix, &mut chain, vbit(s.start) | vbit(s.end), &mut found);
    found
}

/// Every labeled simple closed quasigeodesic formed from `segments`.
///
/// One search runs per directed root segment; a curve is emitted only from
/// its least segment, so each labeled curve appears once per orientation.
pub fn dfs_search(geom: &BoxGeometry, segments: &[GeodesicSegment]) -> Result<SearchOutput> {
    let ix = SegmentIndex::new(geom, segments)?;
    let emitted: Vec<Vec<usize>> = (0..ix.segs.len())
        .into_par_iter()
        .flat_map_iter(|root| search_from(geom, &ix, root))
        .collect();
    let raw_emissions = emitted.len();
    let mut unique: BTreeMap<Vec<Departure>, QuasiGeo> = BTreeMap::new();
    for cycle in emitted {
        let q = QuasiGeo::from_cycle(geom, cycle.iter().map(|&i| ix.segs[i].clone()).collect())?;
        unique.entry(q.encoding()).or_insert(q);
    }
    Ok(SearchOutput {
        quasigeos: unique.into_values().collect(),
        raw_emissions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::v;
    use crate::rational::{int, Direction};
    use crate::tracer::{enumerate_segments_cube, trace_ray};
    use FaceId::*;

    fn seg(geom: &BoxGeometry, vx: u8, face: FaceId, x: i64, y: i64) -> GeodesicSegment {
        trace_ray(geom, v(vx), face, Direction::new(x, y).unwrap(), 16)
            .unwrap()
            .segment()
            .unwrap()
    }

    #[test]
    fn angle_ok_cases() {
        let cube = BoxGeometry::cube();
        let v2v1 = seg(&cube, 2, F, -1, 0);
        let v1v4 = seg(&cube, 1, B, 0, -1);
        let v1v2 = seg(&cube, 1, F, 1, 0);
        assert!(angle_ok(&cube, &v2v1, &v1v4).unwrap());
        assert!(!angle_ok(&cube, &v2v1, &v1v2).unwrap());
        assert!(angle_ok(&cube, &v1v4, &v1v2).is_err());
    }

    #[test]
    fn simple_check_cases() {
        let cube = BoxGeometry::cube();
        let e = seg(&cube, 1, F, 1, 0);
        assert!(simple_check(&cube, std::slice::from_ref(&e), false));
        // the two diagonals of F cross in its center
        let d1 = seg(&cube, 1, F, 1, 1);
        let d2 = seg(&cube, 6, F, -1, 0);
        let d3 = seg(&cube, 5, F, 1, -1);
        assert!(!simple_check(&cube, &[d1, d2, d3], false));
        // boundary of F
        let square = [
            seg(&cube, 1, F, 1, 0),
            seg(&cube, 2, F, 0, 1),
            seg(&cube, 6, F, -1, 0),
            seg(&cube, 5, F, 0, -1),
        ];
        assert!(simple_check(&cube, &square, true));
        assert!(!simple_check(&cube, &square, false));
        assert!(!simple_check(&cube, &square[..3], true));
    }

    #[test]
    fn face_square_is_quasigeo_of_category_a() {
        let cube = BoxGeometry::cube();
        let square = vec![
            seg(&cube, 1, F, 1, 0),
            seg(&cube, 2, F, 0, 1),
            seg(&cube, 6, F, -1, 0),
            seg(&cube, 5, F, 0, -1),
        ];
        for i in 0..4 {
            assert!(angle_ok(&cube, &square[i], &square[(i + 1) % 4]).unwrap());
        }
        let q = QuasiGeo::from_cycle(&cube, square.clone()).unwrap();
        assert_eq!(classify(&q), Some(Category::A));
        let mut rotated = square.clone();
        rotated.rotate_left(1);
        let rev: Vec<_> = square.iter().rev().map(GeodesicSegment::reversed).collect();
        assert_eq!(QuasiGeo::from_cycle(&cube, rotated).unwrap(), q);
        assert_eq!(QuasiGeo::from_cycle(&cube, rev).unwrap().encoding(), q.encoding());
    }

    #[test]
    fn empty_and_edges_only() {
        let cube = BoxGeometry::cube();
        let out = dfs_search(&cube, &[]).unwrap();
        assert!(out.quasigeos.is_empty());
        let edges: Vec<_> = enumerate_segments_cube(&cube)
            .unwrap()
            .into_iter()
            .filter(|s| s.is_edge())
            .collect();
        let out = dfs_search(&cube, &edges).unwrap();
        // 6 face squares, 12 two-face rectangles, 4 three-face hexagons, 6 Hamiltonian cycles
        assert_eq!(out.quasigeos.len(), 28);
        assert_eq!(out.raw_emissions, 56);
        assert!(out.quasigeos.iter().all(|q| q.category() == Some(Category::A)));
        let _ = int(0);
    }
}
