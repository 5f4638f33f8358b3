//! Exact checks of the slope-elimination case analysis on the unit cube.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::junction_ok;
use crate::error::{Error, Result};
use crate::geometry::{v, BoxGeometry, FaceId, FacePoint, VertexId};
use crate::intersect::{intersect_segments, Intersection};
use crate::rational::{int, rat, serialize_rational, Direction, Rational};
use crate::search::{face_pieces, forbidden_meeting, shared_endpoints, FacePieces, QuasiGeo, SegmentIndex};
use crate::tracer::{enumerate_segments_box, trace_geodesic, GeodesicSegment, SegmentRecord};

pub const DEFAULT_MAX_CHAIN_DEPTH: usize = 8;
pub const DEFAULT_DENOMINATOR_BOUND: i128 = 50;
/// Length-squared bound of the predecessor segments considered by the
/// backward certificate.
pub const DEFAULT_POOL_BOUND: i128 = 100;

const POOL_MAX_CROSSINGS: usize = 16;

/// The five slopes a cube quasigeodesic segment may have.
pub fn lemma_slopes() -> [Rational; 5] {
    [int(0), rat(1, 3), rat(1, 2), rat(2, 3), int(1)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SelfCrossing,
    BackwardObstructed,
}

/// A slope interval of the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub index: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub verdict: Verdict,
}

impl CaseSpec {
    pub fn contains(&self, s: Rational) -> bool {
        let above = if self.lo_closed { s >= self.lo } else { s > self.lo };
        let below = if self.hi_closed { s <= self.hi } else { s < self.hi };
        above && below
    }

    /// `tan θ` of the cone angle between the endpoint directions.
    pub fn cone_tangent(&self) -> Rational {
        (self.hi - self.lo) / (Rational::one() + self.hi * self.lo)
    }

    pub fn cone_angle(&self) -> f64 {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        f(self.hi).atan() - f(self.lo).atan()
    }

    /// Reduced slopes in the interval with denominator at most `d`, ascending.
    pub fn samples(&self, d: i128) -> Vec<Rational> {
        let mut out = Vec::new();
        for q in 1..=d {
            for p in 1..=q {
                if p.gcd(&q) == 1 && self.contains(rat(p, q)) {
                    out.push(rat(p, q));
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: Rational| format!("{}/{}", r.numer(), r.denom());
        write!(
            f,
            "Case {}. {}{},{}{}",
            self.index,
            if self.lo_closed { '[' } else { '(' },
            show(self.lo),
            show(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

const fn case(index: usize, lo: (i128, i128), hi: (i128, i128), lo_closed: bool, hi_closed: bool, verdict: Verdict) -> CaseRow {
    (index, lo, hi, lo_closed, hi_closed, verdict)
}

type CaseRow = (usize, (i128, i128), (i128, i128), bool, bool, Verdict);

const CASE_TABLE: [CaseRow; 7] = [
    case(1, (0, 1), (1, 4), false, true, Verdict::BackwardObstructed),
    case(2, (1, 4), (1, 3), false, false, Verdict::SelfCrossing),
    case(3, (1, 3), (2, 5), false, false, Verdict::SelfCrossing),
    case(4, (2, 5), (1, 2), true, false, Verdict::BackwardObstructed),
    case(5, (1, 2), (2, 3), false, false, Verdict::BackwardObstructed),
    case(6, (2, 3), (3, 4), false, false, Verdict::SelfCrossing),
    case(7, (3, 4), (1, 1), true, false, Verdict::BackwardObstructed),
];

/// The seven cases in order.
pub fn cases() -> Vec<CaseSpec> {
    CASE_TABLE
        .iter()
        .map(|&(index, lo, hi, lo_closed, hi_closed, verdict)| CaseSpec {
            index,
            lo: rat(lo.0, lo.1),
            hi: rat(hi.0, hi.1),
            lo_closed,
            hi_closed,
            verdict,
        })
        .collect()
}

pub fn case_of(slope: Rational) -> Option<CaseSpec> {
    cases().into_iter().find(|c| c.contains(slope))
}

/// Checks that the cases and the five slopes cover `[0,1]` exactly once,
/// using only the rational endpoints.
pub fn tiling_check(cases: &[CaseSpec]) -> std::result::Result<(), String> {
    let slopes = lemma_slopes();
    let mut points: Vec<Rational> = cases.iter().flat_map(|c| [c.lo, c.hi]).chain(slopes).collect();
    points.sort();
    points.dedup();
    if points.first() != Some(&int(0)) || points.last() != Some(&int(1)) {
        return Err("range does not span [0,1]".into());
    }
    for &x in &points {
        let n = cases.iter().filter(|c| c.contains(x)).count() + slopes.iter().filter(|s| **s == x).count();
        if n != 1 {
            return Err(format!("{x} covered {n} times"));
        }
    }
    for w in points.windows(2) {
        let mid = (w[0] + w[1]) / int(2);
        let n = cases.iter().filter(|c| c.contains(mid)).count();
        if n != 1 {
            return Err(format!("({},{}) covered {n} times", w[0], w[1]));
        }
    }
    Ok(())
}

fn require_cube(geom: &BoxGeometry) -> Result<()> {
    if geom.is_cube() {
        Ok(())
    } else {
        Err(Error::NotCube)
    }
}

fn require_case(slope: Rational, verdict: Verdict) -> Result<CaseSpec> {
    case_of(slope).filter(|c| c.verdict == verdict).ok_or_else(|| Error::SlopeOutOfRange {
        slope,
        expected: match verdict {
            Verdict::SelfCrossing => "Case 2, 3 or 6".into(),
            Verdict::BackwardObstructed => "Case 1, 4, 5 or 7".into(),
        },
    })
}

/// Direction of slope `p/q` in the frame of F.
fn slope_direction(slope: Rational) -> Result<Direction> {
    Direction::new(*slope.denom() as i64, *slope.numer() as i64)
}

/// The geodesic from v1 across F with the given slope, followed to the
/// vertex it reaches whether or not it crosses itself.
pub fn geodesic_from_v1(geom: &BoxGeometry, slope: Rational) -> Result<GeodesicSegment> {
    require_cube(geom)?;
    let dir = slope_direction(slope)?;
    // the development of the cube is the unit lattice, reached at (q, p)
    let budget = (dir.dx + dir.dy) as usize;
    trace_geodesic(geom, v(1), FaceId::F, dir, budget)?
        .segment()
        .ok_or(Error::InvalidCurve(format!("slope {slope} does not reach a vertex")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfCrossingWitness {
    #[serde(serialize_with = "serialize_rational")]
    pub slope: Rational,
    pub case: usize,
    /// First point along the ray where it crosses its own earlier trace.
    pub face: FaceId,
    pub at: [String; 2],
    #[serde(skip)]
    pub point: FacePoint,
    /// Indices of the two crossing pieces along the ray.
    pub pieces: [usize; 2],
    pub earlier_dir: Direction,
    pub later_dir: Direction,
    pub perpendicular: bool,
    /// Whether the ray comes back to F and crosses its first piece there.
    pub recrosses_start: bool,
}

/// First self-crossing of a geodesic, as `(earlier piece, later piece, point)`.
fn first_self_crossing(geom: &BoxGeometry, g: &GeodesicSegment) -> Option<(usize, usize, FacePoint)> {
    let cs = &g.crossings;
    for j in 1..cs.len() {
        let hit = (0..j)
            .filter(|&i| cs[i].face == cs[j].face)
            .filter_map(|i| match intersect_segments(cs[j].entry, cs[j].exit, cs[i].entry, cs[i].exit) {
                Intersection::Point { at, t } if geom.vertex_at(cs[j].face, at).is_none() => Some((t, i, at)),
                _ => None,
            })
            .min();
        if let Some((_, i, at)) = hit {
            return Some((i, j, FacePoint { face: cs[j].face, pos: at }));
        }
    }
    None
}

/// Finds the first point where the ray from v1 across F crosses itself
/// before reaching a vertex. `None` when it reaches a vertex first.
pub fn check_self_crossing(geom: &BoxGeometry, slope: Rational) -> Result<Option<SelfCrossingWitness>> {
    require_cube(geom)?;
    let spec = require_case(slope, Verdict::SelfCrossing)?;
    let g = geodesic_from_v1(geom, slope)?;
    let Some((i, j, point)) = first_self_crossing(geom, &g) else {
        return Ok(None);
    };
    let first = g.crossings[0];
    let recrosses_start = g.crossings.iter().skip(1).filter(|c| c.face == FaceId::F).any(|c| {
        matches!(intersect_segments(first.entry, first.exit, c.entry, c.exit),
            Intersection::Point { at, .. } if geom.vertex_at(FaceId::F, at).is_none())
    });
    let earlier_dir = g.crossings[i].direction();
    let later_dir = g.crossings[j].direction();
    Ok(Some(SelfCrossingWitness {
        slope,
        case: spec.index,
        face: point.face,
        at: point_strings(point),
        point,
        pieces: [i, j],
        earlier_dir,
        later_dir,
        perpendicular: earlier_dir.to_vec().dot(later_dir.to_vec()).is_zero(),
        recrosses_start,
    }))
}

/// How a candidate predecessor segment is ruled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Disposition {
    /// Meets `g` away from their shared vertices.
    CrossesG { face: FaceId, at: [String; 2] },
    /// Meets an earlier segment of the backward chain.
    CrossesChain { face: FaceId, at: [String; 2] },
    /// Arrives back at v1 making too sharp an angle with `g`.
    SharpAtStart,
    /// Arrives back at v1 at an acceptable angle, which still passes v1 twice.
    RevisitsStart,
    /// Reaches the far end of `g` but the curve cannot close there.
    SharpAtEnd,
    /// Closes a curve through `g`, which already crosses itself.
    ClosesOnCrossedG,
    /// Reaches a vertex already on the chain.
    VertexReuse { vertex: VertexId },
    /// Ends at a fresh vertex; every continuation is listed.
    Continued { next: Vec<Candidate> },
    /// Closes a simple quasigeodesic through `g`: the certificate fails.
    Closes,
    /// Depth limit reached without a decision: the certificate fails.
    Exhausted,
}

/// A predecessor segment, oriented as traversed by the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub segment: SegmentRecord,
    pub disposition: Disposition,
}

impl Candidate {
    fn complete(&self) -> bool {
        match &self.disposition {
            Disposition::Closes | Disposition::Exhausted => false,
            Disposition::Continued { next } => next.iter().all(Candidate::complete),
            _ => true,
        }
    }

    fn count(&self, acc: &mut usize) {
        *acc += 1;
        if let Disposition::Continued { next } = &self.disposition {
            next.iter().for_each(|c| c.count(acc));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    #[serde(serialize_with = "serialize_rational")]
    pub slope: Rational,
    pub case: usize,
    pub g: SegmentRecord,
    /// Whether `g` itself is free of self-crossings.
    pub g_simple: bool,
    pub max_depth: usize,
    pub candidates: Vec<Candidate>,
}

impl ObstructionCertificate {
    /// Every candidate, at every depth, is ruled out.
    pub fn complete(&self) -> bool {
        self.candidates.iter().all(Candidate::complete)
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.candidates.iter().for_each(|c| c.count(&mut n));
        n
    }
}

fn point_strings(p: FacePoint) -> [String; 2] {
    [p.pos.x.to_string(), p.pos.y.to_string()]
}

/// Backward certificates over a fixed pool of vertex-to-vertex segments.
pub struct ObstructionChecker<'a> {
    geom: &'a BoxGeometry,
    index: SegmentIndex,
    pool_bound: Rational,
}

struct Walk<'a> {
    g: &'a GeodesicSegment,
    g_simple: bool,
    g_pieces: FacePieces,
    max_depth: usize,
}

impl<'a> ObstructionChecker<'a> {
    pub fn new(geom: &'a BoxGeometry, pool_bound: Rational) -> Result<Self> {
        require_cube(geom)?;
        let pool = enumerate_segments_box(geom, pool_bound, POOL_MAX_CROSSINGS)?;
        Ok(Self {
            geom,
            index: SegmentIndex::new(geom, &pool)?,
            pool_bound,
        })
    }

    pub fn pool_bound(&self) -> Rational {
        self.pool_bound
    }

    pub fn pool_size(&self) -> usize {
        self.index.segs.len() / 2
    }

    pub fn check(&self, slope: Rational, max_depth: usize) -> Result<ObstructionCertificate> {
        if max_depth == 0 {
            return Err(Error::NonPositiveBound("max_chain_depth"));
        }
        let spec = require_case(slope, Verdict::BackwardObstructed)?;
        let g = geodesic_from_v1(self.geom, slope)?;
        let g_simple = first_self_crossing(self.geom, &g).is_none();
        let walk = Walk {
            g: &g,
            g_simple,
            g_pieces: face_pieces(&g),
            max_depth,
        };
        let g_depart = g.departure().angle(self.geom)?;
        let candidates = self.expand(&walk, v(1), g_depart, &mut Vec::new());
        Ok(ObstructionCertificate {
            slope,
            case: spec.index,
            g: g.record(),
            g_simple,
            max_depth,
            candidates,
        })
    }

    /// Candidates arriving at `at`, whose outgoing segment leaves at angle `ahead`.
    /// `chain` holds the backward chain so far, each segment oriented away from v1.
    fn expand(&self, walk: &Walk, at: VertexId, ahead: crate::angle::VertexAngle, chain: &mut Vec<usize>) -> Vec<Candidate> {
        let ix = &self.index;
        let mut out = Vec::new();
        for &s in ix.outgoing(at) {
            if !junction_ok(ahead, ix.depart[s]) {
                continue;
            }
            let seg = &ix.segs[s];
            let disposition = self.dispose(walk, s, chain);
            out.push(Candidate {
                segment: seg.reversed().record(),
                disposition,
            });
        }
        out
    }

    fn dispose(&self, walk: &Walk, s: usize, chain: &mut Vec<usize>) -> Disposition {
        let ix = &self.index;
        let seg = &ix.segs[s];
        let geom = self.geom;
        let g = walk.g;
        let s_pieces = &ix.pieces[ix.undirected[s]];
        if let Some(p) = forbidden_meeting(geom, s_pieces, &walk.g_pieces, &shared_endpoints(seg, g)) {
            return Disposition::CrossesG {
                face: p.face,
                at: point_strings(p),
            };
        }
        if let Some(p) = chain.iter().find_map(|&c| ix.meets(geom, s, c)) {
            return Disposition::CrossesChain {
                face: p.face,
                at: point_strings(p),
            };
        }
        let end = seg.end;
        if end == g.start {
            // the curve would arrive at v1 along this segment and continue with g
            return if self.fits_start(g, s) {
                Disposition::RevisitsStart
            } else {
                Disposition::SharpAtStart
            };
        }
        if end == g.end {
            let g_back = g.return_departure().angle(geom).expect("valid segment");
            return if !junction_ok(ix.back[s], g_back) {
                Disposition::SharpAtEnd
            } else if !walk.g_simple {
                Disposition::ClosesOnCrossedG
            } else {
                Disposition::Closes
            };
        }
        if chain.iter().any(|&c| ix.segs[c].start == end) {
            return Disposition::VertexReuse { vertex: end };
        }
        if chain.len() + 1 >= walk.max_depth {
            return Disposition::Exhausted;
        }
        chain.push(s);
        let next = self.expand(walk, end, ix.back[s], chain);
        chain.pop();
        Disposition::Continued { next }
    }

    fn fits_start(&self, g: &GeodesicSegment, s: usize) -> bool {
        let g_depart = g.departure().angle(self.geom).expect("valid segment");
        junction_ok(g_depart, self.index.back[s])
    }
}

/// Certificate that no simple closed quasigeodesic contains the geodesic of
/// the given slope from v1, over predecessor segments up to the default pool bound.
pub fn check_backward_obstruction(geom: &BoxGeometry, slope: Rational, max_chain_depth: usize) -> Result<ObstructionCertificate> {
    ObstructionChecker::new(geom, int(DEFAULT_POOL_BOUND))?.check(slope, max_chain_depth)
}

/// Whether no segment, and no whole curve, crosses a face more than once.
pub fn verify_corollary(qs: &[QuasiGeo]) -> bool {
    qs.iter().all(|q| {
        q.segments().iter().all(|s| s.face_visits().iter().all(|&n| n <= 1)) && q.face_visits().iter().all(|&n| n <= 1)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: CaseSpec,
    pub samples: usize,
    pub passed: usize,
    #[serde(serialize_with = "serialize_rationals")]
    pub failures: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub denominator_bound: i128,
    #[serde(serialize_with = "serialize_rational")]
    pub pool_bound: Rational,
    pub max_depth: usize,
    pub tiling_ok: bool,
    pub cases: Vec<CaseReport>,
    pub witnesses: Vec<SelfCrossingWitness>,
    pub certificates: Vec<ObstructionCertificate>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.tiling_ok && self.cases.iter().all(|c| c.failures.is_empty())
    }

    pub fn samples(&self) -> usize {
        self.cases.iter().map(|c| c.samples).sum()
    }
}

enum Outcome {
    Witness(SelfCrossingWitness),
    Certificate(ObstructionCertificate),
    Failed,
}

/// Runs the check matching each case on every reduced slope with denominator
/// at most `d`.
pub fn sweep(geom: &BoxGeometry, d: i128, pool_bound: Rational, max_depth: usize) -> Result<SweepReport> {
    require_cube(geom)?;
    if pool_bound.is_negative() || pool_bound.is_zero() {
        return Err(Error::NonPositiveBound("pool_bound"));
    }
    let checker = ObstructionChecker::new(geom, pool_bound)?;
    let all = cases();
    let jobs: Vec<(CaseSpec, Rational)> = all.iter().flat_map(|c| c.samples(d).into_iter().map(move |s| (*c, s))).collect();
    let results: Vec<Outcome> = jobs
        .par_iter()
        .map(|(c, s)| match c.verdict {
            Verdict::SelfCrossing => match check_self_crossing(geom, *s)? {
                Some(w) if w.perpendicular => Ok(Outcome::Witness(w)),
                _ => Ok(Outcome::Failed),
            },
            Verdict::BackwardObstructed => {
                let cert = checker.check(*s, max_depth)?;
                Ok(if cert.complete() {
                    Outcome::Certificate(cert)
                } else {
                    Outcome::Failed
                })
            }
        })
        .collect::<Result<_>>()?;
    let mut reports: Vec<CaseReport> = all
        .iter()
        .map(|c| CaseReport {
            case: *c,
            samples: 0,
            passed: 0,
            failures: Vec::new(),
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut certificates = Vec::new();
    for ((c, s), r) in jobs.iter().zip(results) {
        let rep = &mut reports[c.index - 1];
        rep.samples += 1;
        match r {
            Outcome::Witness(w) => {
                rep.passed += 1;
                witnesses.push(w);
            }
            Outcome::Certificate(cert) => {
                rep.passed += 1;
                certificates.push(cert);
            }
            Outcome::Failed => rep.failures.push(*s),
        }
    }
    Ok(SweepReport {
        denominator_bound: d,
        pool_bound,
        max_depth,
        tiling_ok: tiling_check(&all).is_ok(),
        cases: reports,
        witnesses,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_intervals() {
        let printed: Vec<String> = cases().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            printed,
            [
                "Case 1. (0/1,1/4]",
                "Case 2. (1/4,1/3)",
                "Case 3. (1/3,2/5)",
                "Case 4. [2/5,1/2)",
                "Case 5. (1/2,2/3)",
                "Case 6. (2/3,3/4)",
                "Case 7. [3/4,1/1)",
            ]
        );
        assert_eq!(tiling_check(&cases()), Ok(()));
    }

    #[test]
    fn tiling_detects_gaps_and_overlaps() {
        let mut c = cases();
        c[3].lo_closed = false;
        assert!(tiling_check(&c).is_err());
        let mut c = cases();
        c[0].hi_closed = false;
        c[1].lo_closed = true;
        assert_eq!(tiling_check(&c), Ok(()));
        c[0].hi_closed = true;
        assert!(tiling_check(&c).is_err());
    }

    #[test]
    fn cone_tangent_case_one() {
        assert_eq!(cases()[0].cone_tangent(), rat(1, 4));
        assert!((cases()[0].cone_angle() - 0.25f64.atan()).abs() < 1e-12);
    }

    #[test]
    fn samples_are_reduced_and_inside() {
        let c = cases()[1];
        let s = c.samples(12);
        assert_eq!(s, vec![rat(3, 11), rat(2, 7), rat(3, 10)]);
        assert!(cases()[3].samples(5).contains(&rat(2, 5)));
        assert!(cases().iter().all(|c| c.samples(1).is_empty()));
    }

    #[test]
    fn rejects_wrong_case() {
        let cube = BoxGeometry::cube();
        assert!(matches!(check_self_crossing(&cube, rat(1, 5)), Err(Error::SlopeOutOfRange { .. })));
        assert!(matches!(
            check_backward_obstruction(&cube, rat(2, 7), 8),
            Err(Error::SlopeOutOfRange { .. })
        ));
        let boxy = BoxGeometry::new(int(1), int(1), int(2)).unwrap();
        assert_eq!(check_self_crossing(&boxy, rat(2, 7)), Err(Error::NotCube));
    }
}
