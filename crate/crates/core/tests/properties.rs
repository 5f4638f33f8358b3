use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use quasigeo::cli::{Inventory, SegmentSource};
use quasigeo::geometry::{v, BoxGeometry, FaceId};
use quasigeo::lemma::{case_of, check_backward_obstruction, check_self_crossing, geodesic_from_v1, Verdict, DEFAULT_MAX_CHAIN_DEPTH};
use quasigeo::rational::{int, rat, Rational};
use quasigeo::search::QuasiGeo;
use quasigeo::symmetry::{apply, group_for_mode, GroupMode, SymmetryOp};
use quasigeo::tracer::{enumerate_segments_box, trace_ray, GeodesicSegment};
use quasigeo::verify::verify_quasigeo;

struct Fixture {
    cube: BoxGeometry,
    group: Vec<SymmetryOp>,
    curves: Vec<QuasiGeo>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let cube = BoxGeometry::cube();
        let group = group_for_mode(&cube, GroupMode::Full);
        let curves = Inventory::build(&cube, SegmentSource::FiveSlopes, GroupMode::Off).unwrap().labeled;
        Fixture { cube, group, curves }
    })
}

fn pick() -> impl Strategy<Value = (usize, usize, usize)> {
    let f = fixture();
    (0..f.group.len(), 0..f.group.len(), 0..f.curves.len())
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// Reduced slopes `p/q` in `(0, 1)` with `q <= max_q`.
fn slope(max_q: i128) -> impl Strategy<Value = Rational> {
    (2..=max_q)
        .prop_flat_map(|q| (1..q, Just(q)))
        .prop_filter("reduced", |(p, q)| p.gcd(q) == 1)
        .prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_composes((a, b, i) in pick()) {
        let f = fixture();
        let (a, b, q) = (&f.group[a], &f.group[b], &f.curves[i]);
        let stepwise = apply(&f.cube, a, &apply(&f.cube, b, q).unwrap()).unwrap();
        let direct = apply(&f.cube, &a.compose(b), q).unwrap();
        prop_assert_eq!(stepwise.encoding(), direct.encoding());
        let back = apply(&f.cube, &a.inverse(), &apply(&f.cube, a, q).unwrap()).unwrap();
        prop_assert_eq!(back.encoding(), q.encoding());
    }

    #[test]
    fn images_stay_valid((a, _b, i) in pick()) {
        let f = fixture();
        let image = apply(&f.cube, &f.group[a], &f.curves[i]).unwrap();
        let r = verify_quasigeo(&f.cube, &image);
        prop_assert!(r.ok(), "{:?}", r.problems);
    }

    #[test]
    fn orbit_preserves_invariants((a, _b, i) in pick()) {
        let f = fixture();
        let q = &f.curves[i];
        let image = apply(&f.cube, &f.group[a], q).unwrap();
        prop_assert_eq!(image.category(), q.category());
        prop_assert_eq!(image.vertex_count(), q.vertex_count());
        prop_assert_eq!(sorted(image.slopes()), sorted(q.slopes()));
        prop_assert_eq!(sorted(image.length_sq_terms()), sorted(q.length_sq_terms()));
        let mut visits = image.face_visits();
        visits.sort();
        let mut before = q.face_visits();
        before.sort();
        prop_assert_eq!(visits, before);
    }

    #[test]
    fn start_and_orientation_do_not_matter((i, shift) in (0..fixture().curves.len(), 0..8usize)) {
        let f = fixture();
        let q = &f.curves[i];
        let mut segs = q.segments().to_vec();
        let n = segs.len();
        segs.rotate_left(shift % n);
        let rotated = QuasiGeo::from_cycle(&f.cube, segs.clone()).unwrap();
        prop_assert_eq!(rotated.encoding(), q.encoding());
        let reversed: Vec<GeodesicSegment> = segs.iter().rev().map(GeodesicSegment::reversed).collect();
        let reversed = QuasiGeo::from_cycle(&f.cube, reversed).unwrap();
        prop_assert_eq!(reversed.encoding(), q.encoding());
    }

    #[test]
    fn lattice_geodesics_are_straight(s in slope(60)) {
        let f = fixture();
        let g = geodesic_from_v1(&f.cube, s).unwrap();
        let (p, q) = (*s.numer(), *s.denom());
        prop_assert_eq!(g.length_sq, int(p * p + q * q));
        let frames = f.cube.develop(&g.faces()).unwrap();
        for (c, t) in g.crossings.iter().zip(&frames) {
            for pt in [t.apply(c.entry), t.apply(c.exit)] {
                prop_assert_eq!(pt.y * int(q), pt.x * int(p));
            }
        }
    }

    #[test]
    fn reversal_retraces(i in 0..fixture().curves.len(), k in 0..8usize) {
        let f = fixture();
        let q = &f.curves[i];
        let s = &q.segments()[k % q.vertex_count()];
        let r = s.reversed();
        prop_assert_eq!(&r.reversed(), s);
        prop_assert_eq!(r.length_sq, s.length_sq);
        let traced = trace_ray(&f.cube, r.start, r.start_face, r.direction, 16).unwrap().segment();
        prop_assert_eq!(traced.as_ref(), Some(&r));
    }

    #[test]
    fn crossing_cases_cross_perpendicularly(s in slope(300)) {
        prop_assume!(case_of(s).is_some_and(|c| c.verdict == Verdict::SelfCrossing));
        let w = check_self_crossing(&fixture().cube, s).unwrap();
        prop_assert!(w.is_some(), "{} reaches a vertex", s);
        let w = w.unwrap();
        prop_assert!(w.perpendicular, "{}", s);
        prop_assert!(w.pieces[0] < w.pieces[1]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn obstructed_cases_have_complete_certificates(s in slope(120)) {
        prop_assume!(case_of(s).is_some_and(|c| c.verdict == Verdict::BackwardObstructed));
        let cert = check_backward_obstruction(&fixture().cube, s, DEFAULT_MAX_CHAIN_DEPTH).unwrap();
        prop_assert!(cert.complete(), "{}", s);
        prop_assert_eq!(cert.g.start, v(1));
    }

    #[test]
    fn budgets_are_monotone(b in 1i128..30, extra in 0i128..20, c in 2usize..10, more in 0usize..6) {
        let geom = BoxGeometry::new(int(1), int(1), rat(3, 2)).unwrap();
        let small = enumerate_segments_box(&geom, int(b), c).unwrap();
        let large = enumerate_segments_box(&geom, int(b + extra), c + more).unwrap();
        for s in &small {
            prop_assert!(s.length_sq <= int(b) && s.crossings.len() <= c);
            prop_assert!(large.contains(s) || large.contains(&s.reversed()));
        }
        prop_assert!(small.len() <= large.len());
    }

    #[test]
    fn box_segments_start_on_their_face(b in 1i128..40) {
        let geom = BoxGeometry::new(int(1), int(1), int(2)).unwrap();
        for s in enumerate_segments_box(&geom, int(b), 24).unwrap() {
            prop_assert!(FaceId::ALL.contains(&s.start_face));
            prop_assert_eq!(s.crossings[0].face, s.start_face);
            prop_assert!(geom.face_corners(s.start_face).contains(&s.start));
        }
    }
}
