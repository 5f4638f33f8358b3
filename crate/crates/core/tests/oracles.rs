//! Derived values checked against independent computations.

use std::collections::BTreeSet;

use num_traits::Zero;
use quasigeo::cli::{Inventory, SegmentSource};
use quasigeo::geometry::{v, BoxGeometry, FaceId, VertexId};
use quasigeo::lemma::{case_of, check_self_crossing, geodesic_from_v1, verify_corollary, Verdict};
use quasigeo::rational::{int, rat, Direction, Rational};
use quasigeo::search::{angle_ok, Category, QuasiGeo};
use quasigeo::symmetry::{apply, group_for_mode, GroupMode, SymmetryOp};
use quasigeo::tracer::{enumerate_segments_cube, trace_ray, GeodesicSegment};
use quasigeo::verify::verify_quasigeo;

fn cube_curves() -> Vec<QuasiGeo> {
    let cube = BoxGeometry::cube();
    Inventory::build(&cube, SegmentSource::FiveSlopes, GroupMode::Off).unwrap().labeled
}

fn seg(geom: &BoxGeometry, from: u8, face: FaceId, dx: i64, dy: i64) -> GeodesicSegment {
    trace_ray(geom, v(from), face, Direction::new(dx, dy).unwrap(), 16).unwrap().segment().unwrap()
}

#[test]
fn five_slope_segment_count() {
    // Per vertex: 3 edges, 3 face diagonals, and two mirror directions per face
    // for each of 1/2, 1/3, 2/3. Every undirected segment is seen from both ends.
    let per_vertex = 3 + 3 + 3 * 2 * 3;
    let expected = 8 * per_vertex / 2;
    let segs = enumerate_segments_cube(&BoxGeometry::cube()).unwrap();
    assert_eq!(segs.len(), expected);
    assert_eq!(expected, 96);
}

#[test]
fn cube_lengths_follow_the_unit_lattice() {
    // Unfolded faces tile the plane by unit squares, so slope p/q first meets
    // a lattice point at (q, p).
    for s in enumerate_segments_cube(&BoxGeometry::cube()).unwrap() {
        let d = s.direction;
        assert_eq!(s.length_sq, int((d.dx * d.dx + d.dy * d.dy) as i128), "{}->{}", s.start, s.end);
        let (p, q) = (d.dx.abs(), d.dy.abs());
        let squares = if p == 0 || q == 0 { 1 } else { p + q - 1 };
        assert_eq!(s.crossings.len(), squares as usize);
    }
}

#[test]
fn slope_one_third_lands_on_v8() {
    let cube = BoxGeometry::cube();
    let s = seg(&cube, 1, FaceId::F, 3, 1);
    assert_eq!(s.end, v(8));
    assert_eq!(s.faces(), [FaceId::F, FaceId::R, FaceId::K]);
    let frames = cube.develop(&s.faces()).unwrap();
    let last = s.crossings.last().unwrap();
    assert_eq!(frames[2].apply(last.exit), quasigeo::rational::Vec2::ints(3, 1));
}

#[test]
fn reflection_moves_v1_to_v2() {
    let cube = BoxGeometry::cube();
    let flip_x = SymmetryOp {
        perm: [0, 1, 2],
        signs: [-1, 1, 1],
    };
    assert_eq!(flip_x.map_vertex(&cube, v(1)).unwrap(), v(2));
    assert_eq!(flip_x.map_vertex(&cube, v(5)).unwrap(), v(6));
    assert_eq!(flip_x.map_face(&cube, FaceId::L).unwrap(), FaceId::R);
    assert_eq!(flip_x.determinant(), -1);
}

#[test]
fn vertex_labels_match_coordinates() {
    let cube = BoxGeometry::cube();
    let expect = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]];
    for (vx, p) in VertexId::all().zip(expect) {
        assert_eq!(cube.position(vx), p.map(int), "{vx}");
    }
}

#[test]
fn burnside_gives_fifteen() {
    let cube = BoxGeometry::cube();
    let qs = cube_curves();
    let codes: BTreeSet<_> = qs.iter().map(|q| q.encoding()).collect();
    for (mode, classes) in [(GroupMode::Full, 15), (GroupMode::Rotations, 20)] {
        let group = group_for_mode(&cube, mode);
        let fixed: usize = group
            .iter()
            .map(|op| qs.iter().filter(|q| apply(&cube, op, q).unwrap().encoding() == q.encoding()).count())
            .sum();
        assert_eq!(fixed % group.len(), 0);
        assert_eq!(fixed / group.len(), classes, "{mode}");
        for op in &group {
            for q in &qs {
                assert!(codes.contains(&apply(&cube, op, q).unwrap().encoding()));
            }
        }
    }
}

#[test]
fn labeled_counts_per_category() {
    let qs = cube_curves();
    let count = |c| qs.iter().filter(|q| q.category() == Some(c)).count();
    assert_eq!(Category::ALL.map(count), [28, 68, 108, 24, 24]);
}

#[test]
fn e_class_uses_one_long_segment() {
    let qs = cube_curves();
    for q in qs.iter().filter(|q| q.category() == Some(Category::E)) {
        let long: Vec<_> = q.segments().iter().filter(|s| s.length_sq == int(13)).collect();
        assert_eq!(long.len(), 1);
        assert_eq!(q.vertex_count(), 2);
        assert!(q.segments().iter().any(|s| s.length_sq == int(1)));
    }
}

#[test]
fn angle_at_v1_between_two_edges() {
    let cube = BoxGeometry::cube();
    let v2_v1 = seg(&cube, 1, FaceId::F, 1, 0).reversed();
    let v1_v4 = seg(&cube, 4, FaceId::L, 1, 0).reversed();
    assert_eq!(v1_v4.end, v(4));
    // π/2 on the bottom, π on the far side
    assert!(angle_ok(&cube, &v2_v1, &v1_v4).unwrap());
    let v1_v6 = seg(&cube, 1, FaceId::F, 1, 1);
    // π/4 on F leaves 5π/4 on the other side
    assert!(!angle_ok(&cube, &v2_v1, &v1_v6).unwrap());
}

fn dot3(a: [Rational; 3], b: [Rational; 3]) -> Rational {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn on_piece(p: [Rational; 3], a: [Rational; 3], b: [Rational; 3]) -> bool {
    let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let ap = [p[0] - a[0], p[1] - a[1], p[2] - a[2]];
    let cross = [ab[1] * ap[2] - ab[2] * ap[1], ab[2] * ap[0] - ab[0] * ap[2], ab[0] * ap[1] - ab[1] * ap[0]];
    let t = dot3(ap, ab);
    cross.iter().all(|c| c.is_zero()) && t >= Rational::zero() && t <= dot3(ab, ab)
}

#[test]
fn witnesses_hold_in_space() {
    let cube = BoxGeometry::cube();
    for (p, q) in [(2, 7), (3, 10), (5, 14), (7, 10), (5, 7), (8, 11)] {
        let slope = rat(p, q);
        assert_eq!(case_of(slope).unwrap().verdict, Verdict::SelfCrossing);
        let w = check_self_crossing(&cube, slope).unwrap().unwrap();
        let g = geodesic_from_v1(&cube, slope).unwrap();
        let pieces = g.pieces_3d(&cube);
        let x = cube.embed(w.point);
        let (a, b) = (pieces[w.pieces[0]], pieces[w.pieces[1]]);
        assert!(on_piece(x, a.0, a.1) && on_piece(x, b.0, b.1), "{slope}");
        let da = [a.1[0] - a.0[0], a.1[1] - a.0[1], a.1[2] - a.0[2]];
        let db = [b.1[0] - b.0[0], b.1[1] - b.0[1], b.1[2] - b.0[2]];
        assert!(dot3(da, db).is_zero(), "{slope}");
        assert!(w.perpendicular);
    }
}

#[test]
fn face_squares_are_the_shortest_curves() {
    let cube = BoxGeometry::cube();
    let qs = cube_curves();
    let total = |q: &QuasiGeo| q.length_sq_terms().iter().copied().sum::<Rational>();
    let min = qs.iter().map(total).min().unwrap();
    assert_eq!(min, int(4));
    let shortest: BTreeSet<BTreeSet<VertexId>> = qs.iter().filter(|q| total(q) == min).map(|q| q.vertex_cycle().into_iter().collect()).collect();
    let faces: BTreeSet<BTreeSet<VertexId>> = FaceId::ALL.iter().map(|&f| cube.face_corners(f).into_iter().collect()).collect();
    assert_eq!(shortest, faces);
    let square = QuasiGeo::from_cycle(
        &cube,
        vec![seg(&cube, 1, FaceId::F, 1, 0), seg(&cube, 2, FaceId::F, 0, 1), seg(&cube, 6, FaceId::F, -1, 0), seg(&cube, 5, FaceId::F, 0, -1)],
    )
    .unwrap();
    assert!(qs.iter().any(|q| q.encoding() == square.encoding()));
}

#[test]
fn long_box_breaks_the_corollary() {
    let geom = BoxGeometry::new(int(1), int(1), int(4)).unwrap();
    let source = SegmentSource::Bounded {
        length_sq_bound: int(64),
        max_crossings: 24,
    };
    let inv = Inventory::build(&geom, source, GroupMode::Full).unwrap();
    assert!(!verify_corollary(&inv.labeled));
    let wraps = inv.labeled.iter().flat_map(|q| q.segments()).any(|s| s.face_visits().iter().any(|&n| n >= 2));
    assert!(wraps, "no segment crosses a face twice");
    let wrapping = inv.labeled.iter().find(|q| !verify_corollary(std::slice::from_ref(q))).unwrap();
    let r = verify_quasigeo(&geom, wrapping);
    assert_eq!(r.corollary, None);
    assert!(r.ok(), "{:?}", r.problems);
}
