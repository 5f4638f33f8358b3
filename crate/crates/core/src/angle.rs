//! Exact angles at box vertices.
//!
//! A direction leaving a vertex is stored as a quarter index into the vertex's
//! counterclockwise face cycle plus an integer residual vector in the half-open
//! first quadrant `x > 0, y >= 0`. The cone angle at every box vertex is three
//! quarter turns, so all comparisons reduce to integer sign tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BoxGeometry, FaceId, VertexId};
use crate::rational::Direction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexAngle {
    quarter: u8,
    x: i64,
    y: i64,
}

/// Counterclockwise angle in `[0, 3π/2)` between two directions at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AngleSpan {
    quarters: u8,
    x: i64,
    y: i64,
}

impl AngleSpan {
    pub fn le_pi(self) -> bool {
        self.quarters < 2 || (self.quarters == 2 && self.y == 0)
    }

    pub fn ge_half_pi(self) -> bool {
        self.quarters >= 1
    }

    pub fn is_zero(self) -> bool {
        self.quarters == 0 && self.y == 0
    }

    /// Whole quarter turns contained in the span.
    pub fn quarters(self) -> u8 {
        self.quarters
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl VertexAngle {
    fn normalized(quarter: u8, x: i64, y: i64) -> Self {
        if x == 0 {
            Self {
                quarter: (quarter + 1) % 3,
                x: y,
                y: 0,
            }
        } else {
            Self { quarter, x, y }
        }
    }

    /// Angle of a direction leaving `vertex` into `face`.
    pub fn of(geom: &BoxGeometry, vertex: VertexId, face: FaceId, dir: Direction) -> Result<Self> {
        let star = geom.star(vertex);
        let (quarter, corner) = star
            .iter()
            .enumerate()
            .find(|(_, (f, _))| *f == face)
            .map(|(i, (_, k))| (i as u8, *k))
            .ok_or(Error::NotIncident { face, vertex })?;
        let r = dir.rotate(((4 - corner) % 4) as u8);
        if r.dx < 0 || r.dy < 0 || (r.dx == 0 && r.dy == 0) {
            return Err(Error::OutsideWedge { vertex, face, dir });
        }
        Ok(Self::normalized(quarter, r.dx, r.dy))
    }

    /// Counterclockwise span from `self` to `to`.
    pub fn ccw_to(self, to: VertexAngle) -> AngleSpan {
        let mut q = (to.quarter + 3 - self.quarter) % 3;
        // residual = to * conj(self)
        let mut rx = to.x * self.x + to.y * self.y;
        let mut ry = to.y * self.x - to.x * self.y;
        if ry < 0 {
            q = (q + 2) % 3;
            (rx, ry) = (-ry, rx);
        }
        let g = num_integer::gcd(rx, ry).max(1);
        AngleSpan {
            quarters: q,
            x: rx / g,
            y: ry / g,
        }
    }

    /// The `(face, direction)` pairs that realize this angle; two when it runs along an edge.
    pub fn realizations(self, geom: &BoxGeometry, vertex: VertexId) -> Vec<(FaceId, Direction)> {
        let star = geom.star(vertex);
        let (face, corner) = star[self.quarter as usize];
        let local = |corner: usize, x: i64, y: i64| {
            Direction::new(x, y).expect("nonzero residual").rotate(corner as u8 % 4)
        };
        let mut out = vec![(face, local(corner, self.x, self.y))];
        if self.y == 0 {
            let (pf, pc) = star[(self.quarter as usize + 2) % 3];
            out.push((pf, local(pc, 0, self.x)));
        }
        out
    }
}

/// Whether the surface angle on `side` of a curve passing through `vertex` is at most π.
///
/// `incoming` is the direction of travel of the arriving segment in its last
/// face; `outgoing` is the departure direction of the next segment. The left
/// side is swept counterclockwise from the outgoing direction back to the
/// arriving one; left and right always sum to 3π/2.
pub fn side_angle_leq_pi(
    geom: &BoxGeometry,
    vertex: VertexId,
    incoming: (FaceId, Direction),
    outgoing: (FaceId, Direction),
    side: Side,
) -> Result<bool> {
    let back = VertexAngle::of(geom, vertex, incoming.0, incoming.1.reversed())?;
    let out = VertexAngle::of(geom, vertex, outgoing.0, outgoing.1)?;
    Ok(side_ok(out, back, side))
}

/// Side test from precomputed angles: `out` leaves the vertex, `back` points
/// back along the arriving segment.
pub fn side_ok(out: VertexAngle, back: VertexAngle, side: Side) -> bool {
    let left = out.ccw_to(back);
    match side {
        Side::Left => left.le_pi(),
        Side::Right => left.ge_half_pi(),
    }
}

/// Both sides at most π.
pub fn junction_ok(out: VertexAngle, back: VertexAngle) -> bool {
    let left = out.ccw_to(back);
    left.le_pi() && left.ge_half_pi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::v;
    use crate::rational::Vec2;
    use proptest::prelude::*;
    use FaceId::*;

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    /// Independent route: unfold the three faces around the vertex into the
    /// plane with `develop` and measure the angle in floating point.
    fn developed_left_angle(
        geom: &BoxGeometry,
        vx: VertexId,
        out: (FaceId, Direction),
        back: (FaceId, Direction),
    ) -> f64 {
        let star = geom.star(vx);
        let start = star.iter().position(|(f, _)| *f == out.0).unwrap();
        let path: Vec<FaceId> = (0..4).map(|i| star[(start + i) % 3].0).collect();
        let ts = geom.develop(&path).unwrap();
        let to_plane = |(f, d): (FaceId, Direction)| -> Vec<Vec2> {
            path.iter()
                .zip(&ts)
                .filter(|(pf, _)| **pf == f)
                .map(|(_, t)| t.apply_vector(d.to_vec()))
                .collect()
        };
        let o = to_plane(out)[0];
        let f = |v: Vec2| (v.x.to_integer() as f64, v.y.to_integer() as f64);
        let (ox, oy) = f(o);
        to_plane(back)
            .into_iter()
            .map(|b| {
                let (bx, by) = f(b);
                let mut a = by.atan2(bx) - oy.atan2(ox);
                while a < -1e-12 {
                    a += 2.0 * std::f64::consts::PI;
                }
                a
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn edge_turn_at_v1() {
        let cube = BoxGeometry::cube();
        // arrive along v2 -> v1 (on B travelling -u), leave along v1 -> v4 on B
        let incoming = (B, dir(-1, 0));
        let outgoing = (B, dir(0, -1));
        assert!(side_angle_leq_pi(&cube, v(1), incoming, outgoing, Side::Left).unwrap());
        assert!(side_angle_leq_pi(&cube, v(1), incoming, outgoing, Side::Right).unwrap());
        let back = VertexAngle::of(&cube, v(1), B, dir(1, 0)).unwrap();
        let out = VertexAngle::of(&cube, v(1), B, dir(0, -1)).unwrap();
        let left = out.ccw_to(back);
        let right = back.ccw_to(out);
        // one side is a single quarter, the other two quarters
        let mut q = [left.quarters(), right.quarters()];
        q.sort();
        assert_eq!(q, [1, 2]);
        assert!(left.y == 0 && right.y == 0);
    }

    #[test]
    fn doubling_back_is_rejected() {
        let cube = BoxGeometry::cube();
        let incoming = (F, dir(-1, 0));
        let outgoing = (F, dir(1, 0));
        assert!(side_angle_leq_pi(&cube, v(1), incoming, outgoing, Side::Left).unwrap());
        assert!(!side_angle_leq_pi(&cube, v(1), incoming, outgoing, Side::Right).unwrap());
    }

    #[test]
    fn sharp_return_against_shallow_slope() {
        // g leaves v1 on F with slope 1/5; the chain returns along v2 -> v1
        let cube = BoxGeometry::cube();
        let incoming = (F, dir(-1, 0));
        let outgoing = (F, dir(5, 1));
        let l = side_angle_leq_pi(&cube, v(1), incoming, outgoing, Side::Left).unwrap();
        let r = side_angle_leq_pi(&cube, v(1), incoming, outgoing, Side::Right).unwrap();
        assert!(!(l && r));
    }

    #[test]
    fn rejects_bad_inputs() {
        let cube = BoxGeometry::cube();
        assert!(matches!(
            VertexAngle::of(&cube, v(1), R, dir(1, 0)),
            Err(Error::NotIncident { .. })
        ));
        assert!(matches!(
            VertexAngle::of(&cube, v(1), F, dir(-1, 1)),
            Err(Error::OutsideWedge { .. })
        ));
    }

    #[test]
    fn edge_directions_agree_across_faces() {
        let cube = BoxGeometry::cube();
        for vx in VertexId::all() {
            for (f, k) in cube.star(vx) {
                let start = VertexAngle::of(&cube, vx, f, dir(1, 0).rotate(k as u8)).unwrap();
                let reals = start.realizations(&cube, vx);
                assert_eq!(reals.len(), 2);
                for (g, d) in reals {
                    assert_eq!(VertexAngle::of(&cube, vx, g, d).unwrap(), start);
                }
            }
        }
    }

    fn in_wedge() -> impl Strategy<Value = (i64, i64)> {
        (0i64..20, 0i64..20).prop_filter("nonzero", |(x, y)| *x != 0 || *y != 0)
    }

    proptest! {
        #[test]
        fn sides_sum_to_three_quarters(
            vi in 1u8..=8, fo in 0usize..3, fb in 0usize..3,
            (ox, oy) in in_wedge(), (bx, by) in in_wedge()
        ) {
            let cube = BoxGeometry::cube();
            let vx = v(vi);
            let star = cube.star(vx);
            let (of, ok) = star[fo];
            let (bf, bk) = star[fb];
            let out = VertexAngle::of(&cube, vx, of, dir(ox, oy).rotate(ok as u8)).unwrap();
            let back = VertexAngle::of(&cube, vx, bf, dir(bx, by).rotate(bk as u8)).unwrap();
            let left = out.ccw_to(back);
            let right = back.ccw_to(out);
            if out == back {
                prop_assert!(left.is_zero() && right.is_zero());
            } else {
                // quarters add to 2 when both residuals vanish, else to 1
                let whole = left.y == 0 && right.y == 0;
                prop_assert_eq!(left.quarters() + right.quarters(), if whole { 3 } else { 2 });
                prop_assert_eq!(left.le_pi(), right.ge_half_pi());
            }
        }

        #[test]
        fn matches_developed_angle(
            vi in 1u8..=8, fo in 0usize..3, fb in 0usize..3,
            (ox, oy) in in_wedge(), (bx, by) in in_wedge()
        ) {
            let cube = BoxGeometry::cube();
            let vx = v(vi);
            let star = cube.star(vx);
            let (of, ok) = star[fo];
            let (bf, bk) = star[fb];
            let od = dir(ox, oy).rotate(ok as u8);
            let bd = dir(bx, by).rotate(bk as u8);
            let out = VertexAngle::of(&cube, vx, of, od).unwrap();
            let back = VertexAngle::of(&cube, vx, bf, bd).unwrap();
            prop_assume!(out != back);
            let a = developed_left_angle(&cube, vx, (of, od), (bf, bd));
            let half = std::f64::consts::FRAC_PI_2;
            let exact = out.ccw_to(back);
            if (a - std::f64::consts::PI).abs() > 1e-9 {
                prop_assert_eq!(exact.le_pi(), a < std::f64::consts::PI);
            }
            if (a - half).abs() > 1e-9 {
                prop_assert_eq!(exact.ge_half_pi(), a > half);
            }
        }
    }
}
