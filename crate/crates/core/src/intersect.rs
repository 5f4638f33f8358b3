//! Exact intersection of closed line segments, in the plane and in space.

use num_traits::{One, Signed, Zero};

use crate::rational::{Rational, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Disjoint,
    /// Single common point, with its parameter along the first segment.
    Point { at: Vec2, t: Rational },
    /// Collinear overlap between the given points (in order along the first segment).
    Overlap { from: Vec2, to: Vec2 },
}

impl Intersection {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Intersection::Disjoint)
    }
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> Rational {
    (b - a).cross(c - a)
}

fn sign(r: Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Intersection of the closed segments `a0a1` and `b0b1`. Both must have positive length.
pub fn intersect_segments(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> Intersection {
    let o1 = sign(orient(a0, a1, b0));
    let o2 = sign(orient(a0, a1, b1));
    if o1 == 0 && o2 == 0 {
        return collinear_overlap(a0, a1, b0, b1);
    }
    let o3 = sign(orient(b0, b1, a0));
    let o4 = sign(orient(b0, b1, a1));
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return Intersection::Disjoint;
    }
    let da = a1 - a0;
    let db = b1 - b0;
    let t = (b0 - a0).cross(db) / da.cross(db);
    Intersection::Point { at: a0 + da * t, t }
}

fn collinear_overlap(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> Intersection {
    let da = a1 - a0;
    let len = da.norm_sq();
    let param = |p: Vec2| (p - a0).dot(da) / len;
    let (mut s0, mut s1) = (param(b0), param(b1));
    if s0 > s1 {
        std::mem::swap(&mut s0, &mut s1);
    }
    let lo = s0.max(Rational::zero());
    let hi = s1.min(Rational::one());
    if lo > hi {
        Intersection::Disjoint
    } else if lo == hi {
        Intersection::Point { at: a0 + da * lo, t: lo }
    } else {
        Intersection::Overlap {
            from: a0 + da * lo,
            to: a0 + da * hi,
        }
    }
}

pub type Point3 = [Rational; 3];

fn sub3(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: Point3, b: Point3) -> Rational {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection3 {
    Disjoint,
    Point(Point3),
    Overlap(Point3, Point3),
}

/// Intersection of closed segments in space.
pub fn intersect_segments_3d(p0: Point3, p1: Point3, q0: Point3, q1: Point3) -> Intersection3 {
    let dp = sub3(p1, p0);
    let normal = cross3(dp, sub3(q0, p0));
    let normal = if normal.iter().all(|c| c.is_zero()) {
        cross3(dp, sub3(q1, p0))
    } else {
        normal
    };
    if !dot3(normal, sub3(q1, p0)).is_zero() || !dot3(normal, sub3(q0, p0)).is_zero() {
        return Intersection3::Disjoint;
    }
    // drop the coordinate that keeps the projection non-degenerate
    let drop = if normal.iter().all(|c| c.is_zero()) {
        (0..3).max_by_key(|&i| dp[i].abs()).map(|i| (i + 1) % 3).unwrap()
    } else {
        (0..3).max_by_key(|&i| normal[i].abs()).unwrap()
    };
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj = |p: Point3| Vec2::new(p[keep[0]], p[keep[1]]);
    let lift = |t: Rational| -> Point3 { std::array::from_fn(|i| p0[i] + dp[i] * t) };
    let param = |p: Vec2| {
        let d = proj(p1) - proj(p0);
        (p - proj(p0)).dot(d) / d.norm_sq()
    };
    match intersect_segments(proj(p0), proj(p1), proj(q0), proj(q1)) {
        Intersection::Disjoint => Intersection3::Disjoint,
        Intersection::Point { t, .. } => Intersection3::Point(lift(t)),
        Intersection::Overlap { from, to } => Intersection3::Overlap(lift(param(from)), lift(param(to))),
    }
}
