//! Exact model of the surface of an axis-aligned `a x b x c` box.
//!
//! Vertices follow the standard cube labeling: bottom vertices 1..4, top
//! vertices 5..8, with `v1` at the front-left-bottom corner, `v2` to its right,
//! `v3` behind `v2`, and `v(i+4)` directly above `v(i)`. In 3D, `x` runs left to
//! right (length `a`), `y` front to back (`b`) and `z` bottom to top (`c`).
//!
//! Every face carries a right-handed `(u, v)` frame seen from outside the box:
//!
//! | face | origin | u  | v  | size    |
//! |------|--------|----|----|---------|
//! | F    | v1     | +x | +z | a x c   |
//! | R    | v2     | +y | +z | b x c   |
//! | T    | v5     | +x | +y | a x b   |
//! | K    | v3     | -x | +z | a x c   |
//! | L    | v4     | -y | +z | b x c   |
//! | B    | v4     | +x | -y | a x b   |
//!
//! so that F, R, K, L unroll left to right into one horizontal band, T sits
//! above F and B sits below F.
//!
//! Corners of a face are numbered counterclockwise from the origin:
//! `0 = (0,0)`, `1 = (w,0)`, `2 = (w,h)`, `3 = (0,h)`; edge `e` runs from corner
//! `e` to corner `e + 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, Rational, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceId {
    F,
    R,
    T,
    K,
    L,
    B,
}

impl FaceId {
    pub const ALL: [FaceId; 6] = [FaceId::F, FaceId::R, FaceId::T, FaceId::K, FaceId::L, FaceId::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['F', 'R', 'T', 'K', 'L', 'B'][self.index()]
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for FaceId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        FaceId::ALL
            .into_iter()
            .find(|f| s.len() == 1 && s.starts_with(f.letter()))
            .ok_or_else(|| format!("unknown face {s:?}"))
    }
}

impl Serialize for FaceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Vertex label `1..=8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(u8);

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl VertexId {
    pub fn new(label: u8) -> Option<Self> {
        (1..=8).contains(&label).then_some(Self(label))
    }

    pub fn all() -> impl Iterator<Item = VertexId> {
        (1..=8).map(VertexId)
    }

    pub fn label(self) -> u8 {
        self.0
    }

    fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Shorthand for vertex labels known to be valid.
pub fn v(label: u8) -> VertexId {
    VertexId::new(label).expect("vertex label in 1..=8")
}

/// Orientation-preserving rigid motion of the plane: rotate by `rotation`
/// quarter turns counterclockwise, then translate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlanarTransform {
    pub rotation: u8,
    pub translation: Vec2,
}

impl PlanarTransform {
    pub fn identity() -> Self {
        Self {
            rotation: 0,
            translation: Vec2::zero(),
        }
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        p.rotate(self.rotation) + self.translation
    }

    pub fn apply_vector(&self, d: Vec2) -> Vec2 {
        d.rotate(self.rotation)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PlanarTransform) -> PlanarTransform {
        PlanarTransform {
            rotation: (self.rotation + inner.rotation) % 4,
            translation: inner.translation.rotate(self.rotation) + self.translation,
        }
    }

    pub fn inverse(&self) -> PlanarTransform {
        let back = (4 - self.rotation) % 4;
        PlanarTransform {
            rotation: back,
            translation: -self.translation.rotate(back),
        }
    }
}

/// A point on the surface given in the frame of one face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacePoint {
    pub face: FaceId,
    pub pos: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFrame {
    pub origin: [Rational; 3],
    pub u_axis: [i64; 3],
    pub v_axis: [i64; 3],
    pub normal: [i64; 3],
    pub width: Rational,
    pub height: Rational,
}

/// How a face edge is glued to its partner edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub neighbor: FaceId,
    pub neighbor_edge: usize,
    /// Maps neighbor-local coordinates to this face's coordinates, with the
    /// neighbor unfolded across the shared edge.
    pub to_self: PlanarTransform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxGeometry {
    dims: [Rational; 3],
    frames: [FaceFrame; 6],
    positions: [[Rational; 3]; 8],
    corners: [[VertexId; 4]; 6],
    gluings: [[Gluing; 4]; 6],
    /// Incident `(face, corner)` pairs per vertex in counterclockwise order seen from outside.
    stars: [[(FaceId, usize); 3]; 8],
}

const X: [i64; 3] = [1, 0, 0];
const Y: [i64; 3] = [0, 1, 0];
const Z: [i64; 3] = [0, 0, 1];

fn neg3(a: [i64; 3]) -> [i64; 3] {
    [-a[0], -a[1], -a[2]]
}

fn cross3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axis_len(dims: &[Rational; 3], axis: [i64; 3]) -> Rational {
    let i = axis.iter().position(|&c| c != 0).expect("axis vector");
    dims[i]
}

/// Builds the box surface with dimensions `a x b x c`.
pub fn make_box(a: Rational, b: Rational, c: Rational) -> Result<BoxGeometry> {
    BoxGeometry::new(a, b, c)
}

impl BoxGeometry {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        for d in [a, b, c] {
            if d <= Rational::zero() {
                return Err(Error::NonPositiveDimension(d));
            }
        }
        let dims = [a, b, c];
        let zero = Rational::zero();
        let positions: [[Rational; 3]; 8] = [
            [zero, zero, zero],
            [a, zero, zero],
            [a, b, zero],
            [zero, b, zero],
            [zero, zero, c],
            [a, zero, c],
            [a, b, c],
            [zero, b, c],
        ];
        let frame = |origin: usize, u: [i64; 3], v: [i64; 3]| FaceFrame {
            origin: positions[origin],
            u_axis: u,
            v_axis: v,
            normal: cross3(u, v),
            width: axis_len(&dims, u),
            height: axis_len(&dims, v),
        };
        let frames = [
            frame(0, X, Z),
            frame(1, Y, Z),
            frame(4, X, Y),
            frame(2, neg3(X), Z),
            frame(3, neg3(Y), Z),
            frame(3, X, neg3(Y)),
        ];

        let lookup = |p: [Rational; 3]| -> VertexId {
            let i = positions.iter().position(|q| *q == p).expect("face corner is a box vertex");
            VertexId(i as u8 + 1)
        };
        let corners: [[VertexId; 4]; 6] = std::array::from_fn(|fi| {
            let fr = &frames[fi];
            std::array::from_fn(|k| lookup(embed(fr, corner_of(fr, k))))
        });

        let gluings: [[Gluing; 4]; 6] = std::array::from_fn(|fi| {
            std::array::from_fn(|e| {
                let p = corners[fi][e];
                let q = corners[fi][(e + 1) % 4];
                let (gi, ge) = (0..6)
                    .filter(|&gi| gi != fi)
                    .find_map(|gi| {
                        (0..4)
                            .find(|&ge| corners[gi][ge] == q && corners[gi][(ge + 1) % 4] == p)
                            .map(|ge| (gi, ge))
                    })
                    .expect("every box edge has a partner");
                let fr = &frames[fi];
                let gr = &frames[gi];
                let (pf, qf) = (corner_of(fr, e), corner_of(fr, (e + 1) % 4));
                let (qg, pg) = (corner_of(gr, ge), corner_of(gr, (ge + 1) % 4));
                let rotation = (0..4u8)
                    .find(|&k| (pg - qg).rotate(k) == pf - qf)
                    .expect("edges are axis aligned");
                let translation = pf - pg.rotate(rotation);
                Gluing {
                    neighbor: FaceId::ALL[gi],
                    neighbor_edge: ge,
                    to_self: PlanarTransform {
                        rotation,
                        translation,
                    },
                }
            })
        });

        let stars: [[(FaceId, usize); 3]; 8] = std::array::from_fn(|vi| {
            let incident: Vec<(usize, usize)> = (0..6)
                .filter_map(|fi| corners[fi].iter().position(|c| c.index() == vi).map(|k| (fi, k)))
                .collect();
            debug_assert_eq!(incident.len(), 3);
            let start_nbr = |(fi, k): (usize, usize)| corners[fi][(k + 1) % 4];
            let end_nbr = |(fi, k): (usize, usize)| corners[fi][(k + 3) % 4];
            let mut order = vec![incident[0]];
            while order.len() < 3 {
                let last = *order.last().unwrap();
                let next = *incident
                    .iter()
                    .find(|&&x| start_nbr(x) == end_nbr(last))
                    .expect("faces around a vertex form a cycle");
                order.push(next);
            }
            std::array::from_fn(|i| (FaceId::ALL[order[i].0], order[i].1))
        });

        Ok(Self {
            dims,
            frames,
            positions,
            corners,
            gluings,
            stars,
        })
    }

    pub fn cube() -> Self {
        Self::new(Rational::one(), Rational::one(), Rational::one()).expect("unit cube")
    }

    pub fn dims(&self) -> [Rational; 3] {
        self.dims
    }

    pub fn is_cube(&self) -> bool {
        self.dims.iter().all(|d| d.is_one())
    }

    pub fn frame(&self, face: FaceId) -> &FaceFrame {
        &self.frames[face.index()]
    }

    pub fn size(&self, face: FaceId) -> (Rational, Rational) {
        let fr = self.frame(face);
        (fr.width, fr.height)
    }

    pub fn position(&self, vertex: VertexId) -> [Rational; 3] {
        self.positions[vertex.index()]
    }

    pub fn face_corners(&self, face: FaceId) -> [VertexId; 4] {
        self.corners[face.index()]
    }

    pub fn corner_point(&self, face: FaceId, corner: usize) -> Vec2 {
        corner_of(self.frame(face), corner)
    }

    pub fn corner_index(&self, face: FaceId, vertex: VertexId) -> Option<usize> {
        self.corners[face.index()].iter().position(|&c| c == vertex)
    }

    /// Coordinates of `vertex` in the frame of `face`.
    pub fn local_corner(&self, face: FaceId, vertex: VertexId) -> Option<Vec2> {
        self.corner_index(face, vertex).map(|k| self.corner_point(face, k))
    }

    /// The vertex at `p`, if `p` is a corner of `face`.
    pub fn vertex_at(&self, face: FaceId, p: Vec2) -> Option<VertexId> {
        (0..4)
            .find(|&k| self.corner_point(face, k) == p)
            .map(|k| self.corners[face.index()][k])
    }

    /// Index of the edge whose relative interior contains `p`.
    pub fn edge_containing(&self, face: FaceId, p: Vec2) -> Option<usize> {
        let (w, h) = self.size(face);
        let zero = Rational::zero();
        let inside_u = p.x > zero && p.x < w;
        let inside_v = p.y > zero && p.y < h;
        if p.y == zero && inside_u {
            Some(0)
        } else if p.x == w && inside_v {
            Some(1)
        } else if p.y == h && inside_u {
            Some(2)
        } else if p.x == zero && inside_v {
            Some(3)
        } else {
            None
        }
    }

    pub fn contains(&self, face: FaceId, p: Vec2) -> bool {
        let (w, h) = self.size(face);
        let zero = Rational::zero();
        p.x >= zero && p.x <= w && p.y >= zero && p.y <= h
    }

    pub fn gluing(&self, face: FaceId, edge: usize) -> &Gluing {
        &self.gluings[face.index()][edge]
    }

    /// Edge of `face` glued to `other`, if the two faces are adjacent.
    pub fn shared_edge(&self, face: FaceId, other: FaceId) -> Option<usize> {
        (0..4).find(|&e| self.gluings[face.index()][e].neighbor == other)
    }

    /// Faces incident to `vertex` in counterclockwise order, with the corner index of
    /// the vertex in each.
    pub fn star(&self, vertex: VertexId) -> [(FaceId, usize); 3] {
        self.stars[vertex.index()]
    }

    pub fn faces_at(&self, vertex: VertexId) -> [FaceId; 3] {
        self.star(vertex).map(|(f, _)| f)
    }

    /// Lays the faces of `path` out in the plane of `path[0]`: transform `i` maps
    /// the frame of `path[i]` into the frame of the first face.
    pub fn develop(&self, path: &[FaceId]) -> Result<Vec<PlanarTransform>> {
        let mut out = Vec::with_capacity(path.len());
        let mut acc = PlanarTransform::identity();
        for (i, &face) in path.iter().enumerate() {
            if i > 0 {
                let prev = path[i - 1];
                let e = self
                    .shared_edge(prev, face)
                    .ok_or(Error::NotAdjacent(prev, face))?;
                acc = acc.compose(&self.gluing(prev, e).to_self);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// 3D position of a face point.
    pub fn embed(&self, fp: FacePoint) -> [Rational; 3] {
        embed(self.frame(fp.face), fp.pos)
    }

    /// 3D vector of a face-frame direction.
    pub fn embed_vector(&self, face: FaceId, d: Vec2) -> [Rational; 3] {
        let fr = self.frame(face);
        std::array::from_fn(|i| d.x * int(fr.u_axis[i] as i128) + d.y * int(fr.v_axis[i] as i128))
    }

    /// Face whose outward normal is `normal`.
    pub fn face_with_normal(&self, normal: [i64; 3]) -> Option<FaceId> {
        FaceId::ALL.into_iter().find(|f| self.frame(*f).normal == normal)
    }

    /// Vertex at a 3D position.
    pub fn vertex_at_position(&self, p: [Rational; 3]) -> Option<VertexId> {
        self.positions.iter().position(|q| *q == p).map(|i| VertexId(i as u8 + 1))
    }

    /// Canonical representation of a surface point: points on an edge or at a
    /// vertex are owned by the lowest incident face.
    pub fn canonical_point(&self, fp: FacePoint) -> FacePoint {
        if let Some(vx) = self.vertex_at(fp.face, fp.pos) {
            let face = *self.faces_at(vx).iter().min().unwrap();
            return FacePoint {
                face,
                pos: self.local_corner(face, vx).unwrap(),
            };
        }
        if let Some(e) = self.edge_containing(fp.face, fp.pos) {
            let g = self.gluing(fp.face, e);
            if g.neighbor < fp.face {
                return FacePoint {
                    face: g.neighbor,
                    pos: g.to_self.inverse().apply(fp.pos),
                };
            }
        }
        fp
    }
}

fn corner_of(fr: &FaceFrame, k: usize) -> Vec2 {
    let zero = Rational::zero();
    match k % 4 {
        0 => Vec2::new(zero, zero),
        1 => Vec2::new(fr.width, zero),
        2 => Vec2::new(fr.width, fr.height),
        _ => Vec2::new(zero, fr.height),
    }
}

fn embed(fr: &FaceFrame, p: Vec2) -> [Rational; 3] {
    std::array::from_fn(|i| {
        fr.origin[i] + p.x * int(fr.u_axis[i] as i128) + p.y * int(fr.v_axis[i] as i128)
    })
}
