//! Isometries of a box and their action on quasigeodesics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{BoxGeometry, FaceId, VertexId};
use crate::rational::{int, Direction, Rational, Slope, Vec2};
use crate::search::{canonical_cycle, Category, Leg, QuasiGeo};
use crate::tracer::{trace_ray, Departure, GeodesicSegment};

/// Which isometries count as symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GroupMode {
    #[default]
    Full,
    Rotations,
    Off,
}

impl FromStr for GroupMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(GroupMode::Full),
            "rot" | "rotations" => Ok(GroupMode::Rotations),
            "off" => Ok(GroupMode::Off),
            _ => Err(Error::InvalidCurve(format!("unknown symmetry mode {s:?}"))),
        }
    }
}

impl fmt::Display for GroupMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupMode::Full => "full",
            GroupMode::Rotations => "rot",
            GroupMode::Off => "off",
        })
    }
}

/// A signed axis permutation about the box center: `(Mx)_i = signs[i] * x[perm[i]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryOp {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
}

impl SymmetryOp {
    pub fn identity() -> Self {
        Self {
            perm: [0, 1, 2],
            signs: [1; 3],
        }
    }

    pub fn determinant(&self) -> i64 {
        let [a, b, c] = self.perm;
        let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
        let parity = if inversions.is_multiple_of(2) { 1 } else { -1 };
        parity * self.signs.iter().product::<i64>()
    }

    pub fn is_rotation(&self) -> bool {
        self.determinant() == 1
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SymmetryOp) -> SymmetryOp {
        SymmetryOp {
            perm: std::array::from_fn(|i| inner.perm[self.perm[i]]),
            signs: std::array::from_fn(|i| self.signs[i] * inner.signs[self.perm[i]]),
        }
    }

    pub fn inverse(&self) -> SymmetryOp {
        let mut perm = [0; 3];
        let mut signs = [1; 3];
        for i in 0..3 {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SymmetryOp { perm, signs }
    }

    pub fn map_vector<T: Copy + std::ops::Mul<Output = T> + From<i8>>(&self, x: [T; 3]) -> [T; 3] {
        std::array::from_fn(|i| x[self.perm[i]] * T::from(self.signs[i] as i8))
    }

    fn map_rat(&self, x: [Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| x[self.perm[i]] * int(self.signs[i] as i128))
    }

    fn map_int(&self, x: [i64; 3]) -> [i64; 3] {
        std::array::from_fn(|i| x[self.perm[i]] * self.signs[i])
    }

    pub fn preserves(&self, geom: &BoxGeometry) -> bool {
        let d = geom.dims();
        (0..3).all(|i| d[i] == d[self.perm[i]])
    }

    pub fn map_point(&self, geom: &BoxGeometry, p: [Rational; 3]) -> [Rational; 3] {
        let d = geom.dims();
        let half = crate::rational::rat(1, 2);
        let centered: [Rational; 3] = std::array::from_fn(|i| p[i] - d[i] * half);
        let m = self.map_rat(centered);
        std::array::from_fn(|i| m[i] + d[i] * half)
    }

    pub fn map_vertex(&self, geom: &BoxGeometry, vx: VertexId) -> Result<VertexId> {
        if !self.preserves(geom) {
            return Err(Error::GeometryMismatch);
        }
        geom.vertex_at_position(self.map_point(geom, geom.position(vx)))
            .ok_or(Error::GeometryMismatch)
    }

    pub fn map_face(&self, geom: &BoxGeometry, face: FaceId) -> Result<FaceId> {
        geom.face_with_normal(self.map_int(geom.frame(face).normal))
            .ok_or(Error::GeometryMismatch)
    }

    /// Image of a face-frame direction, expressed in the image face's frame.
    pub fn map_direction(&self, geom: &BoxGeometry, face: FaceId, dir: Direction) -> Result<(FaceId, Direction)> {
        let image = self.map_face(geom, face)?;
        let v = self.map_rat(geom.embed_vector(face, dir.to_vec()));
        let fr = geom.frame(image);
        let dot = |axis: [i64; 3]| -> Rational { (0..3).map(|i| v[i] * int(axis[i] as i128)).sum() };
        let local = Vec2::new(dot(fr.u_axis), dot(fr.v_axis));
        Ok((image, Direction::from_vec(local)?))
    }

    pub fn map_departure(&self, geom: &BoxGeometry, d: Departure) -> Result<Departure> {
        let vertex = self.map_vertex(geom, d.vertex)?;
        let (face, dir) = self.map_direction(geom, d.face, d.dir)?;
        Departure { vertex, face, dir }.canonical(geom)
    }

    fn map_leg(&self, geom: &BoxGeometry, leg: Leg) -> Result<Leg> {
        Ok(Leg {
            forward: self.map_departure(geom, leg.forward)?,
            backward: self.map_departure(geom, leg.backward)?,
        })
    }

    /// Canonical encoding of the image of a labeled curve.
    pub fn map_encoding(&self, geom: &BoxGeometry, legs: &[Leg]) -> Result<Vec<Departure>> {
        let mapped = legs.iter().map(|l| self.map_leg(geom, *l)).collect::<Result<Vec<_>>>()?;
        let (canon, _, _) = canonical_cycle(&mapped);
        Ok(canon.iter().map(|l| l.forward).collect())
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ['x', 'y', 'z'];
        let parts: Vec<String> = (0..3)
            .map(|i| format!("{}{}", if self.signs[i] < 0 { "-" } else { "" }, names[self.perm[i]]))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// All isometries of the box, including reflections, in a fixed order.
pub fn symmetry_group(geom: &BoxGeometry) -> Vec<SymmetryOp> {
    let mut ops = Vec::new();
    for perm in PERMS {
        for bits in 0..8 {
            let signs = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
            let op = SymmetryOp { perm, signs };
            if op.preserves(geom) {
                ops.push(op);
            }
        }
    }
    ops
}

/// The subgroup selected by `mode`.
pub fn group_for_mode(geom: &BoxGeometry, mode: GroupMode) -> Vec<SymmetryOp> {
    match mode {
        GroupMode::Full => symmetry_group(geom),
        GroupMode::Rotations => symmetry_group(geom).into_iter().filter(|o| o.is_rotation()).collect(),
        GroupMode::Off => vec![SymmetryOp::identity()],
    }
}

fn map_segment(geom: &BoxGeometry, op: &SymmetryOp, s: &GeodesicSegment) -> Result<GeodesicSegment> {
    let start = op.map_vertex(geom, s.start)?;
    let (face, dir) = op.map_direction(geom, s.start_face, s.direction)?;
    let image = trace_ray(geom, start, face, dir, s.crossings.len())?
        .segment()
        .ok_or(Error::GeometryMismatch)?;
    if image.end != op.map_vertex(geom, s.end)? || image.length_sq != s.length_sq {
        return Err(Error::GeometryMismatch);
    }
    Ok(image)
}

/// Image of a quasigeodesic, rebuilt by re-tracing each mapped segment.
pub fn apply(geom: &BoxGeometry, op: &SymmetryOp, q: &QuasiGeo) -> Result<QuasiGeo> {
    if q.dims() != geom.dims() || !op.preserves(geom) {
        return Err(Error::GeometryMismatch);
    }
    let segs = q
        .segments()
        .iter()
        .map(|s| map_segment(geom, op, s))
        .collect::<Result<Vec<_>>>()?;
    QuasiGeo::from_cycle(geom, segs)
}

#[derive(Clone, Debug)]
pub struct CanonicalClass {
    pub representative: QuasiGeo,
    pub orbit_size: usize,
    pub stabilizer_size: usize,
}

impl CanonicalClass {
    pub fn category(&self) -> Option<Category> {
        self.representative.category()
    }
}

fn sort_key(q: &QuasiGeo) -> (Option<Category>, Vec<Slope>, Vec<Departure>) {
    (q.category(), q.slopes(), q.encoding())
}

/// One class per orbit of `group` on `qs`, represented by the least encoding.
pub fn reduce_to_classes(geom: &BoxGeometry, qs: &[QuasiGeo], group: &[SymmetryOp]) -> Result<Vec<CanonicalClass>> {
    if let Some(q) = qs.iter().find(|q| q.dims() != geom.dims()) {
        return Err(Error::NotClosedUnderAction(format!("{:?} is on another box", q.vertex_cycle())));
    }
    let by_code: BTreeMap<Vec<Departure>, &QuasiGeo> = qs.iter().map(|q| (q.encoding(), q)).collect();
    let orbits: Vec<(Vec<Departure>, BTreeSet<Vec<Departure>>, usize)> = qs
        .par_iter()
        .map(|q| {
            let code = q.encoding();
            let mut orbit = BTreeSet::new();
            let mut stab = 0;
            for op in group {
                let image = op.map_encoding(geom, q.legs())?;
                if image == code {
                    stab += 1;
                }
                orbit.insert(image);
            }
            Ok((code, orbit, stab))
        })
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<Vec<Departure>, CanonicalClass> = BTreeMap::new();
    for (code, orbit, stab) in orbits {
        if let Some(missing) = orbit.iter().find(|c| !by_code.contains_key(*c)) {
            return Err(Error::NotClosedUnderAction(format!(
                "image of {code:?} not in input: {missing:?}"
            )));
        }
        let rep = orbit.first().expect("orbit contains the curve itself").clone();
        classes.entry(rep.clone()).or_insert_with(|| CanonicalClass {
            representative: by_code[&rep].clone(),
            orbit_size: orbit.len(),
            stabilizer_size: stab,
        });
    }
    let mut out: Vec<CanonicalClass> = classes.into_values().collect();
    out.sort_by_cached_key(|c| sort_key(&c.representative));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::v;
    use crate::rational::rat;

    #[test]
    fn group_orders() {
        let cube = BoxGeometry::cube();
        assert_eq!(symmetry_group(&cube).len(), 48);
        assert_eq!(group_for_mode(&cube, GroupMode::Rotations).len(), 24);
        let square = BoxGeometry::new(int(1), int(1), rat(5, 4)).unwrap();
        assert_eq!(symmetry_group(&square).len(), 16);
        let generic = BoxGeometry::new(int(1), rat(5, 4), rat(3, 2)).unwrap();
        assert_eq!(symmetry_group(&generic).len(), 8);
        assert_eq!(group_for_mode(&generic, GroupMode::Off).len(), 1);
    }

    #[test]
    fn group_axioms() {
        let cube = BoxGeometry::cube();
        let g = symmetry_group(&cube);
        let set: BTreeSet<_> = g.iter().copied().collect();
        for a in &g {
            assert_eq!(a.compose(&a.inverse()), SymmetryOp::identity());
            for b in &g {
                assert!(set.contains(&a.compose(b)));
                let x = [rat(1, 3), rat(2, 5), rat(-7, 2)];
                assert_eq!(a.compose(b).map_rat(x), a.map_rat(b.map_rat(x)));
            }
        }
    }

    #[test]
    fn vertex_and_face_permutations() {
        let cube = BoxGeometry::cube();
        for op in symmetry_group(&cube) {
            let vs: BTreeSet<_> = VertexId::all().map(|x| op.map_vertex(&cube, x).unwrap()).collect();
            assert_eq!(vs.len(), 8);
            let fs: BTreeSet<_> = FaceId::ALL.iter().map(|f| op.map_face(&cube, *f).unwrap()).collect();
            assert_eq!(fs.len(), 6);
        }
        let mirror_x = SymmetryOp {
            perm: [0, 1, 2],
            signs: [-1, 1, 1],
        };
        assert_eq!(mirror_x.map_vertex(&cube, v(1)).unwrap(), v(2));
        assert_eq!(mirror_x.map_face(&cube, FaceId::R).unwrap(), FaceId::L);
        assert!(!mirror_x.is_rotation());
    }

    #[test]
    fn mismatched_geometry() {
        let square = BoxGeometry::new(int(1), int(1), int(2)).unwrap();
        let swap_xz = SymmetryOp {
            perm: [2, 1, 0],
            signs: [1, 1, 1],
        };
        assert_eq!(swap_xz.map_vertex(&square, v(1)), Err(Error::GeometryMismatch));
    }
}
