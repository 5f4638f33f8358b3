use thiserror::Error;

use crate::geometry::{FaceId, VertexId};
use crate::rational::{Direction, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("box dimensions must be positive, got {0}")]
    NonPositiveDimension(Rational),
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
    #[error("faces {0} and {1} do not share an edge")]
    NotAdjacent(FaceId, FaceId),
    #[error("face {face} is not incident to vertex {vertex}")]
    NotIncident { face: FaceId, vertex: VertexId },
    #[error("direction {dir} does not point into face {face} at vertex {vertex}")]
    OutsideWedge {
        vertex: VertexId,
        face: FaceId,
        dir: Direction,
    },
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("segment ends at {end} but the next one starts at {start}")]
    JunctionMismatch { end: VertexId, start: VertexId },
    #[error("operation requires the unit cube")]
    NotCube,
    #[error("slope {slope} lies outside {expected}")]
    SlopeOutOfRange { slope: Rational, expected: String },
    #[error("{0} must be positive")]
    NonPositiveBound(&'static str),
    #[error("curve does not belong to the requested geometry")]
    GeometryMismatch,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("quasigeodesic set is not closed under the symmetry group: {0}")]
    NotClosedUnderAction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
