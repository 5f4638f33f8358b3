pub mod angle;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod intersect;
pub mod lemma;
pub mod rational;
pub mod render;
pub mod search;
pub mod symmetry;
pub mod tracer;
pub mod verify;

pub use error::{Error, Result};
