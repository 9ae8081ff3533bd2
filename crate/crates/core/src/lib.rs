//! Orientations of surface triangulations in which every outdegree is a
//! positive multiple of three.

pub mod dot;
pub mod error;
pub mod exploration;
pub mod finishing;
pub mod format;
pub mod initial;
pub mod instances;
pub mod oracle;
pub mod orientation;
pub mod planar;
pub mod reductions;
pub mod submap;
pub mod surface_map;

pub use error::{MapError, SolveError};
pub use orientation::Orientation;
pub use reductions::{solve, SolveOptions, SolveReport};
pub use surface_map::{Dart, EdgeId, FaceId, Sign, SurfaceMap, TriangulationDefect, VertexId};
