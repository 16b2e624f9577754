//! Planar primitives and the sector sensing model.

mod fixtures;
mod point;
mod polygon;
mod region;
mod rounded;
mod sensor;
mod target;

pub use fixtures::{load_target, parse_target, Fixture, FixtureError, TargetShape};
pub use point::{Direction, Point2};
pub use polygon::{ConvexPolygon, BOUNDARY_TOL, MIN_EDGE_LENGTH};
pub use region::Region;
pub use rounded::RoundedPolygon;
pub use sensor::{detecting_direction, sector_distance, Detection, Hit, SectorSensor};
pub use target::{Contact, Feature, Target};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {edge} is shorter than {MIN_EDGE_LENGTH}")]
    DegenerateEdge { edge: usize },
    #[error("polygon is not strictly convex")]
    NonConvex,
    #[error("polygon boundary intersects itself")]
    SelfIntersecting,
    #[error("angle outside the detectable band")]
    OutOfRange,
    #[error("radius must be positive and finite")]
    InvalidRadius,
    #[error("invalid sensor: {0}")]
    InvalidSensor(&'static str),
}
