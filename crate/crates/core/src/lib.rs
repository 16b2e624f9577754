//! Shape estimation of a hidden convex polygon from location-blind distance traces.
//!
//! Geometry and candidate math are generic over [`Real`]; the simulator, trace
//! analysis and pipeline run in `f64`.

pub mod analysis;
pub mod estimator;
pub mod geometry;
pub mod pipeline;
pub mod quadrature;
pub mod scalar;
pub mod simulator;

pub use scalar::Real;

pub type PointF32 = geometry::Point2<f32>;
pub type PointF64 = geometry::Point2<f64>;
pub type PolygonF32 = geometry::ConvexPolygon<f32>;
pub type PolygonF64 = geometry::ConvexPolygon<f64>;
pub type SensorF32 = geometry::SectorSensor<f32>;
pub type SensorF64 = geometry::SectorSensor<f64>;
pub type RegionF32 = geometry::Region<f32>;
pub type RegionF64 = geometry::Region<f64>;
pub type LengthCandidateF32 = estimator::LengthCandidate<f32>;
pub type LengthCandidateF64 = estimator::LengthCandidate<f64>;
pub type AngleCandidateF32 = estimator::AngleCandidate<f32>;
pub type AngleCandidateF64 = estimator::AngleCandidate<f64>;
