use serde::{Deserialize, Serialize};

use super::point::Point2;
use crate::scalar::Real;

/// Boundary feature hit by a distance query. Ground truth only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Feature {
    /// Interior of edge `j`.
    Edge(usize),
    /// Polygon vertex `i` (tail of edge `i`).
    Vertex(usize),
    /// Rounded corner around core vertex `i`.
    Arc(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contact<F> {
    pub point: Point2<F>,
    pub distance: F,
    pub feature: Feature,
}

/// A convex planar body the sensors can see.
pub trait Target<F: Real>: Send + Sync + std::fmt::Debug {
    fn contains(&self, p: Point2<F>) -> bool;

    /// Nearest boundary point to `p`. Meaningful for `p` outside the body.
    fn closest(&self, p: Point2<F>) -> Contact<F>;

    /// First boundary point along `origin + t·dir`, `t ≥ 0`, `dir` a unit vector.
    fn ray_entry(&self, origin: Point2<F>, dir: Point2<F>) -> Option<Contact<F>>;

    /// Center and radius of a circle enclosing the body.
    fn bounding_circle(&self) -> (Point2<F>, F);
}
