use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::GeometryError;
use crate::scalar::Real;

/// The monitored area Ω: a disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region<F> {
    pub center: Point2<F>,
    pub radius: F,
}

impl<F: Real> Region<F> {
    pub fn disk(center: Point2<F>, radius: F) -> Result<Self, GeometryError> {
        if !(radius > F::zero()) || !radius.is_finite() {
            return Err(GeometryError::InvalidRadius);
        }
        Ok(Self { center, radius })
    }

    /// ‖Ω‖
    pub fn perimeter(&self) -> F {
        F::TAU() * self.radius
    }

    pub fn contains(&self, p: Point2<F>) -> bool {
        p.distance(self.center) <= self.radius
    }
}
