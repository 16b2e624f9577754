use serde::{Deserialize, Serialize};

use super::point::{Direction, Point2};
use super::target::{Feature, Target};
use super::GeometryError;
use crate::scalar::{angle_pm_pi, Real};

/// Forward-facing sector of radius `r_max` and half-angle `θ_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorSensor<F> {
    pub r_max: F,
    pub theta_max: F,
}

impl<F: Real> SectorSensor<F> {
    pub fn new(r_max: F, theta_max: F) -> Result<Self, GeometryError> {
        if !(r_max > F::zero()) || !r_max.is_finite() {
            return Err(GeometryError::InvalidSensor("r_max must be positive"));
        }
        if !(theta_max > F::zero() && theta_max <= F::FRAC_PI_2() + F::lit(1e-15)) {
            return Err(GeometryError::InvalidSensor(
                "theta_max must lie in (0, pi/2]",
            ));
        }
        Ok(Self { r_max, theta_max })
    }

    /// `r_max·sin θ_max`, the half-width of the swath swept by a moving sensor.
    pub fn half_swath(&self) -> F {
        self.r_max * self.theta_max.sin()
    }
}

/// Ground-truth detail of a positive reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit<F> {
    pub distance: F,
    pub point: Point2<F>,
    /// Detecting direction θ*, relative to the heading.
    pub theta: F,
    pub feature: Feature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Detection<F> {
    /// The sensor is inside the target.
    Inside,
    Hit(Hit<F>),
    /// Nothing within `r_max` in the sector.
    Nothing,
}

impl<F: Real> Detection<F> {
    /// The reading reported by the sensor: `Some(0)` inside, `None` for no detection.
    pub fn reading(&self) -> Option<F> {
        match self {
            Detection::Inside => Some(F::zero()),
            Detection::Hit(h) => Some(h.distance),
            Detection::Nothing => None,
        }
    }

    pub fn hit(&self) -> Option<&Hit<F>> {
        match self {
            Detection::Hit(h) => Some(h),
            _ => None,
        }
    }
}

/// Distance from the sensor to the nearest point of the target inside its sector.
pub fn sector_distance<F: Real, T: Target<F> + ?Sized>(
    pos: Point2<F>,
    heading: Direction<F>,
    sensor: &SectorSensor<F>,
    target: &T,
) -> Detection<F> {
    let (center, radius) = target.bounding_circle();
    if pos.distance(center) - radius > sensor.r_max {
        return Detection::Nothing;
    }
    if target.contains(pos) {
        return Detection::Inside;
    }

    let near = target.closest(pos);
    let alpha = angle_pm_pi((near.point - pos).angle() - heading.radians());
    let hit = if alpha.abs() <= sensor.theta_max {
        Some(Hit {
            distance: near.distance,
            point: near.point,
            theta: alpha,
            feature: near.feature,
        })
    } else {
        // The cone is convex, so the constrained minimum sits on a bounding ray.
        [sensor.theta_max, -sensor.theta_max]
            .into_iter()
            .filter_map(|th| {
                let dir = heading.rotated(th).unit();
                target.ray_entry(pos, dir).map(|c| Hit {
                    distance: c.distance,
                    point: c.point,
                    theta: th,
                    feature: c.feature,
                })
            })
            .min_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap())
    };
    match hit {
        Some(h) if h.distance <= sensor.r_max => Detection::Hit(h),
        _ => Detection::Nothing,
    }
}

/// Detecting direction for an edge seen at `ζ = ξ + π/2 − φ` (relative to the heading).
pub fn detecting_direction<F: Real>(zeta: F, theta_max: F) -> Result<F, GeometryError> {
    let band = theta_max + F::FRAC_PI_2();
    if !(zeta > -band && zeta < band) {
        return Err(GeometryError::OutOfRange);
    }
    Ok(zeta.max(-theta_max).min(theta_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polygon::ConvexPolygon;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn square() -> ConvexPolygon<f64> {
        ConvexPolygon::from_xy(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]).unwrap()
    }

    #[test]
    fn inside_reads_zero() {
        let s = SectorSensor::new(100.0, FRAC_PI_2).unwrap();
        let d = sector_distance(Point2::new(5.0, 5.0), Direction::new(0.3), &s, &square());
        assert_eq!(d.reading(), Some(0.0));
    }

    #[test]
    fn front_on_edge() {
        let s = SectorSensor::new(100.0, FRAC_PI_2).unwrap();
        let d = sector_distance(
            Point2::new(5.0, -5.0),
            Direction::new(FRAC_PI_2),
            &s,
            &square(),
        );
        let h = d.hit().unwrap();
        assert!((h.distance - 5.0).abs() < 1e-12);
        assert!(h.theta.abs() < 1e-12);
        assert_eq!(h.feature, Feature::Edge(0));
    }

    #[test]
    fn out_of_range() {
        let s = SectorSensor::new(100.0, FRAC_PI_2).unwrap();
        let d = sector_distance(
            Point2::new(5.0, -150.0),
            Direction::new(FRAC_PI_2),
            &s,
            &square(),
        );
        assert_eq!(d, Detection::Nothing);
    }

    #[test]
    fn behind_the_sensor_is_invisible() {
        let s = SectorSensor::new(100.0, FRAC_PI_4).unwrap();
        let d = sector_distance(
            Point2::new(5.0, -5.0),
            Direction::new(-FRAC_PI_2),
            &s,
            &square(),
        );
        assert_eq!(d, Detection::Nothing);
    }

    #[test]
    fn clamps_to_sector_edge() {
        // Heading along +x below the square: the perpendicular is at +π/2, outside a π/4 cone.
        let s = SectorSensor::new(100.0, FRAC_PI_4).unwrap();
        let d = sector_distance(Point2::new(-3.0, -5.0), Direction::new(0.0), &s, &square());
        let h = d.hit().unwrap();
        assert!((h.theta - FRAC_PI_4).abs() < 1e-12);
        assert!((h.distance - 5.0 * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn detecting_direction_regimes() {
        assert_eq!(detecting_direction(0.0, FRAC_PI_4).unwrap(), 0.0);
        assert!((detecting_direction(FRAC_PI_3, FRAC_PI_4).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((detecting_direction(-FRAC_PI_3, FRAC_PI_4).unwrap() + FRAC_PI_4).abs() < 1e-15);
        assert_eq!(
            detecting_direction(2.5, FRAC_PI_4),
            Err(GeometryError::OutOfRange)
        );
    }

    #[test]
    fn rejects_bad_sensor() {
        assert!(SectorSensor::new(0.0, 0.5).is_err());
        assert!(SectorSensor::new(1.0, 2.0).is_err());
    }
}
