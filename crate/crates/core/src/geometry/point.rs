use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{angle_0_2pi, Real};

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Real> Point2<F> {
    #[inline]
    pub fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn origin() -> Self {
        Self::new(F::zero(), F::zero())
    }

    /// Unit vector pointing along `angle` (radians from the reference direction).
    #[inline]
    pub fn unit(angle: F) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, s)
    }

    #[inline]
    pub fn dot(self, o: Self) -> F {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product; positive when `o` is counterclockwise of `self`.
    #[inline]
    pub fn cross(self, o: Self) -> F {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> F {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> F {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, o: Self) -> F {
        (self - o).norm()
    }

    /// Direction of this vector in `[0, 2π)`.
    #[inline]
    pub fn angle(self) -> F {
        angle_0_2pi(self.y.atan2(self.x))
    }

    /// Rotates by +π/2.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    #[inline]
    pub fn rotate(self, angle: F) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    #[inline]
    pub fn lerp(self, o: Self, t: F) -> Self {
        self + (o - self) * t
    }

    pub fn cast<G: Real>(self) -> Point2<G> {
        Point2::new(G::lit(self.x.as_f64()), G::lit(self.y.as_f64()))
    }
}

impl<F: Real> Add for Point2<F> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<F: Real> Sub for Point2<F> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<F: Real> Mul<F> for Point2<F> {
    type Output = Self;
    #[inline]
    fn mul(self, k: F) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl<F: Real> Neg for Point2<F> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// An angle measured from the global reference direction, kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction<F>(F);

impl<F: Real> Direction<F> {
    pub fn new(radians: F) -> Self {
        Self(angle_0_2pi(radians))
    }

    #[inline]
    pub fn radians(self) -> F {
        self.0
    }

    #[inline]
    pub fn unit(self) -> Point2<F> {
        Point2::unit(self.0)
    }

    pub fn rotated(self, by: F) -> Self {
        Self::new(self.0 + by)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_normalizes() {
        let d = Direction::new(-std::f64::consts::FRAC_PI_2);
        assert!((d.radians() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert!(Direction::new(7.0f64).radians() < std::f64::consts::TAU);
    }

    #[test]
    fn cross_sign_is_ccw() {
        let a = Point2::new(1.0, 0.0);
        let b = Point2::new(0.0, 1.0);
        assert!(a.cross(b) > 0.0);
        assert_eq!(a.perp(), b);
    }
}
