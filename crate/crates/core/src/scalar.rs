//! Floating point abstraction shared by the geometry and estimator math.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only for types that cannot hold it.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Normalizes an angle to `[0, 2π)`.
#[inline]
pub fn angle_0_2pi<F: Real>(a: F) -> F {
    let tau = F::TAU();
    let r = a % tau;
    let r = if r < F::zero() { r + tau } else { r };
    // `r + tau` can round up to exactly tau.
    if r >= tau {
        F::zero()
    } else {
        r
    }
}

/// Normalizes an angle to `(-π, π]`.
#[inline]
pub fn angle_pm_pi<F: Real>(a: F) -> F {
    let r = angle_0_2pi(a);
    if r > F::PI() {
        r - F::TAU()
    } else {
        r
    }
}
