use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::segment::Segment;

/// `tan(arctan(s) + ε)`.
pub fn perturb_slope(s: f64, eps: f64) -> f64 {
    (s.atan() + eps).tan()
}

/// Perturbs every LINEAR slope once, so samples sharing a segment share the error.
pub fn apply_slope_noise<R: Rng + ?Sized>(segments: &mut [Segment], sigma: f64, rng: &mut R) {
    if sigma <= 0.0 {
        return;
    }
    let normal = Normal::new(0.0, sigma).expect("sigma is finite");
    for s in segments.iter_mut() {
        if let Some(x) = s.slope.as_mut() {
            *x = perturb_slope(*x, normal.sample(rng));
        }
    }
}
