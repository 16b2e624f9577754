//! Kinematic measures of the route lines that detect a whole edge or a vertex.

use crate::quadrature::integrate_piecewise;
use crate::scalar::{angle_pm_pi, Real};

/// Absolute tolerance for the vertex-measure quadrature.
pub const VERTEX_QUAD_TOL: f64 = 1e-8;

/// `η(λ)`: half-width of the admissible `φ − ξ` window on the clamped branches.
pub fn eta<F: Real>(lambda: F, r_max: F, theta_max: F) -> F {
    let w = r_max * theta_max.sin().abs();
    if w >= lambda {
        F::FRAC_PI_2()
    } else {
        (w / lambda).asin()
    }
}

/// Closed form of `𝓂₁(λ)`, the measure of lines whose sensor sees all of an edge of length `λ`.
pub fn measure_whole_edge<F: Real>(lambda: F, r_max: F, theta_max: F) -> F {
    let two = F::lit(2.0);
    let half_pi = F::FRAC_PI_2();
    let (st, ct) = theta_max.sin_cos();
    let a = (r_max / lambda).atan();
    let e = eta(lambda, r_max, theta_max);
    let hyp = lambda.hypot(r_max);
    let co = half_pi - theta_max;
    let rs = r_max * st;

    let mut m = F::zero();
    if co < a {
        m += two * (r_max * (r_max / hyp - ct) + lambda * (lambda / hyp - st));
    }
    if e >= co.max(theta_max) {
        m += two * (half_pi * rs - lambda * (two - ct - st));
    }
    if co <= e && e < theta_max {
        m += two * ((co + e) * rs - lambda * (two - e.cos() - st));
    }
    if theta_max <= e && e < co {
        m += two * ((e + theta_max) * rs - lambda * (two - ct - e.cos()));
    }
    if e < co.min(theta_max) {
        m += F::lit(4.0) * (e * rs - lambda * (F::one() - e.cos()));
    }
    m
}

/// `𝓂₁(λ)` by integrating the defining integrand over `Φ₁,₁ ∪ Φ₁,₂` with `ξ = 0`.
pub fn measure_whole_edge_quadrature<F: Real>(lambda: F, r_max: F, theta_max: F, tol: F) -> F {
    let pi = F::PI();
    let half_pi = F::FRAC_PI_2();
    let a = (r_max / lambda).atan();
    let e = eta(lambda, r_max, theta_max);
    let rs = r_max * theta_max.sin().abs();
    let zeta_m = half_pi - theta_max;
    let zeta_p = half_pi + theta_max;

    let f11 = |phi: F| r_max * (half_pi - phi).sin().abs() - lambda * phi.sin().abs();
    let f12 = |phi: F| rs - lambda * phi.sin().abs();
    let kinks = [F::zero(), half_pi, pi];

    let mut total = F::zero();
    for (lo, hi) in intersect(&[(zeta_m, zeta_p)], &[(-a, a), (pi - a, pi + a)]) {
        total += integrate_piecewise(&f11, lo, hi, &kinks, tol);
    }
    let outer = [(zeta_m - half_pi, zeta_m), (zeta_p, zeta_p + half_pi)];
    for (lo, hi) in intersect(&outer, &[(-e, e), (pi - e, pi + e)]) {
        total += integrate_piecewise(&f12, lo, hi, &kinks, tol);
    }
    total
}

fn intersect<F: Real>(a: &[(F, F)], b: &[(F, F)]) -> Vec<(F, F)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if hi > lo {
                out.push((lo, hi));
            }
        }
    }
    out
}

/// Integrand of `𝓂₂` (without the leading factor 2) for edge directions `ξ_j`, `ξ_{j+1}`.
pub fn vertex_integrand<F: Real>(phi: F, xi_j: F, xi_k: F, r_max: F, theta_max: F) -> F {
    let h = F::FRAC_PI_2();
    let rs = r_max * theta_max.sin();
    let strip = |xi: F| {
        let d = angle_pm_pi(xi + h - phi);
        if d.abs() <= theta_max {
            r_max * d.sin()
        } else {
            rs
        }
    };
    // ξ_j − φ wrapped to [−π/2, 3π/2).
    let x = angle_pm_pi(xi_j - phi + h) - h;
    let x = if x < -h { x + F::TAU() } else { x };
    let h_max = if x >= theta_max - h && x < theta_max {
        F::infinity()
    } else if x < theta_max - h {
        r_max * (x + h).sin()
    } else {
        F::zero()
    };
    strip(xi_j).min(strip(xi_k)).min(h_max).max(F::zero())
}

/// `𝓂₂(γ)` with the reference direction rotated by `delta` (`ξ_j = δ`, `ξ_{j+1} = δ + π − γ`).
pub fn measure_vertex_rotated<F: Real>(gamma: F, r_max: F, theta_max: F, delta: F) -> F {
    let pi = F::PI();
    let h = F::FRAC_PI_2();
    let xi_j = delta;
    let xi_k = delta + pi - gamma;
    let lo = xi_j.max(xi_k) - theta_max;
    let hi = xi_j.min(xi_k) + h;
    if !(hi > lo) {
        return F::zero();
    }
    // Branch switches of w_j, w_{j+1} and h_max, plus the w_j = w_{j+1} crossing.
    let breaks = [
        xi_j + h - theta_max,
        xi_k + h - theta_max,
        (xi_j + xi_k) * F::lit(0.5),
    ];
    let f = |phi: F| vertex_integrand(phi, xi_j, xi_k, r_max, theta_max);
    F::lit(2.0) * integrate_piecewise(&f, lo, hi, &breaks, F::lit(VERTEX_QUAD_TOL))
}

/// `𝓂₂(γ)`, the measure of lines whose sensor sees both edges around a vertex of angle `γ`.
pub fn measure_vertex<F: Real>(gamma: F, r_max: F, theta_max: F) -> F {
    measure_vertex_rotated(gamma, r_max, theta_max, F::zero())
}
