//! Adaptive Simpson integration for piecewise smooth integrands.

use crate::scalar::Real;

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Real>(f: &impl Fn(F) -> F, a: F, b: F, tol: F) -> F {
    if !(b > a) {
        return F::zero();
    }
    let half = F::lit(0.5);
    let m = (a + b) * half;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// Integrates over `[a, b]`, splitting at every breakpoint strictly inside it.
/// The tolerance is shared evenly among the pieces.
pub fn integrate_piecewise<F: Real>(f: &impl Fn(F) -> F, a: F, b: F, breaks: &[F], tol: F) -> F {
    if !(b > a) {
        return F::zero();
    }
    let mut pts: Vec<F> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    let piece_tol = tol / F::from_usize_lossy(pts.len() - 1);
    pts.windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], piece_tol))
        .fold(F::zero(), |acc, x| acc + x)
}

#[inline]
fn simpson<F: Real>(a: F, b: F, fa: F, fm: F, fb: F) -> F {
    (b - a) / F::lit(6.0) * (fa + F::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Real>(
    f: &impl Fn(F) -> F,
    a: F,
    b: F,
    fa: F,
    fm: F,
    fb: F,
    whole: F,
    tol: F,
    depth: u32,
) -> F {
    let half = F::lit(0.5);
    let m = (a + b) * half;
    let lm = (a + m) * half;
    let rm = (m + b) * half;
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0
        || delta.abs() <= F::lit(15.0) * tol
        || (b - a) <= F::epsilon() * a.abs().max(F::one())
    {
        return left + right + delta / F::lit(15.0);
    }
    recurse(f, a, m, fa, flm, fm, left, tol * half, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, tol * half, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_trig() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-10);
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn kink_is_handled_by_breakpoint() {
        let f = |x: f64| (x - 0.3).abs();
        let v = integrate_piecewise(&f, 0.0, 1.0, &[0.3], 1e-12);
        assert!((v - (0.045 + 0.245)).abs() < 1e-12);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(adaptive_simpson(&|x: f32| x, 1.0, 1.0, 1e-6), 0.0);
        assert_eq!(integrate_piecewise(&|x: f64| x, 2.0, 1.0, &[], 1e-6), 0.0);
    }
}
