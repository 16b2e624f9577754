use serde::Serialize;

use super::point::Point2;
use super::polygon::ConvexPolygon;
use super::target::{Contact, Feature, Target};
use super::GeometryError;
use crate::scalar::Real;

/// Minkowski sum of a convex polygon and a disk: a polygon with rounded corners.
///
/// Straight edges keep the core edge indices; the corner around core vertex `i`
/// reports [`Feature::Arc`]`(i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundedPolygon<F> {
    core: ConvexPolygon<F>,
    radius: F,
}

impl<F: Real> RoundedPolygon<F> {
    pub fn new(core: ConvexPolygon<F>, radius: F) -> Result<Self, GeometryError> {
        if !(radius > F::zero()) || !radius.is_finite() {
            return Err(GeometryError::InvalidRadius);
        }
        Ok(Self { core, radius })
    }

    pub fn core(&self) -> &ConvexPolygon<F> {
        &self.core
    }

    pub fn radius(&self) -> F {
        self.radius
    }

    pub fn perimeter(&self) -> F {
        self.core.perimeter() + F::TAU() * self.radius
    }

    pub fn translated(&self, by: Point2<F>) -> Self {
        Self {
            core: self.core.translated(by),
            radius: self.radius,
        }
    }

    /// Inscribed polygon with `per_corner` vertices on each rounded corner.
    pub fn to_polygon(&self, per_corner: usize) -> Result<ConvexPolygon<F>, GeometryError> {
        let per_corner = per_corner.max(2);
        let n = self.core.edge_count();
        let mut out = Vec::with_capacity(n * per_corner);
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let a0 = self.core.outward_normal(prev).angle();
            let mut a1 = self.core.outward_normal(i).angle();
            if a1 < a0 {
                a1 += F::TAU();
            }
            let v = self.core.vertices()[i];
            for k in 0..per_corner {
                let t = F::from_usize_lossy(k) / F::from_usize_lossy(per_corner - 1);
                out.push(v + Point2::unit(a0 + (a1 - a0) * t) * self.radius);
            }
        }
        ConvexPolygon::new(out)
    }

    fn capsule_entry(&self, j: usize, o: Point2<F>, d: Point2<F>) -> Option<(F, Feature)> {
        let n = self.core.edge_count();
        let (a, b) = self.core.edge(j);
        let len = self.core.edge_lengths()[j];
        let u = (b - a) * (F::one() / len);
        let nrm = self.core.outward_normal(j);

        let mut best: Option<(F, Feature)> = None;
        let mut consider = |t: F, f: Feature| {
            if best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, f));
            }
        };

        // Rectangle swept by the edge: two slabs.
        let rel = o - a;
        let slabs = [
            (rel.dot(u), d.dot(u), F::zero(), len),
            (rel.dot(nrm), d.dot(nrm), -self.radius, self.radius),
        ];
        let mut t0 = F::zero();
        let mut t1 = F::infinity();
        let mut ok = true;
        for (p, q, lo, hi) in slabs {
            if q.abs() <= F::epsilon() {
                if p < lo || p > hi {
                    ok = false;
                }
                continue;
            }
            let (mut ta, mut tb) = ((lo - p) / q, (hi - p) / q);
            if ta > tb {
                std::mem::swap(&mut ta, &mut tb);
            }
            t0 = t0.max(ta);
            t1 = t1.min(tb);
        }
        if ok && t0 <= t1 {
            consider(t0, Feature::Edge(j));
        }

        for (c, idx) in [(a, j), (b, (j + 1) % n)] {
            if let Some(t) = circle_entry(o, d, c, self.radius) {
                consider(t, Feature::Arc(idx));
            }
        }
        best
    }
}

/// Entry parameter of a ray into a closed disk; `0` when starting inside.
fn circle_entry<F: Real>(o: Point2<F>, d: Point2<F>, c: Point2<F>, r: F) -> Option<F> {
    let m = o - c;
    let b = m.dot(d);
    let cc = m.norm_sq() - r * r;
    if cc <= F::zero() {
        return Some(F::zero());
    }
    if b > F::zero() {
        return None;
    }
    let disc = b * b - cc;
    if disc < F::zero() {
        return None;
    }
    Some((-b - disc.sqrt()).max(F::zero()))
}

impl<F: Real> Target<F> for RoundedPolygon<F> {
    fn contains(&self, p: Point2<F>) -> bool {
        self.core.contains(p)
            || self.core.closest_boundary_point(p).distance
                <= self.radius + F::lit(super::polygon::BOUNDARY_TOL)
    }

    fn closest(&self, p: Point2<F>) -> Contact<F> {
        let c = self.core.closest_boundary_point(p);
        let gap = c.distance - self.radius;
        let dir = (p - c.point) * (F::one() / c.distance);
        let feature = match c.feature {
            Feature::Vertex(i) => Feature::Arc(i),
            f => f,
        };
        Contact {
            point: c.point + dir * self.radius,
            distance: gap,
            feature,
        }
    }

    fn ray_entry(&self, origin: Point2<F>, dir: Point2<F>) -> Option<Contact<F>> {
        let mut best: Option<(F, Feature)> = None;
        for j in 0..self.core.edge_count() {
            if let Some((t, f)) = self.capsule_entry(j, origin, dir) {
                if best.is_none_or(|(bt, _)| t < bt) {
                    best = Some((t, f));
                }
            }
        }
        best.map(|(t, feature)| Contact {
            point: origin + dir * t,
            distance: t,
            feature,
        })
    }

    fn bounding_circle(&self) -> (Point2<F>, F) {
        let (c, r) = self.core.bounding_circle();
        (c, r + self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stadium() -> RoundedPolygon<f64> {
        let core =
            ConvexPolygon::from_xy(&[(0.0, 0.0), (10.0, 0.0), (10.0, 2.0), (0.0, 2.0)]).unwrap();
        RoundedPolygon::new(core, 1.0).unwrap()
    }

    #[test]
    fn ray_hits_flat_side_and_corner() {
        let s = stadium();
        let c = s
            .ray_entry(Point2::new(5.0, -10.0), Point2::new(0.0, 1.0))
            .unwrap();
        assert!((c.distance - 9.0).abs() < 1e-12);
        assert_eq!(c.feature, Feature::Edge(0));
        let c = s
            .ray_entry(Point2::new(-0.5, -10.0), Point2::new(0.0, 1.0))
            .unwrap();
        assert_eq!(c.feature, Feature::Arc(0));
        let expect = 10.0 - (1.0f64 - 0.25).sqrt();
        assert!((c.distance - expect).abs() < 1e-12);
        assert!(s
            .ray_entry(Point2::new(-1.5, -10.0), Point2::new(0.0, 1.0))
            .is_none());
    }

    #[test]
    fn closest_on_corner() {
        let s = stadium();
        let c = s.closest(Point2::new(13.0, 6.0));
        assert_eq!(c.feature, Feature::Arc(2));
        assert!((c.distance - 4.0).abs() < 1e-12);
        assert!(s.contains(Point2::new(10.5, 2.5)));
        assert!(!s.contains(Point2::new(10.8, 2.8)));
    }

    #[test]
    fn polygon_approximation_is_inscribed() {
        let s = stadium();
        let p = s.to_polygon(16).unwrap();
        assert_eq!(p.edge_count(), 64);
        for v in p.vertices() {
            let d = s.core().closest_boundary_point(*v).distance;
            assert!((d - 1.0).abs() < 1e-9);
        }
        assert!(p.perimeter() < s.perimeter());
        assert!(s.perimeter() - p.perimeter() < 0.01);
    }
}
