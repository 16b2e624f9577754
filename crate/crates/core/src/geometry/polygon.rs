use serde::Serialize;

use super::point::Point2;
use super::target::{Contact, Feature, Target};
use super::GeometryError;
use crate::scalar::{angle_0_2pi, Real};

/// Edges shorter than this are rejected as degenerate.
pub const MIN_EDGE_LENGTH: f64 = 1e-9;
/// Half-width of the band treated as "on the boundary".
pub const BOUNDARY_TOL: f64 = 1e-9;

/// A strictly convex polygon with counterclockwise vertices.
///
/// Edge `j` runs from vertex `j` to vertex `j + 1` (indices mod `n`). Its length is
/// `λ_j`, its direction `ξ_j`, and `γ_j` is the interior angle at its head, i.e.
/// between edge `j` and edge `j + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon<F> {
    vertices: Vec<Point2<F>>,
    lengths: Vec<F>,
    directions: Vec<F>,
    angles: Vec<F>,
    #[serde(skip)]
    normals: Vec<Point2<F>>,
    #[serde(skip)]
    offsets: Vec<F>,
    #[serde(skip)]
    bound: (Point2<F>, F),
}

impl<F: Real> ConvexPolygon<F> {
    /// Validates `vertices` and derives edge lengths, directions, and angles.
    ///
    /// Clockwise input is reversed to counterclockwise before validation.
    pub fn new(vertices: Vec<Point2<F>>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        let min_len = F::lit(MIN_EDGE_LENGTH);
        for j in 0..n {
            let len = vertices[(j + 1) % n].distance(vertices[j]);
            if !(len >= min_len) {
                return Err(GeometryError::DegenerateEdge { edge: j });
            }
        }

        let mut vertices = vertices;
        if signed_area(&vertices) < F::zero() {
            vertices.reverse();
        }

        let edges: Vec<Point2<F>> = (0..n)
            .map(|j| vertices[(j + 1) % n] - vertices[j])
            .collect();
        let lengths: Vec<F> = edges.iter().map(|e| e.norm()).collect();

        let mut left_turns = 0;
        let mut right_turns = 0;
        for j in 0..n {
            let k = (j + 1) % n;
            let s = edges[j].cross(edges[k]) / (lengths[j] * lengths[k]);
            if s > F::lit(1e-12) {
                left_turns += 1;
            } else if s < -F::lit(1e-12) {
                right_turns += 1;
            }
        }
        if left_turns != n {
            if right_turns > 0 && has_crossing_edges(&vertices) {
                return Err(GeometryError::SelfIntersecting);
            }
            return Err(GeometryError::NonConvex);
        }

        let directions: Vec<F> = edges.iter().map(|e| e.angle()).collect();
        let angles: Vec<F> = (0..n)
            .map(|j| angle_0_2pi(F::PI() - directions[(j + 1) % n] + directions[j]))
            .collect();

        // All left turns but winding more than once: a star polygon.
        let turning: F = angles.iter().fold(F::zero(), |acc, &g| acc + (F::PI() - g));
        if (turning - F::TAU()).abs() > F::lit(1e-6) {
            return Err(GeometryError::SelfIntersecting);
        }

        let normals: Vec<Point2<F>> = edges
            .iter()
            .zip(&lengths)
            .map(|(e, &l)| Point2::new(e.y / l, -e.x / l))
            .collect();
        let offsets: Vec<F> = normals
            .iter()
            .zip(&vertices)
            .map(|(nv, v)| nv.dot(*v))
            .collect();

        let centroid = vertex_mean(&vertices);
        let radius = vertices
            .iter()
            .map(|v| v.distance(centroid))
            .fold(F::zero(), F::max);

        Ok(Self {
            vertices,
            lengths,
            directions,
            angles,
            normals,
            offsets,
            bound: (centroid, radius),
        })
    }

    pub fn from_xy(coords: &[(F, F)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point2<F>] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    /// `λ_j` for every edge.
    pub fn edge_lengths(&self) -> &[F] {
        &self.lengths
    }

    /// `ξ_j ∈ [0, 2π)` for every edge.
    pub fn edge_directions(&self) -> &[F] {
        &self.directions
    }

    /// `γ_j`: interior angle between edge `j` and edge `j + 1`.
    pub fn interior_angles(&self) -> &[F] {
        &self.angles
    }

    /// Interior angle at vertex `i` (the tail of edge `i`).
    pub fn vertex_angle(&self, i: usize) -> F {
        let n = self.edge_count();
        self.angles[(i + n - 1) % n]
    }

    pub fn edge(&self, j: usize) -> (Point2<F>, Point2<F>) {
        let n = self.edge_count();
        (self.vertices[j % n], self.vertices[(j + 1) % n])
    }

    pub fn perimeter(&self) -> F {
        self.lengths.iter().fold(F::zero(), |a, &l| a + l)
    }

    pub fn area(&self) -> F {
        signed_area(&self.vertices)
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2<F> {
        let n = self.edge_count();
        let mut cx = F::zero();
        let mut cy = F::zero();
        let mut a2 = F::zero();
        for j in 0..n {
            let p = self.vertices[j];
            let q = self.vertices[(j + 1) % n];
            let w = p.cross(q);
            a2 += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        let k = F::lit(3.0) * a2;
        Point2::new(cx / k, cy / k)
    }

    pub fn translated(&self, by: Point2<F>) -> Self {
        Self::new(self.vertices.iter().map(|&v| v + by).collect())
            .expect("translation preserves convexity")
    }

    /// Copy with the area centroid moved to `to`.
    pub fn centered_at(&self, to: Point2<F>) -> Self {
        self.translated(to - self.centroid())
    }

    /// Signed distance of `p` to the supporting line of edge `j`; positive outside.
    #[inline]
    pub fn edge_side(&self, j: usize, p: Point2<F>) -> F {
        self.normals[j].dot(p) - self.offsets[j]
    }

    /// Outward unit normal of edge `j`.
    pub fn outward_normal(&self, j: usize) -> Point2<F> {
        self.normals[j]
    }

    /// Closest boundary point to `p` over the edges, ignoring containment.
    pub fn closest_boundary_point(&self, p: Point2<F>) -> Contact<F> {
        let n = self.edge_count();
        let mut best = Contact {
            point: self.vertices[0],
            distance: F::infinity(),
            feature: Feature::Vertex(0),
        };
        for j in 0..n {
            let a = self.vertices[j];
            let d = self.vertices[(j + 1) % n] - a;
            let t = ((p - a).dot(d) / (self.lengths[j] * self.lengths[j]))
                .max(F::zero())
                .min(F::one());
            let q = a + d * t;
            let dist = p.distance(q);
            if dist < best.distance {
                let feature = if t <= F::zero() {
                    Feature::Vertex(j)
                } else if t >= F::one() {
                    Feature::Vertex((j + 1) % n)
                } else {
                    Feature::Edge(j)
                };
                best = Contact {
                    point: q,
                    distance: dist,
                    feature,
                };
            }
        }
        best
    }

    /// Entry parameter of the ray `origin + t·dir` (`dir` unit) by clipping against
    /// every edge's half-plane. Returns `(t_enter, t_exit, entering_edge)`.
    pub fn clip_ray(&self, origin: Point2<F>, dir: Point2<F>) -> Option<(F, F, Option<usize>)> {
        let tol = F::lit(BOUNDARY_TOL);
        let mut t_in = F::neg_infinity();
        let mut t_out = F::infinity();
        let mut entering = None;
        for j in 0..self.edge_count() {
            let denom = self.normals[j].dot(dir);
            let side = self.edge_side(j, origin);
            if denom.abs() <= F::epsilon() {
                if side > tol {
                    return None;
                }
                continue;
            }
            let t = -side / denom;
            if denom < F::zero() {
                if t > t_in {
                    t_in = t;
                    entering = Some(j);
                }
            } else if t < t_out {
                t_out = t;
            }
        }
        if t_in > t_out + tol || t_out < F::zero() {
            return None;
        }
        Some((t_in, t_out, entering))
    }

    fn classify_on_edge(&self, j: usize, q: Point2<F>) -> Feature {
        let n = self.edge_count();
        let tol = F::lit(BOUNDARY_TOL) * (F::one() + self.lengths[j]);
        if q.distance(self.vertices[j]) <= tol {
            Feature::Vertex(j)
        } else if q.distance(self.vertices[(j + 1) % n]) <= tol {
            Feature::Vertex((j + 1) % n)
        } else {
            Feature::Edge(j)
        }
    }
}

impl<F: Real> Target<F> for ConvexPolygon<F> {
    fn contains(&self, p: Point2<F>) -> bool {
        let tol = F::lit(BOUNDARY_TOL);
        (0..self.edge_count()).all(|j| self.edge_side(j, p) <= tol)
    }

    fn closest(&self, p: Point2<F>) -> Contact<F> {
        self.closest_boundary_point(p)
    }

    fn ray_entry(&self, origin: Point2<F>, dir: Point2<F>) -> Option<Contact<F>> {
        let (t_in, _, entering) = self.clip_ray(origin, dir)?;
        let t = t_in.max(F::zero());
        let point = origin + dir * t;
        let feature = match entering {
            Some(j) if t_in >= F::zero() => self.classify_on_edge(j, point),
            _ => self.closest_boundary_point(point).feature,
        };
        Some(Contact {
            point,
            distance: t,
            feature,
        })
    }

    fn bounding_circle(&self) -> (Point2<F>, F) {
        self.bound
    }
}

pub(crate) fn signed_area<F: Real>(v: &[Point2<F>]) -> F {
    let n = v.len();
    let twice = (0..n).fold(F::zero(), |acc, j| acc + v[j].cross(v[(j + 1) % n]));
    twice * F::lit(0.5)
}

fn vertex_mean<F: Real>(v: &[Point2<F>]) -> Point2<F> {
    let k = F::from_usize_lossy(v.len());
    let s = v.iter().fold(Point2::origin(), |acc, &p| acc + p);
    Point2::new(s.x / k, s.y / k)
}

fn has_crossing_edges<F: Real>(v: &[Point2<F>]) -> bool {
    let n = v.len();
    let orient = |a: Point2<F>, b: Point2<F>, c: Point2<F>| (b - a).cross(c - a);
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in (i + 2)..n {
            if (j + 1) % n == i {
                continue;
            }
            let (c, d) = (v[j], v[(j + 1) % n]);
            let d1 = orient(a, b, c);
            let d2 = orient(a, b, d);
            let d3 = orient(c, d, a);
            let d4 = orient(c, d, b);
            if d1 * d2 < F::zero() && d3 * d4 < F::zero() {
                return true;
            }
        }
    }
    false
}
