//! Continuous-time ground truth: which feature each route sees, and when.
//!
//! Feature changes are located by bisection, so episode lengths and end
//! readings are exact up to `tol` instead of the sampling step.

use serde::Serialize;

use super::VehicleRoute;
use crate::geometry::{
    sector_distance, ConvexPolygon, Detection, Direction, Feature, Hit, Point2, SectorSensor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum State {
    Nothing,
    Inside,
    /// Edge index and detecting ray: -1 or 1 for a sector boundary, 0 for the perpendicular.
    Edge(usize, i8),
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Span {
    pub state: State,
    pub leg: usize,
    /// First and last arc positions known to be in `state`.
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeEpisode {
    pub edge: usize,
    pub leg: usize,
    pub start: f64,
    pub end: f64,
    pub r_start: f64,
    pub r_end: f64,
    /// Detecting direction relative to the heading.
    pub theta: f64,
    pub start_vertex: Option<usize>,
    pub end_vertex: Option<usize>,
}

impl EdgeEpisode {
    /// Hit point slid from one end of the edge to the other, never touching 0 or beyond `r_max`.
    pub fn is_whole(&self) -> bool {
        matches!((self.start_vertex, self.end_vertex), (Some(a), Some(b)) if a != b)
            && self.r_start > 0.0
            && self.r_end > 0.0
    }

    pub fn l_d(&self, v: f64) -> f64 {
        (self.end - self.start) / v
    }

    pub fn s_d(&self, v: f64) -> f64 {
        (self.r_end - self.r_start) / self.l_d(v)
    }
}

/// Two adjacent edges seen back to back through their shared vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexEpisode {
    pub vertex: usize,
    /// Index into [`RouteTruth::edges`] of the earlier and later edge episode.
    pub left: usize,
    pub right: usize,
    pub s_left: f64,
    pub s_right: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RouteTruth {
    pub spans: Vec<Span>,
    pub edges: Vec<EdgeEpisode>,
    pub vertices: Vec<VertexEpisode>,
}

impl RouteTruth {
    pub fn whole_edges(&self) -> impl Iterator<Item = &EdgeEpisode> {
        self.edges.iter().filter(|e| e.is_whole())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthConfig {
    /// Coarse scan step in arc length. Features shorter than this may be missed.
    pub step: f64,
    /// Bisection tolerance in arc length.
    pub tol: f64,
}

impl TruthConfig {
    pub fn for_polygon(poly: &ConvexPolygon<f64>) -> Self {
        let shortest = poly
            .edge_lengths()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        Self {
            step: (shortest / 8.0).min(0.5),
            tol: 1e-10,
        }
    }
}

struct Leg {
    from: f64,
    to: f64,
}

struct Scanner<'a> {
    route: &'a VehicleRoute,
    sensor: &'a SectorSensor<f64>,
    poly: &'a ConvexPolygon<f64>,
    tol: f64,
}

impl Scanner<'_> {
    fn detect(&self, d: f64) -> Detection<f64> {
        let (p, h) = self.route.pose(d);
        sector_distance(p, Direction::new(h), self.sensor, self.poly)
    }

    fn ray(&self, theta: f64) -> i8 {
        let t = self.sensor.theta_max;
        if (theta.abs() - t).abs() <= 1e-12 * t.max(1.0) {
            theta.signum() as i8
        } else {
            0
        }
    }

    fn state(&self, d: f64) -> State {
        match self.detect(d) {
            Detection::Nothing => State::Nothing,
            Detection::Inside => State::Inside,
            Detection::Hit(h) => match h.feature {
                Feature::Edge(j) => State::Edge(j, self.ray(h.theta)),
                Feature::Vertex(i) | Feature::Arc(i) => State::Vertex(i),
            },
        }
    }

    fn refine(&self, x: f64, sx: State, y: f64, sy: State, out: &mut Vec<(f64, f64, State)>) {
        if y - x <= self.tol {
            out.push((x, y, sy));
            return;
        }
        let m = 0.5 * (x + y);
        let sm = self.state(m);
        if sm != sx {
            self.refine(x, sx, m, sm, out);
        }
        if sm != sy {
            self.refine(m, sm, y, sy, out);
        }
    }

    fn spans(&self, leg_id: usize, leg: &Leg, step: f64, out: &mut Vec<Span>) {
        let n = ((leg.to - leg.from) / step).ceil().max(1.0) as usize;
        let mut cur = Span {
            state: self.state(leg.from),
            leg: leg_id,
            start: leg.from,
            end: leg.from,
        };
        let mut prev = (leg.from, cur.state);
        let mut changes = Vec::new();
        for k in 1..=n {
            let d = if k == n {
                leg.to
            } else {
                leg.from + k as f64 * step
            };
            let s = self.state(d);
            if s != prev.1 {
                changes.clear();
                self.refine(prev.0, prev.1, d, s, &mut changes);
                for &(l, r, ns) in &changes {
                    cur.end = l;
                    out.push(cur);
                    cur = Span {
                        state: ns,
                        leg: leg_id,
                        start: r,
                        end: r,
                    };
                }
            }
            prev = (d, s);
        }
        cur.end = leg.to;
        out.push(cur);
    }

    fn hit(&self, d: f64) -> Option<Hit<f64>> {
        self.detect(d).hit().copied()
    }
}

fn vertex_at(poly: &ConvexPolygon<f64>, j: usize, p: Point2<f64>) -> Option<usize> {
    let n = poly.edge_count();
    let tol = 1e-6 * (1.0 + poly.edge_lengths()[j]);
    [j, (j + 1) % n]
        .into_iter()
        .find(|&i| poly.vertices()[i].distance(p) <= tol)
}

/// Move episode ends that sit on a vertex to where the hit point reaches it exactly.
///
/// Near a vertex the edge and vertex distances differ only at second order, so
/// the state boundary is ambiguous to about `sqrt(ulp)`. Within one regime the
/// hit point and the reading are affine in arc length, which pins the ends down.
fn snap_to_vertices(sc: &Scanner<'_>, ep: &mut EdgeEpisode, state: State) {
    if ep.start_vertex.is_none() && ep.end_vertex.is_none() {
        return;
    }
    let (d1, d2) = (
        ep.start + 0.25 * (ep.end - ep.start),
        ep.start + 0.75 * (ep.end - ep.start),
    );
    if sc.state(d1) != state || sc.state(d2) != state {
        return;
    }
    let (Some(h1), Some(h2)) = (sc.hit(d1), sc.hit(d2)) else {
        return;
    };
    let n = sc.poly.edge_count();
    let a = sc.poly.vertices()[ep.edge];
    let dir = sc.poly.vertices()[(ep.edge + 1) % n] - a;
    let t = |p: Point2<f64>| (p - a).dot(dir) / dir.norm_sq();
    let (t1, t2) = (t(h1.point), t(h2.point));
    let dt = (t2 - t1) / (d2 - d1);
    let dr = (h2.distance - h1.distance) / (d2 - d1);
    if dt.abs() < 1e-12 {
        return;
    }
    let at = |vertex: usize| {
        let target = if vertex == ep.edge { 0.0 } else { 1.0 };
        let d = d1 + (target - t1) / dt;
        (d, h1.distance + dr * (d - d1))
    };
    if let Some(v) = ep.start_vertex {
        (ep.start, ep.r_start) = at(v);
    }
    if let Some(v) = ep.end_vertex {
        (ep.end, ep.r_end) = at(v);
    }
}

/// Episodes seen by one route.
pub fn route_truth(
    route: &VehicleRoute,
    sensor: &SectorSensor<f64>,
    poly: &ConvexPolygon<f64>,
    v: f64,
    cfg: TruthConfig,
) -> RouteTruth {
    let sc = Scanner {
        route,
        sensor,
        poly,
        tol: cfg.tol,
    };
    let legs = match route.turn {
        Some(t) => vec![
            Leg {
                from: 0.0,
                to: t.at,
            },
            Leg {
                from: t.at + cfg.tol,
                to: route.length,
            },
        ],
        None => vec![Leg {
            from: 0.0,
            to: route.length,
        }],
    };
    let mut spans = Vec::new();
    for (i, leg) in legs.iter().enumerate() {
        sc.spans(i, leg, cfg.step, &mut spans);
    }

    let mut edges = Vec::new();
    let mut edge_of_span = vec![None; spans.len()];
    for (k, sp) in spans.iter().enumerate() {
        let State::Edge(j, _) = sp.state else {
            continue;
        };
        if sp.end <= sp.start {
            continue;
        }
        let (Some(ha), Some(hb)) = (sc.hit(sp.start), sc.hit(sp.end)) else {
            continue;
        };
        let mut ep = EdgeEpisode {
            edge: j,
            leg: sp.leg,
            start: sp.start,
            end: sp.end,
            r_start: ha.distance,
            r_end: hb.distance,
            theta: sc
                .hit(0.5 * (sp.start + sp.end))
                .map_or(ha.theta, |h| h.theta),
            start_vertex: vertex_at(poly, j, ha.point),
            end_vertex: vertex_at(poly, j, hb.point),
        };
        snap_to_vertices(&sc, &mut ep, sp.state);
        edge_of_span[k] = Some(edges.len());
        edges.push(ep);
    }

    let n = poly.edge_count();
    let mut vertices = Vec::new();
    for (k, sp) in spans.iter().enumerate() {
        let (State::Edge(a, _), Some(ea)) = (sp.state, edge_of_span[k]) else {
            continue;
        };
        // Skip over vertex spans, then demand an adjacent edge on the same leg.
        let mut m = k + 1;
        while m < spans.len()
            && matches!(spans[m].state, State::Vertex(_))
            && spans[m].leg == sp.leg
        {
            m += 1;
        }
        let Some(next) = spans.get(m) else { continue };
        let (State::Edge(b, _), Some(eb)) = (next.state, edge_of_span[m]) else {
            continue;
        };
        if next.leg != sp.leg {
            continue;
        }
        let shared = if b == (a + 1) % n {
            b
        } else if a == (b + 1) % n {
            a
        } else {
            continue;
        };
        if spans[k + 1..m]
            .iter()
            .any(|s| s.state != State::Vertex(shared))
        {
            continue;
        }
        vertices.push(VertexEpisode {
            vertex: shared,
            left: ea,
            right: eb,
            s_left: edges[ea].s_d(v),
            s_right: edges[eb].s_d(v),
        });
    }

    RouteTruth {
        spans,
        edges,
        vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn square() -> ConvexPolygon<f64> {
        ConvexPolygon::from_xy(&[(-10.0, -10.0), (10.0, -10.0), (10.0, 10.0), (-10.0, 10.0)])
            .unwrap()
    }

    fn straight(phi: f64, offset: f64) -> VehicleRoute {
        VehicleRoute {
            phi,
            offset,
            center: Point2::new(0.0, 0.0),
            s_start: -200.0,
            length: 400.0,
            turn: None,
        }
    }

    #[test]
    fn perpendicular_pass_sees_whole_bottom_edge() {
        let sensor = SectorSensor::new(100.0, FRAC_PI_2).unwrap();
        let sq = square();
        let t = route_truth(
            &straight(0.0, -30.0),
            &sensor,
            &sq,
            0.1,
            TruthConfig::for_polygon(&sq),
        );
        let whole: Vec<_> = t.whole_edges().collect();
        assert_eq!(whole.len(), 1);
        let e = whole[0];
        assert_eq!(e.edge, 0);
        // Constant reading 20 while passing the 20-long edge.
        assert!((e.l_d(0.1) - 200.0).abs() < 1e-6);
        assert!(e.s_d(0.1).abs() < 1e-9);
        // Vertex 0 leads in, then nothing: no edge-to-edge handover.
        assert_eq!(t.vertices.len(), 0);
    }

    #[test]
    fn vertex_episodes_join_adjacent_edges() {
        use crate::geometry::Region;
        use crate::simulator::{route_rng, sample_route, RouteMode};
        let sensor = SectorSensor::new(100.0, FRAC_PI_2).unwrap();
        let region = Region::disk(Point2::new(0.0, 0.0), 100.0).unwrap();
        let sq = square();
        let mut seen = 0;
        for id in 0..200 {
            let r = sample_route(
                &region,
                &sensor,
                RouteMode::Straight,
                0.1,
                &mut route_rng(1, id),
            );
            let t = route_truth(&r, &sensor, &sq, 0.1, TruthConfig::for_polygon(&sq));
            for ve in &t.vertices {
                seen += 1;
                let (a, b) = (t.edges[ve.left].edge, t.edges[ve.right].edge);
                assert!(ve.vertex == a || ve.vertex == b);
                assert!(t.edges[ve.left].end <= t.edges[ve.right].start);
            }
        }
        assert!(seen > 20, "only {seen} vertex episodes");
    }

    #[test]
    fn narrow_sector_uses_boundary_ray() {
        let sensor = SectorSensor::new(100.0, std::f64::consts::FRAC_PI_6).unwrap();
        let sq = square();
        let t = route_truth(
            &straight(0.0, -30.0),
            &sensor,
            &sq,
            1.0,
            TruthConfig::for_polygon(&sq),
        );
        let e = t
            .whole_edges()
            .next()
            .expect("bottom edge is seen whole through the ray");
        assert_eq!(e.edge, 0);
        assert!((e.theta - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
        // The +30° ray sweeps the 20-long edge at a constant range of 40.
        assert!((e.l_d(1.0) - 20.0).abs() < 1e-6);
        assert!((e.r_start - 40.0).abs() < 1e-6 && (e.r_end - 40.0).abs() < 1e-6);
    }
}
