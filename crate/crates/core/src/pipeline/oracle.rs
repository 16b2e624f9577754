//! Independent checks of the geometric-probability model and the route sampler.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::estimator::measure::{
    measure_vertex, measure_whole_edge, measure_whole_edge_quadrature, vertex_integrand,
};
use crate::estimator::{DetectionModel, QdDenominator};
use crate::geometry::{ConvexPolygon, Point2, Region, SectorSensor};
use crate::simulator::truth::{route_truth, TruthConfig};
use crate::simulator::{route_rng, sample_route, RouteMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    /// Closed-form whole-edge measure against quadrature.
    Measure1,
    /// Vertex-measure quadrature against a dense midpoint rule and the right-sector formula.
    Measure2,
    /// Monte Carlo line sampling against the detection probabilities.
    QdMc,
    /// Kolmogorov–Smirnov on the sampled route directions and offsets.
    RouteUniformity,
}

impl OracleKind {
    pub const ALL: [OracleKind; 4] = [
        OracleKind::Measure1,
        OracleKind::Measure2,
        OracleKind::QdMc,
        OracleKind::RouteUniformity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Measure1 => "measure1",
            OracleKind::Measure2 => "measure2",
            OracleKind::QdMc => "qd-mc",
            OracleKind::RouteUniformity => "route-uniformity",
        }
    }

    fn default_trials(self) -> usize {
        match self {
            OracleKind::Measure1 => 1000,
            OracleKind::Measure2 => 200,
            OracleKind::QdMc => 100_000,
            OracleKind::RouteUniformity => 100_000,
        }
    }
}

impl FromStr for OracleKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OracleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown oracle '{s}' (expected measure1, measure2, qd-mc, route-uniformity)"
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleParams {
    pub seed: u64,
    /// Parameter sets, lines or routes. 0 picks the oracle's default.
    pub trials: usize,
    pub r_max: f64,
    pub theta_max: f64,
    pub region_radius: f64,
    /// Edge lengths for `qd-mc`.
    pub lambdas: Vec<f64>,
    /// Vertex angles for `qd-mc`.
    pub gammas: Vec<f64>,
    pub denominator: QdDenominator,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 0,
            r_max: 100.0,
            theta_max: std::f64::consts::FRAC_PI_2,
            region_radius: 100.0,
            lambdas: vec![10.0, 25.0, 50.0, 80.0],
            gammas: Vec::new(),
            denominator: QdDenominator::Swath,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub label: String,
    pub observed: f64,
    pub expected: f64,
    /// Largest accepted |observed − expected|, or the smallest accepted p-value.
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub kind: OracleKind,
    pub trials: usize,
    pub passed: bool,
    pub checks: Vec<OracleCheck>,
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} ({} trials): {}",
            self.kind.name(),
            self.trials,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<4} {:<34} observed {:<14.8e} expected {:<14.8e} bound {:.3e}",
                if c.passed { "ok" } else { "FAIL" },
                c.label,
                c.observed,
                c.expected,
                c.bound
            )?;
        }
        Ok(())
    }
}

pub fn run_oracle(kind: OracleKind, params: &OracleParams) -> OracleReport {
    let trials = if params.trials == 0 {
        kind.default_trials()
    } else {
        params.trials
    };
    let checks = match kind {
        OracleKind::Measure1 => measure1(params, trials),
        OracleKind::Measure2 => measure2(params, trials),
        OracleKind::QdMc => qd_mc(params, trials),
        OracleKind::RouteUniformity => route_uniformity(params, trials),
    };
    OracleReport {
        kind,
        trials,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn oracle_rng(seed: u64, stream: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn measure1(p: &OracleParams, n: usize) -> Vec<OracleCheck> {
    let mut rng = oracle_rng(p.seed, 0);
    let mut worst = (0.0f64, (0.0, 0.0, 0.0));
    for _ in 0..n {
        let lambda = rng.random_range(0.5..200.0);
        let r = rng.random_range(1.0..200.0);
        let t = rng.random_range(0.05..std::f64::consts::FRAC_PI_2);
        let c = measure_whole_edge(lambda, r, t);
        let q = measure_whole_edge_quadrature(lambda, r, t, 1e-11);
        let rel = (c - q).abs() / c.abs().max(1e-12 * (lambda + r));
        if rel > worst.0 {
            worst = (rel, (lambda, r, t));
        }
    }
    let (l, r, t) = worst.1;
    vec![OracleCheck {
        label: format!("max rel err (worst at {l:.2},{r:.2},{t:.3})"),
        observed: worst.0,
        expected: 0.0,
        bound: 1e-6,
        passed: worst.0 < 1e-6,
    }]
}

/// Plain midpoint rule over the whole support, no knowledge of the kinks.
fn vertex_midpoint(gamma: f64, r: f64, t: f64, cells: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let (xi_j, xi_k) = (0.0f64, pi - gamma);
    let lo = xi_j.max(xi_k) - t;
    let hi = xi_j.min(xi_k) + std::f64::consts::FRAC_PI_2;
    if hi <= lo {
        return 0.0;
    }
    let h = (hi - lo) / cells as f64;
    let s: f64 = (0..cells)
        .map(|i| vertex_integrand(lo + (i as f64 + 0.5) * h, xi_j, xi_k, r, t))
        .sum();
    2.0 * s * h
}

fn measure2(p: &OracleParams, n: usize) -> Vec<OracleCheck> {
    let mut rng = oracle_rng(p.seed, 1);
    let pi = std::f64::consts::PI;
    let mut worst = 0.0f64;
    for _ in 0..n {
        let gamma = rng.random_range(0.05..pi - 0.05);
        let r = rng.random_range(1.0..200.0);
        let t = rng.random_range(0.05..std::f64::consts::FRAC_PI_2);
        let q = measure_vertex(gamma, r, t);
        let m = vertex_midpoint(gamma, r, t, 200_000);
        let rel = (q - m).abs() / q.abs().max(1e-9 * r);
        worst = worst.max(rel);
    }
    // With a full half-plane sector, a vertex of angle γ ≤ π/2 has measure 2r(1 − cos γ).
    let mut hand = 0.0f64;
    for i in 1..=50 {
        let gamma = std::f64::consts::FRAC_PI_2 * i as f64 / 50.0;
        let exact = 2.0 * p.r_max * (1.0 - gamma.cos());
        hand = hand.max(
            (measure_vertex(gamma, p.r_max, std::f64::consts::FRAC_PI_2) - exact).abs() / exact,
        );
    }
    vec![
        OracleCheck {
            label: "max rel err vs midpoint rule".into(),
            observed: worst,
            expected: 0.0,
            bound: 1e-4,
            passed: worst < 1e-4,
        },
        OracleCheck {
            label: "max rel err vs 2r(1-cos g), g<=pi/2".into(),
            observed: hand,
            expected: 0.0,
            bound: 1e-6,
            passed: hand < 1e-6,
        },
    ]
}

/// Equilateral triangle of side `lambda`; edge 0 is the one tested.
fn edge_target(lambda: f64) -> ConvexPolygon<f64> {
    let h = lambda * 3f64.sqrt() / 2.0;
    ConvexPolygon::from_xy(&[(0.0, 0.0), (lambda, 0.0), (lambda / 2.0, h)])
        .expect("valid triangle")
        .centered_at(Point2::origin())
}

/// Isosceles triangle with apex angle `gamma` at vertex 2 and legs of 30.
pub fn vertex_target(gamma: f64) -> ConvexPolygon<f64> {
    let leg = 30.0;
    let half = gamma / 2.0;
    let base = 2.0 * leg * half.sin();
    let h = leg * half.cos();
    ConvexPolygon::from_xy(&[(0.0, 0.0), (base, 0.0), (base / 2.0, h)])
        .expect("valid triangle")
        .centered_at(Point2::origin())
}

/// Fraction of sampled straight lines on which `hit` holds for the route's ground truth.
fn mc_fraction(
    p: &OracleParams,
    poly: &ConvexPolygon<f64>,
    n: usize,
    stream_seed: u64,
    hit: impl Fn(&crate::simulator::truth::RouteTruth) -> bool + Sync,
) -> f64 {
    let sensor = SectorSensor {
        r_max: p.r_max,
        theta_max: p.theta_max,
    };
    let region = Region {
        center: Point2::origin(),
        radius: p.region_radius,
    };
    let tcfg = TruthConfig::for_polygon(poly);
    let (_, bound) = crate::geometry::Target::bounding_circle(poly);
    let reach = bound + sensor.half_swath();
    let hits: usize = (0..n)
        .into_par_iter()
        .filter(|&i| {
            let route = sample_route(
                &region,
                &sensor,
                RouteMode::Straight,
                0.1,
                &mut route_rng(stream_seed, i),
            );
            // A line whose swath misses the target's bounding circle sees nothing.
            if route.offset.abs() > reach {
                return false;
            }
            hit(&route_truth(&route, &sensor, poly, 0.1, tcfg))
        })
        .count();
    hits as f64 / n as f64
}

fn qd_mc(p: &OracleParams, n: usize) -> Vec<OracleCheck> {
    let mut model = DetectionModel::new(
        std::f64::consts::TAU * p.region_radius,
        p.r_max,
        p.theta_max,
        1,
    );
    model.denominator = p.denominator;
    let mut checks = Vec::new();
    for (k, &lambda) in p.lambdas.iter().enumerate() {
        let q = model.q_whole_edge(lambda);
        let poly = edge_target(lambda);
        let f = mc_fraction(p, &poly, n, p.seed.wrapping_add(k as u64), |t| {
            t.whole_edges().any(|e| e.edge == 0)
        });
        let sigma = (q * (1.0 - q) / n as f64).sqrt();
        checks.push(OracleCheck {
            label: format!("q_d(lambda={lambda})"),
            observed: f,
            expected: q,
            bound: 3.0 * sigma,
            passed: (f - q).abs() <= 3.0 * sigma,
        });
    }
    for (k, &gamma) in p.gammas.iter().enumerate() {
        let q = model.q_vertex(gamma);
        let poly = vertex_target(gamma);
        let f = mc_fraction(p, &poly, n, p.seed.wrapping_add(1000 + k as u64), |t| {
            t.vertices.iter().any(|v| v.vertex == 2)
        });
        let sigma = (q * (1.0 - q) / n as f64).sqrt().max(1.0 / n as f64);
        checks.push(OracleCheck {
            label: format!("q_d(gamma={gamma})"),
            observed: f,
            expected: q,
            bound: 3.0 * sigma,
            passed: (f - q).abs() <= 3.0 * sigma,
        });
    }
    checks
}

/// Asymptotic Kolmogorov tail with the usual small-sample correction.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = 2.0 * (-1f64).powi(k - 1) * (-2.0 * kf * kf * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Largest gap between the empirical CDF of `u` and the U(0,1) CDF.
pub fn ks_uniform(mut u: Vec<f64>) -> f64 {
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    u.iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max)
}

fn route_uniformity(p: &OracleParams, n: usize) -> Vec<OracleCheck> {
    let sensor = SectorSensor {
        r_max: p.r_max,
        theta_max: p.theta_max,
    };
    let region = Region {
        center: Point2::origin(),
        radius: p.region_radius,
    };
    let reach = region.radius + sensor.half_swath();
    let (phi, off): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|i| {
            let r = sample_route(
                &region,
                &sensor,
                RouteMode::Straight,
                0.1,
                &mut route_rng(p.seed, i),
            );
            (
                r.phi / std::f64::consts::TAU,
                (r.offset / reach + 1.0) / 2.0,
            )
        })
        .unzip();
    [("phi / 2pi", phi), ("offset, rescaled", off)]
        .into_iter()
        .map(|(label, u)| {
            let d = ks_uniform(u);
            let pv = ks_p_value(d, n);
            OracleCheck {
                label: format!("KS p-value, {label}"),
                observed: pv,
                expected: 1.0,
                bound: 0.01,
                passed: pv > 0.01,
            }
        })
        .collect()
}
