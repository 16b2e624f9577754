use rand::Rng;
use serde::{Deserialize, Serialize};

use super::RouteMode;
use crate::geometry::{Point2, Region, SectorSensor};

/// Steps of padding added at both ends of the active window.
const PAD_STEPS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TurnSide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    /// Arc length from the route start to the turn point.
    pub at: f64,
    pub side: TurnSide,
}

/// A directed route line plus the window during which its sensor reports.
///
/// The line is `c + p·n + s·u` with `u = (cos φ, sin φ)`, `n = u` rotated by +π/2
/// and `c` the center of Ω; the sensor starts at `s = s_start`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleRoute {
    pub phi: f64,
    pub offset: f64,
    pub center: Point2<f64>,
    pub s_start: f64,
    /// Total arc length driven.
    pub length: f64,
    pub turn: Option<Turn>,
}

impl VehicleRoute {
    pub fn direction(&self) -> Point2<f64> {
        Point2::unit(self.phi)
    }

    pub fn normal(&self) -> Point2<f64> {
        self.direction().perp()
    }

    /// Point of the (first leg's) line at arc parameter `s`.
    pub fn line_point(&self, s: f64) -> Point2<f64> {
        self.center + self.normal() * self.offset + self.direction() * s
    }

    /// Position and heading after driving `d` from the start.
    pub fn pose(&self, d: f64) -> (Point2<f64>, f64) {
        match self.turn {
            Some(turn) if d > turn.at => {
                let h = self.phi + turn_angle(turn.side);
                let p = self.line_point(self.s_start + turn.at) + Point2::unit(h) * (d - turn.at);
                (p, h)
            }
            _ => (self.line_point(self.s_start + d), self.phi),
        }
    }

    /// Number of reports for step length `v·dt`.
    pub fn steps(&self, step: f64) -> usize {
        (self.length / step).floor() as usize + 1
    }
}

fn turn_angle(side: TurnSide) -> f64 {
    match side {
        TurnSide::Left => std::f64::consts::FRAC_PI_2,
        TurnSide::Right => -std::f64::consts::FRAC_PI_2,
    }
}

/// Draws a directed line uniformly from those whose swath meets Ω.
///
/// `step` is `v·dt`; it sets the padding of the active window.
pub fn sample_route<R: Rng + ?Sized>(
    region: &Region<f64>,
    sensor: &SectorSensor<f64>,
    mode: RouteMode,
    step: f64,
    rng: &mut R,
) -> VehicleRoute {
    let tau = std::f64::consts::TAU;
    let phi = rng.random::<f64>() * tau;
    let reach = region.radius + sensor.half_swath();
    let offset = (rng.random::<f64>() * 2.0 - 1.0) * reach;
    let pad = PAD_STEPS * step;
    // The sensor can only see into Ω while within R + r_max of its center.
    let active = region.radius + sensor.r_max;
    let half = (active * active - offset * offset).max(0.0).sqrt();
    let s_start = -half - pad;
    let mut route = VehicleRoute {
        phi,
        offset,
        center: region.center,
        s_start,
        length: 2.0 * (half + pad),
        turn: None,
    };

    if mode == RouteMode::OneTurn && offset.abs() < region.radius {
        let chord = (region.radius.powi(2) - offset * offset).sqrt();
        let s_turn = (rng.random::<f64>() * 2.0 - 1.0) * chord;
        let side = if rng.random::<bool>() {
            TurnSide::Left
        } else {
            TurnSide::Right
        };
        let at = s_turn - s_start;
        let p = route.line_point(s_turn) - region.center;
        let u = Point2::unit(phi + turn_angle(side));
        let b = p.dot(u);
        let c = p.norm_sq() - active * active;
        let exit = -b + (b * b - c).max(0.0).sqrt();
        route.turn = Some(Turn { at, side });
        route.length = at + exit + pad;
    }
    route
}
