//! Random routes, discrete-time sensing, and the noise models.

mod fleet;
pub mod io;
mod route;
mod trace;
pub mod truth;

use serde::{Deserialize, Serialize};

use crate::geometry::{GeometryError, Point2, Region, SectorSensor};

pub use fleet::{noise_rng, route_rng, simulate_fleet, simulate_fleet_with_routes, slope_rng};
pub use route::{sample_route, Turn, TurnSide, VehicleRoute};
pub use trace::{simulate_trace, simulate_trace_with_truth, DistanceTrace, Report, StepTruth};

/// Straight routes, or one ±π/2 turn inside Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteMode {
    #[default]
    Straight,
    OneTurn,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FleetConfig {
    pub n_s: usize,
    pub v: f64,
    pub dt: f64,
    pub sensor: SectorSensor<f64>,
    pub region: Region<f64>,
    pub seed: u64,
    #[serde(default)]
    pub mode: RouteMode,
}

impl FleetConfig {
    /// Ω of radius 100, `r_max = 100`, `θ_max = π/2`, `v = 0.1`, `dt = 1`, 1000 sensors.
    pub fn standard(seed: u64) -> Self {
        Self {
            n_s: 1000,
            v: 0.1,
            dt: 1.0,
            sensor: SectorSensor {
                r_max: 100.0,
                theta_max: std::f64::consts::FRAC_PI_2,
            },
            region: Region {
                center: Point2::new(0.0, 0.0),
                radius: 100.0,
            },
            seed,
            mode: RouteMode::Straight,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.v > 0.0 && self.v.is_finite()) {
            return Err(SimError::Invalid("v must be positive"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(SimError::Invalid("dt must be positive"));
        }
        SectorSensor::new(self.sensor.r_max, self.sensor.theta_max)?;
        Region::disk(self.region.center, self.region.radius)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    /// Standard deviation of the slope-angle error ε_s (radians). Applied during analysis.
    pub sigma: f64,
    /// Per-report dropout probability ε_l.
    pub eps_l: f64,
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(SimError::Invalid("sigma must be non-negative"));
        }
        if !(0.0..1.0).contains(&self.eps_l) {
            return Err(SimError::Invalid("eps_l must lie in [0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Invalid(&'static str),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
