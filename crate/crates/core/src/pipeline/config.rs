//! The run configuration: one JSON file per scenario.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::estimate::{EstimatorConfig, FleetKnowledge};
use crate::analysis::AnalysisConfig;
use crate::geometry::{
    load_target, Fixture, FixtureError, Point2, Region, SectorSensor, Target, TargetShape,
};
use crate::simulator::io::RunManifest;
use crate::simulator::{FleetConfig, NoiseConfig, RouteMode};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: line {line}, column {column}: {msg}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("field `{field}`: {msg}")]
    Field { field: &'static str, msg: String },
    #[error("target: {0}")]
    Target(#[from] FixtureError),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
}

fn field(field: &'static str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FleetSection {
    pub n_s: usize,
    pub v: f64,
    pub dt: f64,
    pub r_max: f64,
    pub theta_max: f64,
    /// Ω is a disk of this radius; the target's centroid sits at its center.
    pub region_radius: f64,
    pub route_mode: RouteMode,
}

impl Default for FleetSection {
    fn default() -> Self {
        Self {
            n_s: 1000,
            v: 0.1,
            dt: 1.0,
            r_max: 100.0,
            theta_max: std::f64::consts::FRAC_PI_2,
            region_radius: 100.0,
            route_mode: RouteMode::Straight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Falls back to the CLI's environment default, then `./out`.
    pub dir: Option<PathBuf>,
    /// Traces are large; they are written only on request.
    pub write_traces: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub name: String,
    /// Bundled fixture name, or a polygon CSV path relative to the config file.
    pub target: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub fleet: FleetSection,
    #[serde(default)]
    pub noise: NoiseConfig,
    /// `r_max` here is ignored; the fleet's value is used.
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub estimator: EstimatorConfig,
    #[serde(default)]
    pub output: OutputSection,
}

fn default_seed() -> u64 {
    1
}

/// Scenario files shipped with the crate.
pub const PRESETS: [(&str, &str); 7] = [
    (
        "triangle-default",
        include_str!("../../configs/triangle-default.json"),
    ),
    (
        "triangle-200",
        include_str!("../../configs/triangle-200.json"),
    ),
    (
        "triangle-noise",
        include_str!("../../configs/triangle-noise.json"),
    ),
    (
        "triangle-turn",
        include_str!("../../configs/triangle-turn.json"),
    ),
    (
        "building-default",
        include_str!("../../configs/building-default.json"),
    ),
    (
        "car-polygon-10k",
        include_str!("../../configs/car-polygon-10k.json"),
    ),
    (
        "car-rounded-default",
        include_str!("../../configs/car-rounded-default.json"),
    ),
];

impl RunConfig {
    /// Standard fleet conditions around the given target.
    pub fn new(target: impl Into<String>) -> Self {
        Self {
            name: String::new(),
            target: target.into(),
            seed: default_seed(),
            fleet: FleetSection::default(),
            noise: NoiseConfig::default(),
            analysis: AnalysisConfig::default(),
            estimator: EstimatorConfig::default(),
            output: OutputSection::default(),
        }
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Json {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        let (_, text) = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| ConfigError::UnknownPreset(name.to_string()))?;
        Self::from_json(text, name)
    }

    /// A preset name, else a path.
    pub fn preset_or_load(name_or_path: &str) -> Result<(Self, Option<PathBuf>), ConfigError> {
        if PRESETS.iter().any(|(n, _)| *n == name_or_path) {
            return Ok((Self::preset(name_or_path)?, None));
        }
        let path = Path::new(name_or_path);
        let cfg = Self::load(path)?;
        Ok((cfg, path.parent().map(Path::to_path_buf)))
    }

    /// Fleet, noise, seed and target from a manifest; tuning from `tuning` or the defaults.
    pub fn from_manifest(m: &RunManifest, tuning: Option<&RunConfig>) -> Self {
        let mut c = tuning
            .cloned()
            .unwrap_or_else(|| RunConfig::new(m.target.clone()));
        c.target = m.target.clone();
        c.seed = m.fleet.seed;
        c.noise = m.noise;
        c.fleet = FleetSection {
            n_s: m.fleet.n_s,
            v: m.fleet.v,
            dt: m.fleet.dt,
            r_max: m.fleet.sensor.r_max,
            theta_max: m.fleet.sensor.theta_max,
            region_radius: m.fleet.region.radius,
            route_mode: m.fleet.mode,
        };
        c
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn fleet_config(&self) -> FleetConfig {
        let f = &self.fleet;
        FleetConfig {
            n_s: f.n_s,
            v: f.v,
            dt: f.dt,
            sensor: SectorSensor {
                r_max: f.r_max,
                theta_max: f.theta_max,
            },
            region: Region {
                center: Point2::origin(),
                radius: f.region_radius,
            },
            seed: self.seed,
            mode: f.route_mode,
        }
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            r_max: self.fleet.r_max,
            ..self.analysis
        }
    }

    pub fn knowledge(&self) -> FleetKnowledge {
        FleetKnowledge {
            n_s: self.fleet.n_s,
            v: self.fleet.v,
            r_max: self.fleet.r_max,
            theta_max: self.fleet.theta_max,
            region_perimeter: std::f64::consts::TAU * self.fleet.region_radius,
            noisy: self.noise.sigma > 0.0 || self.noise.eps_l > 0.0,
        }
    }

    /// Loads the target and centers it in Ω. `base` resolves relative paths.
    pub fn target_shape(&self, base: Option<&Path>) -> Result<TargetShape<f64>, ConfigError> {
        let shape = match Fixture::from_str(&self.target) {
            Ok(f) => f.load(),
            Err(_) => {
                let p = Path::new(&self.target);
                let p = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.to_path_buf(),
                };
                load_target(&p)?
            }
        };
        Ok(shape.centered_at(Point2::origin()))
    }

    /// Range checks on every field. The target is checked against Ω as well.
    pub fn validate(&self, base: Option<&Path>) -> Result<TargetShape<f64>, ConfigError> {
        let f = &self.fleet;
        if f.n_s == 0 {
            return Err(field("fleet.n_s", "must be at least 1"));
        }
        if !(f.v > 0.0 && f.v.is_finite()) {
            return Err(field("fleet.v", "must be positive"));
        }
        if !(f.dt > 0.0 && f.dt.is_finite()) {
            return Err(field("fleet.dt", "must be positive"));
        }
        SectorSensor::new(f.r_max, f.theta_max)
            .map_err(|e| field("fleet.r_max/theta_max", e.to_string()))?;
        if !(f.region_radius > 0.0 && f.region_radius.is_finite()) {
            return Err(field("fleet.region_radius", "must be positive"));
        }
        if !(self.noise.sigma >= 0.0 && self.noise.sigma.is_finite()) {
            return Err(field("noise.sigma", "must be non-negative"));
        }
        if !(0.0..1.0).contains(&self.noise.eps_l) {
            return Err(field("noise.eps_l", "must lie in [0, 1)"));
        }
        let a = &self.analysis;
        if !(a.tol_slope > 0.0 && a.tol_slope.is_finite()) {
            return Err(field("analysis.tol_slope", "must be positive"));
        }
        if a.min_len < 2 {
            return Err(field("analysis.min_len", "a line needs at least 2 reports"));
        }
        if !(a.curvature_tol >= 0.0 && a.curvature_tol.is_finite()) {
            return Err(field("analysis.curvature_tol", "must be non-negative"));
        }
        let e = &self.estimator;
        if !(e.k_sub >= 1.0 && e.k_sub.is_finite()) {
            return Err(field("estimator.k_sub", "must be at least 1"));
        }
        if !(e.noisy_k_sub_factor >= 1.0 && e.noisy_k_sub_factor.is_finite()) {
            return Err(field("estimator.noisy_k_sub_factor", "must be at least 1"));
        }
        if !(e.assembly.connection_threshold >= 0.0) {
            return Err(field(
                "estimator.assembly.connection_threshold",
                "must be non-negative",
            ));
        }
        let shape = self.target_shape(base)?;
        let (c, r) = shape.bounding_circle();
        if c.norm() + r >= f.region_radius {
            return Err(field(
                "fleet.region_radius",
                "target does not fit inside the region",
            ));
        }
        Ok(shape)
    }
}
