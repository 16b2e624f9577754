use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{FleetConfig, NoiseConfig, VehicleRoute};
use crate::geometry::{sector_distance, Detection, Direction, Target};

/// One report: `None` is NO_DETECTION. Dropped reports are simply absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub step: u64,
    pub reading: Option<f64>,
}

/// Reports of one sensor, ordered by step. Gaps in `step` are dropouts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceTrace {
    pub sensor_id: usize,
    pub dt: f64,
    pub reports: Vec<Report>,
}

impl DistanceTrace {
    pub fn new(sensor_id: usize, dt: f64) -> Self {
        Self {
            sensor_id,
            dt,
            reports: Vec::new(),
        }
    }

    pub fn time(&self, r: &Report) -> f64 {
        r.step as f64 * self.dt
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn has_detection(&self) -> bool {
        self.reports.iter().any(|r| r.reading.is_some())
    }
}

/// Ground truth of one time step, kept whether or not the report was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTruth {
    pub step: u64,
    pub detection: Detection<f64>,
    pub dropped: bool,
}

/// Samples the route every `dt`, drops reports with probability `eps_l`,
/// and trims to one step either side of the detections.
pub fn simulate_trace<T: Target<f64> + ?Sized, R: Rng + ?Sized>(
    id: usize,
    route: &VehicleRoute,
    cfg: &FleetConfig,
    noise: &NoiseConfig,
    target: &T,
    noise_rng: &mut R,
) -> DistanceTrace {
    simulate_trace_with_truth(id, route, cfg, noise, target, noise_rng).0
}

pub fn simulate_trace_with_truth<T: Target<f64> + ?Sized, R: Rng + ?Sized>(
    id: usize,
    route: &VehicleRoute,
    cfg: &FleetConfig,
    noise: &NoiseConfig,
    target: &T,
    noise_rng: &mut R,
) -> (DistanceTrace, Vec<StepTruth>) {
    let step_len = cfg.v * cfg.dt;
    let n = route.steps(step_len);
    let mut truth = Vec::with_capacity(n);
    for k in 0..n {
        let (pos, heading) = route.pose(k as f64 * step_len);
        let detection = sector_distance(pos, Direction::new(heading), &cfg.sensor, target);
        // Always draw, so the stream does not depend on what was seen.
        let u: f64 = noise_rng.random();
        truth.push(StepTruth {
            step: k as u64,
            detection,
            dropped: u < noise.eps_l,
        });
    }

    let mut trace = DistanceTrace::new(id, cfg.dt);
    let first = truth.iter().position(|s| s.detection.reading().is_some());
    let last = truth.iter().rposition(|s| s.detection.reading().is_some());
    if let (Some(a), Some(b)) = (first, last) {
        let lo = a.saturating_sub(1);
        let hi = (b + 1).min(n - 1);
        trace.reports = truth[lo..=hi]
            .iter()
            .filter(|s| !s.dropped)
            .map(|s| Report {
                step: s.step,
                reading: s.detection.reading(),
            })
            .collect();
    }
    (trace, truth)
}
