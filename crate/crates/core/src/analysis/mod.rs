//! Turns distance traces into whole-edge, slope, vertex and edge+vertex samples.

pub mod io;
mod noise;
mod samples;
mod segment;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::simulator::{slope_rng, DistanceTrace};

pub use noise::{apply_slope_noise, perturb_slope};
pub use samples::{
    extract_edge_vertex_samples, extract_samples, extract_vertex_samples,
    extract_whole_edge_samples, EdgeVertexSample, SlopeSample, TraceSamples, VertexSample,
    WholeEdgeSample,
};
pub use segment::{segment_trace, Event, LineFit, Segment, SegmentKind, Segmentation};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Largest slope difference still called collinear across a gap (length/time).
    pub tol_slope: f64,
    /// Fewest reports in a LINEAR segment, and in any detection run.
    pub min_len: usize,
    /// Largest |second difference|/dt² still called straight (length/time²).
    pub curvature_tol: f64,
    /// Join GAP-separated collinear segments. Off, gaps pair up as vertices.
    pub merge_gaps: bool,
    pub r_max: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            tol_slope: 1e-3,
            min_len: 3,
            curvature_tol: 1e-10,
            merge_gaps: true,
            r_max: 100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub traces: usize,
    pub traces_with_detection: usize,
    pub segments: usize,
    pub linear_segments: usize,
    pub too_short: usize,
    pub merged_gaps: usize,
}

impl Diagnostics {
    fn add(&mut self, o: &Diagnostics) {
        self.traces += o.traces;
        self.traces_with_detection += o.traces_with_detection;
        self.segments += o.segments;
        self.linear_segments += o.linear_segments;
        self.too_short += o.too_short;
        self.merged_gaps += o.merged_gaps;
    }
}

/// Segments one trace, perturbs its slopes by `sigma`, and extracts samples.
pub fn analyze_trace(
    trace: &DistanceTrace,
    cfg: &AnalysisConfig,
    sigma: f64,
    seed: u64,
) -> (TraceSamples, Diagnostics) {
    let mut seg = segment_trace(trace, cfg);
    apply_slope_noise(
        &mut seg.segments,
        sigma,
        &mut slope_rng(seed, trace.sensor_id),
    );
    let samples = extract_samples(trace.sensor_id, &seg.segments, !cfg.merge_gaps);
    let diag = Diagnostics {
        traces: 1,
        traces_with_detection: trace.has_detection() as usize,
        segments: seg.segments.len(),
        linear_segments: seg.segments.iter().filter(|s| s.is_linear()).count(),
        too_short: seg.too_short,
        merged_gaps: seg.merged,
    };
    (samples, diag)
}

pub fn analyze_traces(
    traces: &[DistanceTrace],
    cfg: &AnalysisConfig,
    sigma: f64,
    seed: u64,
) -> (TraceSamples, Diagnostics) {
    let parts: Vec<_> = traces
        .par_iter()
        .map(|t| analyze_trace(t, cfg, sigma, seed))
        .collect();
    let mut samples = TraceSamples::default();
    let mut diag = Diagnostics::default();
    for (s, d) in parts {
        samples.extend(s);
        diag.add(&d);
    }
    (samples, diag)
}
