use serde::{Deserialize, Serialize};

use super::segment::{Event, Segment, SegmentKind};
use crate::estimator::JointSample;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WholeEdgeSample {
    pub sensor_id: usize,
    pub segment: usize,
    pub l_d: f64,
    pub s_d: f64,
}

/// Slope of a LINEAR segment that is not a whole-edge period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeSample {
    pub sensor_id: usize,
    pub segment: usize,
    pub s_d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexSample {
    pub sensor_id: usize,
    pub left: usize,
    pub right: usize,
    pub s_left: f64,
    pub s_right: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeVertexSample {
    pub sensor_id: usize,
    pub whole: WholeEdgeSample,
    pub vertex: VertexSample,
    pub whole_is_left: bool,
}

impl EdgeVertexSample {
    pub fn joint(&self) -> JointSample<f64> {
        JointSample {
            l_d: self.whole.l_d,
            s_left: self.vertex.s_left,
            s_right: self.vertex.s_right,
            whole_is_left: self.whole_is_left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TraceSamples {
    pub whole: Vec<WholeEdgeSample>,
    pub slopes: Vec<SlopeSample>,
    pub vertices: Vec<VertexSample>,
    pub edge_vertices: Vec<EdgeVertexSample>,
}

impl TraceSamples {
    pub fn extend(&mut self, other: TraceSamples) {
        self.whole.extend(other.whole);
        self.slopes.extend(other.slopes);
        self.vertices.extend(other.vertices);
        self.edge_vertices.extend(other.edge_vertices);
    }
}

fn opens_period(e: Event) -> bool {
    matches!(e, Event::SlopeChange | Event::FromEmpty)
}

fn closes_period(e: Event) -> bool {
    matches!(e, Event::SlopeChange | Event::ToEmpty)
}

pub fn extract_whole_edge_samples(
    sensor_id: usize,
    segments: &[Segment],
) -> (Vec<WholeEdgeSample>, Vec<SlopeSample>) {
    let mut whole = Vec::new();
    let mut slopes = Vec::new();
    for (i, s) in segments.iter().enumerate() {
        let Some(s_d) = s.slope.filter(|_| s.is_linear()) else {
            continue;
        };
        if opens_period(s.start_event) && closes_period(s.end_event) && s.duration() > 0.0 {
            whole.push(WholeEdgeSample {
                sensor_id,
                segment: i,
                l_d: s.duration(),
                s_d,
            });
        } else {
            slopes.push(SlopeSample {
                sensor_id,
                segment: i,
                s_d,
            });
        }
    }
    (whole, slopes)
}

/// Pairs of LINEAR segments adjacent or separated by CURVE only.
///
/// With `across_gaps` a GAP also counts as adjacency, which is how unmerged
/// dropouts turn into pairs of equal slopes.
pub fn extract_vertex_samples(
    sensor_id: usize,
    segments: &[Segment],
    across_gaps: bool,
) -> Vec<VertexSample> {
    let mut out = Vec::new();
    for (i, a) in segments.iter().enumerate() {
        if !a.is_linear() {
            continue;
        }
        let mut j = i + 1;
        while j < segments.len() {
            match segments[j].kind {
                SegmentKind::Curve => j += 1,
                SegmentKind::Gap if across_gaps => j += 1,
                _ => break,
            }
        }
        let Some(b) = segments.get(j) else { continue };
        if !b.is_linear() {
            continue;
        }
        // A gap between two runs only joins them when it touches both directly.
        let between = &segments[i + 1..j];
        if between.iter().any(|s| s.kind == SegmentKind::Gap) && between.len() != 1 {
            continue;
        }
        out.push(VertexSample {
            sensor_id,
            left: i,
            right: j,
            s_left: a.slope.unwrap(),
            s_right: b.slope.unwrap(),
        });
    }
    out
}

pub fn extract_edge_vertex_samples(
    whole: &[WholeEdgeSample],
    vertices: &[VertexSample],
) -> Vec<EdgeVertexSample> {
    let mut out = Vec::new();
    for v in vertices {
        for w in whole {
            let left = w.segment == v.left;
            if left || w.segment == v.right {
                out.push(EdgeVertexSample {
                    sensor_id: v.sensor_id,
                    whole: *w,
                    vertex: *v,
                    whole_is_left: left,
                });
            }
        }
    }
    out
}

pub fn extract_samples(sensor_id: usize, segments: &[Segment], across_gaps: bool) -> TraceSamples {
    let (whole, slopes) = extract_whole_edge_samples(sensor_id, segments);
    let vertices = extract_vertex_samples(sensor_id, segments, across_gaps);
    let edge_vertices = extract_edge_vertex_samples(&whole, &vertices);
    TraceSamples {
        whole,
        slopes,
        vertices,
        edge_vertices,
    }
}
