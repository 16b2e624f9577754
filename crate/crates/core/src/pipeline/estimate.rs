use serde::{Deserialize, Serialize};

use crate::analysis::TraceSamples;
use crate::estimator::histogram::DEFAULT_K_SUB;
use crate::estimator::{
    assemble_shape, candidate_angles_with, candidate_lengths_with, cluster_candidates,
    estimate_counts, pair_ratio_matrix, AssemblyConfig, CandidateFilter, DetectionModel, Histogram,
    JointSample, Multiplicity, PairMatrix, QdDenominator, ShapeHypothesis, Threshold,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatorConfig {
    /// Candidates per sub-interval on average.
    pub k_sub: f64,
    pub filter: CandidateFilter,
    /// Multiplies `k_sub` when the run has noise (fewer, wider sub-intervals).
    pub noisy_k_sub_factor: f64,
    pub length_threshold: Threshold,
    pub angle_threshold: Threshold,
    pub denominator: QdDenominator,
    pub assembly: AssemblyConfig,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            k_sub: DEFAULT_K_SUB,
            filter: CandidateFilter::Realizable,
            noisy_k_sub_factor: 4.0,
            length_threshold: Threshold::default(),
            angle_threshold: Threshold::default(),
            denominator: QdDenominator::Swath,
            assembly: AssemblyConfig::default(),
        }
    }
}

/// What the estimator is told about the fleet. Never the routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FleetKnowledge {
    pub n_s: usize,
    pub v: f64,
    pub r_max: f64,
    pub theta_max: f64,
    pub region_perimeter: f64,
    pub noisy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub center: f64,
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
    pub expected: f64,
    /// `null` when the model says the value is undetectable.
    pub n_hat: Option<f64>,
    pub rounded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityReport {
    /// Samples the candidates came from (`n_x`).
    pub samples: usize,
    /// Samples whose candidate set came out empty.
    pub empty_sets: usize,
    pub candidates: usize,
    pub lo: f64,
    pub hi: f64,
    pub n_sub: usize,
    pub k_sub: f64,
    pub threshold: f64,
    pub clusters: Vec<ClusterReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub lengths: QuantityReport,
    pub angles: QuantityReport,
    pub pair_matrix: PairMatrix,
    pub shape: Option<ShapeHypothesis>,
    pub shape_error: Option<String>,
    #[serde(skip)]
    pub length_histogram: Histogram<f64>,
    #[serde(skip)]
    pub angle_histogram: Histogram<f64>,
    #[serde(skip)]
    pub length_multiplicities: Vec<Multiplicity<f64>>,
    #[serde(skip)]
    pub angle_multiplicities: Vec<Multiplicity<f64>>,
}

fn quantity(
    samples: usize,
    empty_sets: usize,
    h: &Histogram<f64>,
    m: &[Multiplicity<f64>],
) -> QuantityReport {
    QuantityReport {
        samples,
        empty_sets,
        candidates: h.total(),
        lo: h.lo,
        hi: h.hi,
        n_sub: h.n_sub,
        k_sub: h.k_sub,
        threshold: h.threshold,
        clusters: h
            .clusters
            .iter()
            .zip(m)
            .map(|(c, m)| ClusterReport {
                center: c.center,
                count: c.count,
                lo: c.lo,
                hi: c.hi,
                expected: m.expected,
                n_hat: m.n_hat,
                rounded: m.rounded(),
            })
            .collect(),
    }
}

/// Candidates → clusters → multiplicities → pair matrix → shape.
pub fn estimate(samples: &TraceSamples, fleet: &FleetKnowledge, cfg: &EstimatorConfig) -> Estimate {
    let (v, th) = (fleet.v, fleet.theta_max);
    let k_sub = if fleet.noisy {
        cfg.k_sub * cfg.noisy_k_sub_factor
    } else {
        cfg.k_sub
    };

    let mut len_values = Vec::new();
    let mut len_empty = 0;
    for w in &samples.whole {
        match candidate_lengths_with(w.l_d, w.s_d, v, th, cfg.filter) {
            Ok(c) => len_values.extend(c.iter().map(|c| c.value)),
            Err(_) => len_empty += 1,
        }
    }
    let mut ang_values = Vec::new();
    let mut ang_empty = 0;
    for s in &samples.vertices {
        let c = candidate_angles_with(s.s_left, s.s_right, v, th, cfg.filter);
        if c.is_empty() {
            ang_empty += 1;
        }
        ang_values.extend(c.iter().map(|c| c.value));
    }

    let lh = cluster_candidates(&len_values, k_sub, cfg.length_threshold);
    let ah = cluster_candidates(&ang_values, k_sub, cfg.angle_threshold);
    let mut model = DetectionModel::new(fleet.region_perimeter, fleet.r_max, th, fleet.n_s);
    model.denominator = cfg.denominator;
    let lm = estimate_counts(samples.whole.len(), &lh.clusters, |x| {
        model.expected_whole_edge(x)
    });
    let am = estimate_counts(samples.vertices.len(), &ah.clusters, |x| {
        model.expected_vertex(x)
    });

    let joint: Vec<JointSample<f64>> = samples.edge_vertices.iter().map(|s| s.joint()).collect();
    let pairs = pair_ratio_matrix(&joint, v, th, cfg.filter, &lh, &ah, &lm, &am);
    let (shape, shape_error) = match assemble_shape(&lm, &am, &pairs, &cfg.assembly) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };

    Estimate {
        lengths: quantity(samples.whole.len(), len_empty, &lh, &lm),
        angles: quantity(samples.vertices.len(), ang_empty, &ah, &am),
        pair_matrix: pairs,
        shape,
        shape_error,
        length_histogram: lh,
        angle_histogram: ah,
        length_multiplicities: lm,
        angle_multiplicities: am,
    }
}
