//! Edge–vertex incidence from joint whole-edge + vertex samples.

use serde::{Deserialize, Serialize};

use super::candidates::{angles_per_pair, branch_consistent, lengths_per_offset, CandidateFilter};
use super::counts::Multiplicity;
use super::histogram::Histogram;
use crate::scalar::Real;

/// A whole-edge period followed or preceded by the slope of its neighbour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointSample<F> {
    pub l_d: F,
    pub s_left: F,
    pub s_right: F,
    /// The whole edge is the earlier (left) segment of the vertex pair.
    pub whole_is_left: bool,
}

impl<F: Real> JointSample<F> {
    pub fn whole_slope(&self) -> F {
        if self.whole_is_left {
            self.s_left
        } else {
            self.s_right
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairMatrix {
    /// `raw[a][b]`: (fractional) number of joint samples mapped to length `a`, angle `b`.
    pub raw: Vec<Vec<f64>>,
    pub baseline: Vec<Vec<f64>>,
    pub ratio: Vec<Vec<f64>>,
    /// Joint samples that reached at least one cell.
    pub mapped: usize,
    pub unmapped: usize,
}

impl PairMatrix {
    pub fn rows(&self) -> usize {
        self.raw.len()
    }

    pub fn cols(&self) -> usize {
        self.raw.first().map_or(0, |r| r.len())
    }
}

/// Cells `(length cluster, angle cluster)` a joint sample supports under one
/// consistent branch choice for the shared segment.
pub fn consistent_cells<F: Real>(
    s: &JointSample<F>,
    v: F,
    theta_max: F,
    filter: CandidateFilter,
    lengths: &Histogram<F>,
    angles: &Histogram<F>,
) -> Vec<(usize, usize)> {
    let lens = lengths_per_offset(s.l_d, s.whole_slope(), v, theta_max, filter);
    let angs = angles_per_pair(s.s_left, s.s_right, v, theta_max, filter);
    let mut cells = Vec::new();
    for l in &lens {
        let Some(a) = lengths.cluster_of(l.value) else {
            continue;
        };
        for g in &angs {
            if !branch_consistent(l, g, s.whole_is_left) {
                continue;
            }
            if let Some(b) = angles.cluster_of(g.value) {
                if !cells.contains(&(a, b)) {
                    cells.push((a, b));
                }
            }
        }
    }
    cells
}

/// Observed and independence-baseline counts for every adopted (length, angle) pair.
pub fn pair_ratio_matrix<F: Real>(
    samples: &[JointSample<F>],
    v: F,
    theta_max: F,
    filter: CandidateFilter,
    lengths: &Histogram<F>,
    angles: &Histogram<F>,
    len_mult: &[Multiplicity<F>],
    ang_mult: &[Multiplicity<F>],
) -> PairMatrix {
    let na = lengths.clusters.len();
    let nb = angles.clusters.len();
    let mut raw = vec![vec![0.0; nb]; na];
    let mut mapped = 0;
    for s in samples {
        let cells = consistent_cells(s, v, theta_max, filter, lengths, angles);
        if cells.is_empty() {
            continue;
        }
        mapped += 1;
        let w = 1.0 / cells.len() as f64;
        for (a, b) in cells {
            raw[a][b] += w;
        }
    }

    let ea: Vec<f64> = len_mult
        .iter()
        .map(|m| m.expected_total().as_f64())
        .collect();
    let eb: Vec<f64> = ang_mult
        .iter()
        .map(|m| m.expected_total().as_f64())
        .collect();
    let total_raw: f64 = raw.iter().flatten().sum();
    let norm: f64 = ea
        .iter()
        .map(|a| eb.iter().map(|b| a * b).sum::<f64>())
        .sum();
    let mut baseline = vec![vec![0.0; nb]; na];
    let mut ratio = vec![vec![0.0; nb]; na];
    for a in 0..na {
        for b in 0..nb {
            let e = if norm > 0.0 {
                ea[a] * eb[b] * total_raw / norm
            } else {
                0.0
            };
            baseline[a][b] = e;
            ratio[a][b] = if e > 0.0 { raw[a][b] / e } else { 0.0 };
        }
    }
    PairMatrix {
        raw,
        baseline,
        ratio,
        mapped,
        unmapped: samples.len() - mapped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::histogram::{Cluster, Histogram};

    fn single(center: f64) -> Histogram<f64> {
        Histogram {
            lo: 0.0,
            hi: 1000.0,
            n_sub: 1,
            k_sub: 7.0,
            threshold: 0.0,
            counts: vec![1],
            clusters: vec![Cluster {
                center,
                count: 1,
                lo: 0.0,
                hi: 1000.0,
            }],
        }
    }

    #[test]
    fn single_cell_ratio_is_one() {
        let lengths = single(10.0);
        let angles = single(1.0);
        let m = |c: f64| Multiplicity {
            center: c,
            count: 1,
            expected: 3.0,
            n_hat: Some(1.0),
        };
        let samples = vec![
            JointSample {
                l_d: 100.0,
                s_left: -0.05,
                s_right: 0.03,
                whole_is_left: true,
            };
            5
        ];
        let pm = pair_ratio_matrix(
            &samples,
            0.1,
            std::f64::consts::FRAC_PI_2,
            CandidateFilter::Realizable,
            &lengths,
            &angles,
            &[m(10.0)],
            &[m(1.0)],
        );
        assert_eq!(pm.mapped, 5);
        assert!((pm.raw[0][0] - 5.0).abs() < 1e-12);
        assert!((pm.ratio[0][0] - 1.0).abs() < 1e-12);
    }
}
