//! Sub-interval voting over candidate estimates.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// How many votes a sub-interval needs before it is adopted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Threshold {
    /// Absolute count.
    Fixed { count: f64 },
    /// `max(min, factor · N / n_sub)`: a multiple of the mean occupancy.
    Occupancy { factor: f64, min: f64 },
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::Occupancy {
            factor: DEFAULT_PEAK_FACTOR,
            min: 3.0,
        }
    }
}

pub const DEFAULT_K_SUB: f64 = 5.0;
pub const DEFAULT_PEAK_FACTOR: f64 = 2.0;

impl Threshold {
    pub fn resolve(&self, n: usize, n_sub: usize) -> f64 {
        match *self {
            Threshold::Fixed { count } => count,
            Threshold::Occupancy { factor, min } => {
                (factor * n as f64 / n_sub.max(1) as f64).max(min)
            }
        }
    }
}

/// An adopted peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster<F> {
    /// Mean of the member candidates.
    pub center: F,
    /// `c(x̂)`
    pub count: usize,
    /// Span of the merged sub-intervals.
    pub lo: F,
    pub hi: F,
}

impl<F: Real> Cluster<F> {
    pub fn covers(&self, x: F) -> bool {
        x >= self.lo && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram<F> {
    pub lo: F,
    pub hi: F,
    pub n_sub: usize,
    pub k_sub: f64,
    pub threshold: f64,
    pub counts: Vec<usize>,
    pub clusters: Vec<Cluster<F>>,
}

impl<F: Real> Histogram<F> {
    pub fn width(&self) -> F {
        (self.hi - self.lo) / F::from_usize_lossy(self.n_sub)
    }

    pub fn bin_of(&self, x: F) -> usize {
        bin_index(x, self.lo, self.hi, self.n_sub)
    }

    /// `(bin_lo, bin_hi, count)` rows.
    pub fn rows(&self) -> Vec<(F, F, usize)> {
        let w = self.width();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let a = self.lo + w * F::from_usize_lossy(i);
                let b = if i + 1 == self.n_sub { self.hi } else { a + w };
                (a, b, c)
            })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Index of the cluster whose span holds `x`.
    pub fn cluster_of(&self, x: F) -> Option<usize> {
        self.clusters.iter().position(|c| c.covers(x))
    }
}

fn bin_index<F: Real>(x: F, lo: F, hi: F, n_sub: usize) -> usize {
    if !(hi > lo) {
        return 0;
    }
    let t = ((x - lo) / (hi - lo) * F::from_usize_lossy(n_sub)).floor();
    t.to_usize().unwrap_or(0).min(n_sub - 1)
}

/// Bins `values` into `round(N / k_sub)` equal sub-intervals and adopts runs of
/// bins whose count reaches the threshold.
pub fn cluster_candidates<F: Real>(values: &[F], k_sub: f64, threshold: Threshold) -> Histogram<F> {
    let n = values.len();
    if n == 0 {
        return Histogram {
            lo: F::zero(),
            hi: F::zero(),
            n_sub: 1,
            k_sub,
            threshold: threshold.resolve(0, 1),
            counts: vec![0],
            clusters: Vec::new(),
        };
    }
    let lo = values.iter().copied().fold(F::infinity(), F::min);
    let hi = values.iter().copied().fold(F::neg_infinity(), F::max);
    let n_sub = ((n as f64 / k_sub).round() as usize).max(1);
    let thr = threshold.resolve(n, n_sub);

    let mut counts = vec![0usize; n_sub];
    let mut sums = vec![F::zero(); n_sub];
    for &x in values {
        let b = bin_index(x, lo, hi, n_sub);
        counts[b] += 1;
        sums[b] += x;
    }

    let w = if hi > lo {
        (hi - lo) / F::from_usize_lossy(n_sub)
    } else {
        F::zero()
    };
    let mut clusters = Vec::new();
    let mut i = 0;
    while i < n_sub {
        if (counts[i] as f64) < thr {
            i += 1;
            continue;
        }
        let start = i;
        let mut count = 0;
        let mut sum = F::zero();
        while i < n_sub && (counts[i] as f64) >= thr {
            count += counts[i];
            sum += sums[i];
            i += 1;
        }
        let c_lo = lo + w * F::from_usize_lossy(start);
        let c_hi = if i == n_sub {
            hi
        } else {
            lo + w * F::from_usize_lossy(i)
        };
        clusters.push(Cluster {
            center: sum / F::from_usize_lossy(count),
            count,
            lo: c_lo,
            hi: c_hi,
        });
    }

    Histogram {
        lo,
        hi,
        n_sub,
        k_sub,
        threshold: thr,
        counts,
        clusters,
    }
}
