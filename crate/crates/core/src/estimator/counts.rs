use serde::{Deserialize, Serialize};

use super::histogram::Cluster;
use crate::scalar::Real;

/// Estimated multiplicity of one adopted cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multiplicity<F> {
    pub center: F,
    pub count: usize,
    /// `E[n_d(x̂)]`
    pub expected: F,
    /// `N̂(x̂)`; `None` when the model predicts no detections (undetectable).
    pub n_hat: Option<F>,
}

impl<F: Real> Multiplicity<F> {
    /// `E[N_d(x̂)] = N̂·E[n_d(x̂)]`, which is the share of the `n_x` samples voting for `x̂`.
    pub fn expected_total(&self) -> F {
        self.n_hat.map_or(F::zero(), |n| n * self.expected)
    }

    pub fn rounded(&self) -> usize {
        self.n_hat.and_then(|n| n.round().to_usize()).unwrap_or(0)
    }
}

/// `N̂(x̂) = n_x·c(x̂) / (E[n_d(x̂)]·Σ c)` for every cluster.
pub fn estimate_counts<F: Real>(
    n_x: usize,
    clusters: &[Cluster<F>],
    expected: impl Fn(F) -> F,
) -> Vec<Multiplicity<F>> {
    let total: usize = clusters.iter().map(|c| c.count).sum();
    clusters
        .iter()
        .map(|c| {
            let e = expected(c.center);
            let n_hat = if e > F::zero() && total > 0 {
                Some(
                    F::from_usize_lossy(n_x) * F::from_usize_lossy(c.count)
                        / (e * F::from_usize_lossy(total)),
                )
            } else {
                None
            };
            Multiplicity {
                center: c.center,
                count: c.count,
                expected: e,
                n_hat,
            }
        })
        .collect()
}
