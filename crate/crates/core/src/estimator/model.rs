use serde::{Deserialize, Serialize};

use super::measure::{measure_vertex, measure_whole_edge};
use crate::scalar::Real;

/// Normalizing measure for the detection probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QdDenominator {
    /// `2(‖Ω‖ + 2π·r_max·sin θ_max)`: all directed lines whose swath meets Ω.
    #[default]
    Swath,
    /// `2(‖Ω‖ + π·r_max·sin θ_max)`.
    HalfSwath,
}

/// Expected detection counts for a given fleet and sensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionModel<F> {
    /// ‖Ω‖
    pub region_perimeter: F,
    pub r_max: F,
    pub theta_max: F,
    pub n_s: usize,
    #[serde(default)]
    pub denominator: QdDenominator,
}

impl<F: Real> DetectionModel<F> {
    pub fn new(region_perimeter: F, r_max: F, theta_max: F, n_s: usize) -> Self {
        Self {
            region_perimeter,
            r_max,
            theta_max,
            n_s,
            denominator: QdDenominator::Swath,
        }
    }

    /// Measure of all route lines in the sampling model.
    pub fn line_measure(&self) -> F {
        let k = match self.denominator {
            QdDenominator::Swath => F::TAU(),
            QdDenominator::HalfSwath => F::PI(),
        };
        F::lit(2.0) * (self.region_perimeter + k * self.r_max * self.theta_max.sin())
    }

    pub fn q_whole_edge(&self, lambda: F) -> F {
        clamp01(measure_whole_edge(lambda, self.r_max, self.theta_max) / self.line_measure())
    }

    pub fn q_vertex(&self, gamma: F) -> F {
        clamp01(measure_vertex(gamma, self.r_max, self.theta_max) / self.line_measure())
    }

    /// `E[n_d(λ)]`
    pub fn expected_whole_edge(&self, lambda: F) -> F {
        F::from_usize_lossy(self.n_s) * self.q_whole_edge(lambda)
    }

    /// `E[n_d(γ)]`
    pub fn expected_vertex(&self, gamma: F) -> F {
        F::from_usize_lossy(self.n_s) * self.q_vertex(gamma)
    }
}

fn clamp01<F: Real>(x: F) -> F {
    x.max(F::zero()).min(F::one())
}
