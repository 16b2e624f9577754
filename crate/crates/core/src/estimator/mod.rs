//! Candidate generation, voting, multiplicities, pairing and shape assembly.

pub mod candidates;
pub mod counts;
pub mod histogram;
pub mod measure;
pub mod model;
pub mod pairs;
pub mod shape;

pub use candidates::{
    candidate_angles, candidate_angles_with, candidate_lengths, candidate_lengths_with,
    candidate_offsets, candidate_offsets_with, AngleCandidate, Branch, CandidateError,
    CandidateFilter, LengthCandidate, Offset,
};
pub use counts::{estimate_counts, Multiplicity};
pub use histogram::{cluster_candidates, Cluster, Histogram, Threshold};
pub use measure::{measure_vertex, measure_whole_edge, measure_whole_edge_quadrature};
pub use model::{DetectionModel, QdDenominator};
pub use pairs::{pair_ratio_matrix, JointSample, PairMatrix};
pub use shape::{assemble_shape, AssemblyConfig, ShapeError, ShapeHypothesis, ShapeStep};
