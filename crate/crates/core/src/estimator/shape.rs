//! Chaining edges and vertices into a closed polygon hypothesis.

use serde::{Deserialize, Serialize};

use super::counts::Multiplicity;
use super::pairs::PairMatrix;
use crate::geometry::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AssemblyConfig {
    /// An edge may touch a vertex class only if their pair ratio reaches this.
    pub connection_threshold: f64,
    /// Arrangements whose residual is within this fraction of the perimeter of the
    /// best one count as ties.
    pub tie_tolerance: f64,
    /// Allowed relative deviation of the angle sum from `(n − 2)π`.
    pub angle_sum_tolerance: f64,
    /// Search budget in visited nodes.
    pub max_nodes: usize,
}

impl Default for AssemblyConfig {
    fn default() -> Self {
        Self {
            connection_threshold: 0.3,
            tie_tolerance: 0.02,
            angle_sum_tolerance: 0.15,
            max_nodes: 2_000_000,
        }
    }
}

/// One edge of the hypothesis and the vertex at its head.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeStep {
    pub edge_cluster: usize,
    pub length: f64,
    pub vertex_cluster: usize,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeHypothesis {
    pub steps: Vec<ShapeStep>,
    pub closure_residual: f64,
    pub perimeter: f64,
    pub angle_sum: f64,
    /// Another arrangement, distinct up to rotation and reflection, closes about as well.
    pub ambiguous: bool,
    /// Distinct arrangements consistent with the pair matrix.
    pub arrangements: usize,
    /// Chained vertex positions starting at the origin, first edge along +x.
    pub outline: Vec<[f64; 2]>,
    /// Angle clusters left out because their multiplicity cannot fit in any convex polygon.
    pub excluded_vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ShapeError {
    #[error("no consistent shape: {0}")]
    NoConsistentShape(String),
}

fn closure(steps: &[(usize, usize)], lengths: &[f64], angles: &[f64]) -> (f64, Vec<[f64; 2]>) {
    let mut p = Point2::new(0.0f64, 0.0);
    let mut dir = 0.0f64;
    let mut pts = vec![[0.0, 0.0]];
    for &(e, v) in steps {
        p = p + Point2::unit(dir) * lengths[e];
        pts.push([p.x, p.y]);
        dir += std::f64::consts::PI - angles[v];
    }
    pts.pop();
    (p.norm(), pts)
}

/// Smallest representation of the cycle under rotation and reflection.
fn canonical(steps: &[(usize, usize)]) -> Vec<(usize, usize)> {
    // Reflection walks the cycle backwards; the vertex at the head of an edge
    // becomes the vertex at its tail.
    let n = steps.len();
    let reflected: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let e = steps[n - 1 - i].0;
            let v = steps[(2 * n - 2 - i) % n].1;
            (e, v)
        })
        .collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for seq in [steps, &reflected[..]] {
        for r in 0..n {
            let rot: Vec<(usize, usize)> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

struct Search<'a> {
    lengths: &'a [f64],
    angles: &'a [f64],
    edge_ok: Vec<Vec<bool>>,
    edge_left: Vec<usize>,
    vert_left: Vec<usize>,
    n: usize,
    start_vertex: usize,
    path: Vec<(usize, usize)>,
    found: Vec<(f64, Vec<(usize, usize)>)>,
    nodes: usize,
    max_nodes: usize,
}

impl Search<'_> {
    /// `tail` is the vertex class at the tail of the next edge.
    fn run(&mut self, tail: usize) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return;
        }
        if self.path.len() == self.n {
            return;
        }
        let last = self.path.len() + 1 == self.n;
        for e in 0..self.edge_left.len() {
            if self.edge_left[e] == 0 || !self.edge_ok[e][tail] {
                continue;
            }
            for v in 0..self.vert_left.len() {
                if self.vert_left[v] == 0 || !self.edge_ok[e][v] {
                    continue;
                }
                if last && v != self.start_vertex {
                    continue;
                }
                self.edge_left[e] -= 1;
                self.vert_left[v] -= 1;
                self.path.push((e, v));
                if last {
                    let (res, _) = closure(&self.path, self.lengths, self.angles);
                    self.found.push((res, canonical(&self.path)));
                } else {
                    self.run(v);
                }
                self.path.pop();
                self.edge_left[e] += 1;
                self.vert_left[v] += 1;
            }
        }
    }
}

/// Searches cyclic edge/vertex arrangements allowed by the pair matrix and returns
/// the one with the smallest closure residual.
pub fn assemble_shape(
    len_mult: &[Multiplicity<f64>],
    ang_mult: &[Multiplicity<f64>],
    pairs: &PairMatrix,
    cfg: &AssemblyConfig,
) -> Result<ShapeHypothesis, ShapeError> {
    let lengths: Vec<f64> = len_mult.iter().map(|m| m.center).collect();
    let angles: Vec<f64> = ang_mult.iter().map(|m| m.center).collect();
    let edge_count: Vec<usize> = len_mult.iter().map(|m| m.rounded()).collect();
    let mut vert_count: Vec<usize> = ang_mult.iter().map(|m| m.rounded()).collect();
    // Exterior angles of a convex polygon sum to 2π, so k copies of γ need k(π − γ) ≤ 2π.
    // Near-zero angle clusters have almost no expected samples and blow up N̂.
    let tau = 2.0 * std::f64::consts::PI * (1.0 + cfg.angle_sum_tolerance);
    let mut excluded_vertices = Vec::new();
    for (i, k) in vert_count.iter_mut().enumerate() {
        if *k as f64 * (std::f64::consts::PI - angles[i]) > tau {
            excluded_vertices.push(i);
            *k = 0;
        }
    }
    let n_e: usize = edge_count.iter().sum();
    let n_v: usize = vert_count.iter().sum();
    if n_v < 3 {
        return Err(ShapeError::NoConsistentShape(format!(
            "only {n_v} vertices estimated (excluded angle clusters {excluded_vertices:?})"
        )));
    }
    if n_e != n_v {
        return Err(ShapeError::NoConsistentShape(format!(
            "{n_e} edges but {n_v} vertices estimated"
        )));
    }
    let angle_sum: f64 = vert_count
        .iter()
        .zip(&angles)
        .map(|(&k, &g)| k as f64 * g)
        .sum();
    let target = (n_v as f64 - 2.0) * std::f64::consts::PI;
    if (angle_sum - target).abs() > cfg.angle_sum_tolerance * target {
        return Err(ShapeError::NoConsistentShape(format!(
            "angle sum {angle_sum:.4} is not within {:.0}% of {target:.4}",
            cfg.angle_sum_tolerance * 100.0
        )));
    }

    let edge_ok: Vec<Vec<bool>> = (0..lengths.len())
        .map(|a| {
            (0..angles.len())
                .map(|b| {
                    pairs
                        .ratio
                        .get(a)
                        .and_then(|r| r.get(b))
                        .copied()
                        .unwrap_or(0.0)
                        >= cfg.connection_threshold
                })
                .collect()
        })
        .collect();

    // The cycle starts at a vertex of the first class and must close on that class.
    let start_vertex = vert_count.iter().position(|&k| k > 0).unwrap_or(0);
    let mut search = Search {
        lengths: &lengths,
        angles: &angles,
        edge_ok,
        edge_left: edge_count,
        vert_left: vert_count.clone(),
        n: n_v,
        start_vertex,
        path: Vec::new(),
        found: Vec::new(),
        nodes: 0,
        max_nodes: cfg.max_nodes,
    };
    search.run(start_vertex);
    let mut found = search.found;
    if found.is_empty() {
        return Err(ShapeError::NoConsistentShape(
            "no cyclic arrangement satisfies the connection threshold".into(),
        ));
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    found.dedup_by(|a, b| a.1 == b.1);

    let best = found[0].1.clone();
    let (residual, outline) = closure(&best, &lengths, &angles);
    let perimeter: f64 = best.iter().map(|&(e, _)| lengths[e]).sum();
    let ambiguous = found
        .iter()
        .skip(1)
        .any(|(r, _)| r - residual <= cfg.tie_tolerance * perimeter);
    Ok(ShapeHypothesis {
        steps: best
            .iter()
            .map(|&(e, v)| ShapeStep {
                edge_cluster: e,
                length: lengths[e],
                vertex_cluster: v,
                angle: angles[v],
            })
            .collect(),
        closure_residual: residual,
        perimeter,
        angle_sum,
        ambiguous,
        arrangements: found.len(),
        outline,
        excluded_vertices,
    })
}
