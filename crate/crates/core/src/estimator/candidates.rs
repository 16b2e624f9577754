//! Inversion of slopes and durations into candidate offsets, lengths and angles.

use serde::{Deserialize, Serialize};

use crate::scalar::{angle_0_2pi, angle_pm_pi, Real};

/// Slack on the regime boundaries so exact samples at a boundary keep their branch.
const BAND_EPS: f64 = 1e-9;
/// Candidates closer than this are one candidate.
pub const DEDUP_TOL: f64 = 1e-9;

/// Which detecting-direction regime produced an offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// θ* = ζ: the edge is seen along its normal.
    Perpendicular,
    /// θ* = +θ_max.
    PlusTheta,
    /// θ* = −θ_max.
    MinusTheta,
}

/// One candidate for `ξ − φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Offset<F> {
    /// `ξ − φ` in `(−π, π]`.
    pub value: F,
    pub branch: Branch,
    /// Sign in front of `v` in the forward model. On the perpendicular branch
    /// `s_d = ±v·sin(ξ − φ)`; on the boundary branches the sign inside the arctan.
    /// Only `+1` describes a sensor moving forward.
    pub v_sign: i8,
}

impl<F: Real> Offset<F> {
    /// `ζ = (ξ − φ) + π/2`, wrapped to `(−π, π]`.
    pub fn zeta(&self) -> F {
        angle_pm_pi(self.value + F::FRAC_PI_2())
    }

    fn same_as(&self, o: &Self) -> bool {
        self.branch == o.branch
            && (self.v_sign == o.v_sign || self.branch == Branch::Perpendicular)
            && angle_pm_pi(self.value - o.value).abs() <= F::lit(DEDUP_TOL)
    }
}

/// Which raw offsets survive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateFilter {
    /// Keep an offset when its ζ lies in the regime of its branch.
    Regime,
    /// Additionally require the forward model to give back `s_d` with `+v`.
    #[default]
    Realizable,
}

impl CandidateFilter {
    fn keeps<F: Real>(self, o: &Offset<F>, theta_max: F) -> bool {
        offset_feasible(o, theta_max) && (self == CandidateFilter::Regime || o.v_sign > 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthCandidate<F> {
    pub value: F,
    pub offset: Offset<F>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleCandidate<F> {
    pub value: F,
    /// Offset of the earlier segment.
    pub left: Offset<F>,
    /// Offset of the later segment.
    pub right: Offset<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CandidateError {
    #[error("no branch is feasible for this sample")]
    EmptyCandidateSet,
    #[error("speed must be positive")]
    NonPositiveSpeed,
}

/// Raw `ξ − φ` values before the regime filter, as `(value, branch, v_sign)`.
pub fn raw_offsets<F: Real>(s_d: F, v: F, theta_max: F) -> Vec<Offset<F>> {
    let mut out = Vec::with_capacity(12);
    let pi = F::PI();
    if s_d.abs() <= v {
        let a = (s_d / v).asin();
        for (value, v_sign) in [(a, 1), (pi - a, 1), (-a, -1), (pi + a, -1)] {
            out.push(Offset {
                value: angle_pm_pi(value),
                branch: Branch::Perpendicular,
                v_sign,
            });
        }
    }
    let (st, ct) = theta_max.sin_cos();
    for v_sign in [1i8, -1] {
        let sv = if v_sign > 0 { v } else { -v };
        let a = (s_d * st / (s_d * ct + sv)).atan();
        for (branch, base) in [(Branch::PlusTheta, a), (Branch::MinusTheta, -a)] {
            for shift in [F::zero(), pi] {
                out.push(Offset {
                    value: angle_pm_pi(base + shift),
                    branch,
                    v_sign,
                });
            }
        }
    }
    out
}

/// Whether an offset lies in the ζ regime its branch requires.
pub fn offset_feasible<F: Real>(o: &Offset<F>, theta_max: F) -> bool {
    let eps = F::lit(BAND_EPS);
    let z = o.zeta();
    let h = F::FRAC_PI_2();
    match o.branch {
        Branch::Perpendicular => z >= -theta_max - eps && z <= theta_max + eps,
        Branch::PlusTheta => z > theta_max - eps && z < theta_max + h + eps,
        Branch::MinusTheta => z > -theta_max - h - eps && z < -theta_max + eps,
    }
}

/// Feasible candidates for `ξ − φ` given one slope, regime filter only.
pub fn candidate_offsets<F: Real>(s_d: F, v: F, theta_max: F) -> Vec<Offset<F>> {
    candidate_offsets_with(s_d, v, theta_max, CandidateFilter::Regime)
}

pub fn candidate_offsets_with<F: Real>(
    s_d: F,
    v: F,
    theta_max: F,
    filter: CandidateFilter,
) -> Vec<Offset<F>> {
    let mut out: Vec<Offset<F>> = Vec::new();
    for o in raw_offsets(s_d, v, theta_max) {
        if filter.keeps(&o, theta_max) && !out.iter().any(|p| p.same_as(&o)) {
            out.push(o);
        }
    }
    out
}

/// Edge length implied by one offset candidate and a whole-edge duration.
pub fn length_from_offset<F: Real>(o: &Offset<F>, l_d: F, s_d: F, v: F, theta_max: F) -> F {
    match o.branch {
        Branch::Perpendicular => {
            let q = s_d / v;
            l_d * v * (F::one() - q * q).max(F::zero()).sqrt()
        }
        _ => {
            let (st, ct) = theta_max.sin_cos();
            let sv = if o.v_sign > 0 { v } else { -v };
            l_d * (s_d * st).hypot(s_d * ct + sv)
        }
    }
}

/// Every feasible `λ̂` for one whole-edge sample, one per offset candidate.
///
/// Values that coincide within [`DEDUP_TOL`] are kept once.
pub fn candidate_lengths<F: Real>(
    l_d: F,
    s_d: F,
    v: F,
    theta_max: F,
) -> Result<Vec<LengthCandidate<F>>, CandidateError> {
    candidate_lengths_with(l_d, s_d, v, theta_max, CandidateFilter::Regime)
}

pub fn candidate_lengths_with<F: Real>(
    l_d: F,
    s_d: F,
    v: F,
    theta_max: F,
    filter: CandidateFilter,
) -> Result<Vec<LengthCandidate<F>>, CandidateError> {
    if !(v > F::zero()) {
        return Err(CandidateError::NonPositiveSpeed);
    }
    let mut out: Vec<LengthCandidate<F>> = Vec::new();
    for o in candidate_offsets_with(s_d, v, theta_max, filter) {
        let value = length_from_offset(&o, l_d, s_d, v, theta_max);
        if value > F::zero()
            && !out
                .iter()
                .any(|c| (c.value - value).abs() <= F::lit(DEDUP_TOL))
        {
            out.push(LengthCandidate { value, offset: o });
        }
    }
    if out.is_empty() {
        return Err(CandidateError::EmptyCandidateSet);
    }
    Ok(out)
}

/// Like [`candidate_lengths`] but without merging equal values, so every offset
/// keeps its own length. Used for branch-consistent pairing.
pub fn lengths_per_offset<F: Real>(
    l_d: F,
    s_d: F,
    v: F,
    theta_max: F,
    filter: CandidateFilter,
) -> Vec<LengthCandidate<F>> {
    candidate_offsets_with(s_d, v, theta_max, filter)
        .into_iter()
        .map(|o| LengthCandidate {
            value: length_from_offset(&o, l_d, s_d, v, theta_max),
            offset: o,
        })
        .filter(|c| c.value > F::zero())
        .collect()
}

/// `γ̂ = π − b + a` over all feasible offset pairs, keeping convex detectable angles.
pub fn angles_per_pair<F: Real>(
    s_left: F,
    s_right: F,
    v: F,
    theta_max: F,
    filter: CandidateFilter,
) -> Vec<AngleCandidate<F>> {
    let left = candidate_offsets_with(s_left, v, theta_max, filter);
    let right = candidate_offsets_with(s_right, v, theta_max, filter);
    let min_angle = F::FRAC_PI_2() - theta_max;
    let mut out = Vec::new();
    for a in &left {
        for b in &right {
            let g = angle_0_2pi(F::PI() - b.value + a.value);
            if g > F::zero() && g < F::PI() && g >= min_angle {
                out.push(AngleCandidate {
                    value: g,
                    left: *a,
                    right: *b,
                });
            }
        }
    }
    out
}

/// Every feasible `γ̂` for one vertex sample; coinciding values kept once.
pub fn candidate_angles<F: Real>(
    s_left: F,
    s_right: F,
    v: F,
    theta_max: F,
) -> Vec<AngleCandidate<F>> {
    candidate_angles_with(s_left, s_right, v, theta_max, CandidateFilter::Regime)
}

pub fn candidate_angles_with<F: Real>(
    s_left: F,
    s_right: F,
    v: F,
    theta_max: F,
    filter: CandidateFilter,
) -> Vec<AngleCandidate<F>> {
    let mut out: Vec<AngleCandidate<F>> = Vec::new();
    for c in angles_per_pair(s_left, s_right, v, theta_max, filter) {
        if !out
            .iter()
            .any(|p| (p.value - c.value).abs() <= F::lit(DEDUP_TOL))
        {
            out.push(c);
        }
    }
    out
}

/// True when a length candidate and an angle candidate use the same offset for
/// the segment they share. `shared_is_left` tells which side of the vertex sample
/// is the whole-edge segment.
pub fn branch_consistent<F: Real>(
    len: &LengthCandidate<F>,
    ang: &AngleCandidate<F>,
    shared_is_left: bool,
) -> bool {
    let side = if shared_is_left {
        &ang.left
    } else {
        &ang.right
    };
    len.offset.same_as(side)
}
