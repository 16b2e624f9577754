use serde::{Deserialize, Serialize};

use super::AnalysisConfig;
use crate::simulator::{DistanceTrace, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SegmentKind {
    Linear,
    Curve,
    Zero,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Event {
    SlopeChange,
    FromEmpty,
    ToEmpty,
    HitRmax,
    HitZero,
    DropoutBoundary,
}

/// Least-squares line `r = a + s·t` over the samples of a segment.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LineFit {
    points: Vec<(f64, f64)>,
}

impl LineFit {
    pub fn from_points(points: Vec<(f64, f64)>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn merge(&mut self, other: &LineFit) {
        self.points.extend_from_slice(&other.points);
    }

    /// `(intercept at t0, slope)` with `t0` the first sample time.
    fn solve(&self) -> (f64, f64, f64) {
        let n = self.points.len() as f64;
        let t0 = self.points[0].0;
        let mt = self.points.iter().map(|p| p.0 - t0).sum::<f64>() / n;
        let mr = self.points.iter().map(|p| p.1).sum::<f64>() / n;
        let (mut stt, mut str_) = (0.0, 0.0);
        for &(t, r) in &self.points {
            let dt = t - t0 - mt;
            stt += dt * dt;
            str_ += dt * (r - mr);
        }
        let s = if stt > 0.0 { str_ / stt } else { 0.0 };
        (t0, mr - s * mt, s)
    }

    pub fn slope(&self) -> f64 {
        self.solve().2
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (t0, a, s) = self.solve();
        a + s * (t - t0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub t_s: f64,
    pub t_e: f64,
    pub kind: SegmentKind,
    /// LINEAR only.
    pub slope: Option<f64>,
    pub start_event: Event,
    pub end_event: Event,
    pub first_step: u64,
    pub last_step: u64,
    pub fit: Option<LineFit>,
}

impl Segment {
    pub fn duration(&self) -> f64 {
        self.t_e - self.t_s
    }

    pub fn is_linear(&self) -> bool {
        self.kind == SegmentKind::Linear
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Segmentation {
    pub segments: Vec<Segment>,
    /// Detection runs with fewer than `min_len` reports, discarded.
    pub too_short: usize,
    /// GAP-separated collinear pairs joined into one LINEAR segment.
    pub merged: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Class {
    Positive,
    Zero,
    Empty,
}

fn class(r: &Report) -> Class {
    match r.reading {
        None => Class::Empty,
        Some(0.0) => Class::Zero,
        Some(_) => Class::Positive,
    }
}

/// Maximal runs of consecutive steps sharing a class; a missing step ends a run.
#[derive(Debug, Clone, Copy)]
struct Block {
    class: Class,
    lo: usize,
    hi: usize,
}

fn blocks(reports: &[Report]) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let c = class(r);
        match out.last_mut() {
            Some(b) if b.class == c && reports[b.hi].step + 1 == r.step => b.hi = i,
            _ => out.push(Block {
                class: c,
                lo: i,
                hi: i,
            }),
        }
    }
    out
}

/// What lies on one side of a detection run.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Empty,
    Zero,
    Dropout,
}

struct Piece {
    lo: usize,
    hi: usize,
    linear: bool,
}

/// Splits one run of positive readings into LINEAR and CURVE pieces.
fn pieces(x: &[f64], dt: f64, cfg: &AnalysisConfig) -> Vec<Piece> {
    let n = x.len();
    let tol = cfg.curvature_tol * dt * dt;
    let mut breaks = vec![0];
    for k in 1..n.saturating_sub(1) {
        if (x[k + 1] - 2.0 * x[k] + x[k - 1]).abs() > tol {
            breaks.push(k);
        }
    }
    breaks.push(n - 1);
    let lines: Vec<(usize, usize)> = breaks
        .windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|&(a, b)| b + 1 - a >= cfg.min_len)
        .collect();

    let mut out = Vec::new();
    let mut next = 0usize;
    for &(a, b) in &lines {
        if a > next {
            out.push(Piece {
                lo: next,
                hi: a - 1,
                linear: false,
            });
        }
        out.push(Piece {
            lo: a,
            hi: b,
            linear: true,
        });
        next = b + 1;
    }
    if next < n {
        out.push(Piece {
            lo: next,
            hi: n - 1,
            linear: false,
        });
    }
    out
}

fn linear_at(fit: &LineFit, t: f64) -> f64 {
    fit.eval(t)
}

pub fn segment_trace(trace: &DistanceTrace, cfg: &AnalysisConfig) -> Segmentation {
    let reports = &trace.reports;
    let dt = trace.dt;
    let time = |i: usize| reports[i].step as f64 * dt;
    let bl = blocks(reports);
    let mut seg = Segmentation::default();

    let side = |nb: Option<usize>, me: usize| -> Side {
        let Some(k) = nb else { return Side::Dropout };
        let (l, h) = if k < me {
            (bl[k], bl[me])
        } else {
            (bl[me], bl[k])
        };
        if reports[l.hi].step + 1 != reports[h.lo].step {
            return Side::Dropout;
        }
        match bl[k].class {
            Class::Empty => Side::Empty,
            Class::Zero => Side::Zero,
            Class::Positive => Side::Dropout,
        }
    };

    for (j, b) in bl.iter().enumerate() {
        let prev = if j > 0 { Some(j - 1) } else { None };
        let next = if j + 1 < bl.len() { Some(j + 1) } else { None };
        if j > 0 && reports[bl[j - 1].hi].step + 1 != reports[b.lo].step {
            let lo_cls = bl[j - 1].class;
            if lo_cls != Class::Empty || b.class != Class::Empty {
                seg.segments.push(Segment {
                    t_s: time(bl[j - 1].hi),
                    t_e: time(b.lo),
                    kind: SegmentKind::Gap,
                    slope: None,
                    start_event: Event::DropoutBoundary,
                    end_event: Event::DropoutBoundary,
                    first_step: reports[bl[j - 1].hi].step + 1,
                    last_step: reports[b.lo].step - 1,
                    fit: None,
                });
            }
        }
        match b.class {
            Class::Empty => {}
            Class::Zero => seg.segments.push(Segment {
                t_s: time(b.lo) - 0.5 * dt,
                t_e: time(b.hi) + 0.5 * dt,
                kind: SegmentKind::Zero,
                slope: None,
                start_event: Event::HitZero,
                end_event: Event::HitZero,
                first_step: reports[b.lo].step,
                last_step: reports[b.hi].step,
                fit: None,
            }),
            Class::Positive => {
                if b.hi + 1 - b.lo < cfg.min_len {
                    seg.too_short += 1;
                    continue;
                }
                let before = side(prev, j);
                let after = side(next, j);
                run_segments(trace, b.lo, b.hi, before, after, cfg, &mut seg.segments);
            }
        }
    }
    if cfg.merge_gaps {
        seg.merged = merge_gaps(&mut seg.segments, cfg.tol_slope);
    }
    seg
}

fn run_segments(
    trace: &DistanceTrace,
    lo: usize,
    hi: usize,
    before: Side,
    after: Side,
    cfg: &AnalysisConfig,
    out: &mut Vec<Segment>,
) {
    let reports = &trace.reports[lo..=hi];
    let dt = trace.dt;
    let t: Vec<f64> = reports.iter().map(|r| r.step as f64 * dt).collect();
    let x: Vec<f64> = reports.iter().map(|r| r.reading.unwrap()).collect();
    let ps = pieces(&x, dt, cfg);
    let fits: Vec<Option<LineFit>> = ps
        .iter()
        .map(|p| {
            p.linear
                .then(|| LineFit::from_points((p.lo..=p.hi).map(|k| (t[k], x[k])).collect()))
        })
        .collect();

    // Reading one step outside the run, extrapolated from its end piece.
    let outside = |i: usize, toward: f64| -> f64 {
        let p = &ps[i];
        let edge = if toward < 0.0 { p.lo } else { p.hi };
        match &fits[i] {
            Some(f) => linear_at(f, t[edge] + toward * dt),
            None => {
                let inner = if toward < 0.0 {
                    (edge + 1).min(x.len() - 1)
                } else {
                    edge.saturating_sub(1)
                };
                2.0 * x[edge] - x[inner]
            }
        }
    };
    let start = match before {
        Side::Empty if outside(0, -1.0) > cfg.r_max => (Event::HitRmax, t[0] - 0.5 * dt),
        Side::Empty => (Event::FromEmpty, t[0] - 0.5 * dt),
        Side::Zero => (Event::HitZero, t[0] - 0.5 * dt),
        Side::Dropout => (Event::DropoutBoundary, t[0]),
    };
    let last = ps.len() - 1;
    let n = t.len();
    let end = match after {
        Side::Empty if outside(last, 1.0) > cfg.r_max => (Event::HitRmax, t[n - 1] + 0.5 * dt),
        Side::Empty => (Event::ToEmpty, t[n - 1] + 0.5 * dt),
        Side::Zero => (Event::HitZero, t[n - 1] + 0.5 * dt),
        Side::Dropout => (Event::DropoutBoundary, t[n - 1]),
    };

    // Boundary time between piece i and i + 1.
    let boundary = |i: usize| -> f64 {
        let (a, b) = (&ps[i], &ps[i + 1]);
        match (&fits[i], &fits[i + 1]) {
            (Some(fa), Some(fb)) => {
                let (sa, sb) = (fa.slope(), fb.slope());
                let fallback = if b.lo == a.hi {
                    t[a.hi]
                } else {
                    0.5 * (t[a.hi] + t[b.lo])
                };
                if sa != sb {
                    let t0 = t[a.hi];
                    let cross = t0 + (fb.eval(t0) - fa.eval(t0)) / (sa - sb);
                    if cross >= t[a.hi.min(b.lo)] - dt && cross <= t[b.lo.max(a.hi)] + dt {
                        return cross;
                    }
                }
                fallback
            }
            _ => 0.5 * (t[a.hi] + t[b.lo]),
        }
    };

    let (mut ev_prev, mut t_prev) = start;
    for (i, p) in ps.iter().enumerate() {
        let (ev_next, t_next) = if i == last {
            end
        } else {
            (Event::SlopeChange, boundary(i))
        };
        out.push(Segment {
            t_s: t_prev,
            t_e: t_next,
            kind: if p.linear {
                SegmentKind::Linear
            } else {
                SegmentKind::Curve
            },
            slope: fits[i].as_ref().map(LineFit::slope),
            start_event: ev_prev,
            end_event: ev_next,
            first_step: reports[p.lo].step,
            last_step: reports[p.hi].step,
            fit: fits[i].clone(),
        });
        t_prev = t_next;
        ev_prev = Event::SlopeChange;
    }
}

/// Joins LINEAR | GAP | LINEAR when both sides lie on one line.
fn merge_gaps(segs: &mut Vec<Segment>, tol_slope: f64) -> usize {
    let mut merged = 0;
    let mut i = 0;
    while i + 2 < segs.len() {
        let ok = {
            let (a, g, b) = (&segs[i], &segs[i + 1], &segs[i + 2]);
            a.is_linear()
                && g.kind == SegmentKind::Gap
                && b.is_linear()
                && a.end_event == Event::DropoutBoundary
                && b.start_event == Event::DropoutBoundary
                && collinear(a, b, g.duration(), tol_slope)
        };
        if ok {
            let b = segs.remove(i + 2);
            segs.remove(i + 1);
            let a = &mut segs[i];
            let fit = a.fit.as_mut().unwrap();
            fit.merge(b.fit.as_ref().unwrap());
            a.slope = Some(fit.slope());
            a.t_e = b.t_e;
            a.end_event = b.end_event;
            a.last_step = b.last_step;
            merged += 1;
        } else {
            i += 1;
        }
    }
    merged
}

fn collinear(a: &Segment, b: &Segment, gap: f64, tol_slope: f64) -> bool {
    let (fa, fb) = (a.fit.as_ref().unwrap(), b.fit.as_ref().unwrap());
    if (fa.slope() - fb.slope()).abs() > tol_slope {
        return false;
    }
    let t = b.t_s;
    (fa.eval(t) - fb.eval(t)).abs() <= tol_slope * gap.max(1e-12)
}
