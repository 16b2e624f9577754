//! simulate → analyze → estimate, and the files a run leaves behind.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{ConfigError, RunConfig};
use super::estimate::{estimate, Estimate, FleetKnowledge};
use crate::analysis::io::write_samples;
use crate::analysis::{analyze_traces, Diagnostics, TraceSamples};
use crate::estimator::Histogram;
use crate::geometry::TargetShape;
use crate::simulator::io::{write_traces, RunManifest, TraceIoError};
use crate::simulator::{simulate_fleet, DistanceTrace, SimError};

pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

pub const MANIFEST_FILE: &str = "manifest.json";
pub const CONFIG_FILE: &str = "config.json";
pub const TRACES_FILE: &str = "traces.csv";
pub const SAMPLES_FILE: &str = "samples.csv";
pub const LENGTH_HIST_FILE: &str = "lengths_hist.csv";
pub const ANGLE_HIST_FILE: &str = "angles_hist.csv";
pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    TraceIo(#[from] TraceIoError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// The report JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub version: String,
    pub name: String,
    pub target: String,
    pub seed: u64,
    pub knowledge: FleetKnowledge,
    /// Absent when samples were read from a file.
    pub diagnostics: Option<Diagnostics>,
    #[serde(flatten)]
    pub estimate: Estimate,
}

impl EstimateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn succeeded(&self) -> bool {
        self.estimate.shape.is_some()
    }
}

pub struct RunOutput {
    pub target: TargetShape<f64>,
    pub traces: Vec<DistanceTrace>,
    pub samples: TraceSamples,
    pub report: EstimateReport,
}

pub fn simulate_stage(
    cfg: &RunConfig,
    target: &TargetShape<f64>,
) -> Result<Vec<DistanceTrace>, RunError> {
    Ok(simulate_fleet(&cfg.fleet_config(), &cfg.noise, target)?)
}

pub fn analyze_stage(cfg: &RunConfig, traces: &[DistanceTrace]) -> (TraceSamples, Diagnostics) {
    analyze_traces(traces, &cfg.analysis_config(), cfg.noise.sigma, cfg.seed)
}

pub fn estimate_stage(
    cfg: &RunConfig,
    samples: &TraceSamples,
    diagnostics: Option<Diagnostics>,
) -> EstimateReport {
    let knowledge = cfg.knowledge();
    EstimateReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        name: cfg.name.clone(),
        target: cfg.target.clone(),
        seed: cfg.seed,
        knowledge,
        diagnostics,
        estimate: estimate(samples, &knowledge, &cfg.estimator),
    }
}

/// Runs every stage in memory. `base` resolves a relative target path.
pub fn run_pipeline(cfg: &RunConfig, base: Option<&Path>) -> Result<RunOutput, RunError> {
    let target = cfg.validate(base)?;
    let traces = simulate_stage(cfg, &target)?;
    let (samples, diag) = analyze_stage(cfg, &traces);
    let report = estimate_stage(cfg, &samples, Some(diag));
    Ok(RunOutput {
        target,
        traces,
        samples,
        report,
    })
}

pub fn write_histogram<W: Write>(w: W, h: &Histogram<f64>) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["bin_lo", "bin_hi", "count"])?;
    for (lo, hi, c) in h.rows() {
        out.write_record([lo.to_string(), hi.to_string(), c.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

fn create(dir: &Path, name: &str) -> Result<(PathBuf, BufWriter<File>), RunError> {
    let p = dir.join(name);
    let f = File::create(&p).map_err(io_err(&p))?;
    Ok((p, BufWriter::new(f)))
}

pub fn write_manifest(
    dir: &Path,
    cfg: &RunConfig,
    traces: &[DistanceTrace],
) -> Result<Vec<PathBuf>, RunError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let manifest = RunManifest::new(cfg.fleet_config(), cfg.noise, cfg.target.clone(), traces);
    let (mp, w) = create(dir, MANIFEST_FILE)?;
    manifest.write(w)?;
    let cp = dir.join(CONFIG_FILE);
    std::fs::write(&cp, cfg.to_json()).map_err(io_err(&cp))?;
    Ok(vec![mp, cp])
}

pub fn write_trace_file(dir: &Path, traces: &[DistanceTrace]) -> Result<PathBuf, RunError> {
    let (p, w) = create(dir, TRACES_FILE)?;
    write_traces(w, traces)?;
    Ok(p)
}

pub fn write_samples_file(dir: &Path, samples: &TraceSamples) -> Result<PathBuf, RunError> {
    let (p, w) = create(dir, SAMPLES_FILE)?;
    write_samples(w, samples)?;
    Ok(p)
}

/// Report JSON plus both histogram CSVs.
pub fn write_report(dir: &Path, report: &EstimateReport) -> Result<Vec<PathBuf>, RunError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let (lp, w) = create(dir, LENGTH_HIST_FILE)?;
    write_histogram(w, &report.estimate.length_histogram)?;
    let (ap, w) = create(dir, ANGLE_HIST_FILE)?;
    write_histogram(w, &report.estimate.angle_histogram)?;
    let rp = dir.join(REPORT_FILE);
    std::fs::write(&rp, report.to_json() + "\n").map_err(io_err(&rp))?;
    Ok(vec![lp, ap, rp])
}

/// Writes every artifact of a finished run into `dir`.
pub fn write_run(dir: &Path, cfg: &RunConfig, out: &RunOutput) -> Result<Vec<PathBuf>, RunError> {
    let mut files = write_manifest(dir, cfg, &out.traces)?;
    if cfg.output.write_traces {
        files.push(write_trace_file(dir, &out.traces)?);
    }
    files.push(write_samples_file(dir, &out.samples)?);
    files.extend(write_report(dir, &out.report)?);
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        let mut c = RunConfig::new("triangle");
        c.fleet.n_s = 150;
        c.seed = 9;
        c
    }

    #[test]
    fn same_seed_same_report() {
        let a = run_pipeline(&small(), None).unwrap().report.to_json();
        let b = run_pipeline(&small(), None).unwrap().report.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn histogram_csv_sums_to_candidates() {
        let out = run_pipeline(&small(), None).unwrap();
        let mut buf = Vec::new();
        write_histogram(&mut buf, &out.report.estimate.length_histogram).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let total: usize = text
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
            .sum();
        assert_eq!(total, out.report.estimate.lengths.candidates);
        assert!(text.starts_with("bin_lo,bin_hi,count\n"));
    }
}
