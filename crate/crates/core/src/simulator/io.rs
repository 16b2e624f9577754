//! Trace CSV (`sensor_id,t,reading`) and its JSON run manifest.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{DistanceTrace, FleetConfig, NoiseConfig, Report};

#[derive(Debug, thiserror::Error)]
pub enum TraceIoError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
}

/// Everything needed to interpret a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub fleet: FleetConfig,
    pub noise: NoiseConfig,
    /// Fixture name or path of the target.
    pub target: String,
    /// Sensors with at least one row in the CSV.
    pub traces_written: usize,
    pub version: String,
}

impl RunManifest {
    pub fn new(
        fleet: FleetConfig,
        noise: NoiseConfig,
        target: impl Into<String>,
        traces: &[DistanceTrace],
    ) -> Self {
        Self {
            fleet,
            noise,
            target: target.into(),
            traces_written: traces.iter().filter(|t| !t.is_empty()).count(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn write<W: Write>(&self, w: W) -> Result<(), TraceIoError> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    pub fn read<R: Read>(r: R) -> Result<Self, TraceIoError> {
        Ok(serde_json::from_reader(r)?)
    }
}

pub fn write_traces<W: Write>(w: W, traces: &[DistanceTrace]) -> Result<(), TraceIoError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["sensor_id", "t", "reading"])?;
    for tr in traces {
        for r in &tr.reports {
            let reading = r.reading.map(|x| x.to_string()).unwrap_or_default();
            out.write_record([tr.sensor_id.to_string(), tr.time(r).to_string(), reading])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads rows back into traces, in sensor order. `dt` maps times to steps.
pub fn read_traces<R: Read>(r: R, dt: f64) -> Result<Vec<DistanceTrace>, TraceIoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(r);
    let mut by_id: BTreeMap<usize, DistanceTrace> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |msg: &str| TraceIoError::Parse {
            line,
            msg: msg.to_string(),
        };
        if rec.len() != 3 {
            return Err(bad("expected sensor_id,t,reading"));
        }
        let id: usize = rec[0].parse().map_err(|_| bad("bad sensor_id"))?;
        let t: f64 = rec[1].parse().map_err(|_| bad("bad t"))?;
        let reading = if rec[2].is_empty() {
            None
        } else {
            let x: f64 = rec[2].parse().map_err(|_| bad("bad reading"))?;
            if !(x >= 0.0 && x.is_finite()) {
                return Err(bad("reading must be finite and non-negative"));
            }
            Some(x)
        };
        let step = (t / dt).round();
        if !(step >= 0.0) || (step * dt - t).abs() > 1e-6 * dt.max(t.abs()) {
            return Err(bad("t is not a multiple of dt"));
        }
        let tr = by_id
            .entry(id)
            .or_insert_with(|| DistanceTrace::new(id, dt));
        if tr.reports.last().is_some_and(|p| p.step >= step as u64) {
            return Err(bad("times must increase within a sensor"));
        }
        tr.reports.push(Report {
            step: step as u64,
            reading,
        });
    }
    Ok(by_id.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let traces = vec![
            DistanceTrace {
                sensor_id: 3,
                dt: 0.5,
                reports: vec![
                    Report {
                        step: 4,
                        reading: None,
                    },
                    Report {
                        step: 5,
                        reading: Some(12.345678901234567),
                    },
                    Report {
                        step: 7,
                        reading: Some(0.0),
                    },
                ],
            },
            DistanceTrace {
                sensor_id: 9,
                dt: 0.5,
                reports: vec![Report {
                    step: 1,
                    reading: Some(1.0 / 3.0),
                }],
            },
        ];
        let mut buf = Vec::new();
        write_traces(&mut buf, &traces).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("sensor_id,t,reading\n3,2,\n"));
        let back = read_traces(&buf[..], 0.5).unwrap();
        assert_eq!(back, traces);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(read_traces("sensor_id,t,reading\n1,0.3,\n".as_bytes(), 1.0).is_err());
        assert!(read_traces("sensor_id,t,reading\n1,1,-2\n".as_bytes(), 1.0).is_err());
        assert!(read_traces("sensor_id,t,reading\n1,2,1\n1,1,1\n".as_bytes(), 1.0).is_err());
    }
}
