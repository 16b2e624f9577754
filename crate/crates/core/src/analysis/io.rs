//! Samples CSV: `sensor_id,kind,l_d,s_d_left,s_d_right`.
//!
//! WHOLE rows carry `l_d` and the slope in `s_d_left`; SLOPE rows only `s_d_left`.
//! EDGEVERTEX rows sign `l_d`: positive when the whole edge is the left slope.

use std::io::{Read, Write};

use super::{EdgeVertexSample, SlopeSample, TraceSamples, VertexSample, WholeEdgeSample};

pub fn write_samples<W: Write>(w: W, samples: &TraceSamples) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["sensor_id", "kind", "l_d", "s_d_left", "s_d_right"])?;
    let f = |x: f64| x.to_string();
    for s in &samples.whole {
        out.write_record([
            s.sensor_id.to_string(),
            "WHOLE".into(),
            f(s.l_d),
            f(s.s_d),
            String::new(),
        ])?;
    }
    for s in &samples.slopes {
        out.write_record([
            s.sensor_id.to_string(),
            "SLOPE".into(),
            String::new(),
            f(s.s_d),
            String::new(),
        ])?;
    }
    for s in &samples.vertices {
        out.write_record([
            s.sensor_id.to_string(),
            "VERTEX".into(),
            String::new(),
            f(s.s_left),
            f(s.s_right),
        ])?;
    }
    for s in &samples.edge_vertices {
        let l = if s.whole_is_left {
            s.whole.l_d
        } else {
            -s.whole.l_d
        };
        out.write_record([
            s.sensor_id.to_string(),
            "EDGEVERTEX".into(),
            f(l),
            f(s.vertex.s_left),
            f(s.vertex.s_right),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum SamplesIoError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
}

/// Reads a samples CSV back. Segment indices are not stored, so read samples carry 0.
pub fn read_samples<R: Read>(r: R) -> Result<TraceSamples, SamplesIoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(r);
    let mut out = TraceSamples::default();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |msg: String| SamplesIoError::Parse { line, msg };
        if rec.len() != 5 {
            return Err(bad("expected sensor_id,kind,l_d,s_d_left,s_d_right".into()));
        }
        let id: usize = rec[0].parse().map_err(|e| bad(format!("sensor_id: {e}")))?;
        let num = |i: usize, name: &str| -> Result<f64, SamplesIoError> {
            let x: f64 = rec[i].parse().map_err(|e| bad(format!("{name}: {e}")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(bad(format!("{name}: not finite")))
            }
        };
        match &rec[1] {
            "WHOLE" => {
                let l_d = num(2, "l_d")?;
                if l_d < 0.0 {
                    return Err(bad("l_d must be non-negative".into()));
                }
                out.whole.push(WholeEdgeSample {
                    sensor_id: id,
                    segment: 0,
                    l_d,
                    s_d: num(3, "s_d_left")?,
                });
            }
            "SLOPE" => out.slopes.push(SlopeSample {
                sensor_id: id,
                segment: 0,
                s_d: num(3, "s_d_left")?,
            }),
            "VERTEX" => out.vertices.push(VertexSample {
                sensor_id: id,
                left: 0,
                right: 0,
                s_left: num(3, "s_d_left")?,
                s_right: num(4, "s_d_right")?,
            }),
            "EDGEVERTEX" => {
                let signed = num(2, "l_d")?;
                let (s_left, s_right) = (num(3, "s_d_left")?, num(4, "s_d_right")?);
                let whole_is_left = signed.is_sign_positive();
                out.edge_vertices.push(EdgeVertexSample {
                    sensor_id: id,
                    whole: WholeEdgeSample {
                        sensor_id: id,
                        segment: 0,
                        l_d: signed.abs(),
                        s_d: if whole_is_left { s_left } else { s_right },
                    },
                    vertex: VertexSample {
                        sensor_id: id,
                        left: 0,
                        right: 0,
                        s_left,
                        s_right,
                    },
                    whole_is_left,
                });
            }
            k => return Err(bad(format!("unknown kind '{k}'"))),
        }
    }
    Ok(out)
}
