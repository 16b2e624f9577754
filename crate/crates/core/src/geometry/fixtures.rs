use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::polygon::ConvexPolygon;
use super::rounded::RoundedPolygon;
use super::target::{Contact, Target};
use super::GeometryError;
use crate::scalar::Real;

const OFFSET_DIRECTIVE: &str = "offset-radius:";

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("unknown fixture '{0}' (expected triangle, building, car-polygon, car-rounded, car-rounded-true)")]
    Unknown(String),
}

/// Polygon, or polygon with rounded corners.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TargetShape<F> {
    Polygon(ConvexPolygon<F>),
    Rounded(RoundedPolygon<F>),
}

impl<F: Real> TargetShape<F> {
    /// The straight-edged polygon underlying the shape.
    pub fn polygon(&self) -> &ConvexPolygon<F> {
        match self {
            TargetShape::Polygon(p) => p,
            TargetShape::Rounded(r) => r.core(),
        }
    }

    pub fn centroid(&self) -> Point2<F> {
        self.polygon().centroid()
    }

    pub fn translated(&self, by: Point2<F>) -> Self {
        match self {
            TargetShape::Polygon(p) => TargetShape::Polygon(p.translated(by)),
            TargetShape::Rounded(r) => TargetShape::Rounded(r.translated(by)),
        }
    }

    pub fn centered_at(&self, to: Point2<F>) -> Self {
        self.translated(to - self.centroid())
    }
}

impl<F: Real> Target<F> for TargetShape<F> {
    fn contains(&self, p: Point2<F>) -> bool {
        match self {
            TargetShape::Polygon(t) => t.contains(p),
            TargetShape::Rounded(t) => t.contains(p),
        }
    }
    fn closest(&self, p: Point2<F>) -> Contact<F> {
        match self {
            TargetShape::Polygon(t) => t.closest(p),
            TargetShape::Rounded(t) => t.closest(p),
        }
    }
    fn ray_entry(&self, o: Point2<F>, d: Point2<F>) -> Option<Contact<F>> {
        match self {
            TargetShape::Polygon(t) => t.ray_entry(o, d),
            TargetShape::Rounded(t) => t.ray_entry(o, d),
        }
    }
    fn bounding_circle(&self) -> (Point2<F>, F) {
        match self {
            TargetShape::Polygon(t) => t.bounding_circle(),
            TargetShape::Rounded(t) => t.bounding_circle(),
        }
    }
}

/// Parses fixture text: one `x,y` per line, `#` comments, an optional `x,y` header,
/// and an optional `# offset-radius: <r>` directive for rounded corners.
pub fn parse_target<F: Real>(text: &str) -> Result<TargetShape<F>, FixtureError> {
    let mut radius: Option<F> = None;
    let mut body = String::with_capacity(text.len());
    let mut line_map = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix(OFFSET_DIRECTIVE) {
                let r = f64::from_str(v.trim()).map_err(|e| FixtureError::Parse {
                    line: i + 1,
                    msg: format!("bad offset radius: {e}"),
                })?;
                radius = Some(F::lit(r));
            }
            continue;
        }
        if line.is_empty() || line.eq_ignore_ascii_case("x,y") {
            continue;
        }
        body.push_str(line);
        body.push('\n');
        line_map.push(i + 1);
    }

    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let mut pts = Vec::new();
    for (k, rec) in rdr.deserialize::<(f64, f64)>().enumerate() {
        let line = line_map.get(k).copied().unwrap_or(0);
        let (x, y) = rec.map_err(|e| FixtureError::Parse {
            line,
            msg: e.to_string(),
        })?;
        if !x.is_finite() || !y.is_finite() {
            return Err(FixtureError::Parse {
                line,
                msg: "non-finite coordinate".into(),
            });
        }
        pts.push(Point2::new(F::lit(x), F::lit(y)));
    }
    let poly = ConvexPolygon::new(pts)?;
    Ok(match radius {
        Some(r) => TargetShape::Rounded(RoundedPolygon::new(poly, r)?),
        None => TargetShape::Polygon(poly),
    })
}

pub fn load_target<F: Real>(path: &Path) -> Result<TargetShape<F>, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_target(&text)
}

/// Targets shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    Triangle,
    Building,
    CarPolygon,
    /// Rounded car as an inscribed 64-gon.
    CarRounded,
    /// Rounded car with exact circular corners.
    CarRoundedTrue,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [
        Fixture::Triangle,
        Fixture::Building,
        Fixture::CarPolygon,
        Fixture::CarRounded,
        Fixture::CarRoundedTrue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Triangle => "triangle",
            Fixture::Building => "building",
            Fixture::CarPolygon => "car-polygon",
            Fixture::CarRounded => "car-rounded",
            Fixture::CarRoundedTrue => "car-rounded-true",
        }
    }

    pub fn csv(self) -> &'static str {
        match self {
            Fixture::Triangle => include_str!("../../fixtures/triangle.csv"),
            Fixture::Building => include_str!("../../fixtures/building.csv"),
            Fixture::CarPolygon => include_str!("../../fixtures/car-polygon.csv"),
            Fixture::CarRounded => include_str!("../../fixtures/car-rounded.csv"),
            Fixture::CarRoundedTrue => include_str!("../../fixtures/car-rounded-core.csv"),
        }
    }

    pub fn load<F: Real>(self) -> TargetShape<F> {
        parse_target(self.csv()).expect("bundled fixture is valid")
    }
}

impl FromStr for Fixture {
    type Err = FixtureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FixtureError::Unknown(s.to_string()))
    }
}
