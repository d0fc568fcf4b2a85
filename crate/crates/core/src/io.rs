//! JSON documents for shapes, complexes and nerve listings.
//!
//! Coordinates and other exact quantities travel as decimal strings
//! (`"0.25"`, or `"1/3"` when no terminating decimal exists) so nothing is
//! rounded on the way in or out.

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{Label, Labels, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{Point2, SimplePolygon};
use crate::nerve::ShapeNerveComplex;
use crate::number::{format_rational, parse_rational};
use crate::proximity::{Feature, ProximityConfig};
use crate::triangulation::Sampling;

pub const SCHEMA_VERSION: u32 = 1;

type RawPoint = [String; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    boundary_step: String,
    interior_spacing: String,
    margin: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShape {
    schema_version: u32,
    outer: Vec<RawPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    holes: Vec<Vec<RawPoint>>,
    sampling: RawSampling,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    features: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quantum: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabels {
    vertices: Vec<Label>,
    triangles: Vec<Label>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    schema_version: u32,
    vertices: Vec<RawPoint>,
    triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<RawLabels>,
}

/// A validated shape with its sampling and description settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeDocument {
    pub shape: SimplePolygon,
    pub sampling: Sampling,
    pub features: Vec<Feature>,
    /// Description quantum; `None` means derive it from the complex.
    pub quantum: Option<BigRational>,
}

impl ShapeDocument {
    pub fn proximity_config(&self, host: &SimplicialComplex) -> Result<ProximityConfig> {
        match &self.quantum {
            Some(q) => ProximityConfig::new(self.features.clone(), q.clone()),
            None => {
                let q = ProximityConfig::area_default(host).quantum().clone();
                ProximityConfig::new(self.features.clone(), q)
            }
        }
    }
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let context = if path == "." || path.is_empty() {
            format!("line {} column {}", inner.line(), inner.column())
        } else {
            format!("{path} (line {} column {})", inner.line(), inner.column())
        };
        Error::Schema {
            context,
            message: inner.to_string(),
        }
    })
}

fn check_version(version: u32) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Schema {
            context: "schema_version".into(),
            message: format!("unsupported schema version {version}, expected {SCHEMA_VERSION}"),
        });
    }
    Ok(())
}

fn number(value: &str, context: impl FnOnce() -> String) -> Result<BigRational> {
    parse_rational(value).ok_or_else(|| Error::NumberParse {
        value: value.to_string(),
        context: context(),
    })
}

fn ring(raw: &[RawPoint], name: &str) -> Result<Vec<Point2>> {
    raw.iter()
        .enumerate()
        .map(|(i, [x, y])| {
            Ok(Point2::new(
                number(x, || format!("{name}[{i}][0]"))?,
                number(y, || format!("{name}[{i}][1]"))?,
            ))
        })
        .collect()
}

fn raw_point(p: &Point2) -> RawPoint {
    [format_rational(&p.x), format_rational(&p.y)]
}

pub fn parse_shape(text: &str) -> Result<ShapeDocument> {
    let raw: RawShape = from_json(text)?;
    check_version(raw.schema_version)?;
    let outer = ring(&raw.outer, "outer")?;
    let holes = raw
        .holes
        .iter()
        .enumerate()
        .map(|(h, r)| ring(r, &format!("holes[{h}]")))
        .collect::<Result<Vec<_>>>()?;
    let sampling = Sampling {
        boundary_step: number(&raw.sampling.boundary_step, || "sampling.boundary_step".into())?,
        interior_spacing: number(&raw.sampling.interior_spacing, || "sampling.interior_spacing".into())?,
        margin: number(&raw.sampling.margin, || "sampling.margin".into())?,
    };
    let features = match &raw.features {
        None => vec![Feature::Area],
        Some(names) => names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                Feature::parse(n).ok_or_else(|| Error::Schema {
                    context: format!("features[{i}]"),
                    message: format!("unknown feature {n:?}"),
                })
            })
            .collect::<Result<_>>()?,
    };
    let quantum = raw
        .quantum
        .as_deref()
        .map(|q| number(q, || "quantum".into()))
        .transpose()?;
    let shape = SimplePolygon::new(outer, holes)?;
    Ok(ShapeDocument {
        shape,
        sampling,
        features,
        quantum,
    })
}

pub fn write_shape(doc: &ShapeDocument) -> String {
    let raw = RawShape {
        schema_version: SCHEMA_VERSION,
        outer: doc.shape.outer().iter().map(raw_point).collect(),
        holes: doc
            .shape
            .holes()
            .iter()
            .map(|h| h.iter().map(raw_point).collect())
            .collect(),
        sampling: RawSampling {
            boundary_step: format_rational(&doc.sampling.boundary_step),
            interior_spacing: format_rational(&doc.sampling.interior_spacing),
            margin: format_rational(&doc.sampling.margin),
        },
        features: Some(doc.features.iter().map(|f| f.name().to_string()).collect()),
        quantum: doc.quantum.as_ref().map(format_rational),
    };
    to_pretty(&raw)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let raw: RawComplex = from_json(text)?;
    check_version(raw.schema_version)?;
    let vertices = ring(&raw.vertices, "vertices")?;
    let complex = SimplicialComplex::new(vertices, raw.triangles)?;
    match raw.labels {
        None => Ok(complex),
        Some(l) => complex.with_labels(Labels {
            vertices: l.vertices,
            triangles: l.triangles,
        }),
    }
}

pub fn write_complex(complex: &SimplicialComplex) -> String {
    let raw = RawComplex {
        schema_version: SCHEMA_VERSION,
        vertices: complex.vertices().iter().map(raw_point).collect(),
        triangles: complex.triangles().to_vec(),
        labels: complex.labels().map(|l| RawLabels {
            vertices: l.vertices.clone(),
            triangles: l.triangles.clone(),
        }),
    };
    to_pretty(&raw)
}

#[derive(Serialize)]
struct RawNerve {
    nucleus: usize,
    nucleus_interior: bool,
    triangles: Vec<usize>,
}

#[derive(Serialize)]
struct RawNerves {
    schema_version: u32,
    nerves: Vec<RawNerve>,
    overlap: Vec<(usize, usize)>,
    components: usize,
    common_triangles: Vec<usize>,
}

/// Lists every shape-vertex star and the overlap graph between them.
pub fn write_nerves(snc: &ShapeNerveComplex<'_>) -> String {
    let raw = RawNerves {
        schema_version: SCHEMA_VERSION,
        nerves: snc
            .nerves
            .iter()
            .map(|n| RawNerve {
                nucleus: n.nucleus(),
                nucleus_interior: n.nucleus_is_interior(),
                triangles: n.triangle_ids().iter().copied().collect(),
            })
            .collect(),
        overlap: snc.overlap_edges(),
        components: snc.report.components,
        common_triangles: snc.report.common_triangles.iter().copied().collect(),
    };
    to_pretty(&raw)
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

/// One-line JSON rendering of an error for tooling.
pub fn error_line(err: &Error) -> String {
    serde_json::json!({ "error": err.code(), "message": err.to_string() }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::number::rational;

    const SQUARE: &str = r#"{
        "schema_version": 1,
        "outer": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
        "sampling": {"boundary_step": "1", "interior_spacing": "0.5", "margin": "0"},
        "features": ["area", "perimeter"],
        "quantum": "0.001"
    }"#;

    #[test]
    fn unit_square_document() {
        let doc = parse_shape(SQUARE).unwrap();
        assert_eq!(doc.shape.outer().len(), 4);
        assert_eq!(doc.sampling.interior_spacing, rational(1, 2));
        assert_eq!(doc.features, vec![Feature::Area, Feature::Perimeter]);
        assert_eq!(doc.quantum, Some(rational(1, 1000)));
        assert_eq!(parse_shape(&write_shape(&doc)).unwrap(), doc);
    }

    #[test]
    fn bowtie_names_crossing_edges() {
        let text = SQUARE.replace(
            r#"[["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]"#,
            r#"[["0", "0"], ["1", "1"], ["1", "0"], ["0", "1"]]"#,
        );
        let err = parse_shape(&text).unwrap_err();
        assert_eq!(err.code(), "POLYGON_INVALID");
        assert!(err.to_string().contains("edges 0 and 2"), "{err}");
    }

    #[test]
    fn missing_outer_is_schema_error() {
        let text =
            r#"{"schema_version": 1, "sampling": {"boundary_step": "1", "interior_spacing": "1", "margin": "0"}}"#;
        let err = parse_shape(text).unwrap_err();
        assert_eq!(err.code(), "SCHEMA_ERROR");
        assert!(err.to_string().contains("outer"), "{err}");
    }

    #[test]
    fn bad_number_reports_field() {
        let text = SQUARE.replace(r#"["1", "0"]"#, r#"["1.x", "0"]"#);
        let err = parse_shape(&text).unwrap_err();
        assert_eq!(err.code(), "NUMBER_PARSE_ERROR");
        assert!(err.to_string().contains("outer[1][0]"), "{err}");
    }

    #[test]
    fn wrong_version_and_malformed_json() {
        let text = SQUARE.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert_eq!(parse_shape(&text).unwrap_err().code(), "SCHEMA_ERROR");
        let err = parse_shape("{\n  \"outer\": [").unwrap_err();
        assert_eq!(err.code(), "SCHEMA_ERROR");
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn complex_round_trip() {
        for sc in [
            fixtures::square_shape_complex(),
            fixtures::hexagon_shape_complex(),
            fixtures::annulus_shape_complex(),
        ] {
            let text = write_complex(sc.complex());
            let back = parse_complex(&text).unwrap();
            assert_eq!(&back, sc.complex());
            assert_eq!(write_complex(&back), text);
        }
    }

    #[test]
    fn rational_coordinates_survive() {
        let pts = vec![Point2::int(0, 0), Point2::ratio(1, 0, 3), Point2::ratio(0, 1, 7)];
        let k = SimplicialComplex::new(pts, vec![[0, 1, 2]]).unwrap();
        let text = write_complex(&k);
        assert!(text.contains("\"1/3\""));
        assert_eq!(parse_complex(&text).unwrap(), k);
    }

    #[test]
    fn complex_validation_errors() {
        let cw = r#"{"schema_version": 1, "vertices": [["0","0"],["1","0"],["0","1"]], "triangles": [[0,2,1]]}"#;
        assert_eq!(parse_complex(cw).unwrap_err().code(), "COMPLEX_INVALID");
        let label = r#"{"schema_version": 1, "vertices": [["0","0"],["1","0"],["0","1"]], "triangles": [[0,1,2]],
            "labels": {"vertices": ["INSIDE","EXTERIOR","EXTERIOR"], "triangles": ["EXTERIOR"]}}"#;
        let err = parse_complex(label).unwrap_err();
        assert_eq!(err.code(), "SCHEMA_ERROR");
        assert!(err.to_string().contains("labels.vertices[0]"), "{err}");
    }

    #[test]
    fn error_line_is_json() {
        let line = error_line(&Error::EmptyCover);
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["error"], "EMPTY_COVER");
    }
}
