//! The `psc-1` interchange format: a JSON document describing gluing data.
//!
//! ```json
//! {
//!   "format": "psc-1",
//!   "faces": [{ "id": "f0", "sides": 4 }],
//!   "gluings": [{ "a": ["f0", 0], "b": ["f0", 2], "reversed": true }]
//! }
//! ```
//!
//! Side indices are zero-based and slot `["f", i]` is the directed side from
//! corner `i` to corner `i + 1` with the face counterclockwise. `reversed`
//! defaults to `true`. Slots not mentioned in any gluing are boundary.
//! Parsing and serialization round-trip: the same faces and the same gluing
//! set come back, with gluings stored smaller-slot-first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, FaceDecl, GluingData, PolygonalComplex, Slot};

#[derive(Debug, Error)]
pub enum PscError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error at {field}: {message}")]
    Schema { field: String, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Serialize, Deserialize)]
struct Document {
    format: String,
    faces: Vec<DocFace>,
    gluings: Vec<DocGluing>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DocFace {
    id: String,
    sides: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct DocGluing {
    a: (String, usize),
    b: (String, usize),
    #[serde(default = "default_reversed", skip_serializing_if = "is_true")]
    reversed: bool,
}

fn default_reversed() -> bool {
    true
}

#[allow(clippy::trivially_copy_pass_by_ref)]
fn is_true(b: &bool) -> bool {
    *b
}

/// Parses a psc-1 document into gluing data. Syntax errors cite line and
/// column; schema errors cite the offending field.
pub fn parse_psc(text: &str) -> Result<GluingData, PscError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| PscError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.format != "psc-1" {
        return Err(PscError::Schema {
            field: "format".to_string(),
            message: format!("expected \"psc-1\", got {:?}", doc.format),
        });
    }
    let mut data = GluingData::new();
    let mut index_of = std::collections::HashMap::new();
    for (i, face) in doc.faces.iter().enumerate() {
        if face.sides < 3 {
            return Err(PscError::Schema {
                field: format!("faces[{i}].sides"),
                message: format!("face {:?} declares {} sides; need at least 3", face.id, face.sides),
            });
        }
        if index_of.insert(face.id.clone(), i).is_some() {
            return Err(PscError::Schema {
                field: format!("faces[{i}].id"),
                message: format!("face id {:?} declared twice", face.id),
            });
        }
        data.add_face(face.id.clone(), face.sides);
    }
    for (i, gluing) in doc.gluings.iter().enumerate() {
        let resolve = |end: &(String, usize), field: &str| -> Result<Slot, PscError> {
            let face = *index_of.get(&end.0).ok_or_else(|| PscError::Schema {
                field: format!("gluings[{i}].{field}"),
                message: format!("unknown face id {:?}", end.0),
            })?;
            let sides = data.faces[face].sides;
            if end.1 >= sides {
                return Err(PscError::Schema {
                    field: format!("gluings[{i}].{field}"),
                    message: format!(
                        "side {} out of range for face {:?} ({} sides)",
                        end.1, end.0, sides
                    ),
                });
            }
            Ok(Slot::new(face, end.1))
        };
        let a = resolve(&gluing.a, "a")?;
        let b = resolve(&gluing.b, "b")?;
        data.add_gluing_with(a, b, gluing.reversed);
    }
    Ok(data)
}

/// Serializes gluing data as a pretty-printed psc-1 document. Output is
/// deterministic: faces in declaration order, gluings smaller-slot-first in
/// insertion order.
pub fn write_psc(data: &GluingData) -> String {
    let doc = Document {
        format: "psc-1".to_string(),
        faces: data
            .faces
            .iter()
            .map(|FaceDecl { name, sides }| DocFace { id: name.clone(), sides: *sides })
            .collect(),
        gluings: data
            .gluings
            .iter()
            .map(|g| DocGluing {
                a: (data.faces[g.a.face].name.clone(), g.a.side),
                b: (data.faces[g.b.face].name.clone(), g.b.side),
                reversed: g.reversed,
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}

pub fn read_complex_file(path: &std::path::Path) -> Result<PolygonalComplex, PscError> {
    let text = std::fs::read_to_string(path)?;
    let data = parse_psc(&text)?;
    Ok(PolygonalComplex::build(&data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_data, GeneratorSpec};

    const SQUARE_TORUS: &str = r#"{
  "format": "psc-1",
  "faces": [{ "id": "f0", "sides": 4 }],
  "gluings": [
    { "a": ["f0", 0], "b": ["f0", 2] },
    { "a": ["f0", 1], "b": ["f0", 3] }
  ]
}"#;

    #[test]
    fn parses_the_square_torus_fixture() {
        let data = parse_psc(SQUARE_TORUS).unwrap();
        assert_eq!(data.faces.len(), 1);
        assert_eq!(data.gluings.len(), 2);
        assert!(data.gluings.iter().all(|g| g.reversed), "reversed defaults to true");
        let c = PolygonalComplex::build(&data).unwrap();
        assert_eq!(c.num_vertices(), 1);
    }

    #[test]
    fn round_trips_generator_output() {
        for spec in [
            GeneratorSpec::SquareTorus,
            GeneratorSpec::Genus2Octagon,
            GeneratorSpec::DoubleNgon(6),
            GeneratorSpec::PqBall { p: 7, q: 3, radius: 2 },
        ] {
            let data = generate_data(spec).unwrap();
            let text = write_psc(&data);
            let back = parse_psc(&text).unwrap();
            assert_eq!(data, back, "{spec}");
            assert_eq!(text, write_psc(&back), "{spec}");
        }
    }

    #[test]
    fn side_out_of_range_is_a_schema_error() {
        let text = r#"{
  "format": "psc-1",
  "faces": [{ "id": "f0", "sides": 4 }],
  "gluings": [{ "a": ["f0", 0], "b": ["f0", 4] }]
}"#;
        match parse_psc(text) {
            Err(PscError::Schema { field, message }) => {
                assert_eq!(field, "gluings[0].b");
                assert!(message.contains("out of range"));
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_face_and_bad_format_are_schema_errors() {
        let text = r#"{
  "format": "psc-1",
  "faces": [{ "id": "f0", "sides": 4 }],
  "gluings": [{ "a": ["nope", 0], "b": ["f0", 1] }]
}"#;
        assert!(matches!(parse_psc(text), Err(PscError::Schema { .. })));
        let text = r#"{ "format": "psc-2", "faces": [], "gluings": [] }"#;
        assert!(matches!(parse_psc(text), Err(PscError::Schema { .. })));
    }

    #[test]
    fn syntax_errors_cite_the_line() {
        let text = "{\n  \"format\": \"psc-1\",\n  oops\n}";
        match parse_psc(text) {
            Err(PscError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_slot_surfaces_as_a_complex_error() {
        let text = r#"{
  "format": "psc-1",
  "faces": [{ "id": "f0", "sides": 4 }],
  "gluings": [
    { "a": ["f0", 0], "b": ["f0", 1] },
    { "a": ["f0", 0], "b": ["f0", 2] }
  ]
}"#;
        let data = parse_psc(text).unwrap();
        assert!(matches!(
            PolygonalComplex::build(&data),
            Err(ComplexError::DuplicateSlot { .. })
        ));
    }
}
