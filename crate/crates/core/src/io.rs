//! JSON forms of bodies and width witnesses.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::body::{make_polytope, ArcPolygon, CircArc, ConvexBody};
use crate::error::{GeomError, Result};
use crate::lorentz::HPoint;
use crate::width::WidthWitness;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcFile {
    pub center: Vec<f64>,
    pub radius: f64,
    pub start: Vec<f64>,
    pub end: Vec<f64>,
}

/// On-disk body: hyperboloid coordinates; arc-polygons list their corners
/// as `vertices`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyFile {
    pub dim: usize,
    pub kind: String,
    #[serde(default)]
    pub vertices: Vec<Vec<f64>>,
    #[serde(default)]
    pub arcs: Vec<ArcFile>,
}

fn point(coords: &[f64], dim: usize) -> Result<HPoint> {
    if coords.len() != dim + 1 {
        return Err(GeomError::Schema(format!(
            "expected {} coordinates, got {}",
            dim + 1,
            coords.len()
        )));
    }
    HPoint::from_slice(coords)
}

impl BodyFile {
    pub fn from_body(body: &ConvexBody) -> Self {
        let coords = |p: &HPoint| p.coords().iter().copied().collect::<Vec<f64>>();
        match body {
            ConvexBody::Polytope(p) => Self {
                dim: p.dim(),
                kind: "polytope".into(),
                vertices: p.vertices().iter().map(coords).collect(),
                arcs: Vec::new(),
            },
            ConvexBody::ArcPolygon(a) => Self {
                dim: 2,
                kind: "arc-polygon".into(),
                vertices: a.corners().iter().map(coords).collect(),
                arcs: a
                    .arcs()
                    .iter()
                    .map(|arc| ArcFile {
                        center: coords(arc.center()),
                        radius: arc.radius(),
                        start: coords(arc.start()),
                        end: coords(arc.end()),
                    })
                    .collect(),
            },
        }
    }

    pub fn to_body(&self) -> Result<ConvexBody> {
        match self.kind.as_str() {
            "polytope" => {
                if !self.arcs.is_empty() {
                    return Err(GeomError::Schema("a polytope has no arcs".into()));
                }
                let pts = self
                    .vertices
                    .iter()
                    .map(|v| point(v, self.dim))
                    .collect::<Result<Vec<_>>>()?;
                make_polytope(pts)
            }
            "arc-polygon" => {
                if self.dim != 2 {
                    return Err(GeomError::Schema("arc-polygons live in dimension 2".into()));
                }
                let corners = self
                    .vertices
                    .iter()
                    .map(|v| point(v, 2))
                    .collect::<Result<Vec<_>>>()?;
                let arcs = self
                    .arcs
                    .iter()
                    .map(|a| {
                        CircArc::new(
                            point(&a.center, 2)?,
                            a.radius,
                            point(&a.start, 2)?,
                            point(&a.end, 2)?,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ConvexBody::ArcPolygon(ArcPolygon::from_parts(
                    corners, arcs,
                )?))
            }
            other => Err(GeomError::Schema(format!("unknown body kind {other:?}"))),
        }
    }
}

/// Parses a body from JSON text.
pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    let file: BodyFile =
        serde_json::from_str(text).map_err(|e| GeomError::Schema(e.to_string()))?;
    file.to_body()
}

/// Pretty JSON text of a body.
pub fn body_to_json(body: &ConvexBody) -> String {
    serde_json::to_string_pretty(&BodyFile::from_body(body)).expect("plain data serializes")
}

pub fn point_json(p: &HPoint) -> Value {
    json!(p.coords().as_slice())
}

/// `{normal, value, farthest, contact}`.
pub fn witness_json(w: &WidthWitness) -> Value {
    json!({
        "normal": w.hyperplane.normal().as_slice(),
        "value": w.value,
        "farthest": w.farthest.iter().map(point_json).collect::<Vec<_>>(),
        "contact": w.contact.iter().map(point_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{make_crosspolytope, make_reuleaux, make_rhombus, Ball};

    fn max_coord_gap(a: &ConvexBody, b: &ConvexBody) -> f64 {
        let (fa, fb) = (BodyFile::from_body(a), BodyFile::from_body(b));
        assert_eq!(fa.vertices.len(), fb.vertices.len());
        let mut gap: f64 = 0.0;
        for (x, y) in fa.vertices.iter().zip(&fb.vertices) {
            for (p, q) in x.iter().zip(y) {
                gap = gap.max((p - q).abs());
            }
        }
        for (x, y) in fa.arcs.iter().zip(&fb.arcs) {
            for (p, q) in x
                .center
                .iter()
                .chain(&x.start)
                .chain(&x.end)
                .zip(y.center.iter().chain(&y.start).chain(&y.end))
            {
                gap = gap.max((p - q).abs());
            }
            gap = gap.max((x.radius - y.radius).abs());
        }
        gap
    }

    #[test]
    fn round_trips() {
        for body in [
            make_rhombus(0.5, 1.5, false).unwrap(),
            make_reuleaux(1.0).unwrap(),
            Ball::new(HPoint::polar(0.3, 1.0), 0.5)
                .unwrap()
                .to_body()
                .unwrap(),
            make_crosspolytope(&[0.3, 0.3, 0.9]).unwrap(),
        ] {
            let back = body_from_json(&body_to_json(&body)).unwrap();
            assert!(max_coord_gap(&body, &back) < 1e-12);
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(body_from_json("{"), Err(GeomError::Schema(_))));
        assert!(matches!(
            body_from_json(r#"{"dim":2,"kind":"blob","vertices":[]}"#),
            Err(GeomError::Schema(_))
        ));
        assert!(matches!(
            body_from_json(r#"{"dim":2,"kind":"polytope","vertices":[[1,0]]}"#),
            Err(GeomError::Schema(_))
        ));
        assert!(body_from_json(
            r#"{"dim":2,"kind":"polytope","vertices":[[2,0,0],[1,0,0],[1,0,0]]}"#
        )
        .is_err());
    }
}
