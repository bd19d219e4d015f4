//! Generator for the `{4, 6, 12}` semi-regular tessellation carrying an
//! Archimedean tonnetz: translated copies of a labeled dodecagon sit on a
//! triangular lattice, unit squares bridge adjacent dodecagons, and unit
//! hexagons fill the triple junctions, so that every interior vertex meets
//! one square, one hexagon and one dodecagon.
//!
//! All vertex coordinates live in Q[sqrt(3)] as `(a + b*sqrt(3)) / 2` with
//! integer `a`, `b`: dodecagon corners at angles 15 + 30k degrees with unit
//! edge length, lattice steps of length `3 + sqrt(3)`. Construction and
//! deduplication use this exact form; the exported patch carries floats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::LabeledGraph;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TilingError {
    #[error("tonnetz component must have exactly 12 vertices, got {0}")]
    WrongComponentSize(usize),
    #[error("patch JSON is malformed: {0}")]
    BadJson(String),
}

/// An element of Q[sqrt(3)] scaled by one half: `(a + b*sqrt(3)) / 2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Q3 {
    a: i64,
    b: i64,
}

impl Q3 {
    fn add(self, other: Q3) -> Q3 {
        Q3 { a: self.a + other.a, b: self.b + other.b }
    }

    fn sub(self, other: Q3) -> Q3 {
        Q3 { a: self.a - other.a, b: self.b - other.b }
    }

    fn scale(self, k: i64) -> Q3 {
        Q3 { a: self.a * k, b: self.b * k }
    }

    fn to_f64(self) -> f64 {
        (self.a as f64 + self.b as f64 * 3f64.sqrt()) / 2.0
    }
}

type ExactPoint = (Q3, Q3);

/// Squared distance between exact points as `(rational, sqrt3)` numerators
/// over 4: returns (p, q) with distance^2 = (p + q*sqrt(3)) / 4.
fn squared_distance_parts(u: ExactPoint, v: ExactPoint) -> (i64, i64) {
    let dx = u.0.sub(v.0);
    let dy = u.1.sub(v.1);
    let rational = dx.a * dx.a + 3 * dx.b * dx.b + dy.a * dy.a + 3 * dy.b * dy.b;
    let surd = 2 * (dx.a * dx.b + dy.a * dy.b);
    (rational, surd)
}

fn is_exact_unit(u: ExactPoint, v: ExactPoint) -> bool {
    squared_distance_parts(u, v) == (4, 0)
}

/// Corner offsets of a unit-edge dodecagon centered at the origin, at
/// angles 15 + 30k degrees for k = 0..11.
const CORNERS: [(Q3, Q3); 12] = [
    (Q3 { a: 2, b: 1 }, Q3 { a: 1, b: 0 }),
    (Q3 { a: 1, b: 1 }, Q3 { a: 1, b: 1 }),
    (Q3 { a: 1, b: 0 }, Q3 { a: 2, b: 1 }),
    (Q3 { a: -1, b: 0 }, Q3 { a: 2, b: 1 }),
    (Q3 { a: -1, b: -1 }, Q3 { a: 1, b: 1 }),
    (Q3 { a: -2, b: -1 }, Q3 { a: 1, b: 0 }),
    (Q3 { a: -2, b: -1 }, Q3 { a: -1, b: 0 }),
    (Q3 { a: -1, b: -1 }, Q3 { a: -1, b: -1 }),
    (Q3 { a: -1, b: 0 }, Q3 { a: -2, b: -1 }),
    (Q3 { a: 1, b: 0 }, Q3 { a: -2, b: -1 }),
    (Q3 { a: 1, b: 1 }, Q3 { a: -1, b: -1 }),
    (Q3 { a: 2, b: 1 }, Q3 { a: -1, b: 0 }),
];

/// Lattice basis: translations by `3 + sqrt(3)` at 0 and 60 degrees.
const LATTICE_E1: (Q3, Q3) = (Q3 { a: 6, b: 2 }, Q3 { a: 0, b: 0 });
const LATTICE_E2: (Q3, Q3) = (Q3 { a: 3, b: 1 }, Q3 { a: 3, b: 3 });

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    Square,
    Hexagon,
    Dodecagon,
}

impl FaceKind {
    pub fn sides(self) -> usize {
        match self {
            FaceKind::Square => 4,
            FaceKind::Hexagon => 6,
            FaceKind::Dodecagon => 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingVertex {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub kind: FaceKind,
    /// Vertex ids in cyclic order around the face.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingPatch {
    pub rings: u32,
    pub vertices: Vec<TilingVertex>,
    pub faces: Vec<Face>,
    /// Pairs of face indices sharing an edge, sorted.
    pub adjacency: Vec<(usize, usize)>,
}

impl TilingPatch {
    pub fn face_count(&self, kind: FaceKind) -> usize {
        self.faces.iter().filter(|f| f.kind == kind).count()
    }

    /// Face indices incident with each vertex.
    pub fn faces_at_vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, face) in self.faces.iter().enumerate() {
            for &v in &face.vertices {
                out[v].push(i);
            }
        }
        out
    }

    /// Interior vertices belong to three faces; their face kinds are
    /// returned sorted by side count.
    pub fn interior_vertex_configurations(&self) -> Vec<(usize, Vec<FaceKind>)> {
        self.faces_at_vertices()
            .into_iter()
            .enumerate()
            .filter(|(_, fs)| fs.len() == 3)
            .map(|(v, fs)| {
                let mut kinds: Vec<FaceKind> = fs.iter().map(|&f| self.faces[f].kind).collect();
                kinds.sort_by_key(|k| k.sides());
                (v, kinds)
            })
            .collect()
    }

    /// For a dodecagon face: the kind of the neighboring face across each
    /// of its 12 edges, in cyclic order; `None` if some edge is a boundary.
    pub fn dodecagon_edge_neighbors(&self, face: usize) -> Option<Vec<FaceKind>> {
        let f = &self.faces[face];
        if f.kind != FaceKind::Dodecagon {
            return None;
        }
        let mut edge_owner: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, face) in self.faces.iter().enumerate() {
            let k = face.vertices.len();
            for e in 0..k {
                let (u, v) = (face.vertices[e], face.vertices[(e + 1) % k]);
                let key = (u.min(v), u.max(v));
                edge_owner.entry(key).or_default().push(i);
            }
        }
        let k = f.vertices.len();
        let mut out = Vec::with_capacity(k);
        for e in 0..k {
            let (u, v) = (f.vertices[e], f.vertices[(e + 1) % k]);
            let key = (u.min(v), u.max(v));
            let owners = &edge_owner[&key];
            let other = owners.iter().find(|&&i| i != face)?;
            out.push(self.faces[*other].kind);
        }
        Some(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn from_json(text: &str) -> Result<TilingPatch, TilingError> {
        serde_json::from_str(text).map_err(|e| TilingError::BadJson(e.to_string()))
    }

    /// SVG 1.1 document with faces styled by kind and chord labels at the
    /// vertices.
    pub fn to_svg(&self) -> String {
        let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for v in &self.vertices {
            min_x = min_x.min(v.x);
            min_y = min_y.min(v.y);
            max_x = max_x.max(v.x);
            max_y = max_y.max(v.y);
        }
        if self.vertices.is_empty() {
            (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let pad = 1.0;
        let scale = 40.0;
        let width = (max_x - min_x + 2.0 * pad) * scale;
        let height = (max_y - min_y + 2.0 * pad) * scale;
        let tx = |x: f64| (x - min_x + pad) * scale;
        // Flip y so the patch is drawn in the usual orientation.
        let ty = |y: f64| (max_y - y + pad) * scale;
        let mut out = String::new();
        writeln!(
            out,
            r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        )
        .unwrap();
        for face in &self.faces {
            let fill = match face.kind {
                FaceKind::Square => "#e8c9c9",
                FaceKind::Hexagon => "#c9d9e8",
                FaceKind::Dodecagon => "#f2ecd9",
            };
            let points: Vec<String> = face
                .vertices
                .iter()
                .map(|&v| format!("{:.4},{:.4}", tx(self.vertices[v].x), ty(self.vertices[v].y)))
                .collect();
            writeln!(
                out,
                r##"  <polygon points="{}" fill="{fill}" stroke="#444" stroke-width="1"/>"##,
                points.join(" ")
            )
            .unwrap();
        }
        for v in &self.vertices {
            writeln!(
                out,
                r#"  <text x="{:.4}" y="{:.4}" font-size="9" text-anchor="middle" dy="3">{}</text>"#,
                tx(v.x),
                ty(v.y),
                v.label
            )
            .unwrap();
        }
        writeln!(out, "</svg>").unwrap();
        out
    }
}

/// Hex-grid distance from the origin in axial coordinates.
fn hex_norm(i: i64, j: i64) -> i64 {
    i.abs().max(j.abs()).max((i + j).abs())
}

fn lattice_point(i: i64, j: i64) -> ExactPoint {
    (
        LATTICE_E1.0.scale(i).add(LATTICE_E2.0.scale(j)),
        LATTICE_E1.1.scale(i).add(LATTICE_E2.1.scale(j)),
    )
}

/// Generates the patch of the tessellation with dodecagon centers on the
/// triangular lattice out to `rings` (ring 0 is the single central
/// dodecagon). Every dodecagon carries the component's 12 chord labels in
/// the same circular order: label k sits at the corner at angle
/// 15 + 30k degrees. Squares appear on every shared lattice edge inside the
/// patch and hexagons at every complete triple junction.
pub fn generate(component: &LabeledGraph, rings: u32) -> Result<TilingPatch, TilingError> {
    if component.vertex_count() != 12 {
        return Err(TilingError::WrongComponentSize(component.vertex_count()));
    }
    let labels: Vec<String> = (0..12).map(|v| component.label(v).to_string()).collect();
    let r = rings as i64;
    let mut centers: Vec<(i64, i64)> = Vec::new();
    for i in -r..=r {
        for j in -r..=r {
            if hex_norm(i, j) <= r {
                centers.push((i, j));
            }
        }
    }
    centers.sort_unstable();
    let center_index: BTreeMap<(i64, i64), usize> =
        centers.iter().enumerate().map(|(n, &c)| (c, n)).collect();

    let mut exact_vertices: Vec<ExactPoint> = Vec::new();
    let mut vertex_labels: Vec<String> = Vec::new();
    let mut vertex_index: BTreeMap<ExactPoint, usize> = BTreeMap::new();
    let mut corner_id = |center: (i64, i64), k: usize, labels: &[String]| -> usize {
        let base = lattice_point(center.0, center.1);
        let point = (base.0.add(CORNERS[k].0), base.1.add(CORNERS[k].1));
        *vertex_index.entry(point).or_insert_with(|| {
            exact_vertices.push(point);
            vertex_labels.push(labels[k].clone());
            exact_vertices.len() - 1
        })
    };

    let mut faces = Vec::new();
    for &c in &centers {
        let vs: Vec<usize> = (0..12).map(|k| corner_id(c, k, &labels)).collect();
        faces.push(Face { kind: FaceKind::Dodecagon, vertices: vs });
    }
    // One square per shared lattice edge: directions at 0, 60, 120 degrees
    // cover each adjacent pair once.
    let directions = [(1i64, 0i64), (0, 1), (-1, 1)];
    for &c in &centers {
        for (f, &(di, dj)) in directions.iter().enumerate() {
            let nbr = (c.0 + di, c.1 + dj);
            if !center_index.contains_key(&nbr) {
                continue;
            }
            let a1 = corner_id(c, (2 * f + 11) % 12, &labels);
            let a2 = corner_id(c, 2 * f, &labels);
            let b1 = corner_id(nbr, 2 * f + 5, &labels);
            let b2 = corner_id(nbr, 2 * f + 6, &labels);
            faces.push(Face { kind: FaceKind::Square, vertices: vec![a1, a2, b1, b2] });
        }
    }
    // Hexagons at triple junctions, both triangle orientations.
    for &c in &centers {
        let east = (c.0 + 1, c.1);
        let northeast = (c.0, c.1 + 1);
        let southeast = (c.0 + 1, c.1 - 1);
        if center_index.contains_key(&east) && center_index.contains_key(&northeast) {
            let vs = vec![
                corner_id(east, 4, &labels),
                corner_id(northeast, 9, &labels),
                corner_id(northeast, 8, &labels),
                corner_id(c, 1, &labels),
                corner_id(c, 0, &labels),
                corner_id(east, 5, &labels),
            ];
            faces.push(Face { kind: FaceKind::Hexagon, vertices: vs });
        }
        if center_index.contains_key(&east) && center_index.contains_key(&southeast) {
            let vs = vec![
                corner_id(east, 7, &labels),
                corner_id(east, 6, &labels),
                corner_id(c, 11, &labels),
                corner_id(c, 10, &labels),
                corner_id(southeast, 3, &labels),
                corner_id(southeast, 2, &labels),
            ];
            faces.push(Face { kind: FaceKind::Hexagon, vertices: vs });
        }
    }

    // Semi-regularity: every face edge has exact unit length.
    for face in &faces {
        let k = face.vertices.len();
        for e in 0..k {
            let u = exact_vertices[face.vertices[e]];
            let v = exact_vertices[face.vertices[(e + 1) % k]];
            assert!(is_exact_unit(u, v), "face edge is not unit length");
        }
    }

    let vertices: Vec<TilingVertex> = exact_vertices
        .iter()
        .zip(&vertex_labels)
        .map(|(&(x, y), label)| TilingVertex { x: x.to_f64(), y: y.to_f64(), label: label.clone() })
        .collect();

    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, face) in faces.iter().enumerate() {
        let k = face.vertices.len();
        for e in 0..k {
            let (u, v) = (face.vertices[e], face.vertices[(e + 1) % k]);
            edge_faces.entry((u.min(v), u.max(v))).or_default().push(i);
        }
    }
    let mut adjacency = Vec::new();
    for owners in edge_faces.values() {
        for (x, &f1) in owners.iter().enumerate() {
            for &f2 in owners.iter().skip(x + 1) {
                adjacency.push((f1.min(f2), f1.max(f2)));
            }
        }
    }
    adjacency.sort_unstable();
    adjacency.dedup();

    Ok(TilingPatch { rings, vertices, faces, adjacency })
}
