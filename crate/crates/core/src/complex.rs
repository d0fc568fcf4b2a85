//! Planar simplicial complexes: vertices, CCW triangles, derived edges and
//! incidence, with optional shape labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{orientation, Orientation, Point2, Triangle2};

/// Classification of a vertex or triangle relative to a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    ShapeInterior,
    ShapeBoundary,
    Exterior,
}

impl Label {
    pub fn is_shape(self) -> bool {
        self != Label::Exterior
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::ShapeInterior => "SHAPE_INTERIOR",
            Label::ShapeBoundary => "SHAPE_BOUNDARY",
            Label::Exterior => "EXTERIOR",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "SHAPE_INTERIOR" => Some(Label::ShapeInterior),
            "SHAPE_BOUNDARY" => Some(Label::ShapeBoundary),
            "EXTERIOR" => Some(Label::Exterior),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub vertices: Vec<Label>,
    pub triangles: Vec<Label>,
}

/// Sorted vertex pair identifying an undirected edge.
pub type Edge = [usize; 2];

pub(crate) fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// A triangulated planar region.
///
/// Triangles are stored counter-clockwise; every edge borders at most two
/// triangles, and two triangles sharing an edge traverse it in opposite
/// directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    edge_triangles: BTreeMap<Edge, Vec<usize>>,
    vertex_triangles: Vec<Vec<usize>>,
    labels: Option<Labels>,
}

impl SimplicialComplex {
    /// Builds a complex, checking index ranges, orientation and edge
    /// manifoldness. Pairwise interior disjointness is a separate, quadratic
    /// check: [`SimplicialComplex::check_interiors_disjoint`].
    pub fn new(vertices: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let invalid = |reason: String| Error::ComplexInvalid { reason };
        let n = vertices.len();
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&v) = tri.iter().find(|&&v| v >= n) {
                return Err(invalid(format!("triangle {t} references vertex {v} of {n}")));
            }
            match orientation(&vertices[tri[0]], &vertices[tri[1]], &vertices[tri[2]]) {
                Orientation::Ccw => {}
                Orientation::Cw => return Err(invalid(format!("triangle {t} is clockwise"))),
                Orientation::Collinear => return Err(invalid(format!("triangle {t} is degenerate"))),
            }
        }
        let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let key = (tri[k], tri[(k + 1) % 3]);
                if let Some(other) = directed.insert(key, t) {
                    return Err(invalid(format!(
                        "triangles {other} and {t} overlap along edge {:?}",
                        edge(key.0, key.1)
                    )));
                }
            }
        }
        Ok(Self::assemble(vertices, triangles))
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn assemble(vertices: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Self {
        let mut edge_triangles: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut vertex_triangles = vec![Vec::new(); vertices.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                edge_triangles
                    .entry(edge(tri[k], tri[(k + 1) % 3]))
                    .or_default()
                    .push(t);
                vertex_triangles[tri[k]].push(t);
            }
        }
        let edges = edge_triangles.keys().copied().collect();
        SimplicialComplex {
            vertices,
            triangles,
            edges,
            edge_triangles,
            vertex_triangles,
            labels: None,
        }
    }

    /// Exact check that no two triangles overlap in their interiors.
    pub fn check_interiors_disjoint(&self) -> Result<()> {
        let boxes: Vec<_> = (0..self.triangles.len()).map(|t| self.bbox(t)).collect();
        for i in 0..self.triangles.len() {
            for j in i + 1..self.triangles.len() {
                let (lo_i, hi_i) = &boxes[i];
                let (lo_j, hi_j) = &boxes[j];
                if hi_i.x <= lo_j.x || hi_j.x <= lo_i.x || hi_i.y <= lo_j.y || hi_j.y <= lo_i.y {
                    continue;
                }
                if !self.separated(i, j) && !self.separated(j, i) {
                    return Err(Error::ComplexInvalid {
                        reason: format!("triangles {i} and {j} have overlapping interiors"),
                    });
                }
            }
        }
        Ok(())
    }

    /// True when some edge of triangle `i` has all of triangle `j` on or
    /// beyond its outer side.
    fn separated(&self, i: usize, j: usize) -> bool {
        let ti = self.triangles[i];
        (0..3).any(|k| {
            let (a, b) = (&self.vertices[ti[k]], &self.vertices[ti[(k + 1) % 3]]);
            self.triangles[j]
                .iter()
                .all(|&v| orientation(a, b, &self.vertices[v]) != Orientation::Ccw)
        })
    }

    fn bbox(&self, t: usize) -> (Point2, Point2) {
        let [a, b, c] = self.triangles[t].map(|v| &self.vertices[v]);
        let min = |p: &num_rational::BigRational, q, r| p.min(q).min(r).clone();
        let max = |p: &num_rational::BigRational, q, r| p.max(q).max(r).clone();
        (
            Point2::new(min(&a.x, &b.x, &c.x), min(&a.y, &b.y, &c.y)),
            Point2::new(max(&a.x, &b.x, &c.x), max(&a.y, &b.y, &c.y)),
        )
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.vertices.len() != self.vertices.len() || labels.triangles.len() != self.triangles.len() {
            return Err(Error::ComplexInvalid {
                reason: format!(
                    "label counts ({} vertices, {} triangles) do not match the complex ({}, {})",
                    labels.vertices.len(),
                    labels.triangles.len(),
                    self.vertices.len(),
                    self.triangles.len()
                ),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point2 {
        &self.vertices[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn triangle_geometry(&self, t: usize) -> Triangle2 {
        let [a, b, c] = self.triangles[t];
        Triangle2::new(
            self.vertices[a].clone(),
            self.vertices[b].clone(),
            self.vertices[c].clone(),
        )
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// Triangles incident to vertex `v`, ascending.
    pub fn vertex_triangles(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    /// Triangles incident to an edge (one or two).
    pub fn edge_triangles(&self, a: usize, b: usize) -> &[usize] {
        self.edge_triangles.get(&edge(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Edges with exactly one incident triangle.
    pub fn boundary_edges(&self) -> Vec<Edge> {
        self.edge_triangles
            .iter()
            .filter(|(_, ts)| ts.len() == 1)
            .map(|(e, _)| *e)
            .collect()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn vertex_label(&self, v: usize) -> Option<Label> {
        self.labels.as_ref().map(|l| l.vertices[v])
    }

    pub fn triangle_label(&self, t: usize) -> Option<Label> {
        self.labels.as_ref().map(|l| l.triangles[t])
    }

    /// V - E + T.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Glues complexes along vertices with identical coordinates. Triangles
    /// with the same three vertices are merged. Returns the combined complex
    /// (unlabelled) and, per part, the ids of its triangles in it.
    pub fn merge(parts: &[&SimplicialComplex]) -> Result<(SimplicialComplex, Vec<Vec<usize>>)> {
        let mut index: BTreeMap<Point2, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut by_set: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        let mut triangles = Vec::new();
        let mut ids = Vec::with_capacity(parts.len());
        for part in parts {
            let map: Vec<usize> = part
                .vertices
                .iter()
                .map(|p| {
                    *index.entry(p.clone()).or_insert_with(|| {
                        vertices.push(p.clone());
                        vertices.len() - 1
                    })
                })
                .collect();
            let mut own = Vec::with_capacity(part.triangles.len());
            for tri in &part.triangles {
                let mapped = tri.map(|v| map[v]);
                let mut key = mapped;
                key.sort_unstable();
                let id = *by_set.entry(key).or_insert_with(|| {
                    triangles.push(mapped);
                    triangles.len() - 1
                });
                own.push(id);
            }
            ids.push(own);
        }
        Ok((SimplicialComplex::new(vertices, triangles)?, ids))
    }

    /// Confirms that the vertex/edge incidence tables agree with the
    /// triangle list in both directions.
    pub fn check_incidence(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::ComplexInvalid { reason });
        for (v, ts) in self.vertex_triangles.iter().enumerate() {
            for &t in ts {
                if !self.triangles[t].contains(&v) {
                    return bad(format!("vertex {v} lists triangle {t} which does not contain it"));
                }
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if !self.vertex_triangles[tri[k]].contains(&t) {
                    return bad(format!("triangle {t} missing from vertex {} incidence", tri[k]));
                }
                let ts = self.edge_triangles(tri[k], tri[(k + 1) % 3]);
                if !ts.contains(&t) || ts.len() > 2 {
                    return bad(format!("edge incidence broken at triangle {t}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point2> {
        vec![
            Point2::int(0, 0),
            Point2::int(1, 0),
            Point2::int(1, 1),
            Point2::int(0, 1),
        ]
    }

    #[test]
    fn square_has_five_edges_and_four_boundary_edges() {
        let k = SimplicialComplex::new(square(), vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        assert_eq!(k.edges().len(), 5);
        assert_eq!(k.boundary_edges().len(), 4);
        assert_eq!(k.edge_triangles(2, 0), &[0, 1]);
        assert_eq!(k.euler_characteristic(), 1);
        k.check_incidence().unwrap();
        k.check_interiors_disjoint().unwrap();
    }

    #[test]
    fn rejects_bad_triangles() {
        assert_eq!(
            SimplicialComplex::new(square(), vec![[0, 2, 1]]).unwrap_err().code(),
            "COMPLEX_INVALID"
        );
        assert!(SimplicialComplex::new(square(), vec![[0, 1, 7]]).is_err());
        // Same directed edge twice: the two triangles lie on the same side.
        let mut pts = square();
        pts.push(Point2::ratio(1, 1, 2));
        assert!(SimplicialComplex::new(pts, vec![[0, 1, 2], [0, 1, 4]]).is_err());
    }

    #[test]
    fn detects_overlap_without_shared_edges() {
        let pts = vec![
            Point2::int(0, 0),
            Point2::int(4, 0),
            Point2::int(0, 4),
            Point2::int(1, 1),
            Point2::int(5, 1),
            Point2::int(1, 5),
        ];
        let k = SimplicialComplex::new(pts, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        assert!(k.check_interiors_disjoint().is_err());
    }

    #[test]
    fn merge_glues_shared_vertices_and_triangles() {
        let a = SimplicialComplex::new(square(), vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        let pts = vec![
            Point2::int(1, 0),
            Point2::int(2, 0),
            Point2::int(1, 1),
            Point2::int(0, 0),
        ];
        let b = SimplicialComplex::new(pts, vec![[0, 1, 2], [3, 0, 2]]).unwrap();
        let (m, ids) = SimplicialComplex::merge(&[&a, &b]).unwrap();
        assert_eq!(m.num_vertices(), 5);
        assert_eq!(m.num_triangles(), 3);
        assert_eq!(ids, vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn label_count_mismatch_is_rejected() {
        let k = SimplicialComplex::new(square(), vec![[0, 1, 2]]).unwrap();
        let labels = Labels {
            vertices: vec![Label::Exterior; 3],
            triangles: vec![Label::Exterior],
        };
        assert!(k.with_labels(labels).is_err());
    }
}
