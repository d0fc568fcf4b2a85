//! Vertex stars as nerves, maximal nucleus clusters, shape nerve complexes
//! and closure/boundary/interior of sub-complexes.

use std::collections::BTreeSet;

use crate::complex::{edge, Edge, Label, SimplicialComplex};
use crate::error::{Error, Result};
use crate::triangulation::ShapeComplex;

/// A set of simplexes of a host complex, by dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplexSet {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<Edge>,
    pub triangles: BTreeSet<usize>,
}

impl SimplexSet {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.triangles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.triangles.len()
    }

    pub fn intersects(&self, other: &SimplexSet) -> bool {
        !self.vertices.is_disjoint(&other.vertices)
            || !self.edges.is_disjoint(&other.edges)
            || !self.triangles.is_disjoint(&other.triangles)
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet {
            vertices: &self.vertices | &other.vertices,
            edges: &self.edges | &other.edges,
            triangles: &self.triangles | &other.triangles,
        }
    }

    pub fn intersection(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet {
            vertices: &self.vertices & &other.vertices,
            edges: &self.edges & &other.edges,
            triangles: &self.triangles & &other.triangles,
        }
    }

    pub fn difference(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet {
            vertices: &self.vertices - &other.vertices,
            edges: &self.edges - &other.edges,
            triangles: &self.triangles - &other.triangles,
        }
    }
}

/// A subset of a host complex: filled triangles plus optional bare vertices.
///
/// Bare vertices model single points, e.g. the singletons `{x}` that the
/// point axioms quantify over.
#[derive(Debug, Clone)]
pub struct SubComplex<'a> {
    host: &'a SimplicialComplex,
    triangles: BTreeSet<usize>,
    vertices: BTreeSet<usize>,
}

impl PartialEq for SubComplex<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.host, other.host) && self.triangles == other.triangles && self.vertices == other.vertices
    }
}

impl Eq for SubComplex<'_> {}

impl<'a> SubComplex<'a> {
    /// Sub-complex of the given triangles; ids out of range are rejected.
    pub fn new(host: &'a SimplicialComplex, triangles: impl IntoIterator<Item = usize>) -> Result<Self> {
        let triangles: BTreeSet<usize> = triangles.into_iter().collect();
        if let Some(&t) = triangles.iter().find(|&&t| t >= host.num_triangles()) {
            return Err(Error::ComplexInvalid {
                reason: format!("triangle {t} does not exist in the host"),
            });
        }
        Ok(SubComplex {
            host,
            triangles,
            vertices: BTreeSet::new(),
        })
    }

    pub fn empty(host: &'a SimplicialComplex) -> Self {
        SubComplex {
            host,
            triangles: BTreeSet::new(),
            vertices: BTreeSet::new(),
        }
    }

    /// The whole host.
    pub fn full(host: &'a SimplicialComplex) -> Self {
        SubComplex {
            host,
            triangles: (0..host.num_triangles()).collect(),
            vertices: BTreeSet::new(),
        }
    }

    /// The single point `{v}`.
    pub fn vertex(host: &'a SimplicialComplex, v: usize) -> Result<Self> {
        if v >= host.num_vertices() {
            return Err(Error::UnknownVertex { vertex: v });
        }
        Ok(SubComplex {
            host,
            triangles: BTreeSet::new(),
            vertices: BTreeSet::from([v]),
        })
    }

    pub fn single_triangle(host: &'a SimplicialComplex, t: usize) -> Result<Self> {
        Self::new(host, [t])
    }

    pub fn host(&self) -> &'a SimplicialComplex {
        self.host
    }

    pub fn triangle_ids(&self) -> &BTreeSet<usize> {
        &self.triangles
    }

    pub fn bare_vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty() && self.vertices.is_empty()
    }

    pub fn same_host(&self, other: &SubComplex<'_>) -> bool {
        std::ptr::eq(self.host, other.host)
    }

    pub(crate) fn check_host(&self, other: &SubComplex<'_>) -> Result<()> {
        if self.same_host(other) {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    pub fn union(&self, other: &SubComplex<'a>) -> Result<SubComplex<'a>> {
        self.check_host(other)?;
        Ok(SubComplex {
            host: self.host,
            triangles: &self.triangles | &other.triangles,
            vertices: &self.vertices | &other.vertices,
        })
    }

    /// Vertices of the closure.
    pub fn closure_vertices(&self) -> BTreeSet<usize> {
        let mut out = self.vertices.clone();
        for &t in &self.triangles {
            out.extend(self.host.triangle(t));
        }
        out
    }

    /// The element triangles, each with the given extra ids; used to build
    /// covers.
    pub fn with_triangles(&self, triangles: BTreeSet<usize>) -> SubComplex<'a> {
        SubComplex {
            host: self.host,
            triangles,
            vertices: BTreeSet::new(),
        }
    }
}

/// All faces of the sub-complex: its triangles, their edges and vertices, and
/// its bare vertices.
pub fn sub_closure(s: &SubComplex<'_>) -> SimplexSet {
    let mut out = SimplexSet {
        vertices: s.vertices.clone(),
        edges: BTreeSet::new(),
        triangles: s.triangles.clone(),
    };
    for &t in &s.triangles {
        let [a, b, c] = s.host.triangle(t);
        out.vertices.extend([a, b, c]);
        out.edges.extend([edge(a, b), edge(b, c), edge(c, a)]);
    }
    out
}

/// Edges of the sub-complex bordering exactly one of its triangles, with
/// their endpoints.
pub fn sub_boundary(s: &SubComplex<'_>) -> SimplexSet {
    let mut out = SimplexSet::default();
    for &t in &s.triangles {
        let tri = s.host.triangle(t);
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            let inside = s
                .host
                .edge_triangles(a, b)
                .iter()
                .filter(|u| s.triangles.contains(u))
                .count();
            if inside == 1 {
                out.edges.insert(edge(a, b));
                out.vertices.extend([a, b]);
            }
        }
    }
    out
}

/// Closure minus boundary: every triangle, plus the edges and vertices not on
/// the boundary.
pub fn sub_interior(s: &SubComplex<'_>) -> SimplexSet {
    sub_closure(s).difference(&sub_boundary(s))
}

/// The nerve `Nrv K(p)`: triangles sharing the nucleus vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveComplex<'a> {
    host: &'a SimplicialComplex,
    nucleus: usize,
    triangles: BTreeSet<usize>,
}

impl<'a> NerveComplex<'a> {
    pub fn nucleus(&self) -> usize {
        self.nucleus
    }

    pub fn triangle_ids(&self) -> &BTreeSet<usize> {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn host(&self) -> &'a SimplicialComplex {
        self.host
    }

    pub fn to_subcomplex(&self) -> SubComplex<'a> {
        SubComplex {
            host: self.host,
            triangles: self.triangles.clone(),
            vertices: BTreeSet::new(),
        }
    }

    /// Vertices common to every triangle of the nerve. Because triangles of a
    /// complex meet in shared faces, the common intersection of the filled
    /// triangles is the face spanned by these vertices.
    pub fn common_vertices(&self) -> BTreeSet<usize> {
        let mut iter = self.triangles.iter();
        let Some(&first) = iter.next() else {
            return BTreeSet::new();
        };
        let mut common: BTreeSet<usize> = self.host.triangle(first).into_iter().collect();
        for &t in iter {
            let tri = self.host.triangle(t);
            common.retain(|v| tri.contains(v));
        }
        common
    }

    /// True when the nucleus is surrounded by the nerve's triangles (no
    /// boundary edge of the nerve touches it).
    pub fn nucleus_is_interior(&self) -> bool {
        !sub_boundary(&self.to_subcomplex()).vertices.contains(&self.nucleus)
    }
}

/// The star of vertex `v`: every host triangle having `v` as a vertex.
pub fn star(complex: &SimplicialComplex, v: usize) -> Result<NerveComplex<'_>> {
    if v >= complex.num_vertices() {
        return Err(Error::UnknownVertex { vertex: v });
    }
    let triangles: BTreeSet<usize> = complex.vertex_triangles(v).iter().copied().collect();
    if triangles.is_empty() {
        return Err(Error::IsolatedVertex { vertex: v });
    }
    Ok(NerveComplex {
        host: complex,
        nucleus: v,
        triangles,
    })
}

/// Stars of shape vertices with the largest triangle count, ordered by
/// nucleus. All maximizers are returned.
pub fn maximal_nucleus_clusters(shape_complex: &ShapeComplex) -> Vec<NerveComplex<'_>> {
    let complex = shape_complex.complex();
    let stars: Vec<NerveComplex<'_>> = shape_complex
        .shape_vertex_ids()
        .iter()
        .filter_map(|&v| star(complex, v).ok())
        .collect();
    let best = stars.iter().map(NerveComplex::len).max().unwrap_or(0);
    stars.into_iter().filter(|n| n.len() == best).collect()
}

/// Connectivity facts about the overlap graph of a shape nerve complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapReport {
    /// Connected components of the overlap graph.
    pub components: usize,
    /// Triangles common to every nerve (the literal whole-family
    /// intersection; usually empty for shapes wider than two stars).
    pub common_triangles: BTreeSet<usize>,
}

impl OverlapReport {
    pub fn connected(&self) -> bool {
        self.components <= 1
    }
}

/// Shape-vertex nerves and the graph of which ones share a triangle.
#[derive(Debug, Clone)]
pub struct ShapeNerveComplex<'a> {
    pub nerves: Vec<NerveComplex<'a>>,
    /// `overlap[i]` holds the indices `j` (into `nerves`) sharing a triangle
    /// with nerve `i`.
    pub overlap: Vec<BTreeSet<usize>>,
    pub report: OverlapReport,
}

impl ShapeNerveComplex<'_> {
    pub fn overlap_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.overlap.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }
}

/// Stars of all shape vertices (boundary and interior) with their overlap
/// graph.
pub fn shape_nerve_complex(shape_complex: &ShapeComplex) -> ShapeNerveComplex<'_> {
    let complex = shape_complex.complex();
    let nerves: Vec<NerveComplex<'_>> = shape_complex
        .shape_vertex_ids()
        .iter()
        .filter_map(|&v| star(complex, v).ok())
        .collect();
    let overlap = overlap_graph(&nerves);
    let report = overlap_report(&nerves, &overlap);
    ShapeNerveComplex {
        nerves,
        overlap,
        report,
    }
}

fn overlap_graph(nerves: &[NerveComplex<'_>]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); nerves.len()];
    for i in 0..nerves.len() {
        for j in i + 1..nerves.len() {
            if !nerves[i].triangles.is_disjoint(&nerves[j].triangles) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

fn overlap_report(nerves: &[NerveComplex<'_>], adj: &[BTreeSet<usize>]) -> OverlapReport {
    let mut seen = vec![false; nerves.len()];
    let mut components = 0;
    for s in 0..nerves.len() {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    let mut common: Option<BTreeSet<usize>> = None;
    for n in nerves {
        common = Some(match common {
            None => n.triangles.clone(),
            Some(c) => &c & &n.triangles,
        });
    }
    OverlapReport {
        components,
        common_triangles: common.unwrap_or_default(),
    }
}

/// Union of the nerves' triangle sets.
pub fn union_of_nerves<'a>(nerves: &[NerveComplex<'a>]) -> Result<SubComplex<'a>> {
    let first = nerves.first().ok_or(Error::EmptyCover)?;
    let mut triangles = BTreeSet::new();
    for n in nerves {
        if !std::ptr::eq(n.host, first.host) {
            return Err(Error::HostMismatch);
        }
        triangles.extend(n.triangles.iter().copied());
    }
    Ok(SubComplex {
        host: first.host,
        triangles,
        vertices: BTreeSet::new(),
    })
}

/// Stars taken inside `s`: for each vertex of `s`, the triangles of `s`
/// incident to it. Ordered by vertex.
pub fn star_cover<'a>(s: &SubComplex<'a>) -> Vec<SubComplex<'a>> {
    s.closure_vertices()
        .into_iter()
        .filter_map(|v| {
            let ts: BTreeSet<usize> = s
                .host
                .vertex_triangles(v)
                .iter()
                .copied()
                .filter(|t| s.triangles.contains(t))
                .collect();
            (!ts.is_empty()).then(|| s.with_triangles(ts))
        })
        .collect()
}

/// Triangles labelled as shape triangles, as a sub-complex. Unlabelled hosts
/// yield every triangle.
pub fn shape_subcomplex(complex: &SimplicialComplex) -> SubComplex<'_> {
    match complex.labels() {
        Some(labels) => SubComplex {
            host: complex,
            triangles: (0..complex.num_triangles())
                .filter(|&t| labels.triangles[t] != Label::Exterior)
                .collect(),
            vertices: BTreeSet::new(),
        },
        None => SubComplex::full(complex),
    }
}
