//! Shape sampling, Delaunay triangulation and shape labelling.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::{edge, Edge, Label, Labels, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{point_in_polygon, Orientation, Point2, PolygonLocation, SimplePolygon};

/// Sampling parameters for [`sample_shape`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sampling {
    pub boundary_step: BigRational,
    pub interior_spacing: BigRational,
    pub margin: BigRational,
}

impl Sampling {
    fn validate(&self) -> Result<()> {
        if !self.boundary_step.is_positive() {
            return Err(Error::InvalidConfig {
                reason: "boundary_step must be positive".into(),
            });
        }
        if !self.interior_spacing.is_positive() {
            return Err(Error::InvalidConfig {
                reason: "interior_spacing must be positive".into(),
            });
        }
        if self.margin.is_negative() {
            return Err(Error::InvalidConfig {
                reason: "margin must be non-negative".into(),
            });
        }
        Ok(())
    }
}

/// Samples a shape into a point set.
///
/// The result lists, without duplicates and in this order: every ring vertex
/// followed by equally spaced points along each ring edge (spacing at most
/// `boundary_step`), then the lattice points of pitch `interior_spacing`
/// (anchored at the bounding-box minimum) strictly inside the shape, then,
/// when `margin > 0`, the lattice points of the bounding box grown by
/// `margin` that lie outside the shape together with that grown box's four
/// corners.
pub fn sample_shape(shape: &SimplePolygon, sampling: &Sampling) -> Result<Vec<Point2>> {
    sampling.validate()?;
    let mut seen: HashSet<Point2> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |p: Point2, out: &mut Vec<Point2>| {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    };

    let step2 = &sampling.boundary_step * &sampling.boundary_step;
    for ring in shape.rings() {
        for i in 0..ring.len() {
            let (a, b) = (&ring[i], &ring[(i + 1) % ring.len()]);
            let dx = &b.x - &a.x;
            let dy = &b.y - &a.y;
            let len2 = &dx * &dx + &dy * &dy;
            let pieces = segments_needed(&len2, &step2);
            for k in 0..pieces {
                let f = BigRational::new(BigInt::from(k), BigInt::from(pieces));
                push(Point2::new(&a.x + &dx * &f, &a.y + &dy * &f), &mut out);
            }
        }
    }

    let (lo, hi) = shape.bounding_box();
    let s = &sampling.interior_spacing;
    for p in lattice(&lo, &lo, &hi, s) {
        if point_in_polygon(shape, &p) == PolygonLocation::Interior {
            push(p, &mut out);
        }
    }

    if sampling.margin.is_positive() {
        let m = &sampling.margin;
        let glo = Point2::new(&lo.x - m, &lo.y - m);
        let ghi = Point2::new(&hi.x + m, &hi.y + m);
        for p in lattice(&lo, &glo, &ghi, s) {
            if point_in_polygon(shape, &p) == PolygonLocation::Exterior {
                push(p, &mut out);
            }
        }
        for (x, y) in [(&glo.x, &glo.y), (&ghi.x, &glo.y), (&ghi.x, &ghi.y), (&glo.x, &ghi.y)] {
            push(Point2::new(x.clone(), y.clone()), &mut out);
        }
    }
    Ok(out)
}

/// Smallest `k >= 1` with `k * step >= length`, compared through squares.
fn segments_needed(len2: &BigRational, step2: &BigRational) -> u64 {
    let ratio = len2 / step2;
    // ceil(sqrt(ratio)) without floating point: start from an f64 guess,
    // then correct exactly.
    let mut k = ratio.to_f64().map(|r| r.sqrt().ceil() as u64).unwrap_or(1).max(1);
    let sq = |k: u64| BigRational::from_integer(BigInt::from(k) * BigInt::from(k));
    while k > 1 && sq(k - 1) >= ratio {
        k -= 1;
    }
    while sq(k) < ratio {
        k += 1;
    }
    k
}

/// Lattice points `anchor + (i*s, j*s)` inside the closed box `[lo, hi]`,
/// ordered by x then y.
fn lattice(anchor: &Point2, lo: &Point2, hi: &Point2, s: &BigRational) -> Vec<Point2> {
    let range = |a: &BigRational, l: &BigRational, h: &BigRational| {
        let first = ((l - a) / s).ceil().to_integer();
        let last = ((h - a) / s).floor().to_integer();
        (first, last)
    };
    let (ix0, ix1) = range(&anchor.x, &lo.x, &hi.x);
    let (iy0, iy1) = range(&anchor.y, &lo.y, &hi.y);
    let mut out = Vec::new();
    let mut i = ix0;
    while i <= ix1 {
        let x = &anchor.x + s * BigRational::from_integer(i.clone());
        let mut j = iy0.clone();
        while j <= iy1 {
            out.push(Point2::new(
                x.clone(),
                &anchor.y + s * BigRational::from_integer(j.clone()),
            ));
            j += 1;
        }
        i += 1;
    }
    out
}

/// Exact orientation and in-circle tests on integer-rescaled coordinates.
trait Plane {
    fn orient(&self, a: usize, b: usize, c: usize) -> Orientation;
    /// Sign of the in-circle determinant for CCW `(a, b, c)` and query `d`:
    /// positive means `d` is strictly inside.
    fn incircle(&self, a: usize, b: usize, c: usize, d: usize) -> i8;
    /// Whether `p` lies strictly between collinear `a` and `b`.
    fn strictly_between(&self, a: usize, b: usize, p: usize) -> bool;
}

/// Coordinates bounded by 2^28 in magnitude keep the in-circle determinant
/// below 2^120.
struct SmallPlane(Vec<[i128; 2]>);

struct BigPlane(Vec<[BigInt; 2]>);

fn sign_i128(v: i128) -> i8 {
    v.signum() as i8
}

fn sign_big(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn orientation_of(sign: i8) -> Orientation {
    match sign {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

impl Plane for SmallPlane {
    fn orient(&self, a: usize, b: usize, c: usize) -> Orientation {
        let [ax, ay] = self.0[a];
        let [bx, by] = self.0[b];
        let [cx, cy] = self.0[c];
        orientation_of(sign_i128((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)))
    }

    fn incircle(&self, a: usize, b: usize, c: usize, d: usize) -> i8 {
        let [dx, dy] = self.0[d];
        let rel = |v: usize| [self.0[v][0] - dx, self.0[v][1] - dy];
        let [adx, ady] = rel(a);
        let [bdx, bdy] = rel(b);
        let [cdx, cdy] = rel(c);
        let alift = adx * adx + ady * ady;
        let blift = bdx * bdx + bdy * bdy;
        let clift = cdx * cdx + cdy * cdy;
        sign_i128(alift * (bdx * cdy - cdx * bdy) - blift * (adx * cdy - cdx * ady) + clift * (adx * bdy - bdx * ady))
    }

    fn strictly_between(&self, a: usize, b: usize, p: usize) -> bool {
        let dot = |u: usize, v: usize| {
            (self.0[u][0] - self.0[p][0]) * (self.0[v][0] - self.0[p][0])
                + (self.0[u][1] - self.0[p][1]) * (self.0[v][1] - self.0[p][1])
        };
        dot(a, b) < 0
    }
}

impl Plane for BigPlane {
    fn orient(&self, a: usize, b: usize, c: usize) -> Orientation {
        let [ax, ay] = &self.0[a];
        let [bx, by] = &self.0[b];
        let [cx, cy] = &self.0[c];
        orientation_of(sign_big(&((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))))
    }

    fn incircle(&self, a: usize, b: usize, c: usize, d: usize) -> i8 {
        let [dx, dy] = &self.0[d];
        let rel = |v: usize| [&self.0[v][0] - dx, &self.0[v][1] - dy];
        let [adx, ady] = rel(a);
        let [bdx, bdy] = rel(b);
        let [cdx, cdy] = rel(c);
        let alift = &adx * &adx + &ady * &ady;
        let blift = &bdx * &bdx + &bdy * &bdy;
        let clift = &cdx * &cdx + &cdy * &cdy;
        sign_big(
            &(alift * (&bdx * &cdy - &cdx * &bdy) - blift * (&adx * &cdy - &cdx * &ady)
                + clift * (&adx * &bdy - &bdx * &ady)),
        )
    }

    fn strictly_between(&self, a: usize, b: usize, p: usize) -> bool {
        let [px, py] = &self.0[p];
        let dot = (&self.0[a][0] - px) * (&self.0[b][0] - px) + (&self.0[a][1] - py) * (&self.0[b][1] - py);
        dot.is_negative()
    }
}

/// Rescales all points by the lcm of their denominators.
fn integer_coordinates(points: &[Point2]) -> Vec<[BigInt; 2]> {
    let mut scale = BigInt::one();
    for p in points {
        scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
    }
    let scale = BigRational::from_integer(scale);
    points
        .iter()
        .map(|p| [(&p.x * &scale).to_integer(), (&p.y * &scale).to_integer()])
        .collect()
}

const GHOST: usize = usize::MAX;

/// Delaunay triangulation of the convex hull of `points`.
///
/// Vertices keep the input order with duplicate points dropped (first
/// occurrence wins). Points are inserted in lexicographic `(x, y)` order by
/// Bowyer-Watson; the hull is tracked with a single vertex at infinity whose
/// triangles are discarded at the end. Among cocircular configurations the
/// diagonal with the lexicographically smaller `(min, max)` vertex-index pair
/// is kept, so the output depends only on the input.
pub fn delaunay(points: &[Point2]) -> Result<SimplicialComplex> {
    let mut seen = HashSet::new();
    let vertices: Vec<Point2> = points.iter().filter(|p| seen.insert(*p)).cloned().collect();
    if vertices.len() < 3 {
        return Err(Error::TriangulationImpossible {
            reason: format!("{} distinct points, at least 3 are required", vertices.len()),
        });
    }
    let coords = integer_coordinates(&vertices);
    let limit = BigInt::from(1i64 << 28);
    let small = coords.iter().flatten().all(|c| c.abs() < limit);
    let triangles = if small {
        let plane = SmallPlane(
            coords
                .iter()
                .map(|[x, y]| [x.to_i128().unwrap(), y.to_i128().unwrap()])
                .collect(),
        );
        triangulate(&plane, &vertices)?
    } else {
        triangulate(&BigPlane(coords), &vertices)?
    };
    Ok(SimplicialComplex::assemble(vertices, triangles))
}

fn triangulate<P: Plane>(plane: &P, vertices: &[Point2]) -> Result<Vec<[usize; 3]>> {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));

    let third = (2..order.len())
        .find(|&k| plane.orient(order[0], order[1], order[k]) != Orientation::Collinear)
        .ok_or_else(|| Error::TriangulationImpossible {
            reason: "all points are collinear".into(),
        })?;

    let mut mesh = Mesh::default();
    let (a, b, c) = (order[0], order[1], order[third]);
    let seed = if plane.orient(a, b, c) == Orientation::Ccw {
        [a, b, c]
    } else {
        [a, c, b]
    };
    mesh.add(seed);
    for k in 0..3 {
        mesh.add([seed[(k + 1) % 3], seed[k], GHOST]);
    }
    for (pos, &p) in order.iter().enumerate() {
        if pos < 2 || pos == third {
            continue;
        }
        mesh.insert(plane, p);
    }

    let mut solid: Vec<[usize; 3]> = mesh.live().filter(|t| !t.contains(&GHOST)).collect();
    enforce_tie_rule(plane, &mut solid);
    for t in &mut solid {
        let m = (0..3).min_by_key(|&k| t[k]).unwrap();
        t.rotate_left(m);
    }
    solid.sort_unstable();
    Ok(solid)
}

/// Triangle soup with directed-edge adjacency; ghost triangles carry
/// [`GHOST`] in their last slot and the hull edge in the first two.
#[derive(Default)]
struct Mesh {
    slots: Vec<Option<[usize; 3]>>,
    by_edge: HashMap<(usize, usize), usize>,
}

impl Mesh {
    fn add(&mut self, t: [usize; 3]) -> usize {
        let id = self.slots.len();
        for k in 0..3 {
            self.by_edge.insert((t[k], t[(k + 1) % 3]), id);
        }
        self.slots.push(Some(t));
        id
    }

    fn remove(&mut self, id: usize) {
        if let Some(t) = self.slots[id].take() {
            for k in 0..3 {
                self.by_edge.remove(&(t[k], t[(k + 1) % 3]));
            }
        }
    }

    fn live(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.slots.iter().flatten().copied()
    }

    fn conflicts<P: Plane>(&self, plane: &P, t: [usize; 3], p: usize) -> bool {
        if t[2] == GHOST {
            // The outside of hull edge t0 -> t1 is on its left.
            match plane.orient(t[0], t[1], p) {
                Orientation::Ccw => true,
                Orientation::Cw => false,
                Orientation::Collinear => plane.strictly_between(t[0], t[1], p),
            }
        } else {
            plane.incircle(t[0], t[1], t[2], p) > 0
        }
    }

    fn insert<P: Plane>(&mut self, plane: &P, p: usize) {
        // Ghosts first: with lexicographic insertion each new point is outside
        // the current hull.
        let start = self
            .slots
            .iter()
            .enumerate()
            .filter_map(|(id, t)| t.map(|t| (id, t)))
            .filter(|(_, t)| t[2] == GHOST)
            .chain(
                self.slots
                    .iter()
                    .enumerate()
                    .filter_map(|(id, t)| t.map(|t| (id, t)))
                    .filter(|(_, t)| t[2] != GHOST),
            )
            .find(|&(_, t)| self.conflicts(plane, t, p))
            .map(|(id, _)| id)
            .expect("every point conflicts with some triangle");

        let mut cavity = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            let t = self.slots[id].unwrap();
            for k in 0..3 {
                if let Some(&nb) = self.by_edge.get(&(t[(k + 1) % 3], t[k])) {
                    if !cavity.contains(&nb) && self.conflicts(plane, self.slots[nb].unwrap(), p) {
                        cavity.insert(nb);
                        stack.push(nb);
                    }
                }
            }
        }

        let mut rim = Vec::new();
        for &id in &cavity {
            let t = self.slots[id].unwrap();
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                match self.by_edge.get(&(v, u)) {
                    Some(nb) if cavity.contains(nb) => {}
                    _ => rim.push((u, v)),
                }
            }
        }
        for &id in &cavity {
            self.remove(id);
        }
        for (u, v) in rim {
            let t = if u == GHOST {
                [v, p, GHOST]
            } else if v == GHOST {
                [p, u, GHOST]
            } else {
                [u, v, p]
            };
            self.add(t);
        }
    }
}

/// Flips cocircular diagonals until every tie keeps the smaller index pair.
fn enforce_tie_rule<P: Plane>(plane: &P, tris: &mut [[usize; 3]]) {
    let mut by_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            by_edge.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    let mut work: BTreeSet<Edge> = by_edge.keys().map(|&(a, b)| edge(a, b)).collect();
    while let Some(e) = work.pop_first() {
        let [a, b] = e;
        let (Some(&t1), Some(&t2)) = (by_edge.get(&(a, b)), by_edge.get(&(b, a))) else {
            continue;
        };
        let x = third_vertex(tris[t1], a, b);
        let y = third_vertex(tris[t2], b, a);
        if edge(x, y) >= e || plane.incircle(a, b, x, y) != 0 {
            continue;
        }
        // Quad in CCW order: a, y, b, x.
        for t in [t1, t2] {
            let old = tris[t];
            for k in 0..3 {
                by_edge.remove(&(old[k], old[(k + 1) % 3]));
            }
        }
        tris[t1] = [x, a, y];
        tris[t2] = [y, b, x];
        for t in [t1, t2] {
            let new = tris[t];
            for k in 0..3 {
                by_edge.insert((new[k], new[(k + 1) % 3]), t);
            }
        }
        for (u, v) in [(a, y), (y, b), (b, x), (x, a)] {
            work.insert(edge(u, v));
        }
    }
}

/// The vertex of CCW triangle `t` following directed edge `a -> b`.
fn third_vertex(t: [usize; 3], a: usize, b: usize) -> usize {
    for k in 0..3 {
        if t[k] == a && t[(k + 1) % 3] == b {
            return t[(k + 2) % 3];
        }
    }
    unreachable!("edge {a}->{b} is not in triangle {t:?}")
}

/// A labelled complex over a shape.
#[derive(Debug, Clone)]
pub struct ShapeComplex {
    complex: SimplicialComplex,
    shape: SimplePolygon,
    shape_vertex_ids: BTreeSet<usize>,
}

impl ShapeComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn shape(&self) -> &SimplePolygon {
        &self.shape
    }

    /// Vertices labelled anything but exterior.
    pub fn shape_vertex_ids(&self) -> &BTreeSet<usize> {
        &self.shape_vertex_ids
    }

    /// Triangles labelled anything but exterior.
    pub fn shape_triangle_ids(&self) -> BTreeSet<usize> {
        let labels = self.complex.labels().expect("shape complexes are labelled");
        (0..self.complex.num_triangles())
            .filter(|&t| labels.triangles[t].is_shape())
            .collect()
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }
}

/// Labels every vertex by its location relative to `shape` and every triangle
/// by the location of its centroid: a triangle is a shape triangle when its
/// centroid is interior, `ShapeInterior` if all of its vertices are interior
/// too and `ShapeBoundary` otherwise.
pub fn build_shape_complex(complex: SimplicialComplex, shape: SimplePolygon) -> ShapeComplex {
    let vertex_labels: Vec<Label> = complex
        .vertices()
        .iter()
        .map(|p| match point_in_polygon(&shape, p) {
            PolygonLocation::Interior => Label::ShapeInterior,
            PolygonLocation::Boundary => Label::ShapeBoundary,
            PolygonLocation::Exterior => Label::Exterior,
        })
        .collect();
    let triangle_labels = (0..complex.num_triangles())
        .map(|t| {
            let centroid = complex.triangle_geometry(t).centroid();
            if point_in_polygon(&shape, &centroid) != PolygonLocation::Interior {
                Label::Exterior
            } else if complex
                .triangle(t)
                .iter()
                .all(|&v| vertex_labels[v] == Label::ShapeInterior)
            {
                Label::ShapeInterior
            } else {
                Label::ShapeBoundary
            }
        })
        .collect();
    let shape_vertex_ids = (0..complex.num_vertices())
        .filter(|&v| vertex_labels[v].is_shape())
        .collect();
    let complex = complex
        .with_labels(Labels {
            vertices: vertex_labels,
            triangles: triangle_labels,
        })
        .expect("label counts match by construction");
    ShapeComplex {
        complex,
        shape,
        shape_vertex_ids,
    }
}

/// Samples, triangulates and labels a shape in one step.
pub fn triangulate_shape(shape: &SimplePolygon, sampling: &Sampling) -> Result<ShapeComplex> {
    let points = sample_shape(shape, sampling)?;
    let complex = delaunay(&points)?;
    Ok(build_shape_complex(complex, shape.clone()))
}

/// Rebuilds the complex from a subset of its triangles, dropping unused
/// vertices. Returns the new complex and, for each new vertex, its old index.
pub fn restrict(complex: &SimplicialComplex, triangle_ids: &BTreeSet<usize>) -> (SimplicialComplex, Vec<usize>) {
    let used: BTreeSet<usize> = triangle_ids.iter().flat_map(|&t| complex.triangle(t)).collect();
    let old_of: Vec<usize> = used.iter().copied().collect();
    let new_of: HashMap<usize, usize> = old_of.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let vertices = old_of.iter().map(|&o| complex.vertex(o).clone()).collect();
    let triangles = triangle_ids
        .iter()
        .map(|&t| complex.triangle(t).map(|v| new_of[&v]))
        .collect();
    let mut restricted = SimplicialComplex::assemble(vertices, triangles);
    if let Some(labels) = complex.labels() {
        restricted = restricted
            .with_labels(Labels {
                vertices: old_of.iter().map(|&o| labels.vertices[o]).collect(),
                triangles: triangle_ids.iter().map(|&t| labels.triangles[t]).collect(),
            })
            .expect("label counts match by construction");
    }
    (restricted, old_of)
}

/// Area of the convex hull of `points` (monotone chain), exact.
pub fn convex_hull_area(points: &[Point2]) -> BigRational {
    let hull = convex_hull(points);
    crate::geometry::ring_signed_area2(&hull).abs() / BigRational::from_integer(BigInt::from(2))
}

/// Convex hull vertices in counter-clockwise order, collinear points dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |a: &Point2, b: &Point2, c: &Point2| crate::geometry::orientation(a, b, c);
    let mut lower: Vec<Point2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Orientation::Ccw {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Orientation::Ccw {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Sum of triangle areas of a complex.
pub fn total_area(complex: &SimplicialComplex) -> BigRational {
    (0..complex.num_triangles())
        .map(|t| complex.triangle_geometry(t).area())
        .fold(BigRational::zero(), |acc, a| acc + a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{in_circumcircle, CircleLocation};
    use crate::number::rational;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::int(x, y)
    }

    fn unit_square() -> SimplePolygon {
        SimplePolygon::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)], vec![]).unwrap()
    }

    fn sampling(step: BigRational, spacing: BigRational, margin: BigRational) -> Sampling {
        Sampling {
            boundary_step: step,
            interior_spacing: spacing,
            margin,
        }
    }

    /// Brute-force empty-circumcircle oracle over every (triangle, point) pair.
    fn is_delaunay(k: &SimplicialComplex) -> bool {
        (0..k.num_triangles()).all(|t| {
            let tri = k.triangle_geometry(t);
            k.vertices()
                .iter()
                .all(|q| in_circumcircle(&tri, q).unwrap() != CircleLocation::Inside)
        })
    }

    #[test]
    fn sample_square_corners_only() {
        let pts = sample_shape(
            &unit_square(),
            &sampling(rational(1, 1), rational(10, 1), rational(0, 1)),
        )
        .unwrap();
        assert_eq!(pts, vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
    }

    #[test]
    fn sample_square_midpoints() {
        let pts = sample_shape(
            &unit_square(),
            &sampling(rational(1, 2), rational(10, 1), rational(0, 1)),
        )
        .unwrap();
        assert_eq!(pts.len(), 8);
        assert!(pts.contains(&Point2::ratio(1, 0, 2)));
        assert!(pts.contains(&Point2::ratio(0, 1, 2)));
    }

    #[test]
    fn sample_square_interior_lattice() {
        let pts = sample_shape(
            &unit_square(),
            &sampling(rational(1, 1), rational(1, 2), rational(0, 1)),
        )
        .unwrap();
        // Enumerate the pitch-1/2 lattice of [0,1]^2 and keep strictly interior points.
        let interior: Vec<Point2> = (0..=2)
            .flat_map(|i| (0..=2).map(move |j| Point2::ratio(i, j, 2)))
            .filter(|q| q.x > rational(0, 1) && q.x < rational(1, 1) && q.y > rational(0, 1) && q.y < rational(1, 1))
            .collect();
        assert_eq!(interior, vec![Point2::ratio(1, 1, 2)]);
        assert_eq!(pts.len(), 4 + interior.len());
        assert_eq!(pts[4], interior[0]);
    }

    #[test]
    fn sample_step_not_dividing_edge() {
        // Edge of length 1 with step 0.4 needs 3 pieces of 1/3.
        let pts = sample_shape(
            &unit_square(),
            &sampling(rational(2, 5), rational(10, 1), rational(0, 1)),
        )
        .unwrap();
        assert_eq!(pts.len(), 12);
        assert!(pts.contains(&Point2::ratio(1, 0, 3)));
        assert!(pts.contains(&Point2::ratio(2, 0, 3)));
    }

    #[test]
    fn margin_adds_exterior_points() {
        let shape = unit_square();
        let pts = sample_shape(&shape, &sampling(rational(1, 2), rational(1, 2), rational(1, 4))).unwrap();
        let exterior = pts
            .iter()
            .filter(|q| point_in_polygon(&shape, q) == PolygonLocation::Exterior)
            .count();
        assert_eq!(exterior, 4, "only the grown-box corners fit in a 1/4 margin");
        let pts = sample_shape(&shape, &sampling(rational(1, 2), rational(1, 2), rational(1, 1))).unwrap();
        let exterior = pts
            .iter()
            .filter(|q| point_in_polygon(&shape, q) == PolygonLocation::Exterior)
            .count();
        // 5x5 lattice over [-1,2]^2 minus [0,1]^2's 3x3, corners coincide.
        assert_eq!(exterior, 7 * 7 - 9);
    }

    #[test]
    fn sampling_rejects_bad_parameters() {
        let err = sample_shape(
            &unit_square(),
            &sampling(rational(0, 1), rational(1, 1), rational(0, 1)),
        );
        assert!(err.is_err());
        let err = sample_shape(
            &unit_square(),
            &sampling(rational(1, 1), rational(1, 1), rational(-1, 1)),
        );
        assert!(err.is_err());
    }

    #[test]
    fn segments_needed_is_exact_ceiling() {
        let r = |n, d| rational(n, d);
        assert_eq!(segments_needed(&r(1, 1), &r(1, 1)), 1);
        assert_eq!(segments_needed(&r(1, 1), &r(1, 4)), 2);
        assert_eq!(segments_needed(&r(2, 1), &r(1, 1)), 2);
        assert_eq!(segments_needed(&r(4, 1), &r(1, 1)), 2);
        assert_eq!(segments_needed(&r(1, 100), &r(1, 1)), 1);
        assert_eq!(segments_needed(&r(101, 1), &r(1, 1)), 11);
    }

    #[test]
    fn three_points_one_triangle() {
        let k = delaunay(&[p(0, 0), p(2, 0), p(1, 3)]).unwrap();
        assert_eq!(k.triangles(), &[[0, 1, 2]]);
        assert_eq!(k.edges().len(), 3);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn square_diagonal_follows_tie_rule() {
        // Both diagonals are legal: brute-force each candidate pair.
        let pts = vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        for (t1, t2) in [([0, 1, 2], [0, 2, 3]), ([0, 1, 3], [1, 2, 3])] {
            let k = SimplicialComplex::new(pts.clone(), vec![t1, t2]).unwrap();
            assert!(is_delaunay(&k));
        }
        let k = delaunay(&pts).unwrap();
        assert_eq!(k.num_triangles(), 2);
        assert_eq!(k.edges().len(), 5);
        assert!(k.edges().contains(&[0, 2]), "(0,2) < (1,3)");
        // Relabel so the other diagonal has the smaller pair.
        let k = delaunay(&[p(1, 0), p(0, 0), p(0, 1), p(1, 1)]).unwrap();
        assert!(k.edges().contains(&[0, 2]));
        assert_eq!(k.vertex(0), &p(1, 0));
        assert_eq!(k.vertex(2), &p(0, 1));
    }

    #[test]
    fn collinear_or_tiny_inputs_fail() {
        assert_eq!(
            delaunay(&[p(0, 0), p(1, 1)]).unwrap_err().code(),
            "TRIANGULATION_IMPOSSIBLE"
        );
        assert_eq!(
            delaunay(&[p(0, 0), p(1, 1), p(2, 2), p(3, 3)]).unwrap_err().code(),
            "TRIANGULATION_IMPOSSIBLE"
        );
        assert!(delaunay(&[p(0, 0), p(0, 0), p(1, 1)]).is_err());
    }

    #[test]
    fn collinear_prefix_then_apex() {
        let pts = vec![p(0, 0), p(1, 0), p(2, 0), p(3, 0), p(1, 5)];
        let k = delaunay(&pts).unwrap();
        assert_eq!(k.num_triangles(), 3);
        assert!(is_delaunay(&k));
        assert_eq!(total_area(&k), convex_hull_area(&pts));
    }

    #[test]
    fn duplicates_are_dropped() {
        let k = delaunay(&[p(0, 0), p(1, 0), p(0, 0), p(0, 1)]).unwrap();
        assert_eq!(k.num_vertices(), 3);
    }

    #[test]
    fn grid_is_delaunay_and_fills_hull() {
        let pts: Vec<Point2> = (0..6).flat_map(|i| (0..5).map(move |j| p(i, j))).collect();
        let k = delaunay(&pts).unwrap();
        assert_eq!(k.num_triangles(), 2 * 5 * 4);
        assert!(is_delaunay(&k));
        assert_eq!(k.euler_characteristic(), 1);
        k.check_interiors_disjoint().unwrap();
        // Every cell diagonal is the one with the smaller index pair.
        for i in 0..5usize {
            for j in 0..4usize {
                let v = |a: usize, b: usize| a * 5 + b;
                let d1 = edge(v(i, j), v(i + 1, j + 1));
                let d2 = edge(v(i + 1, j), v(i, j + 1));
                assert!(k.edges().contains(&d1.min(d2)));
                assert!(!k.edges().contains(&d1.max(d2)));
            }
        }
    }

    #[test]
    fn big_coordinates_take_the_bigint_path() {
        let big = 1i64 << 40;
        let pts = vec![p(0, 0), p(big, 1), p(3, big), Point2::ratio(1, 1, 7), p(big, big)];
        let k = delaunay(&pts).unwrap();
        assert!(is_delaunay(&k));
        assert_eq!(total_area(&k), convex_hull_area(&pts));
        k.check_interiors_disjoint().unwrap();
    }

    #[test]
    fn square_shape_labels() {
        let shape = unit_square();
        let k = delaunay(shape.outer()).unwrap();
        let sc = build_shape_complex(k, shape);
        let labels = sc.complex().labels().unwrap();
        assert!(labels.vertices.iter().all(|&l| l == Label::ShapeBoundary));
        assert!(labels.triangles.iter().all(|l| l.is_shape()));
        assert_eq!(sc.shape_vertex_ids().len(), 4);
    }

    #[test]
    fn margin_vertices_are_exterior() {
        let shape = unit_square();
        let sc = triangulate_shape(&shape, &sampling(rational(1, 2), rational(1, 2), rational(1, 1))).unwrap();
        let k = sc.complex();
        let exterior: Vec<usize> = (0..k.num_vertices())
            .filter(|&v| k.vertex_label(v) == Some(Label::Exterior))
            .collect();
        assert!(!exterior.is_empty());
        for v in exterior {
            assert_eq!(point_in_polygon(&shape, k.vertex(v)), PolygonLocation::Exterior);
        }
    }

    #[test]
    fn annulus_hole_triangles_are_exterior() {
        let outer = vec![p(0, 0), p(6, 0), p(6, 6), p(0, 6)];
        let hole = vec![p(2, 2), p(4, 2), p(4, 4), p(2, 4)];
        let shape = SimplePolygon::new(outer, vec![hole]).unwrap();
        let sc = triangulate_shape(&shape, &sampling(rational(1, 1), rational(1, 1), rational(0, 1))).unwrap();
        let k = sc.complex();
        let mut in_hole = 0;
        for t in 0..k.num_triangles() {
            let c = k.triangle_geometry(t).centroid();
            let expected = point_in_polygon(&shape, &c) == PolygonLocation::Interior;
            assert_eq!(k.triangle_label(t).unwrap().is_shape(), expected);
            if !expected {
                in_hole += 1;
            }
        }
        // The hole is an empty 8-gon of boundary samples: 8 - 2 triangles.
        assert_eq!(in_hole, 6);
    }

    #[test]
    fn restrict_keeps_subset() {
        let pts: Vec<Point2> = (0..3).flat_map(|i| (0..3).map(move |j| p(i, j))).collect();
        let k = delaunay(&pts).unwrap();
        let keep: BTreeSet<usize> = [0, 1].into();
        let (r, old) = restrict(&k, &keep);
        assert_eq!(r.num_triangles(), 2);
        for (new_t, &old_t) in keep.iter().enumerate() {
            assert_eq!(r.triangle(new_t).map(|v| old[v]), k.triangle(old_t));
        }
    }
}
