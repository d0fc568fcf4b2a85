//! Exact planar predicates on rational points, triangles and polygons.
//!
//! Every coordinate is a [`BigRational`], so orientation, in-circle and
//! point-in-polygon answers are sign-exact; there is no tolerance anywhere in
//! this module.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number;

/// A point of the plane with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point2 {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point2 { x, y }
    }

    /// Point with integer coordinates.
    pub fn int(x: i64, y: i64) -> Self {
        Point2 {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }

    /// Point `(xn/den, yn/den)`.
    pub fn ratio(xn: i64, yn: i64, den: i64) -> Self {
        Point2 {
            x: number::rational(xn, den),
            y: number::rational(yn, den),
        }
    }

    /// Parses a point from two exact decimal (or `p/q`) strings.
    pub fn parse(x: &str, y: &str) -> Option<Self> {
        Some(Point2 {
            x: number::parse_rational(x)?,
            y: number::parse_rational(y)?,
        })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (number::to_f64(&self.x), number::to_f64(&self.y))
    }

    pub fn translate(&self, dx: &BigRational, dy: &BigRational) -> Self {
        Point2 {
            x: &self.x + dx,
            y: &self.y + dy,
        }
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            number::format_rational(&self.x),
            number::format_rational(&self.y)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CircleLocation {
    Inside,
    On,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolygonLocation {
    Interior,
    Boundary,
    Exterior,
}

/// Twice the signed area of `(p, q, r)`; positive when counter-clockwise.
pub fn orientation_determinant(p: &Point2, q: &Point2, r: &Point2) -> BigRational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

pub fn orientation(p: &Point2, q: &Point2, r: &Point2) -> Orientation {
    sign_to_orientation(&orientation_determinant(p, q, r))
}

fn sign_to_orientation(det: &BigRational) -> Orientation {
    if det.is_positive() {
        Orientation::Ccw
    } else if det.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// Filled triangle given by three vertices in any order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangle2 {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
}

impl Triangle2 {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Self {
        Triangle2 { a, b, c }
    }

    pub fn orientation(&self) -> Orientation {
        orientation(&self.a, &self.b, &self.c)
    }

    pub fn is_degenerate(&self) -> bool {
        self.orientation() == Orientation::Collinear
    }

    pub fn vertices(&self) -> [&Point2; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn centroid(&self) -> Point2 {
        let three = BigRational::from_integer(BigInt::from(3));
        Point2 {
            x: (&self.a.x + &self.b.x + &self.c.x) / &three,
            y: (&self.a.y + &self.b.y + &self.c.y) / &three,
        }
    }

    pub fn area(&self) -> BigRational {
        triangle_area(self)
    }
}

impl fmt::Debug for Triangle2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangle2[{:?}, {:?}, {:?}]", self.a, self.b, self.c)
    }
}

/// Position of `p` relative to the circumcircle of `t`, independent of the
/// vertex order of `t`.
pub fn in_circumcircle(t: &Triangle2, p: &Point2) -> Result<CircleLocation> {
    let orient = t.orientation();
    if orient == Orientation::Collinear {
        return Err(Error::DegenerateTriangle);
    }
    let det = incircle_determinant(&t.a, &t.b, &t.c, p);
    let det = if orient == Orientation::Cw { -det } else { det };
    Ok(if det.is_positive() {
        CircleLocation::Inside
    } else if det.is_negative() {
        CircleLocation::Outside
    } else {
        CircleLocation::On
    })
}

/// The classic lifted 3x3 in-circle determinant; positive when `d` is inside
/// the circle through counter-clockwise `a, b, c`.
fn incircle_determinant(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> BigRational {
    let (adx, ady) = (&a.x - &d.x, &a.y - &d.y);
    let (bdx, bdy) = (&b.x - &d.x, &b.y - &d.y);
    let (cdx, cdy) = (&c.x - &d.x, &c.y - &d.y);
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    alift * (&bdx * &cdy - &cdx * &bdy) - blift * (&adx * &cdy - &cdx * &ady) + clift * (&adx * &bdy - &bdx * &ady)
}

/// Unsigned area of a triangle; zero iff its vertices are collinear.
pub fn triangle_area(t: &Triangle2) -> BigRational {
    orientation_determinant(&t.a, &t.b, &t.c).abs() / BigRational::from_integer(BigInt::from(2))
}

/// True when `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    orientation(a, b, p) == Orientation::Collinear && in_box(a, b, p)
}

fn in_box(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// True when the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && in_box(a, b, c))
        || (o2 == Orientation::Collinear && in_box(a, b, d))
        || (o3 == Orientation::Collinear && in_box(c, d, a))
        || (o4 == Orientation::Collinear && in_box(c, d, b))
}

/// Checks a closed ring for simplicity.
pub fn is_simple_polygon(ring: &[Point2]) -> Result<bool> {
    if ring.len() < 3 {
        return Err(Error::TooFewVertices { count: ring.len() });
    }
    Ok(ring_defect(ring).is_none())
}

/// Describes the first simplicity violation of a ring, if any.
pub(crate) fn ring_defect(ring: &[Point2]) -> Option<String> {
    let n = ring.len();
    if n < 3 {
        return Some(format!("ring has {n} vertices, at least 3 are required"));
    }
    for i in 0..n {
        for j in i + 1..n {
            if ring[i] == ring[j] {
                return Some(format!("vertices {i} and {j} coincide at {:?}", ring[i]));
            }
        }
    }
    let edge = |i: usize| (&ring[i], &ring[(i + 1) % n]);
    for i in 0..n {
        // Adjacent edges share ring[i+1]; they may not fold back onto each other.
        let (a, b) = edge(i);
        let (_, c) = edge((i + 1) % n);
        if orientation(a, b, c) == Orientation::Collinear && (on_segment(a, b, c) || on_segment(b, c, a)) {
            return Some(format!("edges {i} and {} overlap", (i + 1) % n));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            if segments_intersect(a, b, c, d) {
                return Some(format!("edges {i} and {j} intersect"));
            }
        }
    }
    if ring_signed_area2(ring).is_zero() {
        return Some("ring encloses zero area".to_string());
    }
    None
}

/// Twice the signed area of a ring (shoelace); positive when counter-clockwise.
pub fn ring_signed_area2(ring: &[Point2]) -> BigRational {
    let n = ring.len();
    let mut acc = BigRational::zero();
    for i in 0..n {
        let (p, q) = (&ring[i], &ring[(i + 1) % n]);
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Location of `p` relative to a single closed ring.
pub fn locate_in_ring(ring: &[Point2], p: &Point2) -> PolygonLocation {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&ring[i], &ring[(i + 1) % n]);
        if on_segment(a, b, p) {
            return PolygonLocation::Boundary;
        }
        // Half-open rule on y makes vertex crossings count once.
        if (a.y > p.y) != (b.y > p.y) {
            let o = orientation(a, b, p);
            let crosses_right = if b.y > a.y {
                o == Orientation::Ccw
            } else {
                o == Orientation::Cw
            };
            if crosses_right {
                inside = !inside;
            }
        }
    }
    if inside {
        PolygonLocation::Interior
    } else {
        PolygonLocation::Exterior
    }
}

/// A simple polygon, optionally with holes.
///
/// Holes are an extension beyond simply-bounded shapes; they exist so that
/// annular shapes (one independent cycle) can be modelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolygon {
    outer: Vec<Point2>,
    holes: Vec<Vec<Point2>>,
}

impl SimplePolygon {
    /// Validates and builds a polygon. Rings are kept in the given vertex order.
    pub fn new(outer: Vec<Point2>, holes: Vec<Vec<Point2>>) -> Result<Self> {
        if outer.len() < 3 {
            return Err(Error::polygon(format!(
                "outer ring has {} vertices, at least 3 are required",
                outer.len()
            )));
        }
        if let Some(defect) = ring_defect(&outer) {
            return Err(Error::polygon(format!("outer ring: {defect}")));
        }
        for (h, hole) in holes.iter().enumerate() {
            if let Some(defect) = ring_defect(hole) {
                return Err(Error::polygon(format!("hole {h}: {defect}")));
            }
            if let Some(v) = hole
                .iter()
                .position(|p| locate_in_ring(&outer, p) != PolygonLocation::Interior)
            {
                return Err(Error::polygon(format!(
                    "hole {h} vertex {v} is not strictly inside the outer ring"
                )));
            }
            if let Some((i, j)) = rings_cross(&outer, hole) {
                return Err(Error::polygon(format!("hole {h} edge {j} intersects outer edge {i}")));
            }
        }
        for h in 0..holes.len() {
            for k in h + 1..holes.len() {
                if let Some((i, j)) = rings_cross(&holes[h], &holes[k]) {
                    return Err(Error::polygon(format!(
                        "hole {h} edge {i} intersects hole {k} edge {j}"
                    )));
                }
                let nested = locate_in_ring(&holes[h], &holes[k][0]) != PolygonLocation::Exterior
                    || locate_in_ring(&holes[k], &holes[h][0]) != PolygonLocation::Exterior;
                if nested {
                    return Err(Error::polygon(format!("holes {h} and {k} overlap")));
                }
            }
        }
        Ok(SimplePolygon { outer, holes })
    }

    pub fn outer(&self) -> &[Point2] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point2>] {
        &self.holes
    }

    /// Outer ring followed by the holes.
    pub fn rings(&self) -> impl Iterator<Item = &[Point2]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(Vec::as_slice))
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = self.outer[0].clone();
        let mut hi = self.outer[0].clone();
        for p in &self.outer {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        (lo, hi)
    }

    /// Area of the outer region minus the holes.
    pub fn area(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        let holes: BigRational = self
            .holes
            .iter()
            .map(|h| ring_signed_area2(h).abs())
            .fold(BigRational::zero(), |acc, a| acc + a);
        (ring_signed_area2(&self.outer).abs() - holes) / two
    }
}

fn rings_cross(a: &[Point2], b: &[Point2]) -> Option<(usize, usize)> {
    for i in 0..a.len() {
        for j in 0..b.len() {
            if segments_intersect(&a[i], &a[(i + 1) % a.len()], &b[j], &b[(j + 1) % b.len()]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Classifies `p` against a polygon with holes. Points on any ring are
/// `Boundary`; points strictly inside a hole are `Exterior`.
pub fn point_in_polygon(poly: &SimplePolygon, p: &Point2) -> PolygonLocation {
    match locate_in_ring(&poly.outer, p) {
        PolygonLocation::Exterior => PolygonLocation::Exterior,
        PolygonLocation::Boundary => PolygonLocation::Boundary,
        PolygonLocation::Interior => {
            for hole in &poly.holes {
                match locate_in_ring(hole, p) {
                    PolygonLocation::Interior => return PolygonLocation::Exterior,
                    PolygonLocation::Boundary => return PolygonLocation::Boundary,
                    PolygonLocation::Exterior => {}
                }
            }
            PolygonLocation::Interior
        }
    }
}
