//! Spatial, strong and descriptive proximity between sub-complexes.
//!
//! The points of the space are the vertices of the host complex; a
//! sub-complex is read as the union of its closed filled triangles (plus any
//! bare vertices).
//!
//! * `near`: the closures share a simplex.
//! * `strongly_near`: the interiors share a simplex. For triangle sets this is
//!   exactly "share a filled triangle"; the extra cases only arise for bare
//!   vertices, e.g. `{x}` is strongly near `{x}`.
//! * descriptive relations compare descriptions rather than locations. A
//!   triangle is described by its quantized [`FeatureVector`]; an interior
//!   vertex carries a membership description (its own identity), since it
//!   has no triangle features of its own.

mod axioms;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Triangle2};
use crate::nerve::{sub_closure, sub_interior, SimplexSet, SubComplex};
use crate::number;

pub use axioms::{check_axioms, AxiomReport, AxiomResult, AxiomSuite, Counterexample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Area,
    Perimeter,
    CentroidX,
    CentroidY,
    /// Smallest interior angle, radians.
    MinAngle,
}

impl Feature {
    pub fn name(self) -> &'static str {
        match self {
            Feature::Area => "area",
            Feature::Perimeter => "perimeter",
            Feature::CentroidX => "centroid-x",
            Feature::CentroidY => "centroid-y",
            Feature::MinAngle => "min-angle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "area" => Some(Feature::Area),
            "perimeter" => Some(Feature::Perimeter),
            "centroid-x" | "centroid_x" => Some(Feature::CentroidX),
            "centroid-y" | "centroid_y" => Some(Feature::CentroidY),
            "min-angle" | "min_angle" => Some(Feature::MinAngle),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Near,
    StronglyNear,
    DescriptivelyNear,
    StronglyDescriptivelyNear,
}

impl Relation {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "near" => Some(Relation::Near),
            "snear" => Some(Relation::StronglyNear),
            "dnear" => Some(Relation::DescriptivelyNear),
            "dsnear" => Some(Relation::StronglyDescriptivelyNear),
            _ => None,
        }
    }

    pub fn all() -> BTreeSet<Relation> {
        [
            Relation::Near,
            Relation::StronglyNear,
            Relation::DescriptivelyNear,
            Relation::StronglyDescriptivelyNear,
        ]
        .into()
    }
}

/// Feature selection and equality resolution for descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityConfig {
    features: Vec<Feature>,
    quantum: BigRational,
    relations: BTreeSet<Relation>,
}

impl ProximityConfig {
    pub fn new(features: Vec<Feature>, quantum: BigRational) -> Result<Self> {
        if !quantum.is_positive() {
            return Err(Error::InvalidConfig {
                reason: "quantum must be positive".into(),
            });
        }
        if features.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "at least one feature is required".into(),
            });
        }
        Ok(ProximityConfig {
            features,
            quantum,
            relations: Relation::all(),
        })
    }

    /// Area-only descriptions with quantum `1e-9 * diag^2`, where `diag` is
    /// the diagonal of the host's bounding box.
    pub fn area_default(host: &SimplicialComplex) -> Self {
        let (lo, hi) = bounding_box(host.vertices());
        let dx = &hi.x - &lo.x;
        let dy = &hi.y - &lo.y;
        let mut diag2 = &dx * &dx + &dy * &dy;
        if !diag2.is_positive() {
            diag2 = number::rational(1, 1);
        }
        let quantum = diag2 * number::rational(1, 1_000_000_000);
        ProximityConfig::new(vec![Feature::Area], quantum).expect("positive quantum")
    }

    pub fn with_relations(mut self, relations: BTreeSet<Relation>) -> Self {
        self.relations = relations;
        self
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn quantum(&self) -> &BigRational {
        &self.quantum
    }

    pub fn relations(&self) -> &BTreeSet<Relation> {
        &self.relations
    }

    pub fn is_active(&self, r: Relation) -> bool {
        self.relations.contains(&r)
    }
}

fn bounding_box(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = points.first().cloned().unwrap_or_else(|| Point2::int(0, 0));
    let mut hi = lo.clone();
    for p in points {
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

/// A triangle description: raw feature values and their quantized grid keys.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    keys: Vec<i128>,
}

impl FeatureVector {
    /// Grid cell of each component; equal keys mean equal descriptions.
    pub fn keys(&self) -> &[i128] {
        &self.keys
    }

    pub fn description_eq(&self, other: &FeatureVector) -> bool {
        self.keys == other.keys
    }
}

/// Describes a triangle by the configured features.
pub fn describe(t: &Triangle2, cfg: &ProximityConfig) -> Result<FeatureVector> {
    if t.is_degenerate() {
        return Err(Error::DegenerateTriangle);
    }
    let quantum_f = number::to_f64(&cfg.quantum);
    let mut values = Vec::with_capacity(cfg.features.len());
    let mut keys = Vec::with_capacity(cfg.features.len());
    // Squared side lengths are exact, so congruent triangles produce
    // bit-identical length-derived features.
    let mut sides2: Vec<BigRational> = [(&t.a, &t.b), (&t.b, &t.c), (&t.c, &t.a)]
        .iter()
        .map(|(p, q)| {
            let dx = &q.x - &p.x;
            let dy = &q.y - &p.y;
            &dx * &dx + &dy * &dy
        })
        .collect();
    sides2.sort();
    for &f in &cfg.features {
        match f {
            Feature::Area => {
                let area = t.area();
                values.push(number::to_f64(&area));
                keys.push(exact_key(&area, &cfg.quantum));
            }
            Feature::CentroidX | Feature::CentroidY => {
                let c = t.centroid();
                let v = if f == Feature::CentroidX { c.x } else { c.y };
                values.push(number::to_f64(&v));
                keys.push(exact_key(&v, &cfg.quantum));
            }
            Feature::Perimeter => {
                let v: f64 = sides2.iter().map(|s| number::to_f64(s).sqrt()).sum();
                values.push(v);
                keys.push(float_key(v, quantum_f));
            }
            Feature::MinAngle => {
                // Smallest angle is opposite the shortest side.
                let (a2, b2, c2) = (&sides2[2], &sides2[1], &sides2[0]);
                let num = number::to_f64(&(a2 + b2 - c2));
                let den = 2.0 * number::to_f64(&(a2 * b2)).sqrt();
                let v = (num / den).clamp(-1.0, 1.0).acos();
                values.push(v);
                keys.push(float_key(v, quantum_f));
            }
        }
    }
    Ok(FeatureVector { values, keys })
}

/// Nearest grid index `round(v / q)`, exact.
fn exact_key(v: &BigRational, q: &BigRational) -> i128 {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let k = (v / q + half).floor().to_integer();
    k.to_i128()
        .unwrap_or(if k.is_negative() { i128::MIN } else { i128::MAX })
}

fn float_key(v: f64, q: f64) -> i128 {
    (v / q).round() as i128
}

/// What a described element looks like.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Description {
    Triangle(Vec<i128>),
    /// Membership description of a vertex.
    Vertex(usize),
}

/// An element of a sub-complex that carries a description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Triangle(usize),
    Vertex(usize),
}

/// Result of a descriptive intersection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DescriptiveIntersection {
    pub triangles: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
}

impl DescriptiveIntersection {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty() && self.vertices.is_empty()
    }
}

/// Per-triangle descriptions of a host, computed once.
pub(crate) struct Describer<'a> {
    host: &'a SimplicialComplex,
    cfg: &'a ProximityConfig,
    cache: Vec<Option<Vec<i128>>>,
}

impl<'a> Describer<'a> {
    pub(crate) fn new(host: &'a SimplicialComplex, cfg: &'a ProximityConfig) -> Self {
        Describer {
            host,
            cfg,
            cache: vec![None; host.num_triangles()],
        }
    }

    fn triangle(&mut self, t: usize) -> Vec<i128> {
        if self.cache[t].is_none() {
            let fv = describe(&self.host.triangle_geometry(t), self.cfg).expect("host triangles are non-degenerate");
            self.cache[t] = Some(fv.keys);
        }
        self.cache[t].clone().unwrap()
    }

    pub(crate) fn describe(&mut self, e: Element) -> Description {
        match e {
            Element::Triangle(t) => Description::Triangle(self.triangle(t)),
            Element::Vertex(v) => Description::Vertex(v),
        }
    }
}

/// Closure, interior and descriptions of one sub-complex.
pub(crate) struct Profile {
    pub closure: SimplexSet,
    pub interior: SimplexSet,
    /// Described elements: every triangle and every interior vertex.
    pub elements: BTreeSet<Element>,
    pub descriptions: BTreeSet<Description>,
}

impl Profile {
    pub(crate) fn new(s: &SubComplex<'_>, describer: &mut Describer<'_>) -> Self {
        let closure = sub_closure(s);
        let interior = sub_interior(s);
        let elements = described_elements(&interior);
        let descriptions = elements.iter().map(|&e| describer.describe(e)).collect();
        Profile {
            closure,
            interior,
            elements,
            descriptions,
        }
    }

    pub(crate) fn near(&self, other: &Profile) -> bool {
        self.closure.intersects(&other.closure)
    }

    pub(crate) fn strongly_near(&self, other: &Profile) -> bool {
        self.interior.intersects(&other.interior)
    }

    pub(crate) fn descriptively_near(&self, other: &Profile) -> bool {
        !self.descriptions.is_disjoint(&other.descriptions)
    }

    /// Interior elements coincide with all described elements (every
    /// triangle is interior), so the strong descriptive relation compares
    /// the same description sets restricted to the interior.
    pub(crate) fn strongly_descriptively_near(&self, other: &Profile) -> bool {
        let mine = self.interior_descriptions();
        let theirs = other.interior_descriptions();
        mine.iter().any(|d| theirs.contains(d))
    }

    pub(crate) fn interior_descriptions(&self) -> BTreeSet<&Description> {
        // `elements` is already drawn from the interior.
        self.descriptions.iter().collect()
    }
}

fn described_elements(interior: &SimplexSet) -> BTreeSet<Element> {
    interior
        .triangles
        .iter()
        .map(|&t| Element::Triangle(t))
        .chain(interior.vertices.iter().map(|&v| Element::Vertex(v)))
        .collect()
}

/// Closures share a vertex, edge or triangle.
pub fn near(a: &SubComplex<'_>, b: &SubComplex<'_>) -> Result<bool> {
    a.check_host(b)?;
    Ok(sub_closure(a).intersects(&sub_closure(b)))
}

/// Interiors share a simplex; for triangle sets, a common filled triangle.
pub fn strongly_near(a: &SubComplex<'_>, b: &SubComplex<'_>) -> Result<bool> {
    a.check_host(b)?;
    Ok(sub_interior(a).intersects(&sub_interior(b)))
}

/// Elements of `a ∪ b` whose description occurs among the descriptions of
/// `a` and among those of `b`.
pub fn descriptive_intersection(
    a: &SubComplex<'_>,
    b: &SubComplex<'_>,
    cfg: &ProximityConfig,
) -> Result<DescriptiveIntersection> {
    a.check_host(b)?;
    let mut describer = Describer::new(a.host(), cfg);
    let ea = described_elements(&sub_interior(a));
    let eb = described_elements(&sub_interior(b));
    let da: BTreeSet<Description> = ea.iter().map(|&e| describer.describe(e)).collect();
    let db: BTreeSet<Description> = eb.iter().map(|&e| describer.describe(e)).collect();
    let mut out = DescriptiveIntersection::default();
    for &e in ea.union(&eb) {
        let d = describer.describe(e);
        if da.contains(&d) && db.contains(&d) {
            match e {
                Element::Triangle(t) => out.triangles.insert(t),
                Element::Vertex(v) => out.vertices.insert(v),
            };
        }
    }
    Ok(out)
}

pub fn descriptively_near(a: &SubComplex<'_>, b: &SubComplex<'_>, cfg: &ProximityConfig) -> Result<bool> {
    Ok(!descriptive_intersection(a, b, cfg)?.is_empty())
}

/// Descriptive intersection of the interiors is nonempty.
pub fn strongly_descriptively_near(a: &SubComplex<'_>, b: &SubComplex<'_>, cfg: &ProximityConfig) -> Result<bool> {
    a.check_host(b)?;
    let mut describer = Describer::new(a.host(), cfg);
    let da: BTreeSet<Description> = described_elements(&sub_interior(a))
        .into_iter()
        .map(|e| describer.describe(e))
        .collect();
    Ok(described_elements(&sub_interior(b))
        .into_iter()
        .any(|e| da.contains(&describer.describe(e))))
}

/// Evaluates one relation by name.
pub fn relate(r: Relation, a: &SubComplex<'_>, b: &SubComplex<'_>, cfg: &ProximityConfig) -> Result<bool> {
    match r {
        Relation::Near => near(a, b),
        Relation::StronglyNear => strongly_near(a, b),
        Relation::DescriptivelyNear => descriptively_near(a, b, cfg),
        Relation::StronglyDescriptivelyNear => strongly_descriptively_near(a, b, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::Point2;
    use crate::number::rational;
    use crate::triangulation::delaunay;
    use proptest::prelude::*;

    fn area_cfg(q: BigRational) -> ProximityConfig {
        ProximityConfig::new(vec![Feature::Area], q).unwrap()
    }

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Triangle2 {
        Triangle2::new(Point2::int(a.0, a.1), Point2::int(b.0, b.1), Point2::int(c.0, c.1))
    }

    /// Two unit right triangles far apart, plus a bigger one: vertices
    /// 0..3 | 3..6 | 6..9, triangles (0,1,2), (3,4,5), (6,7,8).
    fn separate_triangles() -> SimplicialComplex {
        let pts = vec![
            Point2::int(0, 0),
            Point2::int(1, 0),
            Point2::int(0, 1),
            Point2::int(10, 10),
            Point2::int(11, 10),
            Point2::int(10, 11),
            Point2::int(20, 0),
            Point2::int(22, 0),
            Point2::int(20, 2),
        ];
        SimplicialComplex::new(pts, vec![[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap()
    }

    #[test]
    fn describe_examples() {
        let cfg = area_cfg(rational(1, 1000));
        let unit = describe(&tri((0, 0), (1, 0), (0, 1)), &cfg).unwrap();
        assert_eq!(unit.values, vec![0.5]);
        let moved = describe(&tri((5, 5), (6, 5), (5, 6)), &cfg).unwrap();
        assert_eq!(moved.values, vec![0.5]);
        assert!(unit.description_eq(&moved));
        let big = describe(&tri((0, 0), (2, 0), (0, 2)), &cfg).unwrap();
        assert_eq!(big.values, vec![2.0]);
        assert!(!unit.description_eq(&big));
        assert_eq!(
            describe(&tri((0, 0), (1, 1), (2, 2)), &cfg).unwrap_err(),
            Error::DegenerateTriangle
        );
    }

    #[test]
    fn translation_changes_only_centroid_features() {
        let cfg = ProximityConfig::new(
            vec![
                Feature::Area,
                Feature::Perimeter,
                Feature::MinAngle,
                Feature::CentroidX,
                Feature::CentroidY,
            ],
            rational(1, 1_000_000),
        )
        .unwrap();
        let a = describe(&tri((0, 0), (3, 0), (1, 2)), &cfg).unwrap();
        let b = describe(&tri((5, 7), (8, 7), (6, 9)), &cfg).unwrap();
        assert_eq!(a.keys()[..3], b.keys()[..3]);
        assert_ne!(a.keys()[3], b.keys()[3]);
        assert_ne!(a.keys()[4], b.keys()[4]);
    }

    #[test]
    fn config_requires_positive_quantum() {
        assert!(ProximityConfig::new(vec![Feature::Area], rational(0, 1)).is_err());
        assert!(ProximityConfig::new(vec![], rational(1, 1)).is_err());
        let k = fixtures::hexagon_with_center();
        assert!(ProximityConfig::area_default(&k).quantum().is_positive());
    }

    #[test]
    fn near_examples() {
        // Star triangles around the hexagon center share the center vertex.
        let k = fixtures::hexagon_with_center();
        let t0 = k.vertex_triangles(0)[0];
        let opposite = (0..k.num_triangles())
            .find(|&t| !k.triangle(t).iter().any(|v| k.triangle(t0).contains(v) && *v != 6))
            .unwrap();
        let a = SubComplex::new(&k, [t0]).unwrap();
        let b = SubComplex::new(&k, [opposite]).unwrap();
        assert!(near(&a, &b).unwrap(), "share only the center vertex");
        assert!(!strongly_near(&a, &b).unwrap());

        let s = separate_triangles();
        let a = SubComplex::new(&s, [0]).unwrap();
        let b = SubComplex::new(&s, [1]).unwrap();
        assert!(!near(&a, &b).unwrap());
        assert!(near(&a, &a).unwrap());
        assert!(strongly_near(&a, &a).unwrap());
    }

    #[test]
    fn edge_sharing_is_near_but_not_strongly_near() {
        let k = delaunay(&fixtures::unit_square_ring()).unwrap();
        let a = SubComplex::new(&k, [0]).unwrap();
        let b = SubComplex::new(&k, [1]).unwrap();
        assert!(near(&a, &b).unwrap());
        assert!(!strongly_near(&a, &b).unwrap());
    }

    #[test]
    fn two_star_fixture_is_strongly_near() {
        let sc = fixtures::two_star_shape_complex();
        let (p, q) = fixtures::TWO_STAR_NUCLEI;
        let a = crate::nerve::star(sc.complex(), p).unwrap().to_subcomplex();
        let b = crate::nerve::star(sc.complex(), q).unwrap().to_subcomplex();
        assert!(strongly_near(&a, &b).unwrap());
        let cfg = ProximityConfig::area_default(sc.complex());
        assert!(descriptively_near(&a, &b, &cfg).unwrap());
        assert!(strongly_descriptively_near(&a, &b, &cfg).unwrap());
    }

    #[test]
    fn host_mismatch() {
        let k1 = fixtures::hexagon_with_center();
        let k2 = fixtures::hexagon_with_center();
        let a = SubComplex::full(&k1);
        let b = SubComplex::full(&k2);
        let cfg = ProximityConfig::area_default(&k1);
        for r in Relation::all() {
            assert_eq!(relate(r, &a, &b, &cfg).unwrap_err(), Error::HostMismatch);
        }
        assert_eq!(descriptive_intersection(&a, &b, &cfg).unwrap_err(), Error::HostMismatch);
    }

    #[test]
    fn descriptive_examples() {
        let s = separate_triangles();
        let cfg = area_cfg(rational(1, 100));
        let a = SubComplex::new(&s, [0]).unwrap();
        let b = SubComplex::new(&s, [1]).unwrap();
        let c = SubComplex::new(&s, [2]).unwrap();
        let ab = descriptive_intersection(&a, &b, &cfg).unwrap();
        assert_eq!(ab.triangles, BTreeSet::from([0, 1]));
        assert!(descriptively_near(&a, &b, &cfg).unwrap());
        assert!(!near(&a, &b).unwrap());
        // Areas 0.5 vs 2.0.
        assert!(descriptive_intersection(&a, &c, &cfg).unwrap().is_empty());
        assert!(!descriptively_near(&a, &c, &cfg).unwrap());
        assert!(!strongly_descriptively_near(&a, &c, &cfg).unwrap());
        // Single-triangle interiors are the triangles themselves.
        assert!(strongly_descriptively_near(&a, &b, &cfg).unwrap());
    }

    #[test]
    fn shared_triangle_is_in_descriptive_intersection() {
        let k = fixtures::hexagon_with_center();
        let cfg = ProximityConfig::area_default(&k);
        let a = crate::nerve::star(&k, 0).unwrap().to_subcomplex();
        let b = crate::nerve::star(&k, 1).unwrap().to_subcomplex();
        let shared = a.triangle_ids() & b.triangle_ids();
        assert!(!shared.is_empty());
        let di = descriptive_intersection(&a, &b, &cfg).unwrap();
        assert!(shared.is_subset(&di.triangles));
    }

    #[test]
    fn single_vertex_relations() {
        let k = fixtures::hexagon_with_center();
        let cfg = ProximityConfig::area_default(&k);
        let x = SubComplex::vertex(&k, 6).unwrap();
        let y = SubComplex::vertex(&k, 0).unwrap();
        let hub = crate::nerve::star(&k, 6).unwrap().to_subcomplex();
        assert!(strongly_near(&x, &x).unwrap());
        assert!(!strongly_near(&x, &y).unwrap());
        assert!(strongly_near(&x, &hub).unwrap(), "center is interior to its star");
        assert!(!strongly_near(&y, &hub).unwrap(), "rim vertex is on the star boundary");
        assert!(near(&y, &hub).unwrap());
        assert!(descriptively_near(&x, &hub, &cfg).unwrap());
        assert!(strongly_descriptively_near(&x, &hub, &cfg).unwrap());
    }

    fn rigid(t: &Triangle2, (c, s): (BigRational, BigRational), dx: i64, dy: i64) -> Triangle2 {
        let m = |p: &Point2| {
            Point2::new(
                &c * &p.x - &s * &p.y + rational(dx, 1),
                &s * &p.x + &c * &p.y + rational(dy, 1),
            )
        };
        Triangle2::new(m(&t.a), m(&t.b), m(&t.c))
    }

    proptest! {
        #[test]
        fn congruence_invariant_features(
            pts in proptest::collection::vec((-30i64..30, -30i64..30), 3),
            rot in 0usize..4,
            dx in -50i64..50,
            dy in -50i64..50,
            mirror in any::<bool>(),
        ) {
            let t = tri(pts[0], pts[1], pts[2]);
            prop_assume!(!t.is_degenerate());
            // Rational rotations from Pythagorean triples.
            let rotations = [(1, 0, 1), (3, 4, 5), (5, 12, 13), (-8, 15, 17)];
            let (c, s, d) = rotations[rot];
            let mut moved = rigid(&t, (rational(c, d), rational(s, d)), dx, dy);
            if mirror {
                let flip = |p: &Point2| Point2::new(-p.x.clone(), p.y.clone());
                moved = Triangle2::new(flip(&moved.a), flip(&moved.b), flip(&moved.c));
            }
            let cfg = ProximityConfig::new(
                vec![Feature::Area, Feature::Perimeter, Feature::MinAngle],
                rational(1, 1_000_000),
            ).unwrap();
            let a = describe(&t, &cfg).unwrap();
            let b = describe(&moved, &cfg).unwrap();
            prop_assert!(a.description_eq(&b));
        }
    }
}
