//! Named fixture complexes and seeded random generators.
//!
//! Random generators take a [`ChaCha8Rng`] so that every fixture is a pure
//! function of its seed.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::geometry::{Point2, SimplePolygon};
use crate::nerve::SubComplex;
use crate::number::rational;
use crate::triangulation::{build_shape_complex, convex_hull, delaunay, triangulate_shape, Sampling, ShapeComplex};

/// The RNG used for every seeded fixture (ChaCha with 8 rounds).
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_square_ring() -> Vec<Point2> {
    vec![
        Point2::int(0, 0),
        Point2::int(1, 0),
        Point2::int(1, 1),
        Point2::int(0, 1),
    ]
}

pub fn unit_square() -> SimplePolygon {
    SimplePolygon::new(unit_square_ring(), vec![]).expect("valid square")
}

/// The unit square triangulated from its own corners.
pub fn square_shape_complex() -> ShapeComplex {
    let shape = unit_square();
    let complex = delaunay(shape.outer()).expect("square triangulates");
    build_shape_complex(complex, shape)
}

/// Rim vertices 0..6 of a centrally symmetric hexagon.
pub fn hexagon_ring() -> Vec<Point2> {
    vec![
        Point2::int(2, 0),
        Point2::int(1, 2),
        Point2::int(-1, 2),
        Point2::int(-2, 0),
        Point2::int(-1, -2),
        Point2::int(1, -2),
    ]
}

/// Hexagon plus its center (vertex 6), Delaunay-triangulated into six
/// triangles around the center.
pub fn hexagon_with_center() -> SimplicialComplex {
    let mut pts = hexagon_ring();
    pts.push(Point2::int(0, 0));
    delaunay(&pts).expect("hexagon triangulates")
}

pub fn hexagon_shape_complex() -> ShapeComplex {
    let shape = SimplePolygon::new(hexagon_ring(), vec![]).expect("valid hexagon");
    build_shape_complex(hexagon_with_center(), shape)
}

/// Square annulus with 8 vertices (outer 0..4, inner 4..8), 16 edges and 8
/// triangles: each trapezoid between an outer and an inner side is split in
/// two.
pub fn annulus8() -> SimplicialComplex {
    let vertices = vec![
        Point2::int(0, 0),
        Point2::int(3, 0),
        Point2::int(3, 3),
        Point2::int(0, 3),
        Point2::int(1, 1),
        Point2::int(2, 1),
        Point2::int(2, 2),
        Point2::int(1, 2),
    ];
    let mut triangles = Vec::new();
    for i in 0..4 {
        let j = (i + 1) % 4;
        triangles.push([i, j, 4 + j]);
        triangles.push([i, 4 + j, 4 + i]);
    }
    SimplicialComplex::new(vertices, triangles).expect("valid annulus")
}

/// 6x6 square with a centered 2x2 square hole.
pub fn annulus_shape() -> SimplePolygon {
    let outer = vec![
        Point2::int(0, 0),
        Point2::int(6, 0),
        Point2::int(6, 6),
        Point2::int(0, 6),
    ];
    let hole = vec![
        Point2::int(2, 2),
        Point2::int(4, 2),
        Point2::int(4, 4),
        Point2::int(2, 4),
    ];
    SimplePolygon::new(outer, vec![hole]).expect("valid annulus")
}

/// The annulus shape sampled at unit pitch (boundary and interior, with a
/// unit exterior margin) and labelled.
pub fn annulus_shape_complex() -> ShapeComplex {
    let sampling = Sampling {
        boundary_step: rational(1, 1),
        interior_spacing: rational(1, 1),
        margin: rational(1, 1),
    };
    triangulate_shape(&annulus_shape(), &sampling).expect("annulus triangulates")
}

/// Nuclei of [`two_star_shape_complex`] joined by an edge.
pub const TWO_STAR_NUCLEI: (usize, usize) = (10, 11);

/// A 3x2 rectangle sampled on the unit lattice; the two interior lattice
/// points are vertices 10 and 11 and their stars overlap in two triangles.
pub fn two_star_shape_complex() -> ShapeComplex {
    let ring = vec![
        Point2::int(0, 0),
        Point2::int(3, 0),
        Point2::int(3, 2),
        Point2::int(0, 2),
    ];
    let shape = SimplePolygon::new(ring.clone(), vec![]).expect("valid rectangle");
    let mut pts = ring;
    pts.extend([
        Point2::int(1, 0),
        Point2::int(2, 0),
        Point2::int(1, 2),
        Point2::int(2, 2),
        Point2::int(0, 1),
        Point2::int(3, 1),
        Point2::int(1, 1),
        Point2::int(2, 1),
    ]);
    build_shape_complex(delaunay(&pts).expect("grid triangulates"), shape)
}

/// A 2x11 strip of lattice points under a U-shaped shape whose only vertices
/// are the strip's two bottom corners; their stars are far apart.
pub fn corridor_shape_complex() -> ShapeComplex {
    let pts: Vec<Point2> = (0..=10).flat_map(|x| [Point2::int(x, 0), Point2::int(x, 1)]).collect();
    let h = |n: i64| rational(n, 2);
    let q = |n: i64| rational(n, 4);
    let ring = vec![
        Point2::new(h(-1), h(-1)),
        Point2::new(h(21), h(-1)),
        Point2::new(h(21), h(1)),
        Point2::new(h(19), h(1)),
        Point2::new(h(19), q(-1)),
        Point2::new(h(1), q(-1)),
        Point2::new(h(1), h(1)),
        Point2::new(h(-1), h(1)),
    ];
    let shape = SimplePolygon::new(ring, vec![]).expect("valid corridor");
    build_shape_complex(delaunay(&pts).expect("strip triangulates"), shape)
}

/// `n` distinct random points with coordinates on the 1/1000 lattice of the
/// unit square. `n >= 3` points are never all collinear.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point2> {
    loop {
        let mut seen = BTreeSet::new();
        while seen.len() < n {
            seen.insert((rng.random_range(0..=1000i64), rng.random_range(0..=1000i64)));
        }
        let mut pts: Vec<Point2> = seen.into_iter().map(|(x, y)| Point2::ratio(x, y, 1000)).collect();
        // Shuffle so input order differs from insertion order.
        for i in (1..pts.len()).rev() {
            let j = rng.random_range(0..=i);
            pts.swap(i, j);
        }
        if n < 3 || convex_hull(&pts).len() >= 3 {
            return pts;
        }
    }
}

/// A random star-shaped simple polygon with 4..=12 vertices on the 1/4
/// lattice, roughly 8 units across.
pub fn random_simple_polygon(rng: &mut ChaCha8Rng) -> SimplePolygon {
    loop {
        let n = rng.random_range(4..=12usize);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let ring: Vec<Point2> = angles
            .iter()
            .map(|&a| {
                let r = rng.random_range(1.5..4.0);
                let x = (4.0 * (4.0 + r * a.cos())).round() as i64;
                let y = (4.0 * (4.0 + r * a.sin())).round() as i64;
                Point2::ratio(x, y, 4)
            })
            .collect();
        if let Ok(poly) = SimplePolygon::new(ring, vec![]) {
            return poly;
        }
    }
}

/// A random convex polygon: the hull of 5..=14 points on the 1/4 lattice.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng) -> SimplePolygon {
    loop {
        let n = rng.random_range(5..=14usize);
        let pts: Vec<Point2> = (0..n)
            .map(|_| {
                let a = rng.random_range(0.0..std::f64::consts::TAU);
                let r = rng.random_range(2.0..4.0);
                let x = (4.0 * (4.0 + r * a.cos())).round() as i64;
                let y = (4.0 * (4.0 + r * a.sin())).round() as i64;
                Point2::ratio(x, y, 4)
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            if let Ok(poly) = SimplePolygon::new(hull, vec![]) {
                return poly;
            }
        }
    }
}

/// Sampling used for the random polygon suites.
pub fn default_sampling() -> Sampling {
    Sampling {
        boundary_step: rational(1, 1),
        interior_spacing: rational(1, 1),
        margin: rational(1, 1),
    }
}

/// A family of `count` random sub-complexes of `host`: a mix of vertex stars,
/// grown connected patches and scattered triangle sets, plus unions of
/// earlier members so that overlaps are common.
pub fn random_family<'a>(rng: &mut ChaCha8Rng, host: &'a SimplicialComplex, count: usize) -> Vec<SubComplex<'a>> {
    let nt = host.num_triangles();
    let mut family: Vec<SubComplex<'a>> = Vec::with_capacity(count);
    while family.len() < count {
        let kind = rng.random_range(0..4u8);
        let triangles: BTreeSet<usize> = match kind {
            0 => {
                let v = rng.random_range(0..host.num_vertices());
                host.vertex_triangles(v).iter().copied().collect()
            }
            1 => {
                let size = rng.random_range(1..=6);
                grow_patch(rng, host, size)
            }
            2 => {
                let k = rng.random_range(1..=4.min(nt));
                (0..k).map(|_| rng.random_range(0..nt)).collect()
            }
            _ => {
                if family.len() >= 2 {
                    let a = family.choose(rng).unwrap().triangle_ids().clone();
                    let b = family.choose(rng).unwrap().triangle_ids().clone();
                    &a | &b
                } else {
                    grow_patch(rng, host, 3)
                }
            }
        };
        if triangles.is_empty() {
            continue;
        }
        family.push(SubComplex::new(host, triangles).expect("ids in range"));
    }
    family
}

/// Edge-connected patch of up to `size` triangles grown from a random seed.
fn grow_patch(rng: &mut ChaCha8Rng, host: &SimplicialComplex, size: usize) -> BTreeSet<usize> {
    let seed = rng.random_range(0..host.num_triangles());
    let mut patch = BTreeSet::from([seed]);
    let mut frontier = vec![seed];
    while patch.len() < size && !frontier.is_empty() {
        let i = rng.random_range(0..frontier.len());
        let t = frontier.swap_remove(i);
        let tri = host.triangle(t);
        for k in 0..3 {
            for &u in host.edge_triangles(tri[k], tri[(k + 1) % 3]) {
                if patch.len() < size && patch.insert(u) {
                    frontier.push(u);
                }
            }
        }
    }
    patch
}

/// Delaunay complex of `n` random points.
pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    delaunay(&random_points(rng, n)).expect("random points are not collinear")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_simple_polygon;

    #[test]
    fn annulus8_counts() {
        let k = annulus8();
        assert_eq!(k.num_vertices(), 8);
        assert_eq!(k.edges().len(), 16);
        assert_eq!(k.num_triangles(), 8);
        k.check_interiors_disjoint().unwrap();
    }

    #[test]
    fn hexagon_center_is_vertex_six() {
        let k = hexagon_with_center();
        assert_eq!(k.vertex(6), &Point2::int(0, 0));
        assert_eq!(k.num_triangles(), 6);
        assert!(k.triangles().iter().all(|t| t.contains(&6)));
    }

    #[test]
    fn random_generators_are_seeded() {
        let a = random_points(&mut rng(3), 40);
        let b = random_points(&mut rng(3), 40);
        assert_eq!(a, b);
        let p = random_simple_polygon(&mut rng(5));
        assert_eq!(is_simple_polygon(p.outer()), Ok(true));
        assert_eq!(p, random_simple_polygon(&mut rng(5)));
    }

    #[test]
    fn two_star_nuclei_are_interior_lattice_points() {
        let sc = two_star_shape_complex();
        let (p, q) = TWO_STAR_NUCLEI;
        assert_eq!(sc.complex().vertex(p), &Point2::int(1, 1));
        assert_eq!(sc.complex().vertex(q), &Point2::int(2, 1));
    }

    #[test]
    fn corridor_shape_vertices() {
        let sc = corridor_shape_complex();
        let ids: Vec<usize> = sc.shape_vertex_ids().iter().copied().collect();
        let pts: Vec<Point2> = ids.iter().map(|&v| sc.complex().vertex(v).clone()).collect();
        assert_eq!(pts, vec![Point2::int(0, 0), Point2::int(10, 0)]);
    }

    #[test]
    fn family_members_are_nonempty() {
        let k = random_complex(&mut rng(1), 30);
        let fam = random_family(&mut rng(2), &k, 25);
        assert_eq!(fam.len(), 25);
        assert!(fam.iter().all(|s| !s.is_empty()));
    }
}
