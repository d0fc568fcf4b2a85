//! Euler characteristic and Betti numbers over GF(2), abstract nerves of
//! covers, and the nerve-versus-union comparison.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::nerve::{sub_closure, SimplexSet, SubComplex};

/// A downward-closed simplicial complex of dimension at most two on
/// vertices `0..n_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractComplex {
    n_vertices: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl AbstractComplex {
    /// Validates ranges, sortedness-independent duplicates and closure.
    pub fn new(n_vertices: usize, edges: Vec<[usize; 2]>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let bad = |reason: String| Err(Error::ComplexInvalid { reason });
        let mut edge_set = BTreeSet::new();
        for &[a, b] in &edges {
            if a >= n_vertices || b >= n_vertices || a == b {
                return bad(format!(
                    "edge ({a},{b}) is not a valid simplex on {n_vertices} vertices"
                ));
            }
            if !edge_set.insert(sorted2(a, b)) {
                return bad(format!("duplicate edge ({a},{b})"));
            }
        }
        let mut tri_set = BTreeSet::new();
        for &t in &triangles {
            let s = sorted3(t);
            if s[2] >= n_vertices || s[0] == s[1] || s[1] == s[2] {
                return bad(format!(
                    "triangle {t:?} is not a valid simplex on {n_vertices} vertices"
                ));
            }
            if !tri_set.insert(s) {
                return bad(format!("duplicate triangle {t:?}"));
            }
            for e in [[s[0], s[1]], [s[0], s[2]], [s[1], s[2]]] {
                if !edge_set.contains(&e) {
                    return bad(format!("triangle {t:?} is missing edge {e:?}"));
                }
            }
        }
        Ok(AbstractComplex {
            n_vertices,
            edges: edge_set.into_iter().collect(),
            triangles: tri_set.into_iter().collect(),
        })
    }

    /// Closes the given simplexes (vertex lists of length 1..=3) downward.
    pub fn from_simplices<I, S>(n_vertices: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut edges = BTreeSet::new();
        let mut triangles = BTreeSet::new();
        for s in simplices {
            let s = s.as_ref();
            if let Some(&v) = s.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::ComplexInvalid {
                    reason: format!("vertex {v} out of range"),
                });
            }
            match *s {
                [_] => {}
                [a, b] if a != b => {
                    edges.insert(sorted2(a, b));
                }
                [a, b, c] if a != b && b != c && a != c => {
                    let t = sorted3([a, b, c]);
                    triangles.insert(t);
                    edges.extend([[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]);
                }
                _ => {
                    return Err(Error::ComplexInvalid {
                        reason: format!("{s:?} is not a simplex of dimension 0..=2"),
                    })
                }
            }
        }
        Ok(AbstractComplex {
            n_vertices,
            edges: edges.into_iter().collect(),
            triangles: triangles.into_iter().collect(),
        })
    }

    /// Relabels a closed simplex set of `host` onto `0..k`.
    pub fn from_simplex_set(host: &SimplicialComplex, set: &SimplexSet) -> Self {
        let index: BTreeMap<usize, usize> = set.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = set.edges.iter().map(|&[a, b]| sorted2(index[&a], index[&b])).collect();
        let triangles = set
            .triangles
            .iter()
            .map(|&t| sorted3(host.triangle(t).map(|v| index[&v])))
            .collect();
        let mut out = AbstractComplex {
            n_vertices: index.len(),
            edges,
            triangles,
        };
        out.edges.sort_unstable();
        out.triangles.sort_unstable();
        out
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn num_simplices(&self) -> usize {
        self.n_vertices + self.edges.len() + self.triangles.len()
    }
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Anything homology can be computed on.
pub trait Simplicial {
    fn to_abstract(&self) -> Cow<'_, AbstractComplex>;
}

impl Simplicial for AbstractComplex {
    fn to_abstract(&self) -> Cow<'_, AbstractComplex> {
        Cow::Borrowed(self)
    }
}

impl Simplicial for SubComplex<'_> {
    fn to_abstract(&self) -> Cow<'_, AbstractComplex> {
        Cow::Owned(AbstractComplex::from_simplex_set(self.host(), &sub_closure(self)))
    }
}

impl Simplicial for SimplicialComplex {
    fn to_abstract(&self) -> Cow<'_, AbstractComplex> {
        Cow::Owned(AbstractComplex {
            n_vertices: self.num_vertices(),
            edges: self.edges().to_vec(),
            triangles: self.triangles().iter().map(|&t| sorted3(t)).collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiReport {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    pub euler: i64,
    pub v: usize,
    pub e: usize,
    pub t: usize,
}

impl BettiReport {
    pub fn pair(&self) -> (usize, usize) {
        (self.b0, self.b1)
    }

    /// `v - e + t == b0 - b1 + b2`.
    pub fn euler_consistent(&self) -> bool {
        self.euler == self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }

    /// Connected with no 1-cycles.
    pub fn is_acyclic(&self) -> bool {
        self.pair() == (1, 0)
    }
}

/// V - E + T of the closed simplex set.
pub fn euler_characteristic(s: &impl Simplicial) -> i64 {
    let k = s.to_abstract();
    k.n_vertices as i64 - k.edges.len() as i64 + k.triangles.len() as i64
}

pub fn betti(s: &impl Simplicial) -> BettiReport {
    let k = s.to_abstract();
    let (v, e, t) = (k.n_vertices, k.edges.len(), k.triangles.len());
    let b0 = components(v, &k.edges);
    let r2 = boundary2_rank(&k);
    BettiReport {
        b0,
        b1: e + b0 - v - r2,
        b2: t - r2,
        euler: v as i64 - e as i64 + t as i64,
        v,
        e,
        t,
    }
}

fn components(n: usize, edges: &[[usize; 2]]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = n;
    for &[a, b] in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

/// Rank of the triangle-to-edge boundary matrix over GF(2), by reducing
/// each column against pivots keyed on their highest set bit.
fn boundary2_rank(k: &AbstractComplex) -> usize {
    let index: BTreeMap<[usize; 2], usize> = k.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let words = k.edges.len().div_ceil(64);
    let mut pivots: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for &[a, b, c] in &k.triangles {
        let mut col = vec![0u64; words];
        for e in [[a, b], [a, c], [b, c]] {
            let i = index[&e];
            col[i / 64] ^= 1 << (i % 64);
        }
        while let Some(top) = highest_bit(&col) {
            match pivots.get(&top) {
                Some(p) => col.iter_mut().zip(p).for_each(|(x, y)| *x ^= y),
                None => {
                    pivots.insert(top, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn highest_bit(col: &[u64]) -> Option<usize> {
    col.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// One nerve vertex per cover element; an edge or triangle wherever the
/// closures of the elements share a vertex. Truncated at dimension two.
pub fn abstract_nerve(cover: &[SubComplex<'_>]) -> Result<AbstractComplex> {
    let Some(first) = cover.first() else {
        return Ok(AbstractComplex {
            n_vertices: 0,
            edges: Vec::new(),
            triangles: Vec::new(),
        });
    };
    if cover.iter().any(|s| !s.same_host(first)) {
        return Err(Error::HostMismatch);
    }
    let mut holders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, s) in cover.iter().enumerate() {
        for v in s.closure_vertices() {
            holders.entry(v).or_default().push(i);
        }
    }
    let mut edges = BTreeSet::new();
    let mut triangles = BTreeSet::new();
    for ids in holders.values() {
        for (x, &i) in ids.iter().enumerate() {
            for (y, &j) in ids.iter().enumerate().skip(x + 1) {
                edges.insert([i, j]);
                for &k in &ids[y + 1..] {
                    triangles.insert([i, j, k]);
                }
            }
        }
    }
    Ok(AbstractComplex {
        n_vertices: cover.len(),
        edges: edges.into_iter().collect(),
        triangles: triangles.into_iter().collect(),
    })
}

/// Outcome of comparing a cover's nerve with the union of the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveTheoremCheck {
    /// Nerve and union agree on `(b0, b1)`.
    pub consistent: bool,
    pub nerve: BettiReport,
    pub union: BettiReport,
    /// Per cover element: its closure is connected and has no 1-cycles.
    pub elements_acyclic: Vec<bool>,
    /// Nerve edges and triangles whose common closure is not acyclic.
    pub cyclic_intersections: Vec<Vec<usize>>,
}

impl NerveTheoremCheck {
    /// Whether every element and every nonempty intersection passes the
    /// acyclicity proxy.
    pub fn hypothesis_holds(&self) -> bool {
        self.elements_acyclic.iter().all(|&ok| ok) && self.cyclic_intersections.is_empty()
    }
}

pub fn nerve_theorem_check(cover: &[SubComplex<'_>]) -> Result<NerveTheoremCheck> {
    let Some(first) = cover.first() else {
        return Err(Error::EmptyCover);
    };
    let nerve_complex = abstract_nerve(cover)?;
    let mut union = first.clone();
    for s in &cover[1..] {
        union = union.union(s)?;
    }
    let closures: Vec<SimplexSet> = cover.iter().map(sub_closure).collect();
    let elements_acyclic = closures
        .iter()
        .map(|c| betti(&AbstractComplex::from_simplex_set(first.host(), c)).is_acyclic())
        .collect();
    let mut cyclic_intersections = Vec::new();
    let simplices = nerve_complex
        .edges
        .iter()
        .map(|e| e.to_vec())
        .chain(nerve_complex.triangles.iter().map(|t| t.to_vec()));
    for ids in simplices {
        let common = ids[1..]
            .iter()
            .fold(closures[ids[0]].clone(), |acc, &i| acc.intersection(&closures[i]));
        if !betti(&AbstractComplex::from_simplex_set(first.host(), &common)).is_acyclic() {
            cyclic_intersections.push(ids);
        }
    }
    let nerve = betti(&nerve_complex);
    let union = betti(&union);
    Ok(NerveTheoremCheck {
        consistent: nerve.pair() == union.pair(),
        nerve,
        union,
        elements_acyclic,
        cyclic_intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::Point2;
    use crate::nerve::{shape_subcomplex, star, star_cover};

    fn single_triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            vec![Point2::int(0, 0), Point2::int(1, 0), Point2::int(0, 1)],
            vec![[0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn euler_examples() {
        let k = single_triangle();
        assert_eq!(euler_characteristic(&k), 1);
        let two = AbstractComplex::from_simplices(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(euler_characteristic(&two), 2);
        assert_eq!(euler_characteristic(&fixtures::annulus8()), 0);
        let a = fixtures::annulus8();
        let r = betti(&a);
        assert_eq!((r.v, r.e, r.t), (8, 16, 8));
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti(&single_triangle()).pair(), (1, 0));
        let hollow = AbstractComplex::from_simplices(3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(betti(&hollow).pair(), (1, 1));
        let a = betti(&fixtures::annulus8());
        assert_eq!((a.b0, a.b1, a.b2), (1, 1, 0));
        assert_eq!(a.t - a.b2, 8, "rank of the 2-boundary");
        assert!(a.euler_consistent());
    }

    #[test]
    fn hollow_tetrahedron_has_b2() {
        let k = AbstractComplex::from_simplices(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let r = betti(&k);
        assert_eq!((r.b0, r.b1, r.b2), (1, 0, 1));
        assert!(r.euler_consistent());
    }

    #[test]
    fn validation() {
        assert!(AbstractComplex::new(3, vec![[0, 1]], vec![[0, 1, 2]]).is_err());
        assert!(AbstractComplex::new(3, vec![[0, 1], [1, 0]], vec![]).is_err());
        assert!(AbstractComplex::new(2, vec![[0, 2]], vec![]).is_err());
        assert!(AbstractComplex::new(3, vec![[0, 1], [1, 2], [0, 2]], vec![[2, 1, 0]]).is_ok());
        assert!(AbstractComplex::from_simplices(4, [vec![0, 1, 2, 3]]).is_err());
    }

    #[test]
    fn subcomplex_uses_closure() {
        let k = fixtures::hexagon_with_center();
        let s = SubComplex::new(&k, [0]).unwrap();
        assert_eq!(euler_characteristic(&s), 1);
        let hub = star(&k, 6).unwrap().to_subcomplex();
        assert_eq!(betti(&hub).pair(), (1, 0));
        let x = SubComplex::vertex(&k, 3).unwrap();
        assert_eq!(betti(&x).pair(), (1, 0));
        assert_eq!(betti(&SubComplex::empty(&k)).pair(), (0, 0));
    }

    #[test]
    fn nerve_of_single_triangle_stars_is_a_full_simplex() {
        let k = single_triangle();
        let cover: Vec<_> = (0..3).map(|v| star(&k, v).unwrap().to_subcomplex()).collect();
        let n = abstract_nerve(&cover).unwrap();
        assert_eq!((n.n_vertices(), n.edges().len(), n.triangles().len()), (3, 3, 1));
        assert_eq!(betti(&n).pair(), (1, 0));
    }

    #[test]
    fn disjoint_cover_gives_isolated_nerve_vertices() {
        let pts = vec![
            Point2::int(0, 0),
            Point2::int(1, 0),
            Point2::int(0, 1),
            Point2::int(5, 5),
            Point2::int(6, 5),
            Point2::int(5, 6),
        ];
        let k = SimplicialComplex::new(pts, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        let cover = vec![SubComplex::new(&k, [0]).unwrap(), SubComplex::new(&k, [1]).unwrap()];
        let n = abstract_nerve(&cover).unwrap();
        assert_eq!(betti(&n).b0, 2);
        let check = nerve_theorem_check(&cover).unwrap();
        assert!(check.consistent);
        assert_eq!(check.union.pair(), (2, 0));
    }

    #[test]
    fn hexagon_rim_stars() {
        let k = fixtures::hexagon_with_center();
        let cover: Vec<_> = (0..6).map(|v| star(&k, v).unwrap().to_subcomplex()).collect();
        let n = abstract_nerve(&cover).unwrap();
        // Every rim star contains the center, so all pairs and triples meet.
        assert_eq!((n.edges().len(), n.triangles().len()), (15, 20));
        assert_eq!(betti(&n).b0, 1);
        let check = nerve_theorem_check(&cover).unwrap();
        assert!(check.consistent);
    }

    #[test]
    fn convex_star_cover_is_consistent() {
        let sc = fixtures::square_shape_complex();
        let shape = shape_subcomplex(sc.complex());
        let check = nerve_theorem_check(&star_cover(&shape)).unwrap();
        assert!(check.consistent);
        assert_eq!(check.nerve.pair(), (1, 0));
        assert!(check.hypothesis_holds());
    }

    #[test]
    fn sampled_annulus_keeps_its_hole() {
        let sc = fixtures::annulus_shape_complex();
        let shape = shape_subcomplex(sc.complex());
        let check = nerve_theorem_check(&star_cover(&shape)).unwrap();
        assert!(check.consistent);
        assert_eq!(check.union.pair(), (1, 1));
        assert_eq!(check.nerve.pair(), (1, 1));
    }

    #[test]
    fn coarse_annulus_violates_the_intersection_hypothesis() {
        let k = fixtures::annulus8();
        let cover = star_cover(&SubComplex::full(&k));
        let check = nerve_theorem_check(&cover).unwrap();
        assert_eq!(check.union.pair(), (1, 1));
        assert!(!check.hypothesis_holds());
    }

    #[test]
    fn hollow_ring_element_raises_flag() {
        let k = fixtures::annulus8();
        let ring = SubComplex::full(&k);
        let check = nerve_theorem_check(&[ring]).unwrap();
        assert_eq!(check.elements_acyclic, vec![false]);
        assert!(!check.hypothesis_holds());
    }

    #[test]
    fn errors() {
        assert_eq!(nerve_theorem_check(&[]).unwrap_err(), Error::EmptyCover);
        let k1 = single_triangle();
        let k2 = single_triangle();
        let cover = vec![SubComplex::full(&k1), SubComplex::full(&k2)];
        assert_eq!(abstract_nerve(&cover).unwrap_err(), Error::HostMismatch);
        assert_eq!(nerve_theorem_check(&cover).unwrap_err(), Error::HostMismatch);
    }
}
