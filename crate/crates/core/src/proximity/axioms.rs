//! Exhaustive axiom checking over a finite family of sub-complexes.

use std::fmt;

use crate::error::{Error, Result};
use crate::nerve::SubComplex;

use super::{Describer, Element, Profile, ProximityConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomSuite {
    Cech,
    Lodato,
    Strong,
    DescLodato,
    DescStrong,
}

impl AxiomSuite {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CECH" => Some(AxiomSuite::Cech),
            "LODATO" => Some(AxiomSuite::Lodato),
            "STRONG" => Some(AxiomSuite::Strong),
            "DESC_LODATO" => Some(AxiomSuite::DescLodato),
            "DESC_STRONG" => Some(AxiomSuite::DescStrong),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomSuite::Cech => "CECH",
            AxiomSuite::Lodato => "LODATO",
            AxiomSuite::Strong => "STRONG",
            AxiomSuite::DescLodato => "DESC_LODATO",
            AxiomSuite::DescStrong => "DESC_STRONG",
        }
    }

    pub fn all() -> [AxiomSuite; 5] {
        [
            AxiomSuite::Cech,
            AxiomSuite::Lodato,
            AxiomSuite::Strong,
            AxiomSuite::DescLodato,
            AxiomSuite::DescStrong,
        ]
    }
}

/// Smallest failing instance found for an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Operands as `role=ref`, e.g. `A=#3`, `x=v12`, `b=t7`.
    pub operands: Vec<String>,
    /// Total number of triangles and bare vertices involved.
    pub weight: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub statement: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomResult {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub suite: AxiomSuite,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(AxiomResult::holds)
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            if r.holds() {
                writeln!(
                    f,
                    "{} {:<6} holds   instances={}",
                    self.suite.name(),
                    r.axiom,
                    r.instances
                )?;
            } else {
                write!(
                    f,
                    "{} {:<6} FAILS   instances={} failures={}",
                    self.suite.name(),
                    r.axiom,
                    r.instances,
                    r.failures
                )?;
                if let Some(c) = &r.counterexample {
                    write!(f, " counterexample: {}", c.operands.join(" "))?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

struct Tally {
    result: AxiomResult,
}

impl Tally {
    fn new(axiom: &'static str, statement: &'static str) -> Self {
        Tally {
            result: AxiomResult {
                axiom,
                statement,
                instances: 0,
                failures: 0,
                counterexample: None,
            },
        }
    }

    fn record(&mut self, ok: bool, weight: usize, operands: impl FnOnce() -> Vec<String>) {
        self.result.instances += 1;
        if ok {
            return;
        }
        self.result.failures += 1;
        let better = match &self.result.counterexample {
            Some(c) => weight < c.weight,
            None => true,
        };
        if better {
            self.result.counterexample = Some(Counterexample {
                operands: operands(),
                weight,
            });
        }
    }

    fn finish(self) -> AxiomResult {
        self.result
    }
}

fn weight(s: &SubComplex<'_>) -> usize {
    s.triangle_ids().len() + s.bare_vertices().len()
}

fn member(role: &str, i: usize) -> String {
    format!("{role}=#{i}")
}

struct Checker<'a, 'c> {
    family: &'c [SubComplex<'a>],
    profiles: Vec<Profile>,
    weights: Vec<usize>,
    empty: Profile,
    /// Single-vertex sub-complexes of every host vertex.
    points: Vec<Profile>,
    /// Profiles of `family[j] ∪ family[k]`, indexed `[j][k]` for `j < k`.
    pair_unions: Vec<Vec<Option<Profile>>>,
    whole: Option<Profile>,
    describer: Describer<'a>,
}

impl<'a, 'c> Checker<'a, 'c> {
    fn new(family: &'c [SubComplex<'a>], cfg: &'a ProximityConfig) -> Result<Self> {
        let host = family[0].host();
        for s in family {
            family[0].check_host(s)?;
        }
        let mut describer = Describer::new(host, cfg);
        let profiles = family.iter().map(|s| Profile::new(s, &mut describer)).collect();
        let weights = family.iter().map(weight).collect();
        let empty = Profile::new(&SubComplex::empty(host), &mut describer);
        let points = (0..host.num_vertices())
            .map(|v| Profile::new(&SubComplex::vertex(host, v).expect("in range"), &mut describer))
            .collect();
        Ok(Checker {
            family,
            profiles,
            weights,
            empty,
            points,
            pair_unions: Vec::new(),
            whole: None,
            describer,
        })
    }

    fn n(&self) -> usize {
        self.family.len()
    }

    fn prepare_unions(&mut self) {
        let n = self.n();
        let mut table = Vec::with_capacity(n);
        for j in 0..n {
            let mut row = Vec::with_capacity(n);
            for k in 0..n {
                row.push((j < k).then(|| {
                    let u = self.family[j].union(&self.family[k]).expect("same host");
                    Profile::new(&u, &mut self.describer)
                }));
            }
            table.push(row);
        }
        self.pair_unions = table;
        let mut whole = self.family[0].clone();
        for s in &self.family[1..] {
            whole = whole.union(s).expect("same host");
        }
        self.whole = Some(Profile::new(&whole, &mut self.describer));
    }

    fn union(&self, j: usize, k: usize) -> &Profile {
        self.pair_unions[j][k].as_ref().expect("prepared with j < k")
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }

    fn symmetric(&self, name: &'static str, rel: impl Fn(&Profile, &Profile) -> bool) -> AxiomResult {
        let mut t = Tally::new(name, "A R B implies B R A");
        for (i, j) in self.pairs() {
            let (a, b) = (&self.profiles[i], &self.profiles[j]);
            let ok = !rel(a, b) || rel(b, a);
            t.record(ok, self.weights[i] + self.weights[j], || {
                vec![member("A", i), member("B", j)]
            });
        }
        t.finish()
    }

    fn empty_far(&self, name: &'static str, rel: impl Fn(&Profile, &Profile) -> bool) -> AxiomResult {
        let mut t = Tally::new(name, "the empty set is related to nothing");
        for i in 0..self.n() {
            let a = &self.profiles[i];
            let ok = !rel(&self.empty, a) && !rel(a, &self.empty);
            t.record(ok, self.weights[i], || vec!["A=empty".into(), member("B", i)]);
        }
        t.finish()
    }

    fn union_additive(&self, name: &'static str, rel: impl Fn(&Profile, &Profile) -> bool) -> AxiomResult {
        let mut t = Tally::new(name, "A R (B u C) iff A R B or A R C");
        let n = self.n();
        for i in 0..n {
            let a = &self.profiles[i];
            for j in 0..n {
                for k in j + 1..n {
                    let lhs = rel(a, self.union(j, k));
                    let rhs = rel(a, &self.profiles[j]) || rel(a, &self.profiles[k]);
                    let w = self.weights[i] + self.weights[j] + self.weights[k];
                    t.record(lhs == rhs, w, || vec![member("A", i), member("B", j), member("C", k)]);
                }
            }
        }
        t.finish()
    }

    /// `A R B_i` for some member with nonempty interior implies `A R (u B)`,
    /// over every pair sub-family and the whole family.
    fn union_strong(&self, name: &'static str, rel: impl Fn(&Profile, &Profile) -> bool) -> AxiomResult {
        let mut t = Tally::new(name, "A R B_i with int B_i nonempty implies A R (u B)");
        let n = self.n();
        let premise = |a: &Profile, j: usize| !self.profiles[j].interior.is_empty() && rel(a, &self.profiles[j]);
        for i in 0..n {
            let a = &self.profiles[i];
            for j in 0..n {
                for k in j + 1..n {
                    let ok = !(premise(a, j) || premise(a, k)) || rel(a, self.union(j, k));
                    let w = self.weights[i] + self.weights[j] + self.weights[k];
                    t.record(ok, w, || vec![member("A", i), member("B", j), member("C", k)]);
                }
            }
            let whole = self.whole.as_ref().expect("prepared");
            let ok = !(0..n).any(|j| premise(a, j)) || rel(a, whole);
            let w = self.weights[i] + self.weights.iter().sum::<usize>();
            t.record(ok, w, || vec![member("A", i), "B=whole-family".into()]);
        }
        t.finish()
    }

    fn run(&mut self, suite: AxiomSuite) -> Vec<AxiomResult> {
        let snear = |a: &Profile, b: &Profile| a.strongly_near(b);
        let dnear = |a: &Profile, b: &Profile| a.descriptively_near(b);
        let dsnear = |a: &Profile, b: &Profile| a.strongly_descriptively_near(b);
        if self.n() == 0 {
            return Vec::new();
        }
        if self.pair_unions.is_empty() {
            self.prepare_unions();
        }
        match suite {
            AxiomSuite::Cech => self.cech(),
            AxiomSuite::Lodato => {
                let mut out = self.cech();
                out.push(self.lodato_transitivity());
                out
            }
            AxiomSuite::Strong => vec![
                self.symmetric("snN1", snear),
                self.strong_meets("snN2", snear, Self::meets),
                self.union_strong("snN3", snear),
                self.interiors_meet(),
                self.interior_points("snN5", snear),
                self.points_distinct(),
            ],
            AxiomSuite::DescLodato => vec![
                self.empty_far("dP0", dnear),
                self.symmetric("dP1", dnear),
                self.descriptive_meets(),
                self.union_additive("dP3", dnear),
                self.descriptive_transitivity(),
            ],
            AxiomSuite::DescStrong => vec![
                self.symmetric("dsnN1", dsnear),
                self.strong_meets("dsnN2", dsnear, Self::descriptive_overlap),
                self.union_strong("dsnN3", dsnear),
                self.descriptive_interiors_meet(),
                self.interior_points("dsnN5", dsnear),
            ],
        }
    }

    fn cech(&self) -> Vec<AxiomResult> {
        let near = |a: &Profile, b: &Profile| a.near(b);
        vec![
            self.empty_far("P1", near),
            self.symmetric("P2", near),
            self.meets_implies_near(),
            self.union_additive("P4", near),
        ]
    }

    /// Point-set intersection: the closures share a vertex.
    fn meets(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.profiles[i].closure.vertices, &self.profiles[j].closure.vertices);
        !a.is_disjoint(b)
    }

    /// Some element of `A ∪ B` has a description found in both.
    fn descriptive_overlap(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.profiles[i], &self.profiles[j]);
        a.elements.iter().chain(b.elements.iter()).any(|&e| {
            let d = self.cached_description(e);
            a.descriptions.contains(&d) && b.descriptions.contains(&d)
        })
    }

    fn cached_description(&self, e: Element) -> super::Description {
        match e {
            Element::Vertex(v) => super::Description::Vertex(v),
            Element::Triangle(t) => {
                super::Description::Triangle(self.describer.cache[t].clone().expect("described during profiling"))
            }
        }
    }

    fn meets_implies_near(&self) -> AxiomResult {
        let mut t = Tally::new("P3", "A and B intersect implies A near B");
        for (i, j) in self.pairs() {
            let ok = !self.meets(i, j) || self.profiles[i].near(&self.profiles[j]);
            t.record(ok, self.weights[i] + self.weights[j], || {
                vec![member("A", i), member("B", j)]
            });
        }
        t.finish()
    }

    fn strong_meets(
        &self,
        name: &'static str,
        rel: impl Fn(&Profile, &Profile) -> bool,
        overlap: impl Fn(&Self, usize, usize) -> bool,
    ) -> AxiomResult {
        let mut t = Tally::new(name, "A R B implies A and B overlap");
        for (i, j) in self.pairs() {
            let ok = !rel(&self.profiles[i], &self.profiles[j]) || overlap(self, i, j);
            t.record(ok, self.weights[i] + self.weights[j], || {
                vec![member("A", i), member("B", j)]
            });
        }
        t.finish()
    }

    fn interiors_meet(&self) -> AxiomResult {
        let mut t = Tally::new("snN4", "int A meets int B implies A strongly near B");
        for (i, j) in self.pairs() {
            let (a, b) = (&self.profiles[i], &self.profiles[j]);
            let meet = !a.interior.vertices.is_disjoint(&b.interior.vertices)
                || !a.interior.edges.is_disjoint(&b.interior.edges)
                || !a.interior.triangles.is_disjoint(&b.interior.triangles);
            let ok = !meet || a.strongly_near(b);
            t.record(ok, self.weights[i] + self.weights[j], || {
                vec![member("A", i), member("B", j)]
            });
        }
        t.finish()
    }

    fn descriptive_interiors_meet(&self) -> AxiomResult {
        let mut t = Tally::new("dsnN4", "int A and int B share a description implies A dsnear B");
        for (i, j) in self.pairs() {
            let (a, b) = (&self.profiles[i], &self.profiles[j]);
            let (ia, ib) = (a.interior_descriptions(), b.interior_descriptions());
            let meet = ia.iter().any(|d| ib.contains(d));
            let ok = !meet || a.strongly_descriptively_near(b);
            t.record(ok, self.weights[i] + self.weights[j], || {
                vec![member("A", i), member("B", j)]
            });
        }
        t.finish()
    }

    /// For every member `A` and host vertex `x`: `x` in int A (spatially or
    /// by description) implies `{x} R A`.
    fn interior_points(&self, name: &'static str, rel: impl Fn(&Profile, &Profile) -> bool) -> AxiomResult {
        let descriptive = name.starts_with('d');
        let mut t = Tally::new(name, "x in int A implies {x} R A");
        for i in 0..self.n() {
            let a = &self.profiles[i];
            for (x, p) in self.points.iter().enumerate() {
                let inside = if descriptive {
                    let dx = super::Description::Vertex(x);
                    a.interior_descriptions().contains(&dx)
                } else {
                    a.interior.vertices.contains(&x)
                };
                let ok = !inside || rel(p, a);
                t.record(ok, self.weights[i] + 1, || vec![format!("x=v{x}"), member("A", i)]);
            }
        }
        t.finish()
    }

    fn points_distinct(&self) -> AxiomResult {
        let mut t = Tally::new("snN6", "{x} strongly near {y} iff x = y");
        for (x, px) in self.points.iter().enumerate() {
            for (y, py) in self.points.iter().enumerate() {
                let ok = px.strongly_near(py) == (x == y);
                t.record(ok, 2, || vec![format!("x=v{x}"), format!("y=v{y}")]);
            }
        }
        t.finish()
    }

    /// `A near B` and every vertex of cl B near `C` implies `A near C`.
    fn lodato_transitivity(&self) -> AxiomResult {
        let n = self.n();
        let mut t = Tally::new("P5", "A near B and {b} near C for all b in B implies A near C");
        let covered: Vec<Vec<bool>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        self.profiles[j]
                            .closure
                            .vertices
                            .iter()
                            .all(|&b| self.points[b].near(&self.profiles[k]))
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            for (j, row) in covered.iter().enumerate() {
                let premise = self.profiles[i].near(&self.profiles[j]);
                for (k, &hit) in row.iter().enumerate() {
                    let ok = !premise || !hit || self.profiles[i].near(&self.profiles[k]);
                    let w = self.weights[i] + self.weights[j] + self.weights[k];
                    t.record(ok, w, || vec![member("A", i), member("B", j), member("C", k)]);
                }
            }
        }
        t.finish()
    }

    /// `A dnear B` and every described element of `B` dnear `C` implies
    /// `A dnear C`.
    fn descriptive_transitivity(&self) -> AxiomResult {
        let n = self.n();
        let mut t = Tally::new("dP4", "A dnear B and {b} dnear C for all b in B implies A dnear C");
        let covered: Vec<Vec<bool>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let c = &self.profiles[k].descriptions;
                        self.profiles[j]
                            .elements
                            .iter()
                            .all(|&b| c.contains(&self.cached_description(b)))
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            for (j, row) in covered.iter().enumerate() {
                let premise = self.profiles[i].descriptively_near(&self.profiles[j]);
                for (k, &hit) in row.iter().enumerate() {
                    let ok = !premise || !hit || self.profiles[i].descriptively_near(&self.profiles[k]);
                    let w = self.weights[i] + self.weights[j] + self.weights[k];
                    t.record(ok, w, || vec![member("A", i), member("B", j), member("C", k)]);
                }
            }
        }
        t.finish()
    }

    fn descriptive_meets(&self) -> AxiomResult {
        let mut t = Tally::new("dP2", "A and B share a description implies A dnear B");
        for (i, j) in self.pairs() {
            let ok = !self.descriptive_overlap(i, j) || self.profiles[i].descriptively_near(&self.profiles[j]);
            t.record(ok, self.weights[i] + self.weights[j], || {
                vec![member("A", i), member("B", j)]
            });
        }
        t.finish()
    }
}

/// Checks every axiom of `suite` on all pairs and triples drawn from
/// `space`. Single-point axioms range over every vertex of the host.
pub fn check_axioms(space: &[SubComplex<'_>], cfg: &ProximityConfig, suite: AxiomSuite) -> Result<AxiomReport> {
    if space.is_empty() {
        return Ok(AxiomReport {
            suite,
            results: Vec::new(),
        });
    }
    if space.iter().any(|s| !s.same_host(&space[0])) {
        return Err(Error::HostMismatch);
    }
    let mut checker = Checker::new(space, cfg)?;
    let results = checker.run(suite);
    Ok(AxiomReport { suite, results })
}
