//! Exact rational points on the components `V(P_G)`.
//!
//! A point is viewed as an `r2 × r3` table whose entries are the vectors
//! `p_{·jk}` of length `r1`. On `V(P_G)` the vectors off the edges of `G`
//! vanish and the vectors inside one block are pairwise proportional.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_admissible, graph_of_point, AdmissibleGraph, BipartiteGraph, Edge};
use crate::ideal::{generators_component, IdealPresentation};
use crate::tensor::{Shape, VarIndex};

/// A point of affine space with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    shape: Shape,
    entries: Vec<BigRational>,
}

impl Point {
    pub fn zero(shape: Shape) -> Self {
        Point {
            shape,
            entries: vec![BigRational::zero(); shape.num_vars()],
        }
    }

    /// Flat row-major entries, `i` slowest.
    pub fn from_entries(shape: Shape, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != shape.num_vars() {
            return Err(Error::WrongLength {
                shape,
                expected: shape.num_vars(),
                got: entries.len(),
            });
        }
        Ok(Point { shape, entries })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, v: VarIndex) -> &BigRational {
        &self.entries[self.shape.flat_index(v)]
    }

    pub fn set(&mut self, v: VarIndex, x: BigRational) {
        let f = self.shape.flat_index(v);
        self.entries[f] = x;
    }

    /// The vector `p_{·jk}`.
    pub fn vector(&self, (j, k): Edge) -> Vec<&BigRational> {
        (1..=self.shape.r1())
            .map(|i| self.get(VarIndex::new(i, j, k)))
            .collect()
    }

    pub fn slice_is_zero(&self, j: usize, k: usize) -> bool {
        (1..=self.shape.r1()).all(|i| self.get(VarIndex::new(i, j, k)).is_zero())
    }

    /// Exact proportionality of `p_{·a}` and `p_{·b}`: every 2x2 minor
    /// vanishes. Zero vectors are proportional to everything.
    pub fn proportional(&self, a: Edge, b: Edge) -> bool {
        let (x, y) = (self.vector(a), self.vector(b));
        for i in 0..x.len() {
            for i2 in i + 1..x.len() {
                if x[i] * y[i2] != x[i2] * y[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (flat, x) in self.entries.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}={}", self.shape.var_at(flat), x)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    shape: Shape,
    entries: Vec<String>,
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointJson {
            shape: self.shape,
            entries: self.entries.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PointJson::deserialize(d)?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for e in &raw.entries {
            let x = BigRational::from_str(e.trim())
                .map_err(|_| D::Error::custom(format!("`{e}` is not a rational number")))?;
            entries.push(x);
        }
        Point::from_entries(raw.shape, entries).map_err(D::Error::custom)
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn draw(rng: &mut ChaCha8Rng, hi: i64) -> BigRational {
    int(rng.gen_range(1..=hi))
}

fn are_proportional(x: &[BigRational], y: &[BigRational]) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|i2| &x[i] * &y[i2] == &x[i2] * &y[i]))
}

/// A point of `U_G`: each block `t` gets a direction `v_t`, each edge a
/// nonzero scale `λ_jk`, and `p_{·jk} = λ_jk v_t`. Directions of distinct
/// blocks are pairwise non-proportional. Coefficients are drawn from
/// `1..=97`, widening the range after 100 failed draws.
pub fn sample_generic_point(g: &AdmissibleGraph, r1: usize, seed: u64) -> Result<Point> {
    let shape = Shape::new(r1, g.left(), g.right())?;
    shape.require_two_rows()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hi = 97i64;
    let mut directions: Vec<Vec<BigRational>> = Vec::with_capacity(g.num_components());
    let mut attempts = 0;
    while directions.len() < g.num_components() {
        let v: Vec<BigRational> = (0..r1).map(|_| draw(&mut rng, hi)).collect();
        if directions.iter().any(|w| are_proportional(w, &v)) {
            attempts += 1;
            if attempts == 100 {
                attempts = 0;
                hi *= 10;
            }
            continue;
        }
        directions.push(v);
    }
    let mut p = Point::zero(shape);
    for (b, dir) in g.blocks().iter().zip(&directions) {
        for (j, k) in b.edges() {
            let scale = draw(&mut rng, hi);
            for (i, x) in dir.iter().enumerate() {
                p.set(VarIndex::new(i + 1, j, k), x * &scale);
            }
        }
    }
    debug_assert!(is_generic_for(&p, g));
    Ok(p)
}

/// Membership in `U_G`: on `V(P_G)`, no vector on an edge is zero, and
/// vectors in distinct blocks are independent.
pub fn is_generic_for(p: &Point, g: &AdmissibleGraph) -> bool {
    if !on_component(p, g) {
        return false;
    }
    let edges: Vec<(Edge, usize)> = g
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(b, blk)| blk.edges().into_iter().map(move |e| (e, b)))
        .collect();
    if edges.iter().any(|&(e, _)| p.slice_is_zero(e.0, e.1)) {
        return false;
    }
    edges
        .iter()
        .all(|&(e, b)| edges.iter().all(|&(f, c)| b == c || !p.proportional(e, f)))
}

/// Exact residuals: variable generators first, then binomials, in the
/// presentation's order.
pub fn evaluate_generators(p: &Point, ideal: &IdealPresentation) -> Result<Vec<BigRational>> {
    p.shape.same_as(&ideal.shape())?;
    let mut out = Vec::with_capacity(ideal.num_generators());
    for &v in ideal.monomials() {
        out.push(p.get(v).clone());
    }
    let eval = |u: &crate::tensor::ExponentTensor| {
        let mut acc = BigRational::one();
        for (flat, &e) in u.entries().iter().enumerate() {
            for _ in 0..e {
                acc *= &p.entries[flat];
            }
        }
        acc
    };
    for b in ideal.binomials() {
        out.push(eval(b.plus()) - eval(b.minus()));
    }
    Ok(out)
}

/// Every residual vanishes.
pub fn satisfies(p: &Point, ideal: &IdealPresentation) -> Result<bool> {
    Ok(evaluate_generators(p, ideal)?.iter().all(Zero::is_zero))
}

/// `p ∈ V(P_G)`, decided on the vectors directly.
pub fn on_component(p: &Point, g: &AdmissibleGraph) -> bool {
    let s = p.shape;
    for j in 1..=s.r2() {
        for k in 1..=s.r3() {
            if !g.has_edge((j, k)) && !p.slice_is_zero(j, k) {
                return false;
            }
        }
    }
    g.blocks().iter().all(|b| {
        let es = b.edges();
        es.iter()
            .enumerate()
            .all(|(x, &e)| es[x + 1..].iter().all(|&f| p.proportional(e, f)))
    })
}

/// Rule read off from the support graph: `G` contains `G(p)` and never puts
/// two `G(p)`-components carrying non-proportional vectors into one block.
/// Valid for points of `V(I_M)`.
fn located_by_support(p: &Point, g: &AdmissibleGraph, support: &BipartiteGraph) -> bool {
    if !support.is_subgraph_of(&g.to_graph()) {
        return false;
    }
    let comps = support.connected_components();
    for (a, ca) in comps.components.iter().enumerate() {
        for cb in &comps.components[a + 1..] {
            let (ea, eb) = (ca.edges[0], cb.edges[0]);
            if g.block_of_edge(ea) == g.block_of_edge(eb) {
                let all_prop = ca
                    .edges
                    .iter()
                    .all(|&e| cb.edges.iter().all(|&f| p.proportional(e, f)));
                if !all_prop {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of locating a point among the components.
#[derive(Clone, Debug, Serialize)]
pub struct Location {
    /// Whether the point satisfies every generator of `I_M`.
    pub on_model: bool,
    pub support: BipartiteGraph,
    /// Admissible `G` with `p ∈ V(P_G)`, tested on the definition.
    pub graphs: Vec<AdmissibleGraph>,
    /// The same list from the support-graph rule.
    pub by_support_rule: Vec<AdmissibleGraph>,
    /// The two lists coincide; only meaningful when `on_model`.
    pub rules_agree: bool,
    /// Vectors in distinct support components are pairwise independent.
    pub generic_support: bool,
    /// For generic support: the graphs merging no two components of the
    /// support graph that both carry edges, and whether that list matches.
    pub refinement_agrees: Option<bool>,
}

/// All components `V(P_G)` containing `p`.
pub fn locate_point(p: &Point) -> Location {
    let s = p.shape;
    let im = crate::ideal::generators_intersection_model(s);
    let on_model = satisfies(p, &im).expect("same shape");
    let support = graph_of_point(p);
    let all = enumerate_admissible(s.r2(), s.r3());
    let graphs: Vec<AdmissibleGraph> = all.iter().filter(|g| on_component(p, g)).cloned().collect();
    let by_support_rule: Vec<AdmissibleGraph> = all
        .iter()
        .filter(|g| located_by_support(p, g, &support))
        .cloned()
        .collect();
    let rules_agree = graphs == by_support_rule;

    let comps = support.connected_components();
    let generic_support = comps.components.iter().enumerate().all(|(a, ca)| {
        comps.components[a + 1..].iter().all(|cb| {
            ca.edges
                .iter()
                .all(|&e| cb.edges.iter().all(|&f| !p.proportional(e, f)))
        })
    });
    let refinement_agrees = generic_support.then(|| {
        let refined: Vec<&AdmissibleGraph> = all
            .iter()
            .filter(|g| {
                support.is_subgraph_of(&g.to_graph())
                    && comps.components.iter().enumerate().all(|(a, ca)| {
                        comps.components[a + 1..]
                            .iter()
                            .all(|cb| g.block_of_edge(ca.edges[0]) != g.block_of_edge(cb.edges[0]))
                    })
            })
            .collect();
        refined.len() == graphs.len() && refined.iter().zip(&graphs).all(|(a, b)| *a == b)
    });
    Location {
        on_model,
        support,
        graphs,
        by_support_rule,
        rules_agree,
        generic_support,
        refinement_agrees,
    }
}

/// Which way two admissible graphs differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// An edge of `G` is missing from `G2`; its vector is forced to zero.
    MissingEdge,
    /// `G ⊆ G2` and two blocks of `G` are merged in `G2`, forcing
    /// independent vectors to be proportional.
    MergedBlocks,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrredundanceWitness {
    pub point: Point,
    /// Index into `evaluate_generators(point, P_G2)`.
    pub generator: usize,
    pub residual: String,
    pub case: WitnessCase,
}

/// A point of `U_G` outside `V(P_G2)`, with a generator of `P_G2` that does
/// not vanish on it.
pub fn irredundance_witness(
    g: &AdmissibleGraph,
    g2: &AdmissibleGraph,
    r1: usize,
    seed: u64,
) -> Result<IrredundanceWitness> {
    if g == g2 {
        return Err(Error::SameGraph);
    }
    if g.left() != g2.left() || g.right() != g2.right() {
        return Err(Error::NoWitness(
            "graphs live on different vertex sets".into(),
        ));
    }
    let point = sample_generic_point(g, r1, seed)?;
    let p2 = generators_component(g2, r1)?;
    let residuals = evaluate_generators(&point, &p2)?;
    let graph = g.to_graph();

    let missing = graph.edges().find(|&e| !g2.has_edge(e));
    let (case, generator) = if let Some((j, k)) = missing {
        let idx = p2
            .monomials()
            .iter()
            .position(|v| v.edge() == (j, k) && !point.get(*v).is_zero())
            .ok_or_else(|| Error::NoWitness(format!("no nonzero coordinate on edge ({j},{k})")))?;
        (WitnessCase::MissingEdge, idx)
    } else {
        let edges: Vec<Edge> = graph.edges().collect();
        let pair = edges.iter().enumerate().find_map(|(x, &e)| {
            edges[x + 1..]
                .iter()
                .find(|&&f| {
                    g.block_of_edge(e) != g.block_of_edge(f)
                        && g2.block_of_edge(e) == g2.block_of_edge(f)
                })
                .map(|&f| (e, f))
        });
        let (e, f) = pair.ok_or_else(|| Error::NoWitness("no merged blocks found".into()))?;
        let offset = p2.monomials().len();
        let idx = p2
            .binomials()
            .iter()
            .enumerate()
            .position(|(x, b)| {
                let cols: Vec<Edge> = b.plus().support().map(|v| v.edge()).collect();
                cols.contains(&e) && cols.contains(&f) && !residuals[offset + x].is_zero()
            })
            .ok_or_else(|| {
                Error::NoWitness(format!("every minor on columns {e:?}, {f:?} vanishes"))
            })?;
        (WitnessCase::MergedBlocks, offset + idx)
    };
    let residual = format_rational(&residuals[generator]);
    Ok(IrredundanceWitness {
        point,
        generator,
        residual,
        case,
    })
}

/// Random points of `V(I_M)`. Edges are kept with probability one half;
/// each component of the resulting support graph receives a direction from
/// a small pool (so distinct components sometimes share a direction) and
/// every edge a nonzero rational scale.
pub fn sample_model_point(shape: Shape, seed: u64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (1..=shape.r2()).flat_map(|j| (1..=shape.r3()).map(move |k| (j, k)));
    let kept: Vec<Edge> = edges.filter(|_| rng.gen_bool(0.5)).collect();
    let support = BipartiteGraph::new(shape.r2(), shape.r3(), kept).expect("in bounds");
    let pool: Vec<Vec<BigRational>> = (0..3)
        .map(|_| {
            (0..shape.r1())
                .map(|_| int(rng.gen_range(-4..=4)))
                .collect()
        })
        .collect();
    let mut p = Point::zero(shape);
    for c in support.connected_components().components {
        let dir = &pool[rng.gen_range(0..pool.len())];
        for (j, k) in c.edges {
            let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = rng.gen_range(1..=5);
            let scale = BigRational::new(BigInt::from(num), BigInt::from(den));
            for (i, x) in dir.iter().enumerate() {
                p.set(VarIndex::new(i + 1, j, k), x * &scale);
            }
        }
    }
    p
}

/// Random points with entries in `{0, 1, 2}`, each zero with probability
/// one half. Not constrained to any variety.
pub fn sample_sparse_point(shape: Shape, seed: u64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..shape.num_vars())
        .map(|_| {
            if rng.gen_bool(0.5) {
                int(0)
            } else {
                int(rng.gen_range(1..=2))
            }
        })
        .collect();
    Point { shape, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::generators_intersection_model;

    fn s222() -> Shape {
        Shape::new(2, 2, 2).unwrap()
    }

    fn diag() -> AdmissibleGraph {
        BipartiteGraph::new(2, 2, [(1, 1), (2, 2)])
            .unwrap()
            .is_admissible()
            .unwrap()
    }

    fn anti() -> AdmissibleGraph {
        BipartiteGraph::new(2, 2, [(1, 2), (2, 1)])
            .unwrap()
            .is_admissible()
            .unwrap()
    }

    #[test]
    fn generic_sample_on_complete() {
        let k = AdmissibleGraph::complete(2, 2);
        for seed in 0..5 {
            let p = sample_generic_point(&k, 2, seed).unwrap();
            assert!(is_generic_for(&p, &k));
            assert!(satisfies(&p, &generators_intersection_model(s222())).unwrap());
            assert_eq!(graph_of_point(&p), BipartiteGraph::complete(2, 2));
        }
    }

    #[test]
    fn generic_sample_on_diagonal() {
        let p = sample_generic_point(&diag(), 2, 7).unwrap();
        assert!(p.slice_is_zero(1, 2) && p.slice_is_zero(2, 1));
        assert!(!p.slice_is_zero(1, 1) && !p.slice_is_zero(2, 2));
        assert!(!p.proportional((1, 1), (2, 2)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let k = AdmissibleGraph::complete(2, 3);
        assert_eq!(
            sample_generic_point(&k, 3, 11).unwrap(),
            sample_generic_point(&k, 3, 11).unwrap()
        );
    }

    #[test]
    fn sampling_needs_two_rows() {
        assert!(matches!(
            sample_generic_point(&AdmissibleGraph::complete(2, 2), 1, 0),
            Err(Error::NeedTwoRows(_))
        ));
    }

    #[test]
    fn residuals_vanish_at_zero() {
        let r = evaluate_generators(&Point::zero(s222()), &generators_intersection_model(s222()))
            .unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(Zero::is_zero));
    }

    #[test]
    fn boundary_point_satisfies_model_but_is_not_generic() {
        let mut p = Point::zero(s222());
        p.set(VarIndex::new(1, 1, 1), int(1));
        p.set(VarIndex::new(1, 2, 2), int(1));
        assert!(satisfies(&p, &generators_intersection_model(s222())).unwrap());
        assert!(!is_generic_for(&p, &AdmissibleGraph::complete(2, 2)));
    }

    #[test]
    fn locate_zero() {
        let loc = locate_point(&Point::zero(s222()));
        assert_eq!(loc.graphs.len(), 3);
        assert!(loc.rules_agree);
    }

    #[test]
    fn locate_single_slice() {
        let mut p = Point::zero(s222());
        p.set(VarIndex::new(1, 1, 1), int(1));
        p.set(VarIndex::new(2, 1, 1), int(1));
        let loc = locate_point(&p);
        let mut want = vec![AdmissibleGraph::complete(2, 2), diag()];
        want.sort();
        let mut got = loc.graphs.clone();
        got.sort();
        assert_eq!(got, want);
        assert!(loc.rules_agree);
        assert_eq!(loc.refinement_agrees, Some(true));
    }

    #[test]
    fn locate_generic_diagonal_point() {
        let p = sample_generic_point(&diag(), 2, 3).unwrap();
        let loc = locate_point(&p);
        assert_eq!(loc.graphs, vec![diag()]);
        assert!(loc.rules_agree);
    }

    #[test]
    fn point_off_model_is_nowhere() {
        let mut p = Point::zero(s222());
        p.set(VarIndex::new(1, 1, 1), int(1));
        p.set(VarIndex::new(2, 2, 1), int(1));
        let loc = locate_point(&p);
        assert!(!loc.on_model);
        assert!(loc.graphs.is_empty());
    }

    #[test]
    fn witnesses_follow_both_cases() {
        let k = AdmissibleGraph::complete(2, 2);
        let w = irredundance_witness(&diag(), &k, 2, 0).unwrap();
        assert_eq!(w.case, WitnessCase::MergedBlocks);
        let w = irredundance_witness(&k, &diag(), 2, 0).unwrap();
        assert_eq!(w.case, WitnessCase::MissingEdge);
        let p2 = generators_component(&diag(), 2).unwrap();
        assert_eq!(p2.monomials()[w.generator].edge(), (1, 2));
        let w = irredundance_witness(&diag(), &anti(), 2, 0).unwrap();
        assert_eq!(w.case, WitnessCase::MissingEdge);
        assert!(irredundance_witness(&k, &k, 2, 0).is_err());
    }

    #[test]
    fn point_json_roundtrip() {
        let p = sample_model_point(Shape::new(2, 2, 3).unwrap(), 5);
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains('/'));
        let back: Point = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"shape":[1,1,1],"entries":["x"]}"#;
        assert!(serde_json::from_str::<Point>(bad).is_err());
        let plain = r#"{"shape":[1,1,2],"entries":["3","-1/2"]}"#;
        assert!(serde_json::from_str::<Point>(plain).is_ok());
    }

    #[test]
    fn model_samples_lie_on_model() {
        let s = Shape::new(3, 3, 3).unwrap();
        let im = generators_intersection_model(s);
        for seed in 0..20 {
            assert!(satisfies(&sample_model_point(s, seed), &im).unwrap());
        }
    }
}
