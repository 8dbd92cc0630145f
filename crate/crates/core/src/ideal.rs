//! Generators of the intersection-axiom ideal `I_M` and of the primes `P_G`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AdmissibleGraph, BipartiteGraph, Edge};
use crate::tensor::{phi, term_cmp_unchecked, ExponentTensor, Shape, VarIndex};

/// A pure difference `p^plus - p^minus`, stored with the leading monomial
/// in `plus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    plus: ExponentTensor,
    minus: ExponentTensor,
}

impl Binomial {
    /// Builds `p^a - p^b` up to sign. Both terms must have the same image
    /// under the sufficient-statistics map.
    pub fn new(a: ExponentTensor, b: ExponentTensor) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::ShapeMismatch {
                left: a.shape(),
                right: b.shape(),
            });
        }
        if a == b {
            return Err(Error::TrivialBinomial);
        }
        if phi(&a) != phi(&b) {
            return Err(Error::NotHomogeneous);
        }
        Ok(match term_cmp_unchecked(&a, &b) {
            Ordering::Greater => Binomial { plus: a, minus: b },
            _ => Binomial { plus: b, minus: a },
        })
    }

    /// The 2x2 minor `p_{i,a} p_{i',b} - p_{i,b} p_{i',a}` on rows `i, i'`
    /// and slices `a, b`.
    pub fn minor(shape: Shape, i: usize, i2: usize, a: Edge, b: Edge) -> Result<Self> {
        let diag = ExponentTensor::from_vars(
            shape,
            &[VarIndex::new(i, a.0, a.1), VarIndex::new(i2, b.0, b.1)],
        )?;
        let anti = ExponentTensor::from_vars(
            shape,
            &[VarIndex::new(i, b.0, b.1), VarIndex::new(i2, a.0, a.1)],
        )?;
        Binomial::new(diag, anti)
    }

    /// Leading monomial under the term order.
    pub fn plus(&self) -> &ExponentTensor {
        &self.plus
    }

    pub fn minus(&self) -> &ExponentTensor {
        &self.minus
    }

    pub fn shape(&self) -> Shape {
        self.plus.shape()
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// Binomial generators plus degree-one monomial generators.
///
/// `groups` optionally partitions the binomials by connected component, so
/// that the summands of `P^(1)_G` can be recovered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    shape: Shape,
    binomials: Vec<Binomial>,
    monomials: Vec<VarIndex>,
    groups: Vec<Vec<usize>>,
}

impl IdealPresentation {
    pub fn new(shape: Shape, binomials: Vec<Binomial>, monomials: Vec<VarIndex>) -> Result<Self> {
        let mut p = IdealPresentation {
            shape,
            binomials: Vec::new(),
            monomials: Vec::new(),
            groups: Vec::new(),
        };
        for b in binomials {
            p.push_binomial(b)?;
        }
        for v in monomials {
            p.push_monomial(v)?;
        }
        Ok(p)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn monomials(&self) -> &[VarIndex] {
        &self.monomials
    }

    /// Binomial indices per connected component; empty when ungrouped.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn num_generators(&self) -> usize {
        self.binomials.len() + self.monomials.len()
    }

    /// Appends a binomial unless it is already present.
    pub fn push_binomial(&mut self, b: Binomial) -> Result<bool> {
        self.shape.same_as(&b.shape())?;
        if self.binomials.contains(&b) {
            return Ok(false);
        }
        self.binomials.push(b);
        Ok(true)
    }

    pub fn push_monomial(&mut self, v: VarIndex) -> Result<bool> {
        self.shape.check(v)?;
        if self.monomials.contains(&v) {
            return Ok(false);
        }
        self.monomials.push(v);
        Ok(true)
    }

    /// A copy with binomial `idx` deleted (groups dropped).
    pub fn without_binomial(&self, idx: usize) -> IdealPresentation {
        let mut p = self.clone();
        p.binomials.remove(idx);
        p.groups.clear();
        p
    }

    /// A copy with monomial generator `idx` deleted.
    pub fn without_monomial(&self, idx: usize) -> IdealPresentation {
        let mut p = self.clone();
        p.monomials.remove(idx);
        p
    }

    /// True iff `u` is divisible by a monomial generator.
    pub fn absorbs(&self, u: &ExponentTensor) -> bool {
        self.monomials.iter().any(|&v| u.get(v) > 0)
    }

    /// The summand of `P^(1)` for component group `g`.
    pub fn group_binomials(&self, g: usize) -> impl Iterator<Item = &Binomial> + '_ {
        self.groups[g].iter().map(move |&i| &self.binomials[i])
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut gens: Vec<String> = self.monomials.iter().map(VarIndex::to_string).collect();
        gens.extend(self.binomials.iter().map(Binomial::to_string));
        write!(f, "({})", gens.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    shape: Shape,
    binomials: Vec<[Vec<u32>; 2]>,
    monomials: Vec<VarIndex>,
    #[serde(default)]
    components: Vec<Vec<usize>>,
}

impl Serialize for IdealPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson {
            shape: self.shape,
            binomials: self
                .binomials
                .iter()
                .map(|b| [b.plus.entries().to_vec(), b.minus.entries().to_vec()])
                .collect(),
            monomials: self.monomials.clone(),
            components: self.groups.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IdealPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = IdealJson::deserialize(d)?;
        let shape = raw.shape;
        let mut binomials = Vec::with_capacity(raw.binomials.len());
        for [a, b] in raw.binomials {
            let a = ExponentTensor::from_entries(shape, a).map_err(D::Error::custom)?;
            let b = ExponentTensor::from_entries(shape, b).map_err(D::Error::custom)?;
            binomials.push(Binomial::new(a, b).map_err(D::Error::custom)?);
        }
        let n = binomials.len();
        let mut p =
            IdealPresentation::new(shape, binomials, raw.monomials).map_err(D::Error::custom)?;
        if p.binomials.len() != n {
            return Err(D::Error::custom("duplicate binomial generators"));
        }
        if raw.components.iter().flatten().any(|&i| i >= n) {
            return Err(D::Error::custom("component group index out of range"));
        }
        p.groups = raw.components;
        Ok(p)
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Expected number of binomial generators of `I_M`.
pub fn intersection_model_count(shape: Shape) -> usize {
    shape.r3() * choose2(shape.r1()) * choose2(shape.r2())
        + shape.r2() * choose2(shape.r1()) * choose2(shape.r3())
}

/// Generators of `I_M`: the minors of `X1 ⊥ X2 | X3` (fixed `k`) followed by
/// those of `X1 ⊥ X3 | X2` (fixed `j`), each with `i < i'` and the varying
/// index increasing.
pub fn generators_intersection_model(shape: Shape) -> IdealPresentation {
    let (r1, r2, r3) = (shape.r1(), shape.r2(), shape.r3());
    let mut binomials = Vec::with_capacity(intersection_model_count(shape));
    for k in 1..=r3 {
        for i in 1..=r1 {
            for i2 in i + 1..=r1 {
                for j in 1..=r2 {
                    for j2 in j + 1..=r2 {
                        binomials.push(
                            Binomial::minor(shape, i, i2, (j, k), (j2, k)).expect("valid indices"),
                        );
                    }
                }
            }
        }
    }
    for j in 1..=r2 {
        for i in 1..=r1 {
            for i2 in i + 1..=r1 {
                for k in 1..=r3 {
                    for k2 in k + 1..=r3 {
                        binomials.push(
                            Binomial::minor(shape, i, i2, (j, k), (j, k2)).expect("valid indices"),
                        );
                    }
                }
            }
        }
    }
    IdealPresentation {
        shape,
        binomials,
        monomials: Vec::new(),
        groups: Vec::new(),
    }
}

/// All 2x2 minors of the `r1 × |columns|` matrix whose `(i, c)` entry is
/// `p_{i,c}`; `columns` must be sorted.
fn column_minors(shape: Shape, columns: &[Edge]) -> Vec<Binomial> {
    let r1 = shape.r1();
    let mut out = Vec::new();
    for (a_idx, &a) in columns.iter().enumerate() {
        for &b in &columns[a_idx + 1..] {
            for i in 1..=r1 {
                for i2 in i + 1..=r1 {
                    out.push(Binomial::minor(shape, i, i2, a, b).expect("valid indices"));
                }
            }
        }
    }
    out
}

/// `P^(1)` of an arbitrary bipartite graph: the minors among edges of each
/// connected component, grouped by component.
pub fn minor_generators(graph: &BipartiteGraph, r1: usize) -> Result<IdealPresentation> {
    let shape = Shape::new(r1, graph.left(), graph.right())?;
    let comps = graph.connected_components();
    let mut p = IdealPresentation {
        shape,
        binomials: Vec::new(),
        monomials: Vec::new(),
        groups: Vec::new(),
    };
    for c in &comps.components {
        let start = p.binomials.len();
        p.binomials.extend(column_minors(shape, &c.edges));
        p.groups.push((start..p.binomials.len()).collect());
    }
    Ok(p)
}

/// Generators of `P_G = P^(0)_G + P^(1)_G`: the variables on non-edges and
/// the minors among edges in a common component.
pub fn generators_component(g: &AdmissibleGraph, r1: usize) -> Result<IdealPresentation> {
    let mut p = minor_generators(&g.to_graph(), r1)?;
    let shape = p.shape;
    p.monomials = shape.vars().filter(|v| !g.has_edge(v.edge())).collect();
    Ok(p)
}

/// How a generator of `I_M` sits inside `P_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    /// Both slices are edges of one component: the binomial is a generator
    /// of `P^(1)_G`.
    MinorOfComponent,
    /// One slice is a non-edge: both terms are divisible by a `P^(0)_G`
    /// variable.
    DivisibleByNonEdge,
    NotContained,
}

/// Classifies a binomial of `I_M` relative to `P_G`, given the
/// presentation of `P_G`.
pub fn classify_in_component(b: &Binomial, pg: &IdealPresentation) -> Containment {
    if pg.binomials.contains(b) {
        return Containment::MinorOfComponent;
    }
    if pg.absorbs(&b.plus) && pg.absorbs(&b.minus) {
        return Containment::DivisibleByNonEdge;
    }
    Containment::NotContained
}
