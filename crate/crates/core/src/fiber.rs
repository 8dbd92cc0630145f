//! Fibers of the sufficient-statistics map and their move graphs.
//!
//! For an ideal generated by pure-difference binomials and variables, the
//! graded piece of degree `d` is spanned by the monomials absorbed by a
//! variable generator together with the differences `p^v - p^w` of points
//! joined in the move graph on the fiber. Everything in this module reads
//! off that structure: quotient dimensions, membership, and initial pieces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealPresentation;
use crate::tensor::{phi, term_cmp_unchecked, ExponentTensor, Multidegree, Shape};

/// Fiber size limit used when none is given.
pub const DEFAULT_FIBER_CAP: usize = 5_000_000;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Labels `0..` in order of first appearance.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut map = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if map[r] == usize::MAX {
                map[r] = next;
                next += 1;
            }
            labels.push(map[r]);
        }
        (labels, next)
    }
}

/// All nonnegative exponent tensors of a given multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    degree: Multidegree,
    points: Vec<ExponentTensor>,
}

impl Serialize for Fiber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            degree: &'a Multidegree,
            points: Vec<&'a [u32]>,
        }
        Raw {
            degree: &self.degree,
            points: self.points.iter().map(ExponentTensor::entries).collect(),
        }
        .serialize(s)
    }
}

impl Fiber {
    pub fn degree(&self) -> &Multidegree {
        &self.degree
    }

    pub fn points(&self) -> &[ExponentTensor] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn shape(&self) -> Shape {
        self.degree.shape()
    }
}

/// Enumerates the fiber of `d`, in lexicographic order of the flat entry
/// vectors. Slices are filled one at a time, splitting `d_jk` among the rows
/// within each row's remaining budget.
pub fn enumerate_fiber(d: &Multidegree, cap: usize) -> Result<Fiber> {
    let shape = d.shape();
    let mut points = Vec::new();
    if !d.is_consistent() {
        return Ok(Fiber {
            degree: d.clone(),
            points,
        });
    }
    let mut budget: Vec<u32> = d.rows().to_vec();
    let mut cur = vec![0u32; shape.num_vars()];
    let slices: Vec<(usize, usize)> = (1..=shape.r2())
        .flat_map(|j| (1..=shape.r3()).map(move |k| (j, k)))
        .collect();

    struct Ctx<'a> {
        shape: Shape,
        d: &'a Multidegree,
        slices: &'a [(usize, usize)],
        cap: usize,
        points: &'a mut Vec<ExponentTensor>,
    }

    fn fill_slice(ctx: &mut Ctx<'_>, s: usize, budget: &mut [u32], cur: &mut [u32]) -> Result<()> {
        if s == ctx.slices.len() {
            debug_assert!(budget.iter().all(|&b| b == 0));
            if ctx.points.len() >= ctx.cap {
                return Err(Error::FiberCapExceeded {
                    cap: ctx.cap,
                    partial: ctx.points.len(),
                });
            }
            ctx.points.push(
                ExponentTensor::from_entries(ctx.shape, cur.to_vec()).expect("length matches"),
            );
            return Ok(());
        }
        let (j, k) = ctx.slices[s];
        let need = ctx.d.slice(j, k);
        split(ctx, s, j, k, 1, need, budget, cur)
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        ctx: &mut Ctx<'_>,
        s: usize,
        j: usize,
        k: usize,
        i: usize,
        left: u32,
        budget: &mut [u32],
        cur: &mut [u32],
    ) -> Result<()> {
        let r1 = ctx.shape.r1();
        if i == r1 {
            if left > budget[i - 1] {
                return Ok(());
            }
            let f = ctx.shape.flat_index(crate::tensor::VarIndex::new(i, j, k));
            budget[i - 1] -= left;
            cur[f] = left;
            let r = fill_slice(ctx, s + 1, budget, cur);
            cur[f] = 0;
            budget[i - 1] += left;
            return r;
        }
        let room_after: u32 = budget[i..].iter().sum();
        let lo = left.saturating_sub(room_after);
        let hi = left.min(budget[i - 1]);
        let f = ctx.shape.flat_index(crate::tensor::VarIndex::new(i, j, k));
        for e in lo..=hi {
            budget[i - 1] -= e;
            cur[f] = e;
            let r = split(ctx, s, j, k, i + 1, left - e, budget, cur);
            cur[f] = 0;
            budget[i - 1] += e;
            r?;
        }
        Ok(())
    }

    let mut ctx = Ctx {
        shape,
        d,
        slices: &slices,
        cap,
        points: &mut points,
    };
    fill_slice(&mut ctx, 0, &mut budget, &mut cur)?;
    points.sort_unstable();
    Ok(Fiber {
        degree: d.clone(),
        points,
    })
}

/// Connected components of the move graph on a fiber.
#[derive(Clone, Debug, Serialize)]
pub struct MoveGraphPartition {
    fiber: Fiber,
    labels: Vec<usize>,
    absorbed: Vec<bool>,
    num_components: usize,
}

impl MoveGraphPartition {
    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    /// Component label per fiber point, numbered by first appearance.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Whether each point is divisible by a variable generator.
    pub fn absorbed(&self) -> &[bool] {
        &self.absorbed
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    /// Components containing an absorbed point. Such a component lies
    /// entirely in the ideal.
    pub fn absorbed_components(&self) -> Vec<bool> {
        let mut out = vec![false; self.num_components];
        for (&l, &a) in self.labels.iter().zip(&self.absorbed) {
            out[l] |= a;
        }
        out
    }

    /// Indices of the points of each component.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_components];
        for (p, &l) in self.labels.iter().enumerate() {
            out[l].push(p);
        }
        out
    }

    /// Dimension of the graded piece of the quotient ring.
    pub fn hilbert_value(&self) -> usize {
        self.absorbed_components().iter().filter(|a| !**a).count()
    }

    /// Standard monomials: the term-order minimum of each component not
    /// absorbed into the ideal.
    pub fn standard_points(&self) -> Vec<usize> {
        let absorbed = self.absorbed_components();
        let mut min: Vec<Option<usize>> = vec![None; self.num_components];
        for (p, &l) in self.labels.iter().enumerate() {
            if absorbed[l] {
                continue;
            }
            let pts = self.fiber.points();
            match min[l] {
                Some(q) if term_cmp_unchecked(&pts[q], &pts[p]).is_le() => {}
                _ => min[l] = Some(p),
            }
        }
        let mut out: Vec<usize> = min.into_iter().flatten().collect();
        out.sort_unstable();
        out
    }

    /// Points whose monomial lies in the initial ideal.
    pub fn initial_points(&self) -> Vec<usize> {
        let standard = self.standard_points();
        (0..self.fiber.len())
            .filter(|p| standard.binary_search(p).is_err())
            .collect()
    }

    /// True iff `p^v - p^w` lies in the ideal for fiber points `v`, `w`.
    pub fn relates(&self, v: usize, w: usize) -> bool {
        if self.labels[v] == self.labels[w] {
            return true;
        }
        let absorbed = self.absorbed_components();
        absorbed[self.labels[v]] && absorbed[self.labels[w]]
    }

    pub fn index_of(&self, u: &ExponentTensor) -> Option<usize> {
        self.fiber.points.binary_search(u).ok()
    }
}

/// Builds the move graph of `fiber` under the binomial generators of
/// `ideal` and labels its components. Points divisible by a variable
/// generator are marked absorbed.
pub fn move_graph_components(
    fiber: &Fiber,
    ideal: &IdealPresentation,
) -> Result<MoveGraphPartition> {
    if fiber.shape() != ideal.shape() {
        return Err(Error::ShapeMismatch {
            left: fiber.shape(),
            right: ideal.shape(),
        });
    }
    let points = fiber.points();
    let index: HashMap<&[u32], usize> = points
        .iter()
        .enumerate()
        .map(|(p, u)| (u.entries(), p))
        .collect();
    let mut uf = UnionFind::new(points.len());
    for (p, u) in points.iter().enumerate() {
        for b in ideal.binomials() {
            for (from, to) in [(b.plus(), b.minus()), (b.minus(), b.plus())] {
                if let Some(w) = u.replace(from, to) {
                    // Binomials are homogeneous, so the partner stays in the fiber.
                    if let Some(&q) = index.get(w.entries()) {
                        uf.union(p, q);
                    }
                }
            }
        }
    }
    let (labels, num_components) = uf.labels();
    let absorbed = points.iter().map(|u| ideal.absorbs(u)).collect();
    Ok(MoveGraphPartition {
        fiber: fiber.clone(),
        labels,
        absorbed,
        num_components,
    })
}

/// Fiber enumeration followed by [`move_graph_components`].
pub fn partition_of(
    ideal: &IdealPresentation,
    d: &Multidegree,
    cap: usize,
) -> Result<MoveGraphPartition> {
    ideal.shape().same_as(&d.shape())?;
    let fiber = enumerate_fiber(d, cap)?;
    move_graph_components(&fiber, ideal)
}

/// Dimension of the degree-`d` piece of the quotient by `ideal`.
pub fn hilbert_value(ideal: &IdealPresentation, d: &Multidegree, cap: usize) -> Result<usize> {
    Ok(partition_of(ideal, d, cap)?.hilbert_value())
}

/// Degree-`d` monomials of the initial ideal.
pub fn initial_piece(
    ideal: &IdealPresentation,
    d: &Multidegree,
    cap: usize,
) -> Result<BTreeSet<ExponentTensor>> {
    let part = partition_of(ideal, d, cap)?;
    let pts = part.fiber().points();
    Ok(part
        .initial_points()
        .into_iter()
        .map(|p| pts[p].clone())
        .collect())
}

/// Membership of a polynomial with rational coefficients. Terms are grouped
/// by multidegree; within each group the coefficients over every component
/// not absorbed into the ideal must sum to zero.
pub fn contains_polynomial(
    ideal: &IdealPresentation,
    f: &[(BigRational, ExponentTensor)],
    cap: usize,
) -> Result<bool> {
    let mut by_degree: BTreeMap<Vec<u32>, (Multidegree, BTreeMap<ExponentTensor, BigRational>)> =
        BTreeMap::new();
    for (c, u) in f {
        ideal.shape().same_as(&u.shape())?;
        let d = phi(u);
        let key: Vec<u32> = d.rows().iter().chain(d.slices()).copied().collect();
        let entry = by_degree.entry(key).or_insert_with(|| (d, BTreeMap::new()));
        *entry.1.entry(u.clone()).or_insert_with(BigRational::zero) += c;
    }
    for (d, terms) in by_degree.values() {
        if terms.values().all(Zero::is_zero) {
            continue;
        }
        let part = partition_of(ideal, d, cap)?;
        let absorbed = part.absorbed_components();
        let mut sums = vec![BigRational::zero(); part.num_components()];
        for (u, c) in terms {
            let p = part.index_of(u).expect("term lies in its own fiber");
            sums[part.labels()[p]] += c;
        }
        if sums.iter().zip(&absorbed).any(|(s, &a)| !a && !s.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
