//! Bipartite graphs on `[r2] ⊔ [r3]` and the admissible graphs indexing the
//! minimal primes.
//!
//! A graph is admissible when it has no isolated vertex and each connected
//! component is a complete bipartite graph `K_{p,q}` with `p, q >= 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::Multidegree;
use crate::variety::Point;

pub type Edge = (usize, usize);

/// A bipartite graph with left vertices `[left]` and right vertices `[right]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: BTreeSet<Edge>,
}

/// One connected component, vertex and edge lists sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Components {
    /// Components with at least one edge, ordered by smallest left vertex.
    pub components: Vec<Component>,
    pub isolated_left: Vec<usize>,
    pub isolated_right: Vec<usize>,
}

impl Components {
    pub fn num_isolated(&self) -> usize {
        self.isolated_left.len() + self.isolated_right.len()
    }

    /// Index of the component containing `edge`, if any.
    pub fn component_of_edge(&self, edge: Edge) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.edges.binary_search(&edge).is_ok())
    }
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (j, k) in edges {
            if j == 0 || k == 0 || j > left || k > right {
                return Err(Error::EdgeOutOfBounds { left, right, j, k });
            }
            set.insert((j, k));
        }
        Ok(BipartiteGraph {
            left,
            right,
            edges: set,
        })
    }

    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        let edges = (1..=left)
            .flat_map(|j| (1..=right).map(move |k| (j, k)))
            .collect();
        BipartiteGraph { left, right, edges }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_subgraph_of(&self, other: &BipartiteGraph) -> bool {
        self.left == other.left && self.right == other.right && self.edges.is_subset(&other.edges)
    }

    /// Connected components. Left vertex `j` is node `j-1`, right vertex `k`
    /// is node `left+k-1`.
    pub fn connected_components(&self) -> Components {
        let n = self.left + self.right;
        let mut uf = crate::fiber::UnionFind::new(n);
        let mut touched = vec![false; n];
        for &(j, k) in &self.edges {
            uf.union(j - 1, self.left + k - 1);
            touched[j - 1] = true;
            touched[self.left + k - 1] = true;
        }
        let mut comps: Vec<Component> = Vec::new();
        let mut root_slot: Vec<Option<usize>> = vec![None; n];
        let mut out = Components::default();
        // Left vertices in increasing order fix the component order, since
        // every component with an edge has a left vertex.
        for (node, &seen) in touched.iter().enumerate() {
            if !seen {
                if node < self.left {
                    out.isolated_left.push(node + 1);
                } else {
                    out.isolated_right.push(node - self.left + 1);
                }
                continue;
            }
            let r = uf.find(node);
            let slot = *root_slot[r].get_or_insert_with(|| {
                comps.push(Component {
                    left: Vec::new(),
                    right: Vec::new(),
                    edges: Vec::new(),
                });
                comps.len() - 1
            });
            if node < self.left {
                comps[slot].left.push(node + 1);
            } else {
                comps[slot].right.push(node - self.left + 1);
            }
        }
        for &(j, k) in &self.edges {
            let slot = root_slot[uf.find(j - 1)].expect("edge endpoint is touched");
            comps[slot].edges.push((j, k));
        }
        out.components = comps;
        out
    }

    /// The admissible form of this graph, or `None` if some vertex is
    /// isolated or some component is not complete bipartite.
    pub fn is_admissible(&self) -> Option<AdmissibleGraph> {
        let comps = self.connected_components();
        if comps.num_isolated() > 0 {
            return None;
        }
        let mut blocks = Vec::with_capacity(comps.components.len());
        for c in comps.components {
            if c.edges.len() != c.left.len() * c.right.len() {
                return None;
            }
            blocks.push(Block {
                j: c.left,
                k: c.right,
            });
        }
        Some(AdmissibleGraph {
            left: self.left,
            right: self.right,
            blocks,
        })
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|(j, k)| format!("({j},{k})"))
            .collect();
        write!(f, "{{{}}}", es.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    left: usize,
    right: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    components: Option<Vec<Block>>,
}

impl Serialize for BipartiteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            left: self.left,
            right: self.right,
            edges: self.edges.iter().map(|&(j, k)| [j, k]).collect(),
            components: None,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        BipartiteGraph::new(
            raw.left,
            raw.right,
            raw.edges.into_iter().map(|[j, k]| (j, k)),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// One complete bipartite block `J × K` of an admissible graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
}

impl Block {
    /// Edges `J × K` in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        self.j
            .iter()
            .flat_map(|&j| self.k.iter().map(move |&k| (j, k)))
            .collect()
    }
}

/// An admissible graph stored as its blocks, sorted by smallest left vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleGraph {
    left: usize,
    right: usize,
    blocks: Vec<Block>,
}

impl AdmissibleGraph {
    /// Builds from blocks, checking that the `J`s partition `[left]` and the
    /// `K`s partition `[right]`.
    pub fn from_blocks(left: usize, right: usize, mut blocks: Vec<Block>) -> Result<Self> {
        let mut seen_j = vec![false; left + 1];
        let mut seen_k = vec![false; right + 1];
        for b in &mut blocks {
            if b.j.is_empty() || b.k.is_empty() {
                return Err(Error::NotAdmissible("empty block".into()));
            }
            b.j.sort_unstable();
            b.k.sort_unstable();
            for &j in &b.j {
                if j == 0 || j > left || std::mem::replace(&mut seen_j[j], true) {
                    return Err(Error::NotAdmissible(format!(
                        "left vertex {j} invalid or repeated"
                    )));
                }
            }
            for &k in &b.k {
                if k == 0 || k > right || std::mem::replace(&mut seen_k[k], true) {
                    return Err(Error::NotAdmissible(format!(
                        "right vertex {k} invalid or repeated"
                    )));
                }
            }
        }
        if seen_j[1..].iter().any(|s| !s) || seen_k[1..].iter().any(|s| !s) {
            return Err(Error::NotAdmissible(
                "blocks do not cover every vertex".into(),
            ));
        }
        blocks.sort();
        Ok(AdmissibleGraph {
            left,
            right,
            blocks,
        })
    }

    pub fn complete(left: usize, right: usize) -> Self {
        AdmissibleGraph {
            left,
            right,
            blocks: vec![Block {
                j: (1..=left).collect(),
                k: (1..=right).collect(),
            }],
        }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_components(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_graph(&self) -> BipartiteGraph {
        BipartiteGraph::new(
            self.left,
            self.right,
            self.blocks.iter().flat_map(Block::edges),
        )
        .expect("blocks are within bounds")
    }

    pub fn has_edge(&self, (j, k): Edge) -> bool {
        self.block_of_left(j)
            .is_some_and(|b| self.blocks[b].k.binary_search(&k).is_ok())
    }

    /// Block containing left vertex `j`.
    pub fn block_of_left(&self, j: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.j.binary_search(&j).is_ok())
    }

    /// Block containing the edge, if it is an edge.
    pub fn block_of_edge(&self, e: Edge) -> Option<usize> {
        self.block_of_left(e.0)
            .filter(|&b| self.blocks[b].k.binary_search(&e.1).is_ok())
    }
}

impl fmt::Display for AdmissibleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_graph())
    }
}

impl Serialize for AdmissibleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            left: self.left,
            right: self.right,
            edges: self.to_graph().edges().map(|(j, k)| [j, k]).collect(),
            components: Some(self.blocks.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdmissibleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GraphJson::deserialize(d)?;
        let g = BipartiteGraph::new(raw.left, raw.right, raw.edges.iter().map(|&[j, k]| (j, k)))
            .map_err(D::Error::custom)?;
        let adm = g
            .is_admissible()
            .ok_or_else(|| D::Error::custom(Error::NotAdmissible(format!("edge set {g}"))))?;
        if let Some(blocks) = raw.components {
            let given = AdmissibleGraph::from_blocks(raw.left, raw.right, blocks)
                .map_err(D::Error::custom)?;
            if given != adm {
                return Err(D::Error::custom("\"components\" disagree with \"edges\""));
            }
        }
        Ok(adm)
    }
}

/// Set partitions of `[n]` into exactly `t` blocks, generated as restricted
/// growth strings. Blocks come out sorted by smallest element.
pub fn set_partitions(n: usize, t: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if n == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if t == 0 || t > n {
        return out;
    }
    let mut rgs = vec![0usize; n];
    fn rec(
        pos: usize,
        max_used: usize,
        t: usize,
        rgs: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let n = rgs.len();
        if pos == n {
            if max_used + 1 == t {
                let mut blocks = vec![Vec::new(); t];
                for (elem, &b) in rgs.iter().enumerate() {
                    blocks[b].push(elem + 1);
                }
                out.push(blocks);
            }
            return;
        }
        // Not enough positions left to open the remaining blocks.
        if t - (max_used + 1) > n - pos {
            return;
        }
        let limit = (max_used + 1).min(t - 1);
        for b in 0..=limit {
            rgs[pos] = b;
            rec(pos + 1, max_used.max(b), t, rgs, out);
        }
    }
    rec(1, 0, t, &mut rgs, &mut out);
    out
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(t), &mut vec![false; t], &mut out);
    out
}

/// Every admissible graph on `[r2] ⊔ [r3]`, each exactly once: a partition
/// of `[r2]` into `t` blocks, a partition of `[r3]` into `t` blocks, and a
/// bijection pairing them.
pub fn enumerate_admissible(r2: usize, r3: usize) -> Vec<AdmissibleGraph> {
    let mut out = Vec::new();
    for t in 1..=r2.min(r3) {
        let lefts = set_partitions(r2, t);
        let rights = set_partitions(r3, t);
        let perms = permutations(t);
        for lp in &lefts {
            for rp in &rights {
                for perm in &perms {
                    let blocks = lp
                        .iter()
                        .zip(perm)
                        .map(|(j, &p)| Block {
                            j: j.clone(),
                            k: rp[p].clone(),
                        })
                        .collect();
                    // Left partitions from restricted growth strings are
                    // already ordered by smallest element.
                    out.push(AdmissibleGraph {
                        left: r2,
                        right: r3,
                        blocks,
                    });
                }
            }
        }
    }
    out
}

/// Stirling numbers of the second kind `S(n, t)` for `t = 0..=n`.
pub fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for t in 1..=m {
            let mut v = row[t - 1].clone();
            if t < m {
                v += &row[t] * BigUint::from(t);
            }
            next[t] = v;
        }
        row = next;
    }
    row
}

/// Number of admissible graphs on `[p] ⊔ [q]`, `Σ_t t!·S(p,t)·S(q,t)`.
pub fn eta(p: usize, q: usize) -> BigUint {
    let sp = stirling2_row(p);
    let sq = stirling2_row(q);
    let mut fact = BigUint::one();
    let mut total = BigUint::zero();
    for t in 0..=p.min(q) {
        if t > 0 {
            fact *= BigUint::from(t);
        }
        total += &fact * &sp[t] * &sq[t];
    }
    total
}

/// Edges `(j,k)` with `d_jk != 0`.
pub fn graph_of_multidegree(d: &Multidegree) -> BipartiteGraph {
    let s = d.shape();
    let edges = (1..=s.r2())
        .flat_map(|j| (1..=s.r3()).map(move |k| (j, k)))
        .filter(|&(j, k)| d.slice(j, k) != 0);
    BipartiteGraph::new(s.r2(), s.r3(), edges).expect("in bounds")
}

/// Edges `(j,k)` whose vector `p_{·jk}` is nonzero.
pub fn graph_of_point(p: &Point) -> BipartiteGraph {
    let s = p.shape();
    let edges = (1..=s.r2())
        .flat_map(|j| (1..=s.r3()).map(move |k| (j, k)))
        .filter(|&(j, k)| !p.slice_is_zero(j, k));
    BipartiteGraph::new(s.r2(), s.r3(), edges).expect("in bounds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{phi, ExponentTensor, Shape, VarIndex};

    fn g(left: usize, right: usize, edges: &[Edge]) -> BipartiteGraph {
        BipartiteGraph::new(left, right, edges.iter().copied()).unwrap()
    }

    #[test]
    fn components_two_singletons() {
        let c = g(2, 2, &[(1, 1), (2, 2)]).connected_components();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].left, vec![1]);
        assert_eq!(c.components[0].right, vec![1]);
        assert_eq!(c.components[1].left, vec![2]);
        assert_eq!(c.components[1].right, vec![2]);
        assert_eq!(c.num_isolated(), 0);
    }

    #[test]
    fn components_empty_graph() {
        let c = g(2, 2, &[]).connected_components();
        assert!(c.components.is_empty());
        assert_eq!(c.num_isolated(), 4);
    }

    #[test]
    fn components_complete() {
        let c = BipartiteGraph::complete(2, 2).connected_components();
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].edges.len(), 4);
    }

    #[test]
    fn component_order_follows_left_vertex() {
        let c = g(3, 3, &[(3, 1), (1, 3), (2, 2)]).connected_components();
        let firsts: Vec<_> = c
            .components
            .iter()
            .map(|c| (c.left[0], c.right[0]))
            .collect();
        assert_eq!(firsts, vec![(1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn admissibility() {
        assert!(BipartiteGraph::complete(2, 2).is_admissible().is_some());
        assert!(g(2, 2, &[(1, 1), (2, 2)]).is_admissible().is_some());
        assert!(g(2, 2, &[(1, 1), (1, 2), (2, 1)]).is_admissible().is_none());
        // isolated right vertex
        assert!(g(2, 3, &[(1, 1), (2, 2)]).is_admissible().is_none());
    }

    #[test]
    fn edge_out_of_bounds() {
        assert!(BipartiteGraph::new(2, 2, [(3, 1)]).is_err());
        assert!(BipartiteGraph::new(2, 2, [(0, 1)]).is_err());
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_admissible(1, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].to_graph(), g(1, 1, &[(1, 1)]));

        let two: Vec<BipartiteGraph> = enumerate_admissible(2, 2)
            .iter()
            .map(|a| a.to_graph())
            .collect();
        assert_eq!(two.len(), 3);
        assert!(two.contains(&BipartiteGraph::complete(2, 2)));
        assert!(two.contains(&g(2, 2, &[(1, 1), (2, 2)])));
        assert!(two.contains(&g(2, 2, &[(1, 2), (2, 1)])));

        assert_eq!(enumerate_admissible(3, 2).len(), 7);
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(0, 0), BigUint::from(1u32));
        assert_eq!(eta(3, 0), BigUint::from(0u32));
        assert_eq!(eta(2, 2), BigUint::from(3u32));
        assert_eq!(eta(3, 3), BigUint::from(25u32));
    }

    #[test]
    fn stirling_rows() {
        let r: Vec<u32> = stirling2_row(4)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(r, vec![0, 1, 7, 6, 1]);
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(set_partitions(4, 2).len(), 7);
        assert_eq!(set_partitions(0, 0).len(), 1);
        assert_eq!(set_partitions(3, 4).len(), 0);
    }

    #[test]
    fn graph_from_multidegree() {
        let s = Shape::new(2, 2, 2).unwrap();
        let u = ExponentTensor::from_vars(s, &[VarIndex::new(1, 1, 1), VarIndex::new(2, 2, 2)])
            .unwrap();
        assert_eq!(graph_of_multidegree(&phi(&u)), g(2, 2, &[(1, 1), (2, 2)]));
        let u = ExponentTensor::from_vars(s, &[VarIndex::new(1, 1, 1), VarIndex::new(2, 1, 2)])
            .unwrap();
        assert_eq!(graph_of_multidegree(&phi(&u)), g(2, 2, &[(1, 1), (1, 2)]));
        assert_eq!(
            graph_of_multidegree(&phi(&ExponentTensor::zero(s))),
            g(2, 2, &[])
        );
    }

    #[test]
    fn admissible_json() {
        let a = g(2, 2, &[(1, 2), (2, 1)]).is_admissible().unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"{"left":2,"right":2,"edges":[[1,2],[2,1]],"components":[{"J":[1],"K":[2]},{"J":[2],"K":[1]}]}"#
        );
        let back: AdmissibleGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let bad = r#"{"left":2,"right":2,"edges":[[1,1],[1,2],[2,1]]}"#;
        assert!(serde_json::from_str::<AdmissibleGraph>(bad).is_err());
    }

    #[test]
    fn from_blocks_validates() {
        let ok = AdmissibleGraph::from_blocks(
            2,
            2,
            vec![
                Block {
                    j: vec![2],
                    k: vec![1],
                },
                Block {
                    j: vec![1],
                    k: vec![2],
                },
            ],
        )
        .unwrap();
        assert_eq!(ok.blocks()[0].j, vec![1]);
        assert!(AdmissibleGraph::from_blocks(
            2,
            2,
            vec![Block {
                j: vec![1],
                k: vec![1, 2]
            }]
        )
        .is_err());
    }
}
