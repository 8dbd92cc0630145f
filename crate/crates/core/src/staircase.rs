//! Combinatorial description of the initial ideal of `P_G`.
//!
//! For one connected component `C` the minors live in the `r1 × |E(C)|`
//! matrix whose columns are the edges of `C` in lexicographic order. Their
//! initial ideal is generated by the antidiagonal products
//! `p_{i,c'} p_{i',c}` with `i < i'` and `c < c'`; it is the Stanley–Reisner
//! ideal of the staircase triangulation, whose facets are the monotone
//! lattice paths through the matrix.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{AdmissibleGraph, BipartiteGraph, Edge};
use crate::tensor::{ExponentTensor, VarIndex};

/// A monotone path from cell `(1,1)` to `(rows, cols)`, each step moving
/// one row down or one column right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StaircasePath {
    rows: usize,
    cols: usize,
    cells: Vec<(usize, usize)>,
}

impl StaircasePath {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn contains(&self, cell: (usize, usize)) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// No two cells `(a, c')`, `(a', c)` with `a < a'` and `c < c'`.
    pub fn is_chain(&self) -> bool {
        self.cells
            .iter()
            .all(|&(a, c2)| self.cells.iter().all(|&(a2, c)| !(a < a2 && c < c2)))
    }

    /// Path of the right order, adjacent steps and endpoints in place.
    pub fn is_valid(&self) -> bool {
        self.cells.len() == self.rows + self.cols - 1
            && self.cells.first() == Some(&(1, 1))
            && self.cells.last() == Some(&(self.rows, self.cols))
            && self.cells.windows(2).all(|w| {
                (w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1)
                    || (w[1].0 == w[0].0 && w[1].1 == w[0].1 + 1)
            })
    }
}

/// All `C(r+s-2, r-1)` staircase paths of an `r × s` matrix. Paths are
/// step words over {right, down}; right-first words come first.
pub fn staircase_paths(r: usize, s: usize) -> Vec<StaircasePath> {
    assert!(r >= 1 && s >= 1, "matrix dimensions must be positive");
    let mut out = Vec::new();
    let mut cells = vec![(1, 1)];
    fn rec(r: usize, s: usize, cells: &mut Vec<(usize, usize)>, out: &mut Vec<StaircasePath>) {
        let (a, c) = *cells.last().unwrap();
        if a == r && c == s {
            out.push(StaircasePath {
                rows: r,
                cols: s,
                cells: cells.clone(),
            });
            return;
        }
        if c < s {
            cells.push((a, c + 1));
            rec(r, s, cells, out);
            cells.pop();
        }
        if a < r {
            cells.push((a + 1, c));
            rec(r, s, cells, out);
            cells.pop();
        }
    }
    rec(r, s, &mut cells, &mut out);
    out
}

/// A prime generated by a set of variables. An empty set is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonomialPrime {
    variables: BTreeSet<VarIndex>,
}

impl MonomialPrime {
    pub fn new(variables: impl IntoIterator<Item = VarIndex>) -> Self {
        MonomialPrime {
            variables: variables.into_iter().collect(),
        }
    }

    pub fn variables(&self) -> &BTreeSet<VarIndex> {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn contains(&self, u: &ExponentTensor) -> bool {
        self.variables.iter().any(|&v| u.get(v) > 0)
    }
}

/// A squarefree divisor of `p^u` that lies in the initial ideal of the
/// prime attached to `graph` (variables on non-edges, minors within each
/// connected component), or `None` if `p^u` is a standard monomial.
///
/// The graph need not be admissible; the rule is applied per component.
pub fn initial_witness(graph: &BipartiteGraph, u: &ExponentTensor) -> Option<ExponentTensor> {
    let shape = u.shape();
    let support: Vec<VarIndex> = u.support().collect();
    if let Some(&v) = support.iter().find(|v| !graph.has_edge(v.edge())) {
        return Some(ExponentTensor::unit(shape, v).expect("in bounds"));
    }
    let comps = graph.connected_components();
    let comp_of = |e: Edge| comps.component_of_edge(e);
    for (x, &hi) in support.iter().enumerate() {
        for &lo in &support[x + 1..] {
            // `lo` has the larger row; look for `hi` = p_{i,c'}, `lo` = p_{i',c}, c < c'.
            if hi.i < lo.i && lo.edge() < hi.edge() && comp_of(hi.edge()) == comp_of(lo.edge()) {
                return Some(ExponentTensor::from_vars(shape, &[hi, lo]).expect("in bounds"));
            }
        }
    }
    None
}

/// Membership of `p^u` in the initial ideal of `P_G`.
pub fn in_pg_contains(g: &AdmissibleGraph, r1: usize, u: &ExponentTensor) -> bool {
    debug_assert_eq!(u.shape().r1(), r1);
    in_pg_contains_fast(g, u)
}

/// Block-indexed version of the divisibility rule for admissible graphs.
pub(crate) fn in_pg_contains_fast(g: &AdmissibleGraph, u: &ExponentTensor) -> bool {
    let support: Vec<(VarIndex, usize)> = {
        let mut s = Vec::new();
        for v in u.support() {
            match g.block_of_edge(v.edge()) {
                None => return true,
                Some(b) => s.push((v, b)),
            }
        }
        s
    };
    for (x, &(hi, bh)) in support.iter().enumerate() {
        for &(lo, bl) in &support[x + 1..] {
            if bh == bl && hi.i < lo.i && lo.edge() < hi.edge() {
                return true;
            }
        }
    }
    false
}

/// Minimal primes of the initial ideal of `P_G`: one per choice of a
/// staircase path in each component's matrix, containing the non-edge
/// variables and every variable off the chosen paths.
pub fn sr_primary_decomposition(g: &AdmissibleGraph, r1: usize) -> Vec<MonomialPrime> {
    let graph = g.to_graph();
    let base: Vec<VarIndex> = (1..=r1)
        .flat_map(|i| {
            let graph = &graph;
            (1..=g.left())
                .flat_map(move |j| (1..=g.right()).map(move |k| VarIndex::new(i, j, k)))
                .filter(move |v| !graph.has_edge(v.edge()))
        })
        .collect();
    let per_block: Vec<(Vec<Edge>, Vec<StaircasePath>)> = g
        .blocks()
        .iter()
        .map(|b| {
            let cols = b.edges();
            let paths = staircase_paths(r1, cols.len());
            (cols, paths)
        })
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; per_block.len()];
    loop {
        let mut vars = base.clone();
        for ((cols, paths), &c) in per_block.iter().zip(&choice) {
            let path = &paths[c];
            for i in 1..=r1 {
                for (ci, &(j, k)) in cols.iter().enumerate() {
                    if !path.contains((i, ci + 1)) {
                        vars.push(VarIndex::new(i, j, k));
                    }
                }
            }
        }
        out.push(MonomialPrime::new(vars));
        // odometer over the Cartesian product of path choices
        let mut pos = per_block.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < per_block[pos].1.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Membership in the intersection of the given primes.
pub fn in_intersection(primes: &[MonomialPrime], u: &ExponentTensor) -> bool {
    primes.iter().all(|p| p.contains(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Shape;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, x| acc * (n - x) / (x + 1))
    }

    fn mono(s: Shape, vars: &[(usize, usize, usize)]) -> ExponentTensor {
        let vs: Vec<VarIndex> = vars
            .iter()
            .map(|&(i, j, k)| VarIndex::new(i, j, k))
            .collect();
        ExponentTensor::from_vars(s, &vs).unwrap()
    }

    #[test]
    fn path_counts() {
        assert_eq!(staircase_paths(1, 5).len(), 1);
        assert_eq!(staircase_paths(3, 3).len(), 6);
        for r in 1..=4 {
            for s in 1..=5 {
                let paths = staircase_paths(r, s);
                assert_eq!(paths.len(), binom(r + s - 2, r - 1));
                assert!(paths.iter().all(|p| p.is_valid() && p.is_chain()));
                let distinct: BTreeSet<_> = paths.iter().collect();
                assert_eq!(distinct.len(), paths.len());
            }
        }
    }

    #[test]
    fn two_by_two_paths() {
        let paths = staircase_paths(2, 2);
        let cells: Vec<_> = paths.iter().map(|p| p.cells().to_vec()).collect();
        assert_eq!(
            cells,
            vec![vec![(1, 1), (1, 2), (2, 2)], vec![(1, 1), (2, 1), (2, 2)]]
        );
    }

    #[test]
    fn divisibility_rule_examples() {
        let s = Shape::new(2, 2, 2).unwrap();
        let k22 = AdmissibleGraph::complete(2, 2);
        assert!(in_pg_contains(&k22, 2, &mono(s, &[(1, 1, 2), (2, 1, 1)])));
        assert!(!in_pg_contains(&k22, 2, &mono(s, &[(1, 1, 1), (2, 1, 2)])));
        let diag = BipartiteGraph::new(2, 2, [(1, 1), (2, 2)])
            .unwrap()
            .is_admissible()
            .unwrap();
        assert!(in_pg_contains(&diag, 2, &mono(s, &[(1, 1, 2)])));
        assert!(!in_pg_contains(&diag, 2, &mono(s, &[(1, 1, 1), (2, 2, 2)])));
    }

    #[test]
    fn witness_matches_fast_rule() {
        let s = Shape::new(2, 2, 3).unwrap();
        for g in crate::graph::enumerate_admissible(2, 3) {
            let graph = g.to_graph();
            for deg in 1..=2 {
                for u in ExponentTensor::all_of_degree(s, deg) {
                    let w = initial_witness(&graph, &u);
                    assert_eq!(w.is_some(), in_pg_contains(&g, 2, &u));
                    if let Some(w) = w {
                        assert!(w.is_squarefree() && w.divides(&u));
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_of_complete_2x2() {
        let primes = sr_primary_decomposition(&AdmissibleGraph::complete(2, 2), 2);
        assert_eq!(primes.len(), 4);
        assert!(primes.iter().all(|p| p.len() == 3));
    }

    #[test]
    fn decomposition_of_two_single_edges() {
        let g = BipartiteGraph::new(2, 2, [(1, 1), (2, 2)])
            .unwrap()
            .is_admissible()
            .unwrap();
        let primes = sr_primary_decomposition(&g, 2);
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].len(), 4);
    }

    #[test]
    fn decomposition_of_unit() {
        let primes = sr_primary_decomposition(&AdmissibleGraph::complete(1, 1), 1);
        assert_eq!(primes.len(), 1);
        assert!(primes[0].is_empty());
    }

    #[test]
    fn decomposition_count_is_product() {
        let g = BipartiteGraph::new(3, 3, [(1, 1), (1, 2), (2, 3), (3, 3)])
            .unwrap()
            .is_admissible()
            .unwrap();
        // blocks with 2 and 2 edges, r1 = 3: C(3,2) * C(3,2)
        let primes = sr_primary_decomposition(&g, 3);
        assert_eq!(primes.len(), 9);
        let non_edges = 3 * (9 - 4);
        assert!(primes.iter().all(|p| p.len() == non_edges + 2 + 2));
    }
}
