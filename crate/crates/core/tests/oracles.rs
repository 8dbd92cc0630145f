//! Brute-force oracles that share no code path with the fiber machinery:
//! exact row reduction of the span of the generators in one total degree,
//! fibers by filtering all monomials, admissible graphs by subset search.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use ciax::fiber::initial_piece;
use ciax::{
    enumerate_admissible, enumerate_fiber, eta, generators_component,
    generators_intersection_model, phi, term_cmp, BipartiteGraph, ExponentTensor,
    IdealPresentation, Multidegree, Shape, DEFAULT_FIBER_CAP,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn shape(r1: usize, r2: usize, r3: usize) -> Shape {
    Shape::new(r1, r2, r3).unwrap()
}

/// Leading monomials of a row-reduced basis of `I_n`, columns sorted
/// from largest to smallest. The pivots are exactly `in(I)_n`.
fn initial_by_elimination(ideal: &IdealPresentation, n: u32) -> BTreeSet<ExponentTensor> {
    let s = ideal.shape();
    let mut cols = ExponentTensor::all_of_degree(s, n);
    cols.sort_by(|a, b| term_cmp(b, a).unwrap());
    let index: HashMap<&ExponentTensor, usize> =
        cols.iter().enumerate().map(|(x, u)| (u, x)).collect();

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let one = BigRational::one();
    for &v in ideal.monomials() {
        let e = ExponentTensor::unit(s, v).unwrap();
        if n < 1 {
            continue;
        }
        for m in ExponentTensor::all_of_degree(s, n - 1) {
            let mut row = vec![BigRational::zero(); cols.len()];
            row[index[&m.add(&e).unwrap()]] = one.clone();
            rows.push(row);
        }
    }
    for b in ideal.binomials() {
        let deg = b.plus().degree() as u32;
        if n < deg {
            continue;
        }
        for m in ExponentTensor::all_of_degree(s, n - deg) {
            let mut row = vec![BigRational::zero(); cols.len()];
            row[index[&m.add(b.plus()).unwrap()]] += &one;
            row[index[&m.add(b.minus()).unwrap()]] -= &one;
            rows.push(row);
        }
    }

    let mut pivots = BTreeSet::new();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(p) = (r..rows.len()).find(|&x| !rows[x][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (y, row) in rows.iter_mut().enumerate() {
            if y != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.insert(cols[c].clone());
        r += 1;
    }
    pivots
}

fn initial_by_fibers(ideal: &IdealPresentation, n: u32) -> BTreeSet<ExponentTensor> {
    Multidegree::all_of_total(ideal.shape(), n)
        .iter()
        .flat_map(|d| initial_piece(ideal, d, DEFAULT_FIBER_CAP).unwrap())
        .collect()
}

#[test]
fn model_initial_ideal_matches_elimination() {
    for (s, max) in [
        (shape(2, 2, 2), 3),
        (shape(2, 2, 3), 3),
        (shape(3, 2, 2), 3),
        (shape(2, 3, 3), 2),
    ] {
        let im = generators_intersection_model(s);
        for n in 1..=max {
            let oracle = initial_by_elimination(&im, n);
            let fibers = initial_by_fibers(&im, n);
            assert_eq!(oracle, fibers, "{s} degree {n}");
        }
    }
}

#[test]
fn degree_two_dimension_of_smallest_table() {
    let s = shape(2, 2, 2);
    let im = generators_intersection_model(s);
    let monomials = ExponentTensor::all_of_degree(s, 2).len();
    let rank = initial_by_elimination(&im, 2).len();
    assert_eq!(monomials, 36);
    assert_eq!(rank, 4);
    assert_eq!(monomials - rank, 32);
}

#[test]
fn component_initial_ideals_match_elimination() {
    for s in [shape(2, 2, 2), shape(2, 2, 3), shape(3, 2, 2)] {
        for g in enumerate_admissible(s.r2(), s.r3()) {
            let pg = generators_component(&g, s.r1()).unwrap();
            for n in 1..=3 {
                assert_eq!(
                    initial_by_elimination(&pg, n),
                    initial_by_fibers(&pg, n),
                    "{s} {:?} degree {n}",
                    g.to_graph().edges().collect::<Vec<_>>()
                );
            }
        }
    }
}

#[test]
fn fibers_match_filtered_monomials() {
    for s in [
        shape(2, 2, 2),
        shape(2, 2, 3),
        shape(3, 2, 2),
        shape(1, 2, 3),
    ] {
        for n in 0..=3 {
            let mut by_degree: HashMap<Multidegree, BTreeSet<ExponentTensor>> = HashMap::new();
            for u in ExponentTensor::all_of_degree(s, n) {
                by_degree.entry(phi(&u)).or_default().insert(u);
            }
            for d in Multidegree::all_of_total(s, n) {
                let fiber = enumerate_fiber(&d, DEFAULT_FIBER_CAP).unwrap();
                let got: BTreeSet<ExponentTensor> = fiber.points().iter().cloned().collect();
                assert_eq!(got.len(), fiber.len(), "duplicates in fiber of {d}");
                assert_eq!(
                    got,
                    by_degree.remove(&d).unwrap_or_default(),
                    "{s} fiber of {d}"
                );
            }
            assert!(by_degree.is_empty(), "{s}: unlisted multidegrees");
        }
    }
}

#[test]
fn fiber_points_are_sorted() {
    let s = shape(2, 2, 2);
    for d in Multidegree::up_to_total(s, 3) {
        let f = enumerate_fiber(&d, DEFAULT_FIBER_CAP).unwrap();
        assert!(f.points().windows(2).all(|w| w[0] < w[1]));
    }
}

fn brute_force_count(p: usize, q: usize) -> usize {
    let cells: Vec<(usize, usize)> = (1..=p).flat_map(|j| (1..=q).map(move |k| (j, k))).collect();
    (0u32..1 << cells.len())
        .filter(|mask| {
            let edges = cells
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e);
            BipartiteGraph::new(p, q, edges)
                .unwrap()
                .is_admissible()
                .is_some()
        })
        .count()
}

#[test]
fn admissible_counts_small() {
    for p in 1..=3 {
        for q in 1..=3 {
            let n = brute_force_count(p, q);
            assert_eq!(enumerate_admissible(p, q).len(), n);
            assert_eq!(eta(p, q), n.into());
        }
    }
    assert_eq!(eta(2, 2), 3u32.into());
    assert_eq!(eta(3, 3), 25u32.into());
    assert_eq!(eta(4, 4), 339u32.into());
}

#[test]
fn eta_is_symmetric_and_large_values_are_exact() {
    for p in 1..=8 {
        for q in 1..=8 {
            assert_eq!(eta(p, q), eta(q, p));
        }
    }
    // a single right vertex forces the star
    for p in 1..=10 {
        assert_eq!(eta(p, 1), BigUint::one());
    }
    assert!(eta(30, 30) > u64::MAX.into());
}

#[test]
fn term_cmp_sorts_like_elimination_columns() {
    let s = shape(2, 2, 2);
    let mut all = ExponentTensor::all_of_degree(s, 2);
    all.sort_by(|a, b| term_cmp(a, b).unwrap());
    assert!(all
        .windows(2)
        .all(|w| term_cmp(&w[0], &w[1]).unwrap() == Ordering::Less));
}
