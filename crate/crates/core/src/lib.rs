//! Exact computations with the binomial ideal of the conditional
//! independence intersection axiom
//! `{X1 ⊥ X2 | X3, X1 ⊥ X3 | X2}` on an `r1 × r2 × r3` table.
//!
//! The ideal `I_M` is generated by the 2x2 minors of the two families of
//! slices. Its minimal primes `P_G` are indexed by admissible bipartite
//! graphs `G` on `[r2] ⊔ [r3]`. This crate builds both, and checks degree by
//! degree that `I_M = ⋂ P_G`, that the initial ideals intersect the same
//! way, and that every initial ideal is squarefree.
//!
//! Modules:
//! - [`tensor`]: shapes, exponent tensors, the sufficient-statistics grading
//!   and the term order.
//! - [`graph`]: bipartite and admissible graphs, their enumeration and count.
//! - [`ideal`]: generator lists of `I_M` and `P_G`.
//! - [`fiber`]: fibers, move graphs, Hilbert values and initial pieces.
//! - [`staircase`]: the staircase description of `in(P_G)`.
//! - [`variety`]: exact rational points, point location, irredundance.
//! - [`verify`]: the degreewise checker.

pub mod error;
pub mod fiber;
pub mod graph;
pub mod ideal;
pub mod staircase;
pub mod tensor;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};
pub use fiber::{
    contains_polynomial, enumerate_fiber, hilbert_value, initial_piece, move_graph_components,
    partition_of, Fiber, MoveGraphPartition, UnionFind, DEFAULT_FIBER_CAP,
};
pub use graph::{
    enumerate_admissible, eta, graph_of_multidegree, graph_of_point, AdmissibleGraph,
    BipartiteGraph, Block,
};
pub use ideal::{
    generators_component, generators_intersection_model, minor_generators, Binomial,
    IdealPresentation,
};
pub use staircase::{
    in_pg_contains, initial_witness, sr_primary_decomposition, staircase_paths, MonomialPrime,
};
pub use tensor::{phi, term_cmp, ExponentTensor, Multidegree, Shape, VarIndex};
pub use variety::{
    evaluate_generators, irredundance_witness, locate_point, sample_generic_point, Point,
};
pub use verify::{CheckKind, Report, Verdict, Verifier};
