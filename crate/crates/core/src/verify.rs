//! Degreewise checker for the decomposition, initial-ideal and radicality
//! statements, at a fixed shape and total-degree bound.
//!
//! Every check walks the multidegrees of total degree `1..=max` (by total
//! degree, then lexicographically), evaluates them in parallel and merges
//! the results in that order, so reports are deterministic.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fiber::{partition_of, MoveGraphPartition, DEFAULT_FIBER_CAP};
use crate::graph::graph_of_point;
use crate::graph::{enumerate_admissible, graph_of_multidegree, AdmissibleGraph};
use crate::ideal::{
    classify_in_component, generators_component, generators_intersection_model, minor_generators,
    Containment, IdealPresentation,
};
use crate::staircase::{in_pg_contains_fast, initial_witness};
use crate::tensor::{phi, ExponentTensor, Multidegree, Shape};
use crate::variety::{
    evaluate_generators, irredundance_witness, locate_point, sample_generic_point,
    sample_model_point, sample_sparse_point, satisfies,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// The named checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Claim1,
    Claim2,
    Hilbert,
    Ideal,
    Radical,
    Variety,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Claim1,
        CheckKind::Claim2,
        CheckKind::Hilbert,
        CheckKind::Ideal,
        CheckKind::Radical,
        CheckKind::Variety,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Claim1 => "claim1",
            CheckKind::Claim2 => "claim2",
            CheckKind::Hilbert => "hilbert",
            CheckKind::Ideal => "ideal",
            CheckKind::Radical => "radical",
            CheckKind::Variety => "variety",
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub shape: Shape,
    pub max_total_degree: Option<u32>,
    pub verdict: Verdict,
    pub counterexample: Option<Value>,
    /// Summary line for plain-text output.
    pub summary: String,
    pub detail: Vec<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

/// Result of a check at a single multidegree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub multidegree: Multidegree,
    pub pass: bool,
    pub detail: Value,
    pub counterexample: Option<Value>,
}

/// Default total-degree bound: 3 for small tables, 2 otherwise.
pub fn default_max_degree(shape: Shape) -> u32 {
    if shape.num_vars() <= 12 {
        3
    } else {
        2
    }
}

fn flat(u: &ExponentTensor) -> Value {
    json!(u.entries())
}

fn degree_json(d: &Multidegree) -> Value {
    json!({"rows": d.rows(), "slices": d.slices()})
}

/// Canonical class per fiber point of the degree-`d` piece of an ideal:
/// points are identified when their difference is in the ideal. All
/// absorbed points share one class.
fn ideal_classes(part: &MoveGraphPartition) -> Vec<usize> {
    let absorbed = part.absorbed_components();
    let mut map = vec![usize::MAX; part.num_components() + 1];
    let mut next = 0;
    part.labels()
        .iter()
        .map(|&l| {
            let key = if absorbed[l] {
                part.num_components()
            } else {
                l
            };
            if map[key] == usize::MAX {
                map[key] = next;
                next += 1;
            }
            map[key]
        })
        .collect()
}

/// Inputs of the checks. The presentations can be replaced to test that
/// the checks detect corrupted generator lists.
#[derive(Clone, Debug)]
pub struct Verifier {
    shape: Shape,
    cap: usize,
    model: IdealPresentation,
    graphs: Vec<AdmissibleGraph>,
    components: Vec<IdealPresentation>,
}

impl Verifier {
    pub fn new(shape: Shape) -> Result<Self> {
        shape.require_two_rows()?;
        let graphs = enumerate_admissible(shape.r2(), shape.r3());
        let components = graphs
            .iter()
            .map(|g| generators_component(g, shape.r1()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Verifier {
            shape,
            cap: DEFAULT_FIBER_CAP,
            model: generators_intersection_model(shape),
            graphs,
            components,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Replaces the presentation of `I_M`.
    pub fn with_model(mut self, model: IdealPresentation) -> Result<Self> {
        self.shape.same_as(&model.shape())?;
        self.model = model;
        Ok(self)
    }

    /// Replaces the presentation of the `idx`-th component.
    pub fn with_component(mut self, idx: usize, ideal: IdealPresentation) -> Result<Self> {
        self.shape.same_as(&ideal.shape())?;
        self.components[idx] = ideal;
        Ok(self)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn model(&self) -> &IdealPresentation {
        &self.model
    }

    pub fn graphs(&self) -> &[AdmissibleGraph] {
        &self.graphs
    }

    pub fn components(&self) -> &[IdealPresentation] {
        &self.components
    }

    fn degrees(&self, max: u32) -> Vec<Multidegree> {
        Multidegree::up_to_total(self.shape, max)
    }

    fn in_all_components(&self, u: &ExponentTensor) -> bool {
        self.graphs.iter().all(|g| in_pg_contains_fast(g, u))
    }

    /// The move-graph partitions of the fiber of `d` under `I_M` and under
    /// the minors of `G(d)` coincide.
    pub fn check_claim1(&self, d: &Multidegree) -> Result<DegreeCheck> {
        let model = partition_of(&self.model, d, self.cap)?;
        let gd = graph_of_multidegree(d);
        let minors = minor_generators(&gd, self.shape.r1())?;
        let local = partition_of(&minors, d, self.cap)?;
        let (a, b) = (ideal_classes(&model), ideal_classes(&local));
        let pass = a == b;
        let counterexample = (!pass).then(|| {
            let pts = model.fiber().points();
            let bad = (0..pts.len())
                .flat_map(|x| (0..pts.len()).map(move |y| (x, y)))
                .find(|&(x, y)| (a[x] == a[y]) != (b[x] == b[y]))
                .expect("partitions differ somewhere");
            json!({
                "multidegree": degree_json(d),
                "monomials": [flat(&pts[bad.0]), flat(&pts[bad.1])],
                "related_in_model": a[bad.0] == a[bad.1],
                "related_in_component": b[bad.0] == b[bad.1],
            })
        });
        Ok(DegreeCheck {
            multidegree: d.clone(),
            pass,
            detail: json!({
                "fiber": model.fiber().len(),
                "classes": a.iter().max().map_or(0, |m| m + 1),
            }),
            counterexample,
        })
    }

    /// Membership in every `in(P_G)` agrees with membership in `in(P_{G(d)})`
    /// for the monomials of degree `d`.
    pub fn check_claim2(&self, d: &Multidegree) -> Result<DegreeCheck> {
        let fiber = crate::fiber::enumerate_fiber(d, self.cap)?;
        let gd = graph_of_multidegree(d);
        let mut inside = 0usize;
        let mut counterexample = None;
        for u in fiber.points() {
            let lhs = self.in_all_components(u);
            let rhs = initial_witness(&gd, u).is_some();
            inside += usize::from(lhs);
            if lhs != rhs && counterexample.is_none() {
                counterexample = Some(json!({
                    "multidegree": degree_json(d),
                    "monomial": flat(u),
                    "in_intersection": lhs,
                    "in_component_of_degree": rhs,
                }));
            }
        }
        Ok(DegreeCheck {
            multidegree: d.clone(),
            pass: counterexample.is_none(),
            detail: json!({"fiber": fiber.len(), "initial": inside}),
            counterexample,
        })
    }

    /// `|fiber| - |in(I_M)_d|` equals the number of degree-`d` monomials
    /// outside every `in(P_G)`.
    pub fn check_hilbert_at(&self, d: &Multidegree) -> Result<DegreeCheck> {
        let part = partition_of(&self.model, d, self.cap)?;
        let fiber = part.fiber();
        let model_dim = fiber.len() - part.initial_points().len();
        let outside = fiber
            .points()
            .iter()
            .filter(|u| !self.in_all_components(u))
            .count();
        let pass = model_dim == outside;
        Ok(DegreeCheck {
            multidegree: d.clone(),
            pass,
            detail: json!({
                "multidegree": degree_json(d),
                "fiber": fiber.len(),
                "hilbert_model": model_dim,
                "hilbert_intersection": outside,
                "initial_model": fiber.len() - model_dim,
            }),
            counterexample: (!pass).then(|| {
                json!({
                    "multidegree": degree_json(d),
                    "hilbert_model": model_dim,
                    "hilbert_intersection": outside,
                })
            }),
        })
    }

    fn per_degree<F>(&self, max: u32, f: F) -> Result<Vec<DegreeCheck>>
    where
        F: Fn(&Multidegree) -> Result<DegreeCheck> + Sync + Send,
    {
        self.degrees(max).par_iter().map(f).collect()
    }

    fn report(
        &self,
        kind: &str,
        max: Option<u32>,
        start: Instant,
        rows: Vec<DegreeCheck>,
        summary: String,
    ) -> Report {
        let counterexample = rows
            .iter()
            .find(|r| !r.pass)
            .and_then(|r| r.counterexample.clone());
        let verdict = Verdict::from_bool(rows.iter().all(|r| r.pass));
        Report {
            check: kind.to_string(),
            shape: self.shape,
            max_total_degree: max,
            verdict,
            counterexample,
            summary,
            detail: Vec::new(),
            elapsed: start.elapsed(),
        }
    }

    pub fn claim1(&self, max: u32) -> Result<Report> {
        let start = Instant::now();
        let rows = self.per_degree(max, |d| self.check_claim1(d))?;
        let summary = format!("{} multidegrees", rows.len());
        Ok(self.report("claim1", Some(max), start, rows, summary))
    }

    pub fn claim2(&self, max: u32) -> Result<Report> {
        let start = Instant::now();
        let rows = self.per_degree(max, |d| self.check_claim2(d))?;
        let summary = format!(
            "{} multidegrees, {} admissible graphs",
            rows.len(),
            self.graphs.len()
        );
        Ok(self.report("claim2", Some(max), start, rows, summary))
    }

    pub fn hilbert(&self, max: u32) -> Result<Report> {
        let start = Instant::now();
        let rows = self.per_degree(max, |d| self.check_hilbert_at(d))?;
        let mut totals = vec![0usize; max as usize + 1];
        for r in &rows {
            totals[r.multidegree.total_degree() as usize] +=
                r.detail["hilbert_model"].as_u64().unwrap_or(0) as usize;
        }
        let dims: Vec<String> = (1..=max as usize)
            .map(|n| format!("H({n})={}", totals[n]))
            .collect();
        let detail: Vec<Value> = rows.iter().map(|r| r.detail.clone()).collect();
        let mut report = self.report("hilbert", Some(max), start, rows, dims.join(" "));
        report.detail = (1..=max as usize)
            .map(|n| json!({"total_degree": n, "dimension": totals[n]}))
            .chain(detail)
            .collect();
        Ok(report)
    }

    /// Dimension of the quotient by `I_M` in each total degree `1..=max`.
    pub fn total_dimensions(&self, max: u32) -> Result<Vec<usize>> {
        let rows = self.per_degree(max, |d| self.check_hilbert_at(d))?;
        let mut totals = vec![0usize; max as usize];
        for r in rows {
            totals[r.multidegree.total_degree() as usize - 1] +=
                r.detail["hilbert_model"].as_u64().unwrap() as usize;
        }
        Ok(totals)
    }

    /// Containment of `I_M` in every component, agreement of each
    /// component's fiber-route initial ideal with the divisibility rule,
    /// and irredundance witnesses for all ordered pairs.
    fn containment_at(&self, d: &Multidegree) -> Result<DegreeCheck> {
        let model = partition_of(&self.model, d, self.cap)?;
        let pts = model.fiber().points();
        let members = model.members();
        for (g, pg) in self.graphs.iter().zip(&self.components) {
            let part = partition_of(pg, d, self.cap)?;
            for comp in &members {
                if let Some(&w) = comp.iter().find(|&&w| !part.relates(comp[0], w)) {
                    return Ok(DegreeCheck {
                        multidegree: d.clone(),
                        pass: false,
                        detail: Value::Null,
                        counterexample: Some(json!({
                            "kind": "model relation outside component",
                            "multidegree": degree_json(d),
                            "graph": g,
                            "monomials": [flat(&pts[comp[0]]), flat(&pts[w])],
                        })),
                    });
                }
            }
            let standard = part.standard_points();
            for (x, u) in pts.iter().enumerate() {
                let by_fiber = standard.binary_search(&x).is_err();
                if by_fiber != in_pg_contains_fast(g, u) {
                    return Ok(DegreeCheck {
                        multidegree: d.clone(),
                        pass: false,
                        detail: Value::Null,
                        counterexample: Some(json!({
                            "kind": "initial ideal of component disagrees with divisibility rule",
                            "multidegree": degree_json(d),
                            "graph": g,
                            "monomial": flat(u),
                            "in_initial_by_fiber": by_fiber,
                        })),
                    });
                }
            }
        }
        Ok(DegreeCheck {
            multidegree: d.clone(),
            pass: true,
            detail: Value::Null,
            counterexample: None,
        })
    }

    pub fn ideal_decomposition(&self, max: u32, seed: u64) -> Result<Report> {
        let start = Instant::now();
        // Generator-level containment.
        for b in self.model.binomials() {
            for (g, pg) in self.graphs.iter().zip(&self.components) {
                if classify_in_component(b, pg) == Containment::NotContained {
                    let d = phi(b.plus());
                    let row = DegreeCheck {
                        multidegree: d.clone(),
                        pass: false,
                        detail: Value::Null,
                        counterexample: Some(json!({
                            "kind": "generator of model not in component",
                            "multidegree": degree_json(&d),
                            "graph": g,
                            "generator": [flat(b.plus()), flat(b.minus())],
                        })),
                    };
                    return Ok(self.report(
                        "ideal",
                        Some(max),
                        start,
                        vec![row],
                        "generator containment".into(),
                    ));
                }
            }
        }
        let mut rows = self.per_degree(max, |d| self.containment_at(d))?;
        // Equality of dimensions.
        let hil = self.per_degree(max, |d| self.check_hilbert_at(d))?;
        let c1 = self.per_degree(max, |d| self.check_claim1(d))?;
        let c2 = self.per_degree(max, |d| self.check_claim2(d))?;
        rows.extend(hil.into_iter().filter(|r| !r.pass));
        rows.extend(c1.into_iter().filter(|r| !r.pass));
        rows.extend(c2.into_iter().filter(|r| !r.pass));
        // Irredundance.
        let n = self.graphs.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        let witnessed: Vec<Option<Value>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let (g, g2) = (&self.graphs[a], &self.graphs[b]);
                let bad = |why: String| {
                    Some(json!({"kind": "irredundance", "graph": g, "other": g2, "reason": why}))
                };
                match irredundance_witness(g, g2, self.shape.r1(), seed) {
                    Err(e) => bad(e.to_string()),
                    Ok(w) => match evaluate_generators(&w.point, &self.components[b]) {
                        Ok(res) if res.iter().any(|x| !num_traits::Zero::is_zero(x)) => None,
                        _ => bad("point satisfies every generator of the other component".into()),
                    },
                }
            })
            .collect();
        if let Some(Some(cx)) = witnessed.into_iter().find(Option::is_some) {
            rows.push(DegreeCheck {
                multidegree: Multidegree::all_of_total(self.shape, 0).remove(0),
                pass: false,
                detail: Value::Null,
                counterexample: Some(cx),
            });
        }
        let summary = format!("{} components, {} ordered pairs witnessed", n, pairs.len());
        Ok(self.report("ideal", Some(max), start, rows, summary))
    }

    /// Minimal generators of a monomial ideal given by its members in each
    /// total degree `1..=max`.
    fn minimal_generators(levels: &[HashSet<ExponentTensor>]) -> Vec<ExponentTensor> {
        let mut out = Vec::new();
        for (n, level) in levels.iter().enumerate() {
            for u in level {
                let minimal = n == 0
                    || u.support()
                        .all(|v| !levels[n - 1].contains(&u.without_var(v).unwrap()));
                if minimal {
                    out.push(u.clone());
                }
            }
        }
        out.sort();
        out
    }

    fn initial_levels(
        &self,
        ideal: &IdealPresentation,
        max: u32,
    ) -> Result<Vec<HashSet<ExponentTensor>>> {
        let mut levels = vec![HashSet::new(); max as usize];
        let pieces: Vec<(usize, Vec<ExponentTensor>)> = self
            .degrees(max)
            .par_iter()
            .map(|d| {
                let part = partition_of(ideal, d, self.cap)?;
                let pts = part.fiber().points();
                Ok((
                    d.total_degree() as usize,
                    part.initial_points()
                        .into_iter()
                        .map(|p| pts[p].clone())
                        .collect(),
                ))
            })
            .collect::<Result<_>>()?;
        for (n, us) in pieces {
            levels[n - 1].extend(us);
        }
        Ok(levels)
    }

    pub fn radicality(&self, max: u32) -> Result<Report> {
        let start = Instant::now();
        let mut rows = Vec::new();
        let mut model_gens = 0;
        let fail = |rows: &mut Vec<DegreeCheck>, which: Value, u: &ExponentTensor| {
            rows.push(DegreeCheck {
                multidegree: phi(u),
                pass: false,
                detail: Value::Null,
                counterexample: Some(json!({
                    "ideal": which,
                    "multidegree": degree_json(&phi(u)),
                    "monomial": flat(u),
                    "display": u.to_string(),
                })),
            });
        };
        let levels = self.initial_levels(&self.model, max)?;
        for u in Self::minimal_generators(&levels) {
            model_gens += 1;
            if !u.is_squarefree() {
                fail(&mut rows, json!("model"), &u);
            }
        }
        for (g, pg) in self.graphs.iter().zip(&self.components) {
            let levels = self.initial_levels(pg, max)?;
            let graph = g.to_graph();
            for u in Self::minimal_generators(&levels) {
                if !u.is_squarefree() {
                    fail(&mut rows, json!(g), &u);
                }
            }
            // every member of the rule-based initial ideal has a squarefree witness
            for level in &levels {
                for u in level {
                    if initial_witness(&graph, u).is_none() {
                        fail(&mut rows, json!(g), u);
                    }
                }
            }
        }
        rows.sort_by_key(|r| r.counterexample.as_ref().map(|c| c.to_string()));
        let summary = format!("{model_gens} minimal generators of the model's initial ideal");
        Ok(self.report("radical", Some(max), start, rows, summary))
    }

    /// Points sampled on each component satisfy the model; random points of
    /// the model (structured samples and sparse small-integer points that
    /// happen to satisfy it) lie on some component.
    pub fn variety(&self, samples: usize, seed: u64) -> Result<Report> {
        let start = Instant::now();
        let mut rows = Vec::new();
        let zero = Multidegree::all_of_total(self.shape, 0).remove(0);
        let fail = |cx: Value| DegreeCheck {
            multidegree: zero.clone(),
            pass: false,
            detail: Value::Null,
            counterexample: Some(cx),
        };
        let mut located = 0usize;
        for g in &self.graphs {
            for n in 0..samples as u64 {
                let p = sample_generic_point(g, self.shape.r1(), seed.wrapping_add(n))?;
                if !satisfies(&p, &self.model)? {
                    rows.push(fail(
                        json!({"kind": "component point off model", "graph": g, "point": p}),
                    ));
                    continue;
                }
                let loc = locate_point(&p);
                if !loc.graphs.contains(g) || !loc.rules_agree {
                    rows.push(fail(
                        json!({"kind": "component point not located", "graph": g, "point": p}),
                    ));
                }
            }
        }
        let mut candidates = Vec::new();
        for n in 0..(samples * self.graphs.len()).max(20) as u64 {
            candidates.push(sample_model_point(
                self.shape,
                seed.wrapping_add(1_000_003).wrapping_add(n),
            ));
        }
        for n in 0..200u64 {
            candidates.push(sample_sparse_point(
                self.shape,
                seed.wrapping_add(2_000_003).wrapping_add(n),
            ));
        }
        for p in candidates {
            if !satisfies(&p, &self.model)? {
                continue;
            }
            located += 1;
            let loc = locate_point(&p);
            if loc.graphs.is_empty() || !loc.rules_agree || loc.refinement_agrees == Some(false) {
                rows.push(fail(json!({
                    "kind": "model point not located",
                    "support": graph_of_point(&p),
                    "point": p,
                })));
            }
        }
        let summary = format!(
            "{} component samples, {} model points located",
            samples * self.graphs.len(),
            located
        );
        Ok(self.report("variety", None, start, rows, summary))
    }

    pub fn run(&self, kind: CheckKind, max: u32, samples: usize, seed: u64) -> Result<Report> {
        match kind {
            CheckKind::Claim1 => self.claim1(max),
            CheckKind::Claim2 => self.claim2(max),
            CheckKind::Hilbert => self.hilbert(max),
            CheckKind::Ideal => self.ideal_decomposition(max, seed),
            CheckKind::Radical => self.radicality(max),
            CheckKind::Variety => self.variety(samples, seed),
        }
    }

    pub fn run_all(
        &self,
        kinds: &[CheckKind],
        max: u32,
        samples: usize,
        seed: u64,
    ) -> Result<Vec<Report>> {
        kinds
            .iter()
            .map(|&k| self.run(k, max, samples, seed))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Binomial;
    use crate::tensor::VarIndex;

    fn s(r1: usize, r2: usize, r3: usize) -> Shape {
        Shape::new(r1, r2, r3).unwrap()
    }

    fn mono(shape: Shape, vars: &[(usize, usize, usize)]) -> ExponentTensor {
        let vs: Vec<VarIndex> = vars
            .iter()
            .map(|&(i, j, k)| VarIndex::new(i, j, k))
            .collect();
        ExponentTensor::from_vars(shape, &vs).unwrap()
    }

    #[test]
    fn claim1_examples() {
        let v = Verifier::new(s(2, 2, 2)).unwrap();
        let split = v
            .check_claim1(&phi(&mono(s(2, 2, 2), &[(1, 1, 1), (2, 2, 2)])))
            .unwrap();
        assert!(split.pass);
        assert_eq!(split.detail["classes"], 2);
        let joined = v
            .check_claim1(&phi(&mono(s(2, 2, 2), &[(1, 1, 1), (2, 1, 2)])))
            .unwrap();
        assert!(joined.pass);
        assert_eq!(joined.detail["classes"], 1);
        assert!(
            v.check_claim1(&phi(&mono(s(2, 2, 2), &[(2, 1, 2)])))
                .unwrap()
                .pass
        );
    }

    #[test]
    fn claim2_examples() {
        let v = Verifier::new(s(2, 2, 2)).unwrap();
        let r = v
            .check_claim2(&phi(&mono(s(2, 2, 2), &[(1, 1, 2), (2, 1, 1)])))
            .unwrap();
        assert!(r.pass);
        assert_eq!(r.detail["initial"], 1);
        let r = v
            .check_claim2(&phi(&mono(s(2, 2, 2), &[(1, 1, 1), (2, 2, 2)])))
            .unwrap();
        assert!(r.pass);
        assert_eq!(r.detail["initial"], 0);
    }

    #[test]
    fn hilbert_small() {
        let v = Verifier::new(s(2, 2, 2)).unwrap();
        assert_eq!(v.total_dimensions(2).unwrap(), vec![8, 32]);
        assert!(v.hilbert(2).unwrap().passed());
        assert!(Verifier::new(s(2, 2, 3))
            .unwrap()
            .hilbert(2)
            .unwrap()
            .passed());
    }

    #[test]
    fn needs_two_rows() {
        assert!(Verifier::new(s(1, 2, 2)).is_err());
    }

    #[test]
    fn radicality_degree_two_generators() {
        let v = Verifier::new(s(2, 2, 2)).unwrap();
        let r = v.radicality(3).unwrap();
        assert!(r.passed());
        let levels = v.initial_levels(v.model(), 2).unwrap();
        let gens = Verifier::minimal_generators(&levels);
        let want: Vec<ExponentTensor> = {
            let mut w: Vec<_> = v
                .model()
                .binomials()
                .iter()
                .map(|b| b.plus().clone())
                .collect();
            w.sort();
            w
        };
        assert_eq!(gens, want);
    }

    #[test]
    fn radicality_detects_square_leading_term() {
        let shape = s(2, 2, 2);
        let mut model = generators_intersection_model(shape);
        let b = Binomial::new(
            mono(shape, &[(2, 1, 1), (2, 1, 1), (1, 2, 2)]),
            mono(shape, &[(1, 1, 1), (2, 1, 1), (2, 2, 2)]),
        )
        .unwrap();
        assert_eq!(b.plus(), &mono(shape, &[(2, 1, 1), (2, 1, 1), (1, 2, 2)]));
        model.push_binomial(b).unwrap();
        let v = Verifier::new(shape).unwrap().with_model(model).unwrap();
        let r = v.radicality(3).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap()["display"], "p_122 p_211^2");
    }

    #[test]
    fn decomposition_detects_corrupted_component() {
        let shape = s(2, 2, 2);
        let v = Verifier::new(shape).unwrap();
        let k = v
            .graphs()
            .iter()
            .position(|g| g.num_components() == 1)
            .unwrap();
        let broken = v.components()[k].without_binomial(0);
        let v = v.with_component(k, broken).unwrap();
        let r = v.ideal_decomposition(2, 0).unwrap();
        assert!(!r.passed());
        assert!(r.counterexample.unwrap()["multidegree"].is_object());
    }

    #[test]
    fn check_names_parse() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert!("bogus".parse::<CheckKind>().is_err());
    }
}
