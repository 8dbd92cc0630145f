//! Table shapes, exponent tensors, the sufficient-statistics grading and the
//! degree reverse lexicographic term order.
//!
//! Indices are 1-based everywhere in the public API. Storage is a flat
//! row-major vector: `i` varies slowest, `k` fastest.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Level counts `(r1, r2, r3)` of the three random variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 3]", try_from = "[usize; 3]")]
pub struct Shape {
    r1: usize,
    r2: usize,
    r3: usize,
}

impl Shape {
    pub fn new(r1: usize, r2: usize, r3: usize) -> Result<Self> {
        if r1 == 0 || r2 == 0 || r3 == 0 {
            return Err(Error::InvalidShape { r1, r2, r3 });
        }
        Ok(Shape { r1, r2, r3 })
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    pub fn r3(&self) -> usize {
        self.r3
    }

    /// Number of indeterminates `r1*r2*r3`.
    pub fn num_vars(&self) -> usize {
        self.r1 * self.r2 * self.r3
    }

    /// Number of `(j,k)` slices.
    pub fn num_slices(&self) -> usize {
        self.r2 * self.r3
    }

    /// The theorem checkers assume at least two levels for `X1`.
    pub fn require_two_rows(&self) -> Result<()> {
        if self.r1 < 2 {
            Err(Error::NeedTwoRows(*self))
        } else {
            Ok(())
        }
    }

    pub fn flat_index(&self, v: VarIndex) -> usize {
        ((v.i - 1) * self.r2 + (v.j - 1)) * self.r3 + (v.k - 1)
    }

    pub fn var_at(&self, flat: usize) -> VarIndex {
        let k = flat % self.r3;
        let j = (flat / self.r3) % self.r2;
        let i = flat / (self.r2 * self.r3);
        VarIndex::new(i + 1, j + 1, k + 1)
    }

    /// Flat index of the slice `(j,k)` inside a multidegree's slice part.
    pub fn slice_index(&self, j: usize, k: usize) -> usize {
        (j - 1) * self.r3 + (k - 1)
    }

    pub fn check(&self, v: VarIndex) -> Result<()> {
        if v.i == 0 || v.j == 0 || v.k == 0 || v.i > self.r1 || v.j > self.r2 || v.k > self.r3 {
            return Err(Error::IndexOutOfBounds {
                shape: *self,
                i: v.i,
                j: v.j,
                k: v.k,
            });
        }
        Ok(())
    }

    /// All indeterminates in increasing variable order.
    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        (0..self.num_vars()).map(move |f| self.var_at(f))
    }

    pub(crate) fn same_as(&self, other: &Shape) -> Result<()> {
        if self != other {
            Err(Error::ShapeMismatch {
                left: *self,
                right: *other,
            })
        } else {
            Ok(())
        }
    }
}

impl From<Shape> for [usize; 3] {
    fn from(s: Shape) -> Self {
        [s.r1, s.r2, s.r3]
    }
}

impl TryFrom<[usize; 3]> for Shape {
    type Error = Error;

    fn try_from(v: [usize; 3]) -> Result<Self> {
        Shape::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r1, self.r2, self.r3)
    }
}

impl std::str::FromStr for Shape {
    type Err = Error;

    /// Parses `R1,R2,R3`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "shape `{s}` is not of the form R1,R2,R3"
            )));
        }
        let mut r = [0usize; 3];
        for (slot, p) in r.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| {
                Error::Parse(format!("shape component `{p}` is not a positive integer"))
            })?;
        }
        Shape::new(r[0], r[1], r[2])
    }
}

/// The subscript `(i,j,k)` of an indeterminate `p_ijk`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 3]", from = "[usize; 3]")]
pub struct VarIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl VarIndex {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        VarIndex { i, j, k }
    }

    /// The `(j,k)` slice this variable belongs to.
    pub fn edge(&self) -> (usize, usize) {
        (self.j, self.k)
    }
}

impl From<VarIndex> for [usize; 3] {
    fn from(v: VarIndex) -> Self {
        [v.i, v.j, v.k]
    }
}

impl From<[usize; 3]> for VarIndex {
    fn from(v: [usize; 3]) -> Self {
        VarIndex::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 && self.k < 10 {
            write!(f, "p_{}{}{}", self.i, self.j, self.k)
        } else {
            write!(f, "p_{{{},{},{}}}", self.i, self.j, self.k)
        }
    }
}

/// Exponent vector `u = (u_ijk)` of a monomial `p^u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTensor")]
pub struct ExponentTensor {
    shape: Shape,
    entries: Vec<u32>,
}

#[derive(Deserialize)]
struct RawTensor {
    shape: Shape,
    entries: Vec<u32>,
}

impl TryFrom<RawTensor> for ExponentTensor {
    type Error = Error;

    fn try_from(raw: RawTensor) -> Result<Self> {
        ExponentTensor::from_entries(raw.shape, raw.entries)
    }
}

impl ExponentTensor {
    pub fn zero(shape: Shape) -> Self {
        ExponentTensor {
            shape,
            entries: vec![0; shape.num_vars()],
        }
    }

    pub fn unit(shape: Shape, v: VarIndex) -> Result<Self> {
        shape.check(v)?;
        let mut t = Self::zero(shape);
        t.entries[shape.flat_index(v)] = 1;
        Ok(t)
    }

    /// Builds `p_{v1} p_{v2} ...` from a list of (possibly repeated) variables.
    pub fn from_vars(shape: Shape, vars: &[VarIndex]) -> Result<Self> {
        let mut t = Self::zero(shape);
        for &v in vars {
            shape.check(v)?;
            t.entries[shape.flat_index(v)] += 1;
        }
        Ok(t)
    }

    /// Flat row-major entries, `i` slowest.
    pub fn from_entries(shape: Shape, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != shape.num_vars() {
            return Err(Error::WrongLength {
                shape,
                expected: shape.num_vars(),
                got: entries.len(),
            });
        }
        Ok(ExponentTensor { shape, entries })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, v: VarIndex) -> u32 {
        self.entries[self.shape.flat_index(v)]
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&e| e <= 1)
    }

    /// Variables with positive exponent, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(move |(f, _)| self.shape.var_at(f))
    }

    /// True iff `self` divides `other` componentwise.
    pub fn divides(&self, other: &ExponentTensor) -> bool {
        self.shape == other.shape && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentTensor) -> Result<ExponentTensor> {
        self.shape.same_as(&other.shape)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExponentTensor {
            shape: self.shape,
            entries,
        })
    }

    /// `self - other` if `other` divides `self`.
    pub fn checked_sub(&self, other: &ExponentTensor) -> Option<ExponentTensor> {
        if !other.divides(self) {
            return None;
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Some(ExponentTensor {
            shape: self.shape,
            entries,
        })
    }

    /// `self - other + replacement`, provided `other` divides `self`.
    pub(crate) fn replace(
        &self,
        other: &ExponentTensor,
        replacement: &ExponentTensor,
    ) -> Option<ExponentTensor> {
        if !other.divides(self) {
            return None;
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .zip(&replacement.entries)
            .map(|((a, b), c)| a - b + c)
            .collect();
        Some(ExponentTensor {
            shape: self.shape,
            entries,
        })
    }

    /// `self / p_v` if `p_v` divides `self`.
    pub fn without_var(&self, v: VarIndex) -> Option<ExponentTensor> {
        let f = self.shape.flat_index(v);
        if self.entries[f] == 0 {
            return None;
        }
        let mut t = self.clone();
        t.entries[f] -= 1;
        Some(t)
    }

    /// Sum over `i` of the exponents in slice `(j,k)`.
    pub fn slice_total(&self, j: usize, k: usize) -> u32 {
        (1..=self.shape.r1)
            .map(|i| self.get(VarIndex::new(i, j, k)))
            .sum()
    }

    /// All monomials of total degree `deg`, in lexicographic order of the
    /// flat entry vector.
    pub fn all_of_degree(shape: Shape, deg: u32) -> Vec<ExponentTensor> {
        let n = shape.num_vars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(
            pos: usize,
            left: u32,
            cur: &mut Vec<u32>,
            shape: Shape,
            out: &mut Vec<ExponentTensor>,
        ) {
            let n = cur.len();
            if pos == n - 1 {
                cur[pos] = left;
                out.push(ExponentTensor {
                    shape,
                    entries: cur.clone(),
                });
                cur[pos] = 0;
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, shape, out);
            }
            cur[pos] = 0;
        }
        rec(0, deg, &mut cur, shape, &mut out);
        out
    }
}

impl fmt::Display for ExponentTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (flat, &e) in self.entries.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}", self.shape.var_at(flat))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Image of an exponent tensor under the sufficient-statistics map: the
/// `r1` row sums `d_i` followed by the `r2*r3` slice sums `d_jk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multidegree {
    shape: Shape,
    rows: Vec<u32>,
    slices: Vec<u32>,
}

impl Multidegree {
    /// `slices` is row-major over `(j,k)`.
    pub fn new(shape: Shape, rows: Vec<u32>, slices: Vec<u32>) -> Result<Self> {
        if rows.len() != shape.r1 {
            return Err(Error::WrongLength {
                shape,
                expected: shape.r1,
                got: rows.len(),
            });
        }
        if slices.len() != shape.num_slices() {
            return Err(Error::WrongLength {
                shape,
                expected: shape.num_slices(),
                got: slices.len(),
            });
        }
        Ok(Multidegree {
            shape,
            rows,
            slices,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn slices(&self) -> &[u32] {
        &self.slices
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i - 1]
    }

    pub fn slice(&self, j: usize, k: usize) -> u32 {
        self.slices[self.shape.slice_index(j, k)]
    }

    pub fn row_total(&self) -> u64 {
        self.rows.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn slice_total(&self) -> u64 {
        self.slices.iter().map(|&x| u64::from(x)).sum()
    }

    /// Row and slice parts agree on the total degree.
    pub fn is_consistent(&self) -> bool {
        self.row_total() == self.slice_total()
    }

    pub fn total_degree(&self) -> u64 {
        self.row_total()
    }

    /// Every multidegree of total degree `n`. Any pair of row and slice
    /// marginals with equal totals is realized by some monomial, so these
    /// are exactly the graded pieces that can be nonzero. Ordered
    /// lexicographically by rows, then slices.
    pub fn all_of_total(shape: Shape, n: u32) -> Vec<Multidegree> {
        let rows = compositions(n, shape.r1);
        let slices = compositions(n, shape.num_slices());
        let mut out = Vec::with_capacity(rows.len() * slices.len());
        for r in &rows {
            for s in &slices {
                out.push(Multidegree {
                    shape,
                    rows: r.clone(),
                    slices: s.clone(),
                });
            }
        }
        out
    }

    /// All multidegrees of total degree `1..=max`, by total degree then lex.
    pub fn up_to_total(shape: Shape, max: u32) -> Vec<Multidegree> {
        (1..=max)
            .flat_map(|n| Self::all_of_total(shape, n))
            .collect()
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        let slices: Vec<String> = self.slices.iter().map(u32::to_string).collect();
        write!(f, "[{} | {}]", rows.join(","), slices.join(","))
    }
}

/// Weak compositions of `n` into `parts` parts, lexicographically
/// decreasing in the first coordinate reversed (i.e. increasing lex order).
pub(crate) fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, n, &mut cur, &mut out);
    out
}

/// The sufficient-statistics map: row sums over `(j,k)` and slice sums over `i`.
pub fn phi(u: &ExponentTensor) -> Multidegree {
    let shape = u.shape;
    let mut rows = vec![0u32; shape.r1];
    let mut slices = vec![0u32; shape.num_slices()];
    for (flat, &e) in u.entries.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = shape.var_at(flat);
        rows[v.i - 1] += e;
        slices[shape.slice_index(v.j, v.k)] += e;
    }
    Multidegree {
        shape,
        rows,
        slices,
    }
}

/// Compare two monomials in the degree reverse lexicographic order whose
/// variables are ordered lexicographically by subscript, so that
/// `p_111 < p_112 < ... < p_211 < ...`.
///
/// Among monomials of equal degree, the one with the larger exponent on the
/// smallest variable where they differ is the smaller monomial. For every
/// 2x2 minor `p_ijk p_i'j'k' - p_ij'k' p_i'jk` with `i < i'` and
/// `(j,k) < (j',k')` this makes the antidiagonal term `p_ij'k' p_i'jk` lead.
pub fn term_cmp(u: &ExponentTensor, v: &ExponentTensor) -> Result<Ordering> {
    u.shape.same_as(&v.shape)?;
    Ok(term_cmp_unchecked(u, v))
}

pub(crate) fn term_cmp_unchecked(u: &ExponentTensor, v: &ExponentTensor) -> Ordering {
    match u.degree().cmp(&v.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (a, b) in u.entries.iter().zip(&v.entries) {
        if a != b {
            // More weight on the smallest variable means smaller.
            return b.cmp(a);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s222() -> Shape {
        Shape::new(2, 2, 2).unwrap()
    }

    fn mono(shape: Shape, vars: &[(usize, usize, usize)]) -> ExponentTensor {
        let vs: Vec<VarIndex> = vars
            .iter()
            .map(|&(i, j, k)| VarIndex::new(i, j, k))
            .collect();
        ExponentTensor::from_vars(shape, &vs).unwrap()
    }

    #[test]
    fn shape_rejects_zero() {
        assert!(Shape::new(0, 1, 1).is_err());
        assert!(Shape::new(1, 1, 1).is_ok());
        assert!("2,2,x".parse::<Shape>().is_err());
        assert_eq!(
            "2, 3,4".parse::<Shape>().unwrap(),
            Shape::new(2, 3, 4).unwrap()
        );
    }

    #[test]
    fn two_rows_required() {
        assert!(Shape::new(1, 2, 2).unwrap().require_two_rows().is_err());
        assert!(s222().require_two_rows().is_ok());
    }

    #[test]
    fn flat_index_roundtrip() {
        let s = Shape::new(2, 3, 4).unwrap();
        for f in 0..s.num_vars() {
            assert_eq!(s.flat_index(s.var_at(f)), f);
        }
        assert_eq!(s.var_at(0), VarIndex::new(1, 1, 1));
        assert_eq!(s.var_at(1), VarIndex::new(1, 1, 2));
        assert_eq!(s.var_at(4), VarIndex::new(1, 2, 1));
        assert_eq!(s.var_at(12), VarIndex::new(2, 1, 1));
    }

    #[test]
    fn phi_unit_vector() {
        let d = phi(&mono(s222(), &[(1, 1, 1)]));
        assert_eq!(d.rows(), &[1, 0]);
        assert_eq!(d.slices(), &[1, 0, 0, 0]);
    }

    #[test]
    fn phi_is_linear_on_doubling() {
        let d = phi(&mono(s222(), &[(1, 1, 1), (1, 1, 1)]));
        assert_eq!(d.rows(), &[2, 0]);
        assert_eq!(d.slice(1, 1), 2);
        assert_eq!(d.slice_total(), 2);
    }

    #[test]
    fn phi_two_variables() {
        let d = phi(&mono(s222(), &[(1, 1, 1), (2, 2, 2)]));
        assert_eq!(d.rows(), &[1, 1]);
        assert_eq!(d.slices(), &[1, 0, 0, 1]);
    }

    #[test]
    fn order_on_variables() {
        let s = s222();
        let a = mono(s, &[(1, 1, 1)]);
        let b = mono(s, &[(1, 1, 2)]);
        let c = mono(s, &[(2, 1, 1)]);
        assert_eq!(term_cmp(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(term_cmp(&b, &c).unwrap(), Ordering::Less);
    }

    #[test]
    fn antidiagonal_leads() {
        let s = s222();
        let diag = mono(s, &[(1, 1, 1), (2, 2, 1)]);
        let anti = mono(s, &[(1, 2, 1), (2, 1, 1)]);
        assert_eq!(term_cmp(&diag, &anti).unwrap(), Ordering::Less);
    }

    #[test]
    fn degree_dominates() {
        let s = s222();
        let big_var = mono(s, &[(2, 2, 2)]);
        let small_sq = mono(s, &[(1, 1, 1), (1, 1, 1)]);
        assert_eq!(term_cmp(&big_var, &small_sq).unwrap(), Ordering::Less);
        assert_eq!(
            term_cmp(&ExponentTensor::zero(s), &big_var).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn shape_mismatch_is_error() {
        let a = ExponentTensor::zero(s222());
        let b = ExponentTensor::zero(Shape::new(2, 2, 3).unwrap());
        assert!(term_cmp(&a, &b).is_err());
    }

    #[test]
    fn monomial_counts() {
        let s = s222();
        assert_eq!(ExponentTensor::all_of_degree(s, 2).len(), 36);
        assert_eq!(ExponentTensor::all_of_degree(s, 3).len(), 120);
        let all = ExponentTensor::all_of_degree(s, 2);
        assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
    }

    #[test]
    fn multidegree_enumeration_counts() {
        // 3 row compositions times 10 slice compositions
        assert_eq!(Multidegree::all_of_total(s222(), 2).len(), 30);
        let total: usize = Multidegree::all_of_total(s222(), 2)
            .iter()
            .filter(|d| d.is_consistent())
            .count();
        assert_eq!(total, 30);
    }

    #[test]
    fn display_monomial() {
        let m = mono(s222(), &[(1, 1, 1), (1, 1, 1), (2, 2, 2)]);
        assert_eq!(m.to_string(), "p_111^2 p_222");
    }

    #[test]
    fn tensor_json_shape_checked() {
        let bad = r#"{"shape":[2,2,2],"entries":[1,0]}"#;
        assert!(serde_json::from_str::<ExponentTensor>(bad).is_err());
        let good = r#"{"shape":[1,1,2],"entries":[1,0]}"#;
        let t: ExponentTensor = serde_json::from_str(good).unwrap();
        assert_eq!(t.degree(), 1);
    }
}
