//! The two-parameter blob algebra `B^{x,y}_n` and its cell modules `Δ^B_n(λ)`.
//!
//! Coefficients live in `ℚ[x, y]`: an unmarked loop is `−2`, a marked loop is
//! `y`, and a mark merged into an already marked strand is `x`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{noncrossing_matchings, Diagram, LinComb, Point, Scalar};
use crate::error::{Error, Result};
use crate::poly::{BivarPoly, Rational};
use crate::tl::{self, binomial, involution_of, TLHalfDiagram};

pub type BlobElement = LinComb<BivarPoly>;

/// Vector of a blob cell module, as a combination of half-diagrams.
pub type BlobModuleVec = LinComb<BivarPoly>;

pub fn blob_identity(n: usize) -> BlobElement {
    BlobElement::basis(Diagram::identity(n))
}

/// `𝕌_0` (the blob) for `i = 0`, `𝕌_i` otherwise.
pub fn blob_generator(n: usize, i: usize) -> BlobElement {
    if i == 0 {
        BlobElement::basis(Diagram::blob(n))
    } else {
        BlobElement::basis(Diagram::cup_cap(n, i))
    }
}

pub fn blob_mul(a: &BlobElement, b: &BlobElement) -> Result<BlobElement> {
    a.mul(b)
}

/// All marked diagrams on `n + n` points: planar matchings with any subset of
/// west-exposed strands marked.
pub fn enumerate_blob_diagrams(n: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for partner in noncrossing_matchings(2 * n) {
        let base = Diagram::from_raw(n, n, partner, 0).expect("planar matching");
        let exposed: Vec<usize> = base
            .strands()
            .filter(|&(a, _, _)| base.is_exposed(a))
            .map(|(a, _, _)| a)
            .collect();
        for mask in 0u64..(1 << exposed.len()) {
            let marks = exposed
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .fold(0u64, |acc, (_, &a)| acc | 1 << a);
            out.push(base.with_marks(marks).expect("exposed marks"));
        }
    }
    out
}

/// Checks `λ ∈ Λ_{±n}`.
pub fn check_signed_lambda(n: usize, lambda: i64) -> Result<()> {
    let l = lambda.unsigned_abs() as usize;
    if l > n || !(n - l).is_multiple_of(2) || (lambda < 0 && n == 0) {
        return Err(Error::InvalidArgument(format!(
            "lambda = {} is not in Lambda_(+-{})",
            lambda, n
        )));
    }
    Ok(())
}

/// The elements of `Λ_{±n}` in increasing order.
pub fn signed_lambdas(n: usize) -> Vec<i64> {
    let m = n as i64;
    (-m..=m)
        .filter(|&l| check_signed_lambda(n, l).is_ok())
        .collect()
}

/// Basis element of `Δ^B_n(λ)`: a half-diagram with `|λ|` propagating lines
/// and marks on some west-exposed arcs. For `λ < 0` the leftmost propagating
/// line carries a mark.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlobHalfDiagram {
    lambda: i64,
    diagram: Diagram,
}

impl BlobHalfDiagram {
    /// From a 1-based involution (propagating lines fixed) and the list of
    /// marked arcs as 1-based `(i, j)`.
    pub fn new(lambda: i64, involution: &[usize], marks: &[(usize, usize)]) -> Result<Self> {
        let tlh = TLHalfDiagram::from_involution(involution)?;
        let n = involution.len();
        check_signed_lambda(n, lambda)?;
        if tlh.lambda() != lambda.unsigned_abs() as usize {
            return Err(Error::InvalidArgument(format!(
                "involution has {} propagating lines, expected {}",
                tlh.lambda(),
                lambda.abs()
            )));
        }
        let mut pairs = tlh.diagram().pairs();
        for &(i, j) in marks {
            let (i, j) = (i.min(j), i.max(j));
            let k = pairs
                .iter()
                .position(|&(p, q, _)| {
                    let mut e = [p, q];
                    e.sort();
                    e == [
                        Point::Bottom(i.wrapping_sub(1)),
                        Point::Bottom(j.wrapping_sub(1)),
                    ]
                })
                .ok_or_else(|| Error::InvalidArgument(format!("({}, {}) is not an arc", i, j)))?;
            if pairs[k].2 {
                return Err(Error::InvalidArgument(format!(
                    "arc ({}, {}) marked twice",
                    i, j
                )));
            }
            pairs[k].2 = true;
        }
        if lambda < 0 {
            let k = pairs
                .iter()
                .position(|&(p, q, _)| {
                    matches!(
                        (p, q),
                        (Point::Bottom(_), Point::Top(0)) | (Point::Top(0), Point::Bottom(_))
                    )
                })
                .expect("a propagating line exists");
            pairs[k].2 = true;
        }
        let diagram = Diagram::from_pairs(n, tlh.lambda(), &pairs)?;
        Ok(BlobHalfDiagram { lambda, diagram })
    }

    /// Wrap a half-diagram; validates the marking against `λ`.
    pub fn from_diagram(lambda: i64, diagram: Diagram) -> Result<Self> {
        let h = BlobHalfDiagram { lambda, diagram };
        h.check()?;
        Ok(h)
    }

    fn check(&self) -> Result<()> {
        let d = &self.diagram;
        check_signed_lambda(d.bottom(), self.lambda)?;
        let through = d.through_strands();
        if d.top() != self.lambda.unsigned_abs() as usize || through.len() != d.top() {
            return Err(Error::InvalidArgument(
                "wrong number of propagating lines".into(),
            ));
        }
        let marked_through = through.iter().filter(|s| s.2).count();
        let expect = usize::from(self.lambda < 0);
        if marked_through != expect {
            return Err(Error::InvalidArgument(
                "propagating-line mark does not match the sign of lambda".into(),
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.diagram.bottom()
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// Number of marked arcs (the filtration level).
    pub fn level(&self) -> usize {
        self.marked_arcs().len()
    }

    /// `2·level`, plus one for the marked propagating line when `λ < 0`.
    pub fn degree(&self) -> usize {
        2 * self.level() + usize::from(self.lambda < 0)
    }

    /// Marked arcs as 1-based `(i, j)`, `i < j`.
    pub fn marked_arcs(&self) -> Vec<(usize, usize)> {
        let b = self.diagram.bottom();
        self.diagram
            .strands()
            .filter(|&(a, c, m)| m && a < b && c < b)
            .map(|(a, c, _)| (a + 1, c + 1))
            .collect()
    }

    pub fn involution(&self) -> Vec<usize> {
        involution_of(&self.diagram)
    }

    pub fn defects(&self) -> Vec<usize> {
        self.to_tl().defects()
    }

    /// The underlying Temperley-Lieb half-diagram (marks forgotten).
    pub fn to_tl(&self) -> TLHalfDiagram {
        TLHalfDiagram::from_diagram(self.diagram.unmarked()).expect("half-diagram shape")
    }

    fn sort_key(&self) -> (usize, Vec<usize>, Vec<(usize, usize)>) {
        (self.level(), self.involution(), self.marked_arcs())
    }
}

impl PartialOrd for BlobHalfDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BlobHalfDiagram {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n(), self.lambda)
            .cmp(&(other.n(), other.lambda))
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Debug for BlobHalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BlobHalf(lambda={}, {:?}, marks={:?})",
            self.lambda,
            self.involution(),
            self.marked_arcs()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct HalfDiagramJson {
    n: usize,
    lambda: i64,
    pairs: Vec<usize>,
    defects: Vec<usize>,
    marks: Vec<[usize; 2]>,
}

impl Serialize for BlobHalfDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        HalfDiagramJson {
            n: self.n(),
            lambda: self.lambda,
            pairs: self.involution(),
            defects: self.defects(),
            marks: self
                .marked_arcs()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlobHalfDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = HalfDiagramJson::deserialize(deserializer)?;
        if raw.pairs.len() != raw.n {
            return Err(serde::de::Error::custom("pairs must have n entries"));
        }
        let marks: Vec<(usize, usize)> = raw.marks.iter().map(|m| (m[0], m[1])).collect();
        let h = BlobHalfDiagram::new(raw.lambda, &raw.pairs, &marks)
            .map_err(serde::de::Error::custom)?;
        if h.defects() != raw.defects {
            return Err(serde::de::Error::custom("defects disagree with pairs"));
        }
        Ok(h)
    }
}

/// Basis of `Δ^B_n(λ)` ordered by filtration level, then involution, then
/// marks, so that each level-`≤ i` prefix spans `F^i(λ)`.
#[derive(Clone, Debug)]
pub struct GradedCellBasis {
    pub n: usize,
    pub lambda: i64,
    pub basis: Vec<BlobHalfDiagram>,
}

impl GradedCellBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.basis.iter().position(|h| h.diagram() == d)
    }

    /// Number of basis vectors at each level.
    pub fn level_sizes(&self) -> Vec<usize> {
        let top = self.basis.iter().map(|h| h.level()).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for h in &self.basis {
            out[h.level()] += 1;
        }
        out
    }
}

pub fn enumerate_blob_half(n: usize, lambda: i64) -> Result<GradedCellBasis> {
    check_signed_lambda(n, lambda)?;
    let l = lambda.unsigned_abs() as usize;
    let mut basis = Vec::new();
    for inv in tl::half_involutions(n, l) {
        // arcs reachable from the west wall: nothing unmatched or enclosing to their left
        let mut exposed = Vec::new();
        for a in 0..n {
            let b = inv[a];
            if b > a && (0..a).all(|p| inv[p] != p && inv[p] < a) {
                exposed.push((a + 1, b + 1));
            }
        }
        let one_based: Vec<usize> = inv.iter().map(|q| q + 1).collect();
        for mask in 0u32..(1 << exposed.len()) {
            let marks: Vec<(usize, usize)> = exposed
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            basis.push(BlobHalfDiagram::new(lambda, &one_based, &marks)?);
        }
    }
    basis.sort();
    Ok(GradedCellBasis { n, lambda, basis })
}

/// `dim Δ^B_n(λ) = C(n, k)`, `k = (n − |λ|)/2`.
pub fn blob_half_count(n: usize, lambda: i64) -> u64 {
    let l = lambda.unsigned_abs() as usize;
    if l > n || !(n - l).is_multiple_of(2) {
        return 0;
    }
    binomial(n as u64, ((n - l) / 2) as i64)
}

/// Keep the terms of a product that survive in `Δ^B_n(λ)`: all `|λ|`
/// propagating lines present, and none marked when `λ > 0`.
fn project_to_cell(prod: &BlobModuleVec, lambda: i64) -> BlobModuleVec {
    let l = lambda.unsigned_abs() as usize;
    let mut out = BlobModuleVec::zero();
    for (d, c) in prod.iter() {
        let through = d.through_strands();
        if through.len() != l {
            continue;
        }
        if lambda > 0 && through.iter().any(|s| s.2) {
            continue;
        }
        out.add_term(d.clone(), c.clone());
    }
    out
}

/// `a·v` in `Δ^B_n(λ)`.
pub fn blob_act(a: &BlobElement, v: &BlobModuleVec, lambda: i64) -> Result<BlobModuleVec> {
    Ok(project_to_cell(&a.mul(v)?, lambda))
}

pub fn basis_vec(h: &BlobHalfDiagram) -> BlobModuleVec {
    BlobModuleVec::basis(h.diagram().clone())
}

/// Coefficient of the pairing diagram prescribed for `Δ^B(λ)`: the unmarked
/// identity (`λ > 0`), the empty diagram (`λ = 0`) or `𝕌_0` (`λ < 0`).
fn pairing_coefficient(d: &Diagram, lambda: i64) -> bool {
    let l = lambda.unsigned_abs() as usize;
    if d.through_count() != l {
        return false;
    }
    match lambda.signum() {
        1 => !d.has_marks(),
        0 => true,
        _ => d.num_marks() == 1 && d.through_strands()[0].2,
    }
}

/// `⟨s, t⟩^B`.
pub fn gram_blob(s: &BlobHalfDiagram, t: &BlobHalfDiagram) -> Result<BivarPoly> {
    if s.n() != t.n() || s.lambda() != t.lambda() {
        return Err(Error::InvalidArgument(
            "half-diagrams from different cell modules".into(),
        ));
    }
    pair_diagrams(s.diagram(), t.diagram(), s.lambda())
}

fn pair_diagrams(s: &Diagram, t: &Diagram, lambda: i64) -> Result<BivarPoly> {
    let (d, data) = s.star().compose(t)?;
    if pairing_coefficient(&d, lambda) {
        Ok(BivarPoly::loop_weight(&data))
    } else {
        Ok(BivarPoly::zero())
    }
}

/// Bilinear extension of [`gram_blob`] to module vectors.
pub fn gram_blob_vec(u: &BlobModuleVec, v: &BlobModuleVec, lambda: i64) -> Result<BivarPoly> {
    let mut acc = BivarPoly::zero();
    for (ds, cs) in u.iter() {
        for (dt, ct) in v.iter() {
            let g = pair_diagrams(ds, dt, lambda)?;
            if !g.is_zero() {
                acc += &(&(cs * ct) * &g);
            }
        }
    }
    Ok(acc)
}

/// Gram matrix of `Δ^B_n(λ)` in the order of [`enumerate_blob_half`].
pub fn gram_matrix_blob(n: usize, lambda: i64) -> Result<Vec<Vec<BivarPoly>>> {
    let basis = enumerate_blob_half(n, lambda)?.basis;
    basis
        .par_iter()
        .map(|s| basis.iter().map(|t| gram_blob(s, t)).collect())
        .collect()
}

/// `π_i`: a level-`i` half-diagram becomes the Temperley-Lieb half-diagram in
/// which each marked arc is cut into two propagating lines. Other levels map
/// to zero (`None`).
pub fn pi_i(h: &BlobHalfDiagram, i: usize) -> Option<TLHalfDiagram> {
    if h.level() != i {
        return None;
    }
    let mut inv = h.involution();
    for (a, b) in h.marked_arcs() {
        inv[a - 1] = a;
        inv[b - 1] = b;
    }
    Some(TLHalfDiagram::from_involution(&inv).expect("exposed arcs cut into unobstructed lines"))
}

/// Linear extension of [`pi_i`]; the result has unmarked half-diagrams.
pub fn pi_i_vec(v: &BlobModuleVec, lambda: i64, i: usize) -> Result<BlobModuleVec> {
    let mut out = BlobModuleVec::zero();
    for (d, c) in v.iter() {
        let h = BlobHalfDiagram::from_diagram(lambda, d.clone())?;
        if let Some(t) = pi_i(&h, i) {
            out.add_term(t.diagram().clone(), c.clone());
        }
    }
    Ok(out)
}

/// `⟨D, D₁⟩^B` at `x = 1, y = −2` against `⟨TL(D), TL(D₁)⟩^TL`, over all pairs
/// of basis diagrams.
pub fn specialization_check(n: usize, lambda: i64) -> Result<bool> {
    Ok(specialization_mismatches(n, lambda)?.is_empty())
}

/// Pairs of basis indices where the specialization identity fails.
pub fn specialization_mismatches(n: usize, lambda: i64) -> Result<Vec<(usize, usize)>> {
    let basis = enumerate_blob_half(n, lambda)?.basis;
    let (one, minus_two) = (
        Rational::from_integer(1.into()),
        Rational::from_integer((-2).into()),
    );
    let mut bad = Vec::new();
    for (a, s) in basis.iter().enumerate() {
        for (b, t) in basis.iter().enumerate() {
            let lhs = gram_blob(s, t)?.eval(&one, &minus_two);
            let rhs = tl::gram_tl(&s.to_tl(), &t.to_tl())?;
            if lhs != rhs {
                bad.push((a, b));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, i: usize) -> BlobElement {
        blob_generator(n, i)
    }

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn blob_relations() {
        let n = 3;
        assert_eq!(g(n, 0).mul(&g(n, 0)).unwrap(), g(n, 0).scale(&p("x")));
        let u1u0u1 = g(n, 1).mul(&g(n, 0)).unwrap().mul(&g(n, 1)).unwrap();
        assert_eq!(u1u0u1, g(n, 1).scale(&p("y")));
        assert_eq!(g(n, 2).mul(&g(n, 2)).unwrap(), g(n, 2).scale(&p("-2")));
        assert_eq!(
            g(n, 0).mul(&g(n, 2)).unwrap(),
            g(n, 2).mul(&g(n, 0)).unwrap()
        );
    }

    #[test]
    fn counts() {
        let b = enumerate_blob_half(5, 1).unwrap();
        assert_eq!(b.len(), 10);
        assert_eq!(b.level_sizes(), vec![5, 4, 1]);
        assert_eq!(enumerate_blob_half(5, -3).unwrap().len(), 5);
        assert_eq!(enumerate_blob_half(4, 4).unwrap().len(), 1);
        for n in 0..=4 {
            assert_eq!(
                enumerate_blob_diagrams(n).len() as u64,
                binomial(2 * n as u64, n as i64)
            );
        }
        assert!(enumerate_blob_half(4, -1).is_err());
        assert!(enumerate_blob_half(0, 0).is_ok());
    }

    #[test]
    fn action_examples() {
        let cup = BlobHalfDiagram::new(0, &[2, 1], &[]).unwrap();
        let marked = BlobHalfDiagram::new(0, &[2, 1], &[(1, 2)]).unwrap();
        let v = basis_vec(&cup);
        assert_eq!(blob_act(&blob_identity(2), &v, 0).unwrap(), v);
        assert_eq!(blob_act(&g(2, 0), &v, 0).unwrap(), basis_vec(&marked));
        assert_eq!(
            blob_act(&g(2, 0), &basis_vec(&marked), 0).unwrap(),
            basis_vec(&marked).scale(&p("x"))
        );
    }

    #[test]
    fn gram_examples() {
        let m = BlobHalfDiagram::new(-1, &[1], &[]).unwrap();
        assert_eq!(gram_blob(&m, &m).unwrap(), p("x"));
        let id = BlobHalfDiagram::new(3, &[1, 2, 3], &[]).unwrap();
        assert_eq!(gram_blob(&id, &id).unwrap(), p("1"));
        // marked cup, cup, propagating line
        let d = BlobHalfDiagram::new(1, &[2, 1, 4, 3, 5], &[(1, 2)]).unwrap();
        assert_eq!(gram_blob(&d, &d).unwrap(), p("-2xy"));
    }

    #[test]
    fn json_roundtrip() {
        let d = BlobHalfDiagram::new(1, &[2, 1, 4, 3, 5], &[(1, 2)]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"n":5,"lambda":1,"pairs":[2,1,4,3,5],"defects":[5],"marks":[[1,2]]}"#
        );
        let back: BlobHalfDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn hidden_marks_rejected() {
        // arc (2,3) is enclosed by (1,4)
        assert!(BlobHalfDiagram::new(0, &[4, 3, 2, 1], &[(2, 3)]).is_err());
        // arc right of a propagating line
        assert!(BlobHalfDiagram::new(1, &[1, 3, 2], &[(2, 3)]).is_err());
    }

    #[test]
    fn projection_cuts_marked_arcs() {
        let d = BlobHalfDiagram::new(1, &[2, 1, 4, 3, 5], &[(1, 2)]).unwrap();
        assert_eq!(pi_i(&d, 1).unwrap().involution(), vec![1, 2, 4, 3, 5]);
        assert!(pi_i(&d, 0).is_none());
    }
}
