//! Block diagonalization of the blob Gram form.
//!
//! For `λ ∈ Λ_{±n}` and `0 ≤ i ≤ k = (n−|λ|)/2` the element
//! `f_i = (1^j ⊗ JW_{|λ|+2i})·e_i` generates a section `S_i(λ) = TL_n f_i` of
//! the filtration by blob count. The sections are mutually orthogonal and on
//! `S_i` the blob form is `c_i(x, y)` times the Temperley-Lieb form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blob::{
    basis_vec, blob_act, check_signed_lambda, enumerate_blob_half, gram_blob_vec, pi_i_vec,
    BlobElement, BlobHalfDiagram, BlobModuleVec, GradedCellBasis,
};
use crate::coxeter::PositiveRoot;
use crate::error::{Error, Result};
use crate::jw::{jw, pad_left};
use crate::linalg::rank_unipoly;
use crate::poly::{rat, BivarPoly, Rational, UniPoly};
use crate::tl::{binomial, enumerate_tl_diagrams, enumerate_tl_half, tl_half_count, TLElement};
use num_traits::{One, Zero};

/// One diagonal block `c_i·I_{d_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramBlock {
    pub index: usize,
    pub multiplicity: usize,
    /// Monic representative of `c_i`.
    pub c: BivarPoly,
    /// `⟨f_i, f_i⟩^B / ⟨π_i f_i, π_i f_i⟩^TL` before normalization.
    pub ratio: BivarPoly,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct SectionData {
    pub index: usize,
    pub generator: BlobModuleVec,
    pub basis: Vec<BlobModuleVec>,
}

fn k_of(n: usize, lambda: i64) -> usize {
    (n - lambda.unsigned_abs() as usize) / 2
}

fn check_section(i: usize, lambda: i64, n: usize) -> Result<usize> {
    check_signed_lambda(n, lambda)?;
    let k = k_of(n, lambda);
    if i > k {
        return Err(Error::InvalidArgument(format!(
            "section index {} exceeds k = {}",
            i, k
        )));
    }
    Ok(k)
}

/// `e_i^λ`: `k−i` unmarked cups, then `i` marked cups, then the `|λ|`
/// propagating lines.
pub fn build_e(i: usize, lambda: i64, n: usize) -> Result<BlobHalfDiagram> {
    let k = check_section(i, lambda, n)?;
    let mut inv = Vec::with_capacity(n);
    let mut marks = Vec::new();
    for c in 0..k {
        let a = 2 * c + 1;
        inv.push(a + 1);
        inv.push(a);
        if c >= k - i {
            marks.push((a, a + 1));
        }
    }
    for p in 2 * k..n {
        inv.push(p + 1);
    }
    BlobHalfDiagram::new(lambda, &inv, &marks)
}

pub fn tl_to_blob(e: &TLElement) -> BlobElement {
    let mut out = BlobElement::zero();
    for (d, c) in e.iter() {
        out.add_term(d.clone(), BivarPoly::constant(c.clone()));
    }
    out
}

/// `f_i^λ = (1^j ⊗ JW_{|λ|+2i})·e_i^λ`, `j = n−|λ|−2i`.
pub fn build_f(i: usize, lambda: i64, n: usize) -> Result<BlobModuleVec> {
    let e = build_e(i, lambda, n)?;
    let m = lambda.unsigned_abs() as usize + 2 * i;
    let v = basis_vec(&e);
    if m == 0 {
        return Ok(v);
    }
    let j = n - m;
    let jw_m = jw(m)?;
    let padded = tl_to_blob(&pad_left(j, &jw_m)?);
    blob_act(&padded, &v, lambda)
}

/// `β_{k,λ} = ⟨f_k, f_k⟩` on `n = 2k+|λ|` points.
pub fn beta(k: usize, lambda: i64) -> Result<BivarPoly> {
    let n = 2 * k + lambda.unsigned_abs() as usize;
    let f = build_f(k, lambda, n)?;
    gram_blob_vec(&f, &f, lambda)
}

/// Root factors of `c_i` for `Δ^B(λ)`:
/// `α_{x,λ+2..λ+i+1}, α_{y,1..i}` for `λ ≥ 0` and
/// `α_{x,1..i+1}, α_{y,|λ|+1..|λ|+i}` for `λ < 0`.
pub fn c_roots(i: usize, lambda: i64) -> Vec<PositiveRoot> {
    let i = i as u32;
    let l = lambda.unsigned_abs() as u32;
    let mut out = Vec::new();
    if lambda >= 0 {
        out.extend((l + 2..=l + i + 1).map(PositiveRoot::x));
        out.extend((1..=i).map(PositiveRoot::y));
    } else {
        out.extend((1..=i + 1).map(PositiveRoot::x));
        out.extend((l + 1..=l + i).map(PositiveRoot::y));
    }
    out
}

pub fn root_product(roots: &[PositiveRoot]) -> BivarPoly {
    roots
        .iter()
        .fold(BivarPoly::one(), |acc, r| &acc * &r.to_poly())
}

/// Product of the root factors of `c_i`.
pub fn c_closed(i: usize, lambda: i64) -> BivarPoly {
    root_product(&c_roots(i, lambda))
}

/// `(1/C(n,k))` times the root product, `n = 2k+|λ|`.
pub fn beta_closed(k: usize, lambda: i64) -> BivarPoly {
    let n = 2 * k + lambda.unsigned_abs() as usize;
    let c = binomial(n as u64, k as i64) as i64;
    c_closed(k, lambda).scale(&rat(1, c))
}

/// `β_{k,λ} = β_{k,λ−1} + k²·α_{y,k}²/(n(n−1))·β_{k−1,λ}`, `k, λ ≥ 1`.
pub fn beta_recursion_check(k: usize, lambda: i64) -> Result<bool> {
    if k < 1 || lambda < 1 {
        return Err(Error::InvalidArgument(
            "the recursion needs k >= 1 and lambda >= 1".into(),
        ));
    }
    let n = (2 * k) as i64 + lambda;
    let lhs = beta(k, lambda)?;
    let ay = PositiveRoot::y(k as u32).to_poly();
    let factor = (&ay * &ay).scale(&rat((k * k) as i64, n * (n - 1)));
    let rhs = &beta(k, lambda - 1)? + &(&factor * &beta(k - 1, lambda)?);
    Ok(lhs == rhs)
}

/// Coordinates of `v` in the cell basis.
pub fn coordinates(v: &BlobModuleVec, basis: &GradedCellBasis) -> Result<Vec<BivarPoly>> {
    let mut out = vec![BivarPoly::zero(); basis.len()];
    for (d, c) in v.iter() {
        let pos = basis
            .position(d)
            .ok_or_else(|| Error::Verification(format!("{:?} is not a basis diagram", d)))?;
        out[pos] = c.clone();
    }
    Ok(out)
}

/// Rank over `Frac(ℚ[x,y])` of vectors whose entries are homogeneous with
/// `deg(entry) + 2·level(column)` constant along each row. Such a matrix is
/// `diag(y^r)·M(x/y, 1)·diag(y^−c)`, so setting `y = 1` preserves the rank.
pub fn rank_graded(rows: &[Vec<BivarPoly>], col_levels: &[usize]) -> Result<usize> {
    for row in rows {
        let mut weight: Option<usize> = None;
        for (e, &lvl) in row.iter().zip(col_levels) {
            if e.is_zero() {
                continue;
            }
            let d = e
                .homogeneous_degree()
                .ok_or_else(|| Error::Verification(format!("entry {} is not homogeneous", e)))?;
            let w = d as usize + 2 * lvl;
            if *weight.get_or_insert(w) != w {
                return Err(Error::Verification(
                    "row is not graded by column level".into(),
                ));
            }
        }
    }
    let uni: Vec<Vec<UniPoly>> = rows
        .iter()
        .map(|r| r.iter().map(UniPoly::dehomogenize).collect())
        .collect();
    Ok(rank_unipoly(&uni))
}

/// `D_t·f_i` for every half-diagram `t` of `Δ^TL_n(|λ|+2i)`, where
/// `D_t = t ∘ (π_i e_i)*`. Their images under `π_i` are nonzero multiples of
/// the `t`, so they are independent.
pub fn section_basis(i: usize, lambda: i64, n: usize) -> Result<SectionData> {
    check_section(i, lambda, n)?;
    let f = build_f(i, lambda, n)?;
    let m = lambda.unsigned_abs() as usize + 2 * i;
    let e = build_e(i, lambda, n)?;
    let top = pi_i_vec(&basis_vec(&e), lambda, i)?;
    let (pe, _) = top.iter().next().expect("pi_i(e_i) is a single diagram");
    let pe = pe.clone();
    let targets = enumerate_tl_half(n, m)?;
    let basis: Vec<BlobModuleVec> = targets
        .par_iter()
        .map(|t| {
            let (d, _) = t.diagram().compose(&pe.star())?;
            blob_act(&BlobElement::basis(d), &f, lambda)
        })
        .collect::<Result<_>>()?;
    let cell = enumerate_blob_half(n, lambda)?;
    let rows: Vec<Vec<BivarPoly>> = basis
        .iter()
        .map(|v| coordinates(v, &cell))
        .collect::<Result<_>>()?;
    let levels: Vec<usize> = cell.basis.iter().map(|h| h.level()).collect();
    let rank = rank_graded(&rows, &levels)?;
    if rank != tl_half_count(n, m) as usize {
        return Err(Error::Verification(format!(
            "section {} of ({}, {}) has rank {}, expected {}",
            i,
            n,
            lambda,
            rank,
            tl_half_count(n, m)
        )));
    }
    Ok(SectionData {
        index: i,
        generator: f,
        basis,
    })
}

/// Rank of the full spanning set `{D·f_i : D a diagram of TL_n}`.
pub fn section_span_rank(i: usize, lambda: i64, n: usize) -> Result<usize> {
    check_section(i, lambda, n)?;
    let f = build_f(i, lambda, n)?;
    let cell = enumerate_blob_half(n, lambda)?;
    let rows: Vec<Vec<BivarPoly>> = enumerate_tl_diagrams(n)
        .par_iter()
        .map(|d| {
            coordinates(
                &blob_act(&BlobElement::basis(d.clone()), &f, lambda)?,
                &cell,
            )
        })
        .collect::<Result<_>>()?;
    let levels: Vec<usize> = cell.basis.iter().map(|h| h.level()).collect();
    rank_graded(&rows, &levels)
}

fn tl_pairing(u: &BlobModuleVec, v: &BlobModuleVec, lambda: usize) -> Result<BivarPoly> {
    // unmarked vectors: the blob pairing with λ ≥ 0 is the TL pairing
    gram_blob_vec(u, v, lambda as i64)
}

/// `c_i` as `(ratio, monic)`, where `ratio = ⟨f_i,f_i⟩^B / ⟨π_i f_i,π_i f_i⟩^TL`.
pub fn c_factor(i: usize, lambda: i64, n: usize) -> Result<(BivarPoly, BivarPoly)> {
    check_section(i, lambda, n)?;
    let f = build_f(i, lambda, n)?;
    let m = lambda.unsigned_abs() as usize + 2 * i;
    let num = gram_blob_vec(&f, &f, lambda)?;
    let pf = pi_i_vec(&f, lambda, i)?;
    let den = tl_pairing(&pf, &pf, m)?;
    let den_c = den
        .as_constant()
        .ok_or_else(|| Error::Verification("TL norm is not a scalar".into()))?;
    if num_traits::Zero::is_zero(&den_c) {
        return Err(Error::Verification("zero TL norm".into()));
    }
    let ratio = num.scale(&den_c.recip());
    let monic = ratio.monic();
    Ok((ratio, monic))
}

/// Checks `⟨s, t⟩^B = c_i·⟨π_i s, π_i t⟩^TL` on all pairs of the section basis.
pub fn comb_check(i: usize, lambda: i64, n: usize) -> Result<bool> {
    let (ratio, _) = c_factor(i, lambda, n)?;
    let sec = section_basis(i, lambda, n)?;
    let m = lambda.unsigned_abs() as usize + 2 * i;
    let proj: Vec<BlobModuleVec> = sec
        .basis
        .iter()
        .map(|v| pi_i_vec(v, lambda, i))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..sec.basis.len())
        .flat_map(|a| (a..sec.basis.len()).map(move |b| (a, b)))
        .collect();
    let ok = pairs
        .par_iter()
        .map(|&(a, b)| {
            let lhs = gram_blob_vec(&sec.basis[a], &sec.basis[b], lambda)?;
            let rhs = &ratio * &tl_pairing(&proj[a], &proj[b], m)?;
            Ok(lhs == rhs)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(ok.into_iter().all(|b| b))
}

pub fn block_degree(i: usize, lambda: i64) -> usize {
    2 * i + usize::from(lambda < 0)
}

/// The diagonal blocks of the Gram matrix of `Δ^B_n(λ)`.
pub fn gram_blocks(n: usize, lambda: i64) -> Result<Vec<GramBlock>> {
    check_signed_lambda(n, lambda)?;
    let k = k_of(n, lambda);
    (0..=k)
        .into_par_iter()
        .map(|i| {
            let (ratio, c) = c_factor(i, lambda, n)?;
            Ok(GramBlock {
                index: i,
                multiplicity: tl_half_count(n, lambda.unsigned_abs() as usize + 2 * i) as usize,
                c,
                ratio,
                degree: block_degree(i, lambda),
            })
        })
        .collect()
}

/// Outcome of the orthogonality and filtration checks for one `(n, λ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// `⟨e_j, D·f_i⟩ = 0` for all diagrams `D` and `j < i`.
    pub e_kills_lower: bool,
    /// `⟨F^{i−1}, S_i⟩ = 0`.
    pub filtration_orthogonal: bool,
    /// `S_i ∩ F^{i−1} = 0`, via independence of the `π_i` images.
    pub trivial_intersection: bool,
    /// `⟨S_i, S_j⟩ = 0` for `i ≠ j` and the sections span the module.
    pub direct_sum: bool,
}

impl OrthogonalityReport {
    pub fn all(&self) -> bool {
        self.e_kills_lower
            && self.filtration_orthogonal
            && self.trivial_intersection
            && self.direct_sum
    }
}

pub fn orthogonality_report(n: usize, lambda: i64) -> Result<OrthogonalityReport> {
    check_signed_lambda(n, lambda)?;
    let k = k_of(n, lambda);
    let cell = enumerate_blob_half(n, lambda)?;
    let sections: Vec<SectionData> = (0..=k)
        .into_par_iter()
        .map(|i| section_basis(i, lambda, n))
        .collect::<Result<_>>()?;
    let diagrams = enumerate_tl_diagrams(n);

    let mut report = OrthogonalityReport::default();

    let es: Vec<BlobModuleVec> = (0..=k)
        .map(|j| build_e(j, lambda, n).map(|e| basis_vec(&e)))
        .collect::<Result<_>>()?;
    report.e_kills_lower = (1..=k)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            for d in &diagrams {
                let v = blob_act(
                    &BlobElement::basis(d.clone()),
                    &sections[i].generator,
                    lambda,
                )?;
                for e in &es[..i] {
                    if !gram_blob_vec(e, &v, lambda)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    report.filtration_orthogonal = (1..=k)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            for h in cell.basis.iter().filter(|h| h.level() < i) {
                for s in &sections[i].basis {
                    if !gram_blob_vec(&basis_vec(h), s, lambda)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    let mut inter = true;
    for (i, sec) in sections.iter().enumerate() {
        let m = lambda.unsigned_abs() as usize + 2 * i;
        let tl_basis = enumerate_tl_half(n, m)?;
        let rows: Vec<Vec<BivarPoly>> = sec
            .basis
            .iter()
            .map(|v| {
                let p = pi_i_vec(v, lambda, i)?;
                Ok(tl_basis.iter().map(|t| p.coeff(t.diagram())).collect())
            })
            .collect::<Result<_>>()?;
        let levels = vec![0; tl_basis.len()];
        if rank_graded(&rows, &levels)? != sec.basis.len() {
            inter = false;
        }
    }
    report.trivial_intersection = inter;

    let mut ds = true;
    'pairs: for i in 0..=k {
        for j in i + 1..=k {
            for a in &sections[i].basis {
                for b in &sections[j].basis {
                    if !gram_blob_vec(a, b, lambda)?.is_zero() {
                        ds = false;
                        break 'pairs;
                    }
                }
            }
        }
    }
    let all_rows: Vec<Vec<BivarPoly>> = sections
        .iter()
        .flat_map(|s| s.basis.iter())
        .map(|v| coordinates(v, &cell))
        .collect::<Result<_>>()?;
    let levels: Vec<usize> = cell.basis.iter().map(|h| h.level()).collect();
    let total: usize = sections.iter().map(|s| s.basis.len()).sum();
    ds = ds && total == cell.len() && all_rows.len() == cell.len();
    ds = ds && rank_graded(&all_rows, &levels)? == all_rows.len();
    report.direct_sum = ds;
    Ok(report)
}

pub fn orthogonality_check(n: usize, lambda: i64) -> Result<bool> {
    Ok(orthogonality_report(n, lambda)?.all())
}

/// `Π c_i^{d_i}`, the determinant predicted by the block form up to `ℚˣ`.
pub fn predicted_determinant(blocks: &[GramBlock]) -> BivarPoly {
    blocks.iter().fold(BivarPoly::one(), |acc, b| {
        &acc * &b.c.pow(b.multiplicity as u32)
    })
}

/// Splits `p` into a constant, root factors with index `≤ bound` (`x`-family
/// first, then `y`, ascending) and a leftover polynomial.
pub fn root_factorization(p: &BivarPoly, bound: u32) -> (Rational, Vec<PositiveRoot>, BivarPoly) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    if rest.is_zero() {
        return (Rational::zero(), roots, BivarPoly::one());
    }
    let order = (1..=bound)
        .map(PositiveRoot::x)
        .chain((1..=bound).map(PositiveRoot::y));
    for r in order {
        let a = r.to_poly();
        while let Ok(Some(q)) = rest.divexact(&a) {
            rest = q;
            roots.push(r);
        }
    }
    match rest.as_constant() {
        Some(c) => (c, roots, BivarPoly::one()),
        None => (Rational::one(), roots, rest),
    }
}

/// Factored rendering such as `(1/2)(2x+y)y`: constant, parenthesized
/// factors, then the monomial part.
pub fn render_factored(p: &BivarPoly, bound: u32) -> String {
    let (c, roots, rest) = root_factorization(p, bound);
    if roots.is_empty() && rest.is_one() {
        return p.to_string();
    }
    let mut monomial = BivarPoly::one();
    let mut parts = Vec::new();
    for r in &roots {
        let a = r.to_poly();
        if a.num_terms() == 1 {
            monomial = &monomial * &a;
        } else {
            parts.push(format!("({})", a));
        }
    }
    if !rest.is_one() {
        parts.push(format!("({})", rest));
    }
    let mut out = String::new();
    if c == -Rational::one() {
        out.push('-');
    } else if !c.is_one() {
        if c.is_integer() {
            out.push_str(&c.to_string());
        } else {
            out.push_str(&format!("({})", c));
        }
    }
    for part in parts {
        out.push_str(&part);
    }
    if !monomial.is_one() {
        out.push_str(&monomial.to_string());
    }
    out
}
