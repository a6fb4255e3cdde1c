//! Graded dimensions, Jantzen layers and the graded sum formula for the
//! modules `Δ_w(v)` of the infinite dihedral group.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blob::{check_signed_lambda, enumerate_blob_half, gram_matrix_blob};
use crate::coxeter::{
    all_words, bruhat_leq, bruhat_lt, psi_colored, reflections_between, word_mul, CoxeterWord, Gen,
    PositiveRoot,
};
use crate::error::{Error, Result};
use crate::gram::{gram_blocks, GramBlock};
use crate::jw::fault_injection;
use crate::linalg::smith_invariant_factors;
use crate::poly::{BivarPoly, LaurentPoly, UniPoly};

/// `dim_q Δ^B_n(λ)`, read off the degrees of the graded cell basis.
pub fn graded_dim_cell(n: usize, lambda: i64) -> Result<LaurentPoly> {
    let cell = enumerate_blob_half(n, lambda)?;
    let mut out = LaurentPoly::zero();
    for h in &cell.basis {
        out.add_term(h.degree() as i64, 1);
    }
    Ok(out)
}

/// A pair `v ≤ w` with `w` nonempty, together with the cell `Δ^B_{n−1}(λ)`,
/// `n = ℓ(w)`, that models `Δ_w(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellContext {
    w: CoxeterWord,
    v: CoxeterWord,
    color: Gen,
    lambda: i64,
    complement: bool,
}

impl CellContext {
    pub fn new(w: CoxeterWord, v: CoxeterWord) -> Result<Self> {
        let (Some(color), Some(last)) = (w.first(), w.last()) else {
            return Err(Error::InvalidArgument("w must be a nonempty word".into()));
        };
        if !bruhat_leq(&v, &w) {
            return Err(Error::InvalidArgument(format!("{} is not below {}", v, w)));
        }
        let complement = v.last() != Some(last);
        let anchor = if complement {
            word_mul(&v, &CoxeterWord::generator(last))
        } else {
            v.clone()
        };
        let lambda = psi_colored(&anchor, color)?;
        Ok(CellContext {
            w,
            v,
            color,
            lambda,
            complement,
        })
    }

    pub fn w(&self) -> &CoxeterWord {
        &self.w
    }

    pub fn v(&self) -> &CoxeterWord {
        &self.v
    }

    /// First letter of `w`; for `t` the blob model is taken with `x ↔ y`.
    pub fn color(&self) -> Gen {
        self.color
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    /// Number of points of the modelling cell module, `ℓ(w) − 1`.
    pub fn cell_n(&self) -> usize {
        self.w.len() - 1
    }

    /// `v` lies in `Λ_w^c` (it does not end with the last letter of `w`).
    pub fn is_complement(&self) -> bool {
        self.complement
    }

    /// `v` is the identity, which enters through the complement shift rule.
    pub fn is_identity(&self) -> bool {
        self.v.is_identity()
    }

    /// `v`, or `v·s′` in the complement case.
    pub fn anchor(&self) -> CoxeterWord {
        if self.complement {
            word_mul(
                &self.v,
                &CoxeterWord::generator(self.w.last().expect("nonempty")),
            )
        } else {
            self.v.clone()
        }
    }

    /// Grading shift: one in the complement case.
    pub fn shift(&self) -> i64 {
        i64::from(self.complement)
    }

    /// `v(α′)` for `α′` the simple root of the last letter of `w`, in the
    /// complement case.
    pub fn extra_factor(&self) -> Option<BivarPoly> {
        self.complement
            .then(|| self.v.act(&self.w.last().expect("nonempty").simple_root()))
    }
}

/// `dim_q Δ_w(v)`.
pub fn graded_dim_delta_w(ctx: &CellContext) -> Result<LaurentPoly> {
    Ok(graded_dim_cell(ctx.cell_n(), ctx.lambda())?.shift(ctx.shift()))
}

type BlockCache = Mutex<HashMap<(usize, i64, bool), Arc<Vec<GramBlock>>>>;

fn block_cache() -> &'static BlockCache {
    static CACHE: OnceLock<BlockCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [`gram_blocks`], memoized.
pub fn cell_blocks(n: usize, lambda: i64) -> Result<Arc<Vec<GramBlock>>> {
    let key = (n, lambda, fault_injection());
    if let Some(b) = block_cache().lock().expect("cache lock").get(&key) {
        return Ok(b.clone());
    }
    let blocks = Arc::new(gram_blocks(n, lambda)?);
    block_cache()
        .lock()
        .expect("cache lock")
        .insert(key, blocks.clone());
    Ok(blocks)
}

/// A diagonal block of the Gram matrix of `Δ_w(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextBlock {
    pub multiplicity: usize,
    pub degree: i64,
    pub c: BivarPoly,
}

pub fn context_blocks(ctx: &CellContext) -> Result<Vec<ContextBlock>> {
    let extra = ctx.extra_factor();
    Ok(cell_blocks(ctx.cell_n(), ctx.lambda())?
        .iter()
        .map(|b| {
            let mut c = match ctx.color() {
                Gen::S => b.c.clone(),
                Gen::T => b.c.swap_xy(),
            };
            if let Some(e) = &extra {
                c = &c * e;
            }
            ContextBlock {
                multiplicity: b.multiplicity,
                degree: b.degree as i64 + ctx.shift(),
                c,
            }
        })
        .collect())
}

/// Valuation of `c(𝐱, 𝐱)` at `𝐱 = 0`.
pub fn diagonal_valuation(c: &BivarPoly) -> Result<usize> {
    UniPoly::from_diagonal(c)
        .valuation()
        .ok_or_else(|| Error::Verification("block vanishes on the diagonal x = y".into()))
}

/// `dim_q Δ^{gr,α}`: the blocks whose diagonal entry is divisible by `α`.
pub fn delta_alpha_dim(ctx: &CellContext, alpha: PositiveRoot) -> Result<LaurentPoly> {
    let a = alpha.to_poly();
    let mut out = LaurentPoly::zero();
    for b in context_blocks(ctx)? {
        if a.divides(&b.c) {
            out.add_term(b.degree, b.multiplicity as i64);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JantzenLayer {
    pub k: usize,
    pub dim: LaurentPoly,
}

fn layers_from(blocks: &[(usize, i64, usize)]) -> Vec<JantzenLayer> {
    let top = blocks.iter().map(|b| b.2).max().unwrap_or(0);
    (1..=top)
        .map(|k| {
            let mut dim = LaurentPoly::zero();
            for &(mult, deg, val) in blocks {
                if val >= k {
                    dim.add_term(deg, mult as i64);
                }
            }
            JantzenLayer { k, dim }
        })
        .collect()
}

fn valued(blocks: &[ContextBlock]) -> Result<Vec<(usize, i64, usize)>> {
    blocks
        .iter()
        .map(|b| Ok((b.multiplicity, b.degree, diagonal_valuation(&b.c)?)))
        .collect()
}

/// Nonzero layers of the Jantzen filtration of `Δ_w(v)` over `ℚ[𝐱]`.
pub fn jantzen_layers(ctx: &CellContext) -> Result<Vec<JantzenLayer>> {
    Ok(layers_from(&valued(&context_blocks(ctx)?)?))
}

/// Nonzero Jantzen layers of the cell module `Δ^B_n(λ)` itself.
pub fn cell_layers(n: usize, lambda: i64) -> Result<Vec<JantzenLayer>> {
    let blocks: Vec<(usize, i64, usize)> = cell_blocks(n, lambda)?
        .iter()
        .map(|b| Ok((b.multiplicity, b.degree as i64, diagonal_valuation(&b.c)?)))
        .collect::<Result<_>>()?;
    Ok(layers_from(&blocks))
}

/// Number of blocks with a unit diagonal entry.
pub fn head_count(n: usize, lambda: i64) -> Result<usize> {
    Ok(cell_blocks(n, lambda)?
        .iter()
        .filter(|b| b.c.as_constant().is_some())
        .count())
}

/// Ungraded dimensions of the layers `1, 2, …` of `Δ^B_n(λ)` from the blocks.
pub fn ungraded_layer_dims(n: usize, lambda: i64) -> Result<Vec<usize>> {
    Ok(cell_layers(n, lambda)?
        .iter()
        .map(|l| l.dim.eval_at_one() as usize)
        .collect())
}

/// The same dimensions from the invariant factors of the Gram matrix
/// specialized to `x = y = 𝐱`.
pub fn smith_layer_dims(n: usize, lambda: i64) -> Result<Vec<usize>> {
    check_signed_lambda(n, lambda)?;
    let g: Vec<Vec<UniPoly>> = gram_matrix_blob(n, lambda)?
        .iter()
        .map(|row| row.iter().map(UniPoly::from_diagonal).collect())
        .collect();
    let factors = smith_invariant_factors(&g);
    if factors.len() != g.len() {
        return Err(Error::Verification(
            "specialized Gram matrix is singular".into(),
        ));
    }
    let vals: Vec<usize> = factors.iter().map(|f| f.valuation().unwrap_or(0)).collect();
    let top = vals.iter().copied().max().unwrap_or(0);
    Ok((1..=top)
        .map(|k| vals.iter().filter(|&&v| v >= k).count())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JantzenReport {
    pub w: CoxeterWord,
    pub v: CoxeterWord,
    pub lambda: i64,
    pub complement: bool,
    /// `v = e`, handled by the complement shift rule.
    pub identity_v: bool,
    pub layers: Vec<JantzenLayer>,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    /// Blocks of valuation zero.
    pub heads: usize,
    pub pass: bool,
}

/// `Σ_α dim_q Δ_w(s_α v)[ℓ(s_α v) − ℓ(v)]` over `v < s_α v ≤ w`.
fn sum_formula_rhs(ctx: &CellContext) -> Result<LaurentPoly> {
    let mut rhs = LaurentPoly::zero();
    for alpha in reflections_between(ctx.v(), ctx.w(), ctx.w().len() as u32 + 1) {
        let u = word_mul(&alpha.reflection(), ctx.v());
        let sub = CellContext::new(ctx.w().clone(), u.clone())?;
        rhs += &graded_dim_delta_w(&sub)?.shift(u.len() as i64 - ctx.v().len() as i64);
    }
    Ok(rhs)
}

/// Compares `Σ_{k>0} dim_q` of the Jantzen layers with the reflection sum.
pub fn sum_formula_check(ctx: &CellContext) -> Result<JantzenReport> {
    let blocks = valued(&context_blocks(ctx)?)?;
    let mut lhs = LaurentPoly::zero();
    for &(mult, deg, val) in &blocks {
        lhs.add_term(deg, (mult * val) as i64);
    }
    let rhs = sum_formula_rhs(ctx)?;
    Ok(JantzenReport {
        w: ctx.w().clone(),
        v: ctx.v().clone(),
        lambda: ctx.lambda(),
        complement: ctx.is_complement(),
        identity_v: ctx.is_identity(),
        layers: layers_from(&blocks),
        heads: blocks.iter().filter(|b| b.2 == 0).count(),
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Words ordered by length, then lexicographically.
fn by_length(words: impl IntoIterator<Item = CoxeterWord>) -> Vec<CoxeterWord> {
    let mut out: Vec<CoxeterWord> = words.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out.dedup();
    out
}

/// [`sum_formula_check`] for every `v ≤ w` with `1 ≤ ℓ(w) ≤ max_len`, ordered
/// by `(ℓ(w), w, ℓ(v), v)`.
pub fn sum_formula_suite(max_len: usize) -> Result<Vec<JantzenReport>> {
    let ws = by_length(all_words(max_len).into_iter().filter(|w| !w.is_identity()));
    let pairs: Vec<(CoxeterWord, CoxeterWord)> = ws
        .iter()
        .flat_map(|w| {
            by_length(all_words(w.len()).into_iter().filter(|v| bruhat_leq(v, w)))
                .into_iter()
                .map(move |v| (w.clone(), v))
        })
        .collect();
    pairs
        .par_iter()
        .map(|(w, v)| sum_formula_check(&CellContext::new(w.clone(), v.clone())?))
        .collect()
}

pub fn is_bruhat_ideal(set: &BTreeSet<CoxeterWord>) -> bool {
    set.iter().all(|u| {
        all_words(u.len())
            .iter()
            .filter(|x| bruhat_leq(x, u))
            .all(|x| set.contains(x))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct W0Report {
    pub ideal: Vec<CoxeterWord>,
    pub v: CoxeterWord,
    /// One report per `z ∈ W₀` with `v ≤ z`.
    pub components: Vec<JantzenReport>,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub pass: bool,
}

/// The sum formula for `Δ_{W₀}(v) = ⊕_z Δ_z(v)` over a Bruhat ideal `W₀`.
/// The right side is taken over `α` with `v < s_α v ∈ W₀`.
pub fn sum_formula_check_w0(ideal: &[CoxeterWord], v: &CoxeterWord) -> Result<W0Report> {
    let set: BTreeSet<CoxeterWord> = ideal.iter().cloned().collect();
    if !is_bruhat_ideal(&set) {
        return Err(Error::InvalidArgument(
            "W0 is not closed under the Bruhat order".into(),
        ));
    }
    if v.is_identity() {
        return Err(Error::InvalidArgument("v must be a nonempty word".into()));
    }
    if !set.contains(v) {
        return Err(Error::InvalidArgument(format!("{} is not in W0", v)));
    }
    let zs: Vec<CoxeterWord> = by_length(set.iter().filter(|z| bruhat_leq(v, z)).cloned());
    let components: Vec<JantzenReport> = zs
        .iter()
        .map(|z| sum_formula_check(&CellContext::new(z.clone(), v.clone())?))
        .collect::<Result<_>>()?;
    let mut lhs = LaurentPoly::zero();
    for c in &components {
        lhs += &c.lhs;
    }

    let top = set.iter().map(|z| z.len()).max().unwrap_or(0) as u32;
    let mut rhs = LaurentPoly::zero();
    for alpha in PositiveRoot::all_up_to(top + 1) {
        let u = word_mul(&alpha.reflection(), v);
        if !bruhat_lt(v, &u) || !set.contains(&u) {
            continue;
        }
        for z in set.iter().filter(|z| bruhat_leq(&u, z)) {
            let dim = graded_dim_delta_w(&CellContext::new(z.clone(), u.clone())?)?;
            rhs += &dim.shift(u.len() as i64 - v.len() as i64);
        }
    }
    Ok(W0Report {
        ideal: by_length(set),
        v: v.clone(),
        components,
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// All nonempty Bruhat ideals inside the words of length `≤ max_len`.
pub fn bruhat_ideals(max_len: usize) -> Vec<Vec<CoxeterWord>> {
    let words = by_length(all_words(max_len));
    let mut out = Vec::new();
    for m in 0..=max_len {
        let below: Vec<CoxeterWord> = words.iter().filter(|w| w.len() < m).cloned().collect();
        let level: Vec<CoxeterWord> = words.iter().filter(|w| w.len() == m).cloned().collect();
        for mask in 1..(1u32 << level.len()) {
            let mut ideal = below.clone();
            ideal.extend(
                level
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, w)| w.clone()),
            );
            out.push(ideal);
        }
    }
    out
}
