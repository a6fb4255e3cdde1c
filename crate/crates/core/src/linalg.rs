//! Exact linear algebra over `ℚ`, `ℚ[t]` and `ℚ[x, y]`.
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{BivarPoly, Rational, UniPoly};

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..ncols {
                let v = &f * &m[rank][c];
                m[r][c] -= v;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square rational matrix.
pub fn det_rational(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

/// Rank over `ℚ(t)` of a matrix of univariate polynomials, by elimination in
/// the fraction field (rows are rescaled instead of divided).
pub fn rank_unipoly(rows: &[Vec<UniPoly>]) -> usize {
    let mut m: Vec<Vec<UniPoly>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let a = m[rank][col].clone();
            let b = m[r][col].clone();
            for c in col..ncols {
                m[r][c] = m[r][c].mul(&a).sub(&m[rank][c].mul(&b));
            }
            normalize_row(&mut m[r]);
        }
        rank += 1;
    }
    rank
}

/// Divide a row by the gcd of its entries, keeping degrees small.
fn normalize_row(row: &mut [UniPoly]) {
    let mut g: Option<UniPoly> = None;
    for e in row.iter().filter(|e| !e.is_zero()) {
        g = Some(match g {
            None => e.monic(),
            Some(g) => gcd_unipoly(&g, e),
        });
        if g.as_ref().is_some_and(|g| g.degree() == Some(0)) {
            break;
        }
    }
    if let Some(g) = g {
        if g.degree().unwrap_or(0) > 0 {
            for e in row.iter_mut() {
                if !e.is_zero() {
                    *e = e.div_rem(&g).expect("gcd is nonzero").0;
                }
            }
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd_unipoly(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        a = b;
        b = r;
    }
    a.monic()
}

/// Determinant over `ℚ[x, y]` by fraction-free Bareiss elimination.
pub fn det_bivar(rows: &[Vec<BivarPoly>]) -> Result<BivarPoly> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(BivarPoly::one());
    }
    let mut m: Vec<Vec<BivarPoly>> = rows.to_vec();
    let mut sign = 1i64;
    let mut prev = BivarPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BivarPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .divexact(&prev)?
                    .ok_or_else(|| Error::Verification("Bareiss step not exact".into()))?;
            }
            m[i][k] = BivarPoly::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].scale(&Rational::from_integer(sign.into())))
}

/// Invariant factors (monic, diagonal of the Smith normal form) of a matrix
/// over the Euclidean domain `ℚ[t]`. Zero factors are omitted.
pub fn smith_invariant_factors(rows: &[Vec<UniPoly>]) -> Vec<UniPoly> {
    let mut m: Vec<Vec<UniPoly>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pivot: nonzero entry of least degree in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if m[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| m[i][j].degree() < m[bi][bj].degree()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            if m[i][t].is_zero() {
                continue;
            }
            let (q, r) = m[i][t].div_rem(&m[t][t]).expect("pivot nonzero");
            for j in t..ncols {
                let v = q.mul(&m[t][j]);
                m[i][j] = m[i][j].sub(&v);
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        for j in t + 1..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let (q, r) = m[t][j].div_rem(&m[t][t]).expect("pivot nonzero");
            for i in t..nrows {
                let v = q.mul(&m[i][t]);
                m[i][j] = m[i][j].sub(&v);
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide every remaining entry
        let mut fixed = true;
        'outer: for i in t + 1..nrows {
            for j in t + 1..ncols {
                if !m[i][j].is_zero()
                    && !m[i][j]
                        .div_rem(&m[t][t])
                        .expect("pivot nonzero")
                        .1
                        .is_zero()
                {
                    for c in t..ncols {
                        let v = m[i][c].clone();
                        m[t][c] = m[t][c].add(&v);
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            out.push(m[t][t].monic());
            t += 1;
        }
    }
    out
}
