//! Jones-Wenzl idempotents in `TL_n` at loop parameter `−2`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::{rat, Rational};
use crate::tl::{enumerate_tl_diagrams, tl_generator, tl_identity, TLElement};

const MEMO_SIZE: usize = 16;

static MEMO: [OnceLock<Arc<TLElement>>; MEMO_SIZE] = [const { OnceLock::new() }; MEMO_SIZE];

static FAULT: AtomicBool = AtomicBool::new(false);

/// Negative control for the verification suite: when set, [`jw`] returns an
/// element with one wrong coefficient.
pub fn set_fault_injection(on: bool) {
    FAULT.store(on, Ordering::SeqCst);
}

pub fn fault_injection() -> bool {
    FAULT.load(Ordering::SeqCst)
}

/// `JW_n` by the recursion
/// `JW_n = J' + ((n−1)/n)·J'·𝕌_{n−1}·J'`, `J' = JW_{n−1} ⊗ 1`.
pub fn jw(n: usize) -> Result<Arc<TLElement>> {
    let base = jw_clean(n)?;
    if fault_injection() && n >= 2 {
        let mut bad = (*base).clone();
        bad.add_term(Diagram::cup_cap(n, 1), rat(1, 7));
        return Ok(Arc::new(bad));
    }
    Ok(base)
}

fn jw_clean(n: usize) -> Result<Arc<TLElement>> {
    if n == 0 {
        return Err(Error::InvalidArgument("JW_n needs n >= 1".into()));
    }
    if n < MEMO_SIZE {
        if let Some(v) = MEMO[n].get() {
            return Ok(v.clone());
        }
        let v = Arc::new(jw_recursive(n)?);
        return Ok(MEMO[n].get_or_init(|| v).clone());
    }
    Ok(Arc::new(jw_recursive(n)?))
}

fn jw_recursive(n: usize) -> Result<TLElement> {
    if n == 1 {
        return Ok(tl_identity(1));
    }
    let prev = jw_clean(n - 1)?;
    let jp = pad_right(1, &prev)?;
    let tail = jp.mul(&tl_generator(n, n - 1))?.mul(&jp)?;
    Ok(jp.add(&tail.scale(&rat(n as i64 - 1, n as i64))))
}

/// `1^j ⊗ e`: `j` vertical strands added on the left.
pub fn pad_left(j: usize, e: &TLElement) -> Result<TLElement> {
    e.map_diagrams(|d| d.pad_left(j))
}

/// `e ⊗ 1^j`.
pub fn pad_right(j: usize, e: &TLElement) -> Result<TLElement> {
    e.map_diagrams(|d| d.pad_right(j))
}

/// Coefficient of the identity diagram.
pub fn coef_one(e: &TLElement, n: usize) -> Rational {
    e.coeff(&Diagram::identity(n))
}

/// `JW_n` as the unique solution of `coef_1(J) = 1`, `𝕌_i·J = 0` for all `i`,
/// by sparse exact elimination over the diagram basis.
pub fn jw_oracle(n: usize) -> Result<TLElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("JW_n needs n >= 1".into()));
    }
    let basis = enumerate_tl_diagrams(n);
    let index: BTreeMap<&Diagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let rhs = basis.len();
    let mut system = SparseSystem::new();

    let mut normalize = BTreeMap::new();
    normalize.insert(index[&Diagram::identity(n)], Rational::one());
    normalize.insert(rhs, Rational::one());
    system.push(normalize);

    for i in 1..n {
        let u = Diagram::cup_cap(n, i);
        let mut eqs: BTreeMap<Diagram, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (col, d) in basis.iter().enumerate() {
            let (prod, data) = u.compose(d)?;
            let w = <Rational as crate::diagram::Scalar>::loop_weight(&data);
            let row = eqs.entry(prod).or_default();
            *row.entry(col).or_insert_with(Rational::zero) += w;
        }
        for row in eqs.into_values() {
            system.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }

    let solution = system.solve(rhs)?;
    let mut out = TLElement::zero();
    for (d, c) in basis.into_iter().zip(solution) {
        out.add_term(d, c);
    }
    Ok(out)
}

/// Row-reduced sparse system; each stored row has a unit pivot that appears
/// in no other row.
struct SparseSystem {
    rows: Vec<BTreeMap<usize, Rational>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl SparseSystem {
    fn new() -> Self {
        SparseSystem {
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    fn push(&mut self, mut row: BTreeMap<usize, Rational>) {
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = hit else { break };
            let r = &self.rows[self.pivot_row[&col]];
            for (c, v) in r {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        let Some((&col, lead)) = row.iter().next() else {
            return;
        };
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        // clear the new pivot column from earlier rows
        for r in self.rows.iter_mut() {
            if let Some(f) = r.get(&col).cloned() {
                for (c, v) in &row {
                    let e = r.entry(*c).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(c);
                    }
                }
            }
        }
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(row);
    }

    /// Unique solution of the columns `0..rhs`, column `rhs` being the right
    /// hand side.
    fn solve(&self, rhs: usize) -> Result<Vec<Rational>> {
        if self.pivot_row.contains_key(&rhs) {
            return Err(Error::Verification("inconsistent linear system".into()));
        }
        (0..rhs)
            .map(|c| {
                let r = self
                    .pivot_row
                    .get(&c)
                    .ok_or_else(|| Error::Verification("singular linear system".into()))?;
                Ok(self.rows[*r]
                    .get(&rhs)
                    .cloned()
                    .unwrap_or_else(Rational::zero))
            })
            .collect()
    }
}
