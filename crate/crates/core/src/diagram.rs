//! Planar (marked) diagrams and their composition.
//!
//! A diagram has `bottom` points and `top` points on the boundary of a
//! rectangle, joined in pairs by non-crossing strands. Points are numbered
//! around the boundary: bottom points `0..bottom` left to right, then top points
//! right to left, so top position `j` has index `bottom + top - 1 - j`. With this
//! numbering a matching is planar iff no two pairs interleave.
//!
//! A strand may carry a mark (a blob) if it can reach the west wall, i.e. no
//! other strand encloses it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{int, BivarPoly, Monomial, Rational};

/// Products with at least this many term pairs run on the thread pool.
const PAR_THRESHOLD: usize = 4096;

/// Hard limit on boundary points; marks are stored in a `u64`.
pub const MAX_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    bottom: u8,
    top: u8,
    partner: Vec<u8>,
    /// Bit `a` set iff the strand with smaller endpoint `a` is marked.
    marks: u64,
}

/// What was removed while composing two diagrams.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoopData {
    pub unmarked_loops: u32,
    pub marked_loops: u32,
    /// Total number of surplus marks merged away, `Σ (r − 1)` over strands and
    /// loops carrying `r ≥ 1` marks.
    pub extra_marks: u32,
}

impl Diagram {
    pub fn bottom(&self) -> usize {
        self.bottom as usize
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn num_points(&self) -> usize {
        self.partner.len()
    }

    pub fn index(&self, p: Point) -> usize {
        index_of(self.bottom(), self.top(), p)
    }

    pub fn point(&self, idx: usize) -> Point {
        if idx < self.bottom() {
            Point::Bottom(idx)
        } else {
            Point::Top(self.bottom() + self.top() - 1 - idx)
        }
    }

    pub fn partner_index(&self, idx: usize) -> usize {
        self.partner[idx] as usize
    }

    pub fn partner_of(&self, p: Point) -> Point {
        self.point(self.partner_index(self.index(p)))
    }

    pub fn is_marked_at(&self, idx: usize) -> bool {
        let a = idx.min(self.partner_index(idx));
        self.marks >> a & 1 == 1
    }

    pub fn num_marks(&self) -> u32 {
        self.marks.count_ones()
    }

    pub fn has_marks(&self) -> bool {
        self.marks != 0
    }

    /// Strands as `(smaller index, larger index, marked)`, by smaller index.
    pub fn strands(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.partner.iter().enumerate().filter_map(move |(i, &p)| {
            let p = p as usize;
            (i < p).then(|| (i, p, self.marks >> i & 1 == 1))
        })
    }

    /// Strands joining a bottom point to a top point, left to right.
    pub fn through_strands(&self) -> Vec<(usize, usize, bool)> {
        self.strands()
            .filter(|&(a, b, _)| a < self.bottom() && b >= self.bottom())
            .collect()
    }

    pub fn through_count(&self) -> usize {
        self.through_strands().len()
    }

    /// No strand encloses the strand at `idx` (it can reach the west wall).
    pub fn is_exposed(&self, idx: usize) -> bool {
        let (a, b) = (
            idx.min(self.partner_index(idx)),
            idx.max(self.partner_index(idx)),
        );
        (0..a).all(|p| (self.partner[p] as usize) < a) && b < self.num_points()
    }

    /// Build from point pairs and a mark flag per pair; validates planarity and
    /// that marks sit on exposed strands.
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(Point, Point, bool)]) -> Result<Self> {
        let n = bottom + top;
        if n > MAX_POINTS {
            return Err(Error::InvalidArgument(format!(
                "{} boundary points exceed {}",
                n, MAX_POINTS
            )));
        }
        let mut partner = vec![u8::MAX; n];
        let mut marks = 0u64;
        for &(p, q, m) in pairs {
            let (a, b) = (index_of(bottom, top, p), index_of(bottom, top, q));
            if a >= n || b >= n || a == b || partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(Error::InvalidArgument(
                    "pairs do not form a perfect matching".into(),
                ));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
            if m {
                marks |= 1 << a.min(b);
            }
        }
        if partner.contains(&u8::MAX) {
            return Err(Error::InvalidArgument(
                "pairs do not cover every point".into(),
            ));
        }
        Diagram::from_raw(bottom, top, partner, marks)
    }

    /// Build from a circular involution and a mark mask; validates.
    pub fn from_raw(bottom: usize, top: usize, partner: Vec<u8>, marks: u64) -> Result<Self> {
        let d = Diagram {
            bottom: bottom as u8,
            top: top as u8,
            partner,
            marks,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_points();
        if n != self.bottom() + self.top() {
            return Err(Error::InvalidArgument("wrong number of points".into()));
        }
        for i in 0..n {
            let p = self.partner_index(i);
            if p >= n || p == i || self.partner_index(p) != i {
                return Err(Error::InvalidArgument(
                    "not a fixed-point-free involution".into(),
                ));
            }
        }
        if !is_noncrossing(&self.partner) {
            return Err(Error::InvalidArgument("matching is not planar".into()));
        }
        for a in 0..n {
            if self.marks >> a & 1 == 1 {
                if self.partner_index(a) < a {
                    return Err(Error::InvalidArgument(
                        "mark not stored at strand start".into(),
                    ));
                }
                if !self.is_exposed(a) {
                    return Err(Error::InvalidArgument(
                        "mark on a strand hidden from the west wall".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Self {
        let pairs: Vec<_> = (0..n)
            .map(|i| (Point::Bottom(i), Point::Top(i), false))
            .collect();
        Diagram::from_pairs(n, n, &pairs).expect("identity is planar")
    }

    /// `𝕌_i` for `1 ≤ i < n`: cap joining bottom `i, i+1` and cup joining top
    /// `i, i+1` (1-based), all other strands vertical.
    pub fn cup_cap(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "U_{} is not defined on {} strands", i, n);
        let mut pairs = Vec::new();
        for p in 0..n {
            if p + 1 == i {
                pairs.push((Point::Bottom(p), Point::Bottom(p + 1), false));
                pairs.push((Point::Top(p), Point::Top(p + 1), false));
            } else if p != i {
                pairs.push((Point::Bottom(p), Point::Top(p), false));
            }
        }
        Diagram::from_pairs(n, n, &pairs).expect("U_i is planar")
    }

    /// `𝕌_0`: the identity with a mark on its leftmost strand.
    pub fn blob(n: usize) -> Self {
        assert!(n >= 1);
        let mut pairs: Vec<_> = (0..n)
            .map(|i| (Point::Bottom(i), Point::Top(i), false))
            .collect();
        pairs[0].2 = true;
        Diagram::from_pairs(n, n, &pairs).expect("U_0 is planar")
    }

    pub fn pairs(&self) -> Vec<(Point, Point, bool)> {
        self.strands()
            .map(|(a, b, m)| (self.point(a), self.point(b), m))
            .collect()
    }

    /// Reflection exchanging top and bottom.
    pub fn star(&self) -> Self {
        let pairs: Vec<_> = self
            .pairs()
            .into_iter()
            .map(|(p, q, m)| (flip_side(p), flip_side(q), m))
            .collect();
        Diagram::from_pairs(self.top(), self.bottom(), &pairs)
            .expect("reflection of a planar diagram")
    }

    /// Left-right mirror image. Only meaningful for unmarked diagrams.
    pub fn mirror(&self) -> Result<Self> {
        let (b, t) = (self.bottom(), self.top());
        let pairs: Vec<_> = self
            .pairs()
            .into_iter()
            .map(|(p, q, m)| {
                let f = |p| match p {
                    Point::Bottom(i) => Point::Bottom(b - 1 - i),
                    Point::Top(i) => Point::Top(t - 1 - i),
                };
                (f(p), f(q), m)
            })
            .collect();
        Diagram::from_pairs(b, t, &pairs)
    }

    /// Add `j` vertical strands on the left.
    pub fn pad_left(&self, j: usize) -> Result<Self> {
        let shift = |p| match p {
            Point::Bottom(i) => Point::Bottom(i + j),
            Point::Top(i) => Point::Top(i + j),
        };
        let mut pairs: Vec<_> = (0..j)
            .map(|i| (Point::Bottom(i), Point::Top(i), false))
            .collect();
        pairs.extend(
            self.pairs()
                .into_iter()
                .map(|(p, q, m)| (shift(p), shift(q), m)),
        );
        Diagram::from_pairs(self.bottom() + j, self.top() + j, &pairs)
    }

    /// Add `j` vertical strands on the right.
    pub fn pad_right(&self, j: usize) -> Result<Self> {
        let (b, t) = (self.bottom(), self.top());
        let mut pairs = self.pairs();
        pairs.extend((0..j).map(|i| (Point::Bottom(b + i), Point::Top(t + i), false)));
        Diagram::from_pairs(b + j, t + j, &pairs)
    }

    /// Same matching, marks removed.
    pub fn unmarked(&self) -> Self {
        Diagram {
            marks: 0,
            ..self.clone()
        }
    }

    pub fn with_marks(&self, marks: u64) -> Result<Self> {
        let d = Diagram {
            marks,
            ..self.clone()
        };
        d.validate()?;
        Ok(d)
    }

    pub fn marks_mask(&self) -> u64 {
        self.marks
    }

    /// Stack `upper` on top of `self`; returns the reduced diagram and the
    /// removed loops and marks.
    pub fn compose(&self, upper: &Diagram) -> Result<(Diagram, LoopData)> {
        if self.top() != upper.bottom() {
            return Err(Error::InvalidArgument(format!(
                "cannot stack a diagram with {} bottom points on one with {} top points",
                upper.bottom(),
                self.top()
            )));
        }
        let (b, m, t) = (self.bottom(), self.top(), upper.top());
        let n = b + t;
        let mut partner = vec![0u8; n];
        let mut marks = 0u64;
        let mut data = LoopData::default();
        let mut middle_seen = vec![false; m];
        let mut done = vec![false; n];

        for start in 0..n {
            if done[start] {
                continue;
            }
            // (in_upper, index in that diagram)
            let (mut in_upper, mut idx) = if start < b {
                (false, start)
            } else {
                (true, start - b + m)
            };
            let mut count = 0u32;
            let end = loop {
                let d = if in_upper { upper } else { self };
                let q = d.partner_index(idx);
                if d.marks >> idx.min(q) & 1 == 1 {
                    count += 1;
                }
                if in_upper {
                    if q >= m {
                        break b + (q - m);
                    }
                    middle_seen[q] = true;
                    in_upper = false;
                    idx = b + m - 1 - q;
                } else {
                    if q < b {
                        break q;
                    }
                    let j = b + m - 1 - q;
                    middle_seen[j] = true;
                    in_upper = true;
                    idx = j;
                }
            };
            partner[start] = end as u8;
            partner[end] = start as u8;
            done[start] = true;
            done[end] = true;
            if count > 0 {
                marks |= 1 << start.min(end);
                data.extra_marks += count - 1;
            }
        }

        for j0 in 0..m {
            if middle_seen[j0] {
                continue;
            }
            let mut count = 0u32;
            let mut in_upper = true;
            let mut idx = j0;
            loop {
                let d = if in_upper { upper } else { self };
                let q = d.partner_index(idx);
                if d.marks >> idx.min(q) & 1 == 1 {
                    count += 1;
                }
                let j = if in_upper { q } else { b + m - 1 - q };
                middle_seen[j] = true;
                if in_upper {
                    in_upper = false;
                    idx = b + m - 1 - q;
                } else {
                    in_upper = true;
                    idx = j;
                }
                if in_upper && idx == j0 {
                    break;
                }
            }
            if count == 0 {
                data.unmarked_loops += 1;
            } else {
                data.marked_loops += 1;
                data.extra_marks += count - 1;
            }
        }

        Ok((
            Diagram {
                bottom: b as u8,
                top: t as u8,
                partner,
                marks,
            },
            data,
        ))
    }
}

fn index_of(bottom: usize, top: usize, p: Point) -> usize {
    match p {
        Point::Bottom(i) => i,
        Point::Top(j) => bottom + top - 1 - j,
    }
}

fn flip_side(p: Point) -> Point {
    match p {
        Point::Bottom(i) => Point::Top(i),
        Point::Top(i) => Point::Bottom(i),
    }
}

fn is_noncrossing(partner: &[u8]) -> bool {
    // stack check around the circle
    let mut stack: Vec<usize> = Vec::new();
    for (i, &p) in partner.iter().enumerate() {
        let p = p as usize;
        if p > i {
            stack.push(i);
        } else if stack.pop() != Some(p) {
            return false;
        }
    }
    stack.is_empty()
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({}|{}:", self.bottom, self.top)?;
        for (p, q, m) in self.pairs() {
            let show = |p: Point| match p {
                Point::Bottom(i) => format!("b{}", i + 1),
                Point::Top(i) => format!("t{}", i + 1),
            };
            write!(f, " {}-{}{}", show(p), show(q), if m { "*" } else { "" })?;
        }
        write!(f, ")")
    }
}

/// All planar perfect matchings of `n` points on a circle, as involutions.
pub fn noncrossing_matchings(n: usize) -> Vec<Vec<u8>> {
    fn rec(
        lo: usize,
        hi: usize,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
        rest: &mut Vec<(usize, usize)>,
    ) {
        if lo >= hi {
            match rest.pop() {
                None => out.push(cur.clone()),
                Some((l, h)) => {
                    rec(l, h, cur, out, rest);
                    rest.push((l, h));
                }
            }
            return;
        }
        let mut k = lo + 1;
        while k < hi {
            cur[lo] = k as u8;
            cur[k] = lo as u8;
            rest.push((k + 1, hi));
            rec(lo + 1, k, cur, out, rest);
            rest.pop();
            k += 2;
        }
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    rec(0, n, &mut cur, &mut out, &mut Vec::new());
    out
}

/// Coefficient rings for diagram algebras.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The scalar produced by removed loops and merged marks.
    fn loop_weight(data: &LoopData) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn loop_weight(data: &LoopData) -> Self {
        assert!(
            data.marked_loops == 0 && data.extra_marks == 0,
            "marked diagrams need polynomial coefficients"
        );
        let mut w = int(1);
        for _ in 0..data.unmarked_loops {
            w *= int(-2);
        }
        w
    }
}

/// Loop parameter `−2`, marked loop `y`, merged mark `x`.
impl Scalar for BivarPoly {
    fn zero() -> Self {
        BivarPoly::zero()
    }
    fn one() -> Self {
        BivarPoly::one()
    }
    fn is_zero(&self) -> bool {
        BivarPoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn loop_weight(data: &LoopData) -> Self {
        let mut c = int(1);
        for _ in 0..data.unmarked_loops {
            c *= int(-2);
        }
        BivarPoly::monomial(c, Monomial::new(data.extra_marks, data.marked_loops))
    }
}

/// Finite linear combination of diagrams.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<C> {
    terms: BTreeMap<Diagram, C>,
}

impl<C: Scalar> Default for LinComb<C> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Scalar> LinComb<C> {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn basis(d: Diagram) -> Self {
        let mut out = LinComb::zero();
        out.add_term(d, C::one());
        out
    }

    pub fn add_term(&mut self, d: Diagram, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(old) => {
                old.add_assign(&c);
                if old.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> C {
        self.terms.get(d).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &C)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = LinComb::zero();
        for (d, v) in &self.terms {
            out.add_term(d.clone(), v.mul(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (d, c) in &other.terms {
            self.add_term(d.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.neg());
        }
        out
    }

    /// `self · other`, i.e. `other` stacked on top of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.len() * other.len() >= PAR_THRESHOLD {
            return self.mul_par(other);
        }
        let mut out = LinComb::zero();
        for (da, ca) in &self.terms {
            out.add_assign(&Self::row_product(da, ca, other)?);
        }
        Ok(out)
    }

    fn row_product(da: &Diagram, ca: &C, other: &Self) -> Result<Self> {
        let mut out = LinComb::zero();
        for (db, cb) in &other.terms {
            let (d, data) = da.compose(db)?;
            let c = ca.mul(cb).mul(&C::loop_weight(&data));
            out.add_term(d, c);
        }
        Ok(out)
    }

    fn mul_par(&self, other: &Self) -> Result<Self> {
        let terms: Vec<(&Diagram, &C)> = self.terms.iter().collect();
        terms
            .par_chunks(32)
            .map(|chunk| {
                let mut acc = LinComb::zero();
                for (da, ca) in chunk {
                    acc.add_assign(&Self::row_product(da, ca, other)?);
                }
                Ok(acc)
            })
            .try_reduce(LinComb::zero, |mut a, b| {
                a.add_assign(&b);
                Ok(a)
            })
    }

    pub fn star(&self) -> Self {
        let mut out = LinComb::zero();
        for (d, c) in &self.terms {
            out.add_term(d.star(), c.clone());
        }
        out
    }

    pub fn map_diagrams<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Diagram) -> Result<Diagram>,
    {
        let mut out = LinComb::zero();
        for (d, c) in &self.terms {
            out.add_term(f(d)?, c.clone());
        }
        Ok(out)
    }
}

impl<C: Scalar + fmt::Display> fmt::Debug for LinComb<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(d, c)| (d, c.to_string())))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..8).map(|n| noncrossing_matchings(2 * n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn identity_composition() {
        let u = Diagram::cup_cap(4, 2);
        let id = Diagram::identity(4);
        assert_eq!(id.compose(&u).unwrap(), (u.clone(), LoopData::default()));
        assert_eq!(u.compose(&id).unwrap(), (u.clone(), LoopData::default()));
    }

    #[test]
    fn one_loop() {
        let u = Diagram::cup_cap(3, 1);
        let (d, data) = u.compose(&u).unwrap();
        assert_eq!(d, u);
        assert_eq!(data.unmarked_loops, 1);
    }

    #[test]
    fn blob_squares_to_x() {
        let b = Diagram::blob(2);
        let (d, data) = b.compose(&b).unwrap();
        assert_eq!(d, b);
        assert_eq!(
            data,
            LoopData {
                unmarked_loops: 0,
                marked_loops: 0,
                extra_marks: 1
            }
        );
    }

    #[test]
    fn marked_loop() {
        let u1 = Diagram::cup_cap(2, 1);
        let b = Diagram::blob(2);
        let (ub, _) = u1.compose(&b).unwrap();
        let (d, data) = ub.compose(&u1).unwrap();
        assert_eq!(d, u1);
        assert_eq!(data.marked_loops, 1);
        assert_eq!(data.unmarked_loops, 0);
    }

    #[test]
    fn hidden_mark_rejected() {
        let pairs = [
            (Point::Bottom(0), Point::Bottom(3), false),
            (Point::Bottom(1), Point::Bottom(2), true),
        ];
        assert!(Diagram::from_pairs(4, 0, &pairs).is_err());
        let crossing = [
            (Point::Bottom(0), Point::Bottom(2), false),
            (Point::Bottom(1), Point::Bottom(3), false),
        ];
        assert!(Diagram::from_pairs(4, 0, &crossing).is_err());
    }

    #[test]
    fn star_is_involutive() {
        let b = Diagram::blob(3);
        let (d, _) = b.compose(&Diagram::cup_cap(3, 2)).unwrap();
        assert_eq!(d.star().star(), d);
    }

    #[test]
    fn subtraction() {
        let a = LinComb::<Rational>::basis(Diagram::identity(2));
        assert!(a.sub(&a).is_zero());
        let b = LinComb::<BivarPoly>::basis(Diagram::identity(2));
        assert!(b.sub(&b).is_zero());
    }
}
