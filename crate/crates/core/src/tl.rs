//! Temperley-Lieb algebra `TL_n` at loop parameter `−2` and its cell modules.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::diagram::{noncrossing_matchings, Diagram, LinComb, Point};
use crate::error::{Error, Result};
use crate::poly::Rational;

/// Element of `TL_n` with rational coefficients.
pub type TLElement = LinComb<Rational>;

pub fn tl_identity(n: usize) -> TLElement {
    TLElement::basis(Diagram::identity(n))
}

/// `𝕌_i`, `1 ≤ i < n`.
pub fn tl_generator(n: usize, i: usize) -> TLElement {
    TLElement::basis(Diagram::cup_cap(n, i))
}

pub fn tl_mul(a: &TLElement, b: &TLElement) -> Result<TLElement> {
    a.mul(b)
}

/// All planar diagrams on `n` bottom and `n` top points.
pub fn enumerate_tl_diagrams(n: usize) -> Vec<Diagram> {
    noncrossing_matchings(2 * n)
        .into_iter()
        .map(|p| Diagram::from_raw(n, n, p, 0).expect("planar matching"))
        .collect()
}

pub fn binomial(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n as i64) / (n + 1)
}

/// `d(n, λ) = C(n, k) − C(n, k−1)`, `k = (n−λ)/2`.
pub fn tl_half_count(n: usize, lambda: usize) -> u64 {
    if lambda > n || !(n - lambda).is_multiple_of(2) {
        return 0;
    }
    let k = ((n - lambda) / 2) as i64;
    binomial(n as u64, k) - binomial(n as u64, k - 1)
}

pub(crate) fn check_lambda(n: usize, lambda: usize) -> Result<()> {
    if lambda > n || !(n - lambda).is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "lambda = {} is not a valid number of propagating lines for n = {}",
            lambda, n
        )));
    }
    Ok(())
}

/// Half-diagram on `n` bottom points with `λ` propagating lines to the top.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLHalfDiagram {
    diagram: Diagram,
}

impl TLHalfDiagram {
    /// From a 1-based involution on the bottom points; fixed points are the
    /// propagating lines.
    pub fn from_involution(inv: &[usize]) -> Result<Self> {
        let n = inv.len();
        let mut pairs = Vec::new();
        let mut defects = 0;
        for (p, &q) in inv.iter().enumerate() {
            if q == 0 || q > n || inv[q - 1] != p + 1 {
                return Err(Error::InvalidArgument(format!(
                    "{:?} is not an involution",
                    inv
                )));
            }
            if q - 1 == p {
                pairs.push((Point::Bottom(p), Point::Top(defects), false));
                defects += 1;
            } else if q - 1 > p {
                pairs.push((Point::Bottom(p), Point::Bottom(q - 1), false));
            }
        }
        TLHalfDiagram::from_diagram(Diagram::from_pairs(n, defects, &pairs)?)
    }

    pub fn from_diagram(diagram: Diagram) -> Result<Self> {
        if diagram.has_marks() {
            return Err(Error::InvalidArgument(
                "Temperley-Lieb diagrams carry no marks".into(),
            ));
        }
        let h = TLHalfDiagram { diagram };
        if h.diagram.through_count() != h.diagram.top() {
            return Err(Error::InvalidArgument(
                "top points must be propagating lines".into(),
            ));
        }
        Ok(h)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn n(&self) -> usize {
        self.diagram.bottom()
    }

    pub fn lambda(&self) -> usize {
        self.diagram.top()
    }

    /// 1-based involution on the bottom points, propagating lines fixed.
    pub fn involution(&self) -> Vec<usize> {
        involution_of(&self.diagram)
    }

    /// Bottom positions (1-based) of the propagating lines.
    pub fn defects(&self) -> Vec<usize> {
        self.involution()
            .iter()
            .enumerate()
            .filter(|(p, &q)| q == p + 1)
            .map(|(p, _)| p + 1)
            .collect()
    }
}

impl fmt::Debug for TLHalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TLHalf{:?}", self.involution())
    }
}

pub(crate) fn involution_of(d: &Diagram) -> Vec<usize> {
    (0..d.bottom())
        .map(|p| match d.partner_of(Point::Bottom(p)) {
            Point::Bottom(q) => q + 1,
            Point::Top(_) => p + 1,
        })
        .collect()
}

/// Involutions (0-based, defects fixed) of all half-diagrams with `lambda`
/// propagating lines, none of them enclosed by an arc.
pub(crate) fn half_involutions(n: usize, lambda: usize) -> Vec<Vec<usize>> {
    fn rec(
        pos: usize,
        n: usize,
        lambda: usize,
        defects: usize,
        stack: &mut Vec<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let remaining = n - pos;
        if remaining < stack.len() + (lambda - defects) {
            return;
        }
        if pos == n {
            if stack.is_empty() && defects == lambda {
                out.push(cur.clone());
            }
            return;
        }
        if stack.is_empty() && defects < lambda {
            cur[pos] = pos;
            rec(pos + 1, n, lambda, defects + 1, stack, cur, out);
        }
        stack.push(pos);
        rec(pos + 1, n, lambda, defects, stack, cur, out);
        stack.pop();
        if let Some(open) = stack.pop() {
            cur[pos] = open;
            cur[open] = pos;
            rec(pos + 1, n, lambda, defects, stack, cur, out);
            stack.push(open);
        }
    }
    let mut out = Vec::new();
    if lambda <= n && (n - lambda).is_multiple_of(2) {
        rec(0, n, lambda, 0, &mut Vec::new(), &mut vec![0; n], &mut out);
    }
    out.sort();
    out
}

/// The basis of `Δ^TL_n(λ)` in canonical order (lexicographic involution).
pub fn enumerate_tl_half(n: usize, lambda: usize) -> Result<Vec<TLHalfDiagram>> {
    check_lambda(n, lambda)?;
    half_involutions(n, lambda)
        .into_iter()
        .map(|inv| {
            let one_based: Vec<usize> = inv.iter().map(|q| q + 1).collect();
            TLHalfDiagram::from_involution(&one_based)
        })
        .collect()
}

/// Vector of `Δ^TL_n(λ)` as a combination of half-diagrams.
pub type TLModuleVec = LinComb<Rational>;

/// `a·v` in `Δ^TL_n(λ)`: terms losing propagating lines vanish.
pub fn tl_act(a: &TLElement, v: &TLModuleVec, lambda: usize) -> Result<TLModuleVec> {
    let prod = a.mul(v)?;
    let mut out = TLModuleVec::zero();
    for (d, c) in prod.iter() {
        if d.through_count() == lambda {
            out.add_term(d.clone(), c.clone());
        }
    }
    Ok(out)
}

/// `⟨s, t⟩^TL`: stack the reflection of `s` under `t`; the value is the loop
/// factor if all `λ` propagating lines survive, zero otherwise.
pub fn gram_tl(s: &TLHalfDiagram, t: &TLHalfDiagram) -> Result<Rational> {
    if s.n() != t.n() || s.lambda() != t.lambda() {
        return Err(Error::InvalidArgument(
            "half-diagrams from different cell modules".into(),
        ));
    }
    let (d, data) = s.diagram.star().compose(&t.diagram)?;
    if d.through_count() == s.lambda() {
        Ok(<Rational as crate::diagram::Scalar>::loop_weight(&data))
    } else {
        Ok(Rational::zero())
    }
}

/// Bilinear extension of [`gram_tl`] to module vectors.
pub fn gram_tl_vec(u: &TLModuleVec, v: &TLModuleVec, lambda: usize) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (ds, cs) in u.iter() {
        for (dt, ct) in v.iter() {
            let (d, data) = ds.star().compose(dt)?;
            if d.through_count() == lambda {
                acc += cs * ct * <Rational as crate::diagram::Scalar>::loop_weight(&data);
            }
        }
    }
    Ok(acc)
}

/// Gram matrix of `Δ^TL_n(λ)` in canonical basis order.
pub fn gram_matrix_tl(n: usize, lambda: usize) -> Result<Vec<Vec<Rational>>> {
    let basis = enumerate_tl_half(n, lambda)?;
    basis
        .iter()
        .map(|s| basis.iter().map(|t| gram_tl(s, t)).collect())
        .collect()
}

/// A shortest word `𝕌_{i_1}⋯𝕌_{i_r}` for every diagram of `TL_n`, found by
/// breadth-first search from the identity. Loop factors are ignored.
pub fn reduced_words(n: usize) -> Result<BTreeMap<Diagram, Vec<usize>>> {
    let mut words = BTreeMap::new();
    let mut queue = VecDeque::new();
    words.insert(Diagram::identity(n), Vec::new());
    queue.push_back(Diagram::identity(n));
    while let Some(d) = queue.pop_front() {
        for i in 1..n {
            let (next, _) = d.compose(&Diagram::cup_cap(n, i))?;
            if !words.contains_key(&next) {
                let mut w = words[&d].clone();
                w.push(i);
                words.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    Ok(words)
}

/// `1`, or the word as `U1U2…`.
pub fn render_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|i| format!("U{}", i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_rational;
    use crate::poly::int;

    fn u(n: usize, i: usize) -> TLElement {
        tl_generator(n, i)
    }

    #[test]
    fn generator_relations() {
        let n = 4;
        assert_eq!(u(n, 2).mul(&u(n, 2)).unwrap(), u(n, 2).scale(&int(-2)));
        assert_eq!(
            u(n, 2).mul(&u(n, 3)).unwrap().mul(&u(n, 2)).unwrap(),
            u(n, 2)
        );
        assert_eq!(
            u(n, 2).mul(&u(n, 1)).unwrap().mul(&u(n, 2)).unwrap(),
            u(n, 2)
        );
        assert_eq!(
            u(n, 1).mul(&u(n, 3)).unwrap(),
            u(n, 3).mul(&u(n, 1)).unwrap()
        );
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_tl_diagrams(3).len(), 5);
        assert_eq!(tl_half_count(5, 1), 5);
        assert_eq!(tl_half_count(5, 3), 4);
        assert_eq!(tl_half_count(5, 5), 1);
        for n in 0..8 {
            for l in (n % 2..=n).step_by(2) {
                assert_eq!(
                    enumerate_tl_half(n, l).unwrap().len() as u64,
                    tl_half_count(n, l)
                );
            }
        }
        assert!(enumerate_tl_half(4, 1).is_err());
    }

    #[test]
    fn action_examples() {
        let h = enumerate_tl_half(2, 2).unwrap().remove(0);
        let v = TLModuleVec::basis(h.diagram().clone());
        assert_eq!(tl_act(&tl_identity(2), &v, 2).unwrap(), v);
        assert!(tl_act(&u(2, 1), &v, 2).unwrap().is_zero());
        let cup = enumerate_tl_half(2, 0).unwrap().remove(0);
        let w = TLModuleVec::basis(cup.diagram().clone());
        assert_eq!(tl_act(&u(2, 1), &w, 0).unwrap(), w.scale(&int(-2)));
    }

    #[test]
    fn gram_values() {
        let cup = enumerate_tl_half(2, 0).unwrap().remove(0);
        assert_eq!(gram_tl(&cup, &cup).unwrap(), int(-2));
        let id = enumerate_tl_half(3, 3).unwrap().remove(0);
        assert_eq!(gram_tl(&id, &id).unwrap(), int(1));
        for n in 0..=6 {
            for l in (n % 2..=n).step_by(2) {
                let g = gram_matrix_tl(n, l).unwrap();
                assert_ne!(det_rational(&g), int(0), "n={} l={}", n, l);
            }
        }
    }

    #[test]
    fn words() {
        for n in 1..=5 {
            let words = reduced_words(n).unwrap();
            assert_eq!(words.len() as u64, catalan(n as u64));
            for (d, w) in &words {
                let prod = w
                    .iter()
                    .fold(tl_identity(n), |acc, &i| acc.mul(&u(n, i)).unwrap());
                assert_eq!(
                    prod.iter().map(|(e, _)| e.clone()).collect::<Vec<_>>(),
                    vec![d.clone()]
                );
            }
        }
        assert_eq!(render_word(&[]), "1");
        assert_eq!(render_word(&[1, 2]), "U1U2");
    }

    #[test]
    fn involution_roundtrip() {
        let h = TLHalfDiagram::from_involution(&[2, 1, 3, 5, 4]).unwrap();
        assert_eq!(h.involution(), vec![2, 1, 3, 5, 4]);
        assert_eq!(h.defects(), vec![3]);
        // an arc over a defect is not a basis element
        assert!(TLHalfDiagram::from_involution(&[3, 2, 1]).is_err());
    }
}
