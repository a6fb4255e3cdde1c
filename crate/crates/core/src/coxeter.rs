//! The infinite dihedral group `W = ⟨s, t⟩`, its positive roots and its action
//! on `ℚ[x, y]`.
//!
//! Every element has a unique reduced word, which alternates between `s` and
//! `t`. The simple roots are `x = α_s` and `y = α_t`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::BivarPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S,
    T,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::S => Gen::T,
            Gen::T => Gen::S,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::S => 's',
            Gen::T => 't',
        }
    }

    /// The simple root of this generator.
    pub fn simple_root(self) -> BivarPoly {
        match self {
            Gen::S => BivarPoly::x(),
            Gen::T => BivarPoly::y(),
        }
    }

    /// Generator action on `R`: `s: x ↦ −x, y ↦ y+2x`, `t: x ↦ x+2y, y ↦ −y`.
    pub fn act(self, p: &BivarPoly) -> BivarPoly {
        match self {
            Gen::S => p.substitute(&BivarPoly::linear(-1, 0), &BivarPoly::linear(2, 1)),
            Gen::T => p.substitute(&BivarPoly::linear(1, 2), &BivarPoly::linear(0, -1)),
        }
    }
}

/// Reduced (alternating) word in `{s, t}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterWord {
    letters: Vec<Gen>,
}

impl CoxeterWord {
    pub fn identity() -> Self {
        CoxeterWord::default()
    }

    pub fn generator(g: Gen) -> Self {
        CoxeterWord { letters: vec![g] }
    }

    /// The alternating word of length `len` beginning with `first`.
    pub fn alternating(first: Gen, len: usize) -> Self {
        let mut letters = Vec::with_capacity(len);
        let mut g = first;
        for _ in 0..len {
            letters.push(g);
            g = g.other();
        }
        CoxeterWord { letters }
    }

    pub fn from_letters(letters: Vec<Gen>) -> Result<Self> {
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "word is not reduced: equal adjacent letters".into(),
            ));
        }
        Ok(CoxeterWord { letters })
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn first(&self) -> Option<Gen> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Gen> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> Self {
        CoxeterWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Exchange `s` and `t`.
    pub fn swap_colors(&self) -> Self {
        CoxeterWord {
            letters: self.letters.iter().map(|g| g.other()).collect(),
        }
    }

    /// Action on `R`; the rightmost letter acts first.
    pub fn act(&self, p: &BivarPoly) -> BivarPoly {
        self.letters
            .iter()
            .rev()
            .fold(p.clone(), |acc, g| g.act(&acc))
    }
}

/// Reduced product `u·v`.
pub fn word_mul(u: &CoxeterWord, v: &CoxeterWord) -> CoxeterWord {
    let mut left = u.letters.clone();
    let mut right = v.letters.iter().copied().peekable();
    while let (Some(&a), Some(&b)) = (left.last(), right.peek()) {
        if a != b {
            break;
        }
        left.pop();
        right.next();
    }
    left.extend(right);
    CoxeterWord { letters: left }
}

/// Bruhat order: `u ≤ v` iff `ℓ(u) < ℓ(v)` or `u = v`.
pub fn bruhat_leq(u: &CoxeterWord, v: &CoxeterWord) -> bool {
    u.len() < v.len() || u == v
}

pub fn bruhat_lt(u: &CoxeterWord, v: &CoxeterWord) -> bool {
    u.len() < v.len()
}

/// Subword criterion: `u ≤ v` iff some subexpression of `v` reduces to `u`.
/// Exponential; used as a reference.
pub fn bruhat_subword_oracle(u: &CoxeterWord, v: &CoxeterWord) -> bool {
    let n = v.len();
    (0u64..(1u64 << n)).any(|mask| {
        let mut acc = CoxeterWord::identity();
        for (i, g) in v.letters.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = word_mul(&acc, &CoxeterWord::generator(*g));
            }
        }
        acc == *u
    })
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for g in &self.letters {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}

impl FromStr for CoxeterWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "1" {
            return Ok(CoxeterWord::identity());
        }
        let letters = s
            .chars()
            .map(|c| match c {
                's' | 'S' => Ok(Gen::S),
                't' | 'T' => Ok(Gen::T),
                _ => Err(Error::Parse(format!(
                    "word {:?}: unexpected letter {:?}",
                    s, c
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        CoxeterWord::from_letters(letters)
    }
}

impl Serialize for CoxeterWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoxeterWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every element of `W` of length at most `max_len`, by length.
pub fn all_words(max_len: usize) -> Vec<CoxeterWord> {
    let mut out = vec![CoxeterWord::identity()];
    for len in 1..=max_len {
        out.push(CoxeterWord::alternating(Gen::S, len));
        out.push(CoxeterWord::alternating(Gen::T, len));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootFamily {
    X,
    Y,
}

/// Positive root `α_{x,i} = ix+(i−1)y` or `α_{y,i} = iy+(i−1)x`, `i ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveRoot {
    pub family: RootFamily,
    pub index: u32,
}

impl PositiveRoot {
    pub fn x(index: u32) -> Self {
        PositiveRoot {
            family: RootFamily::X,
            index,
        }
    }

    pub fn y(index: u32) -> Self {
        PositiveRoot {
            family: RootFamily::Y,
            index,
        }
    }

    pub fn to_poly(self) -> BivarPoly {
        let i = self.index as i64;
        match self.family {
            RootFamily::X => BivarPoly::linear(i, i - 1),
            RootFamily::Y => BivarPoly::linear(i - 1, i),
        }
    }

    pub fn swap_colors(self) -> Self {
        PositiveRoot {
            family: match self.family {
                RootFamily::X => RootFamily::Y,
                RootFamily::Y => RootFamily::X,
            },
            index: self.index,
        }
    }

    /// The reflection `s_α`: the odd-length alternating word of length
    /// `2i−1` starting with `s` (family X) or `t` (family Y).
    pub fn reflection(self) -> CoxeterWord {
        let first = match self.family {
            RootFamily::X => Gen::S,
            RootFamily::Y => Gen::T,
        };
        CoxeterWord::alternating(first, 2 * self.index as usize - 1)
    }

    /// All positive roots with index at most `bound`.
    pub fn all_up_to(bound: u32) -> Vec<PositiveRoot> {
        (1..=bound)
            .flat_map(|i| [PositiveRoot::x(i), PositiveRoot::y(i)])
            .collect()
    }
}

pub fn reflection(r: PositiveRoot) -> CoxeterWord {
    r.reflection()
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            RootFamily::X => 'x',
            RootFamily::Y => 'y',
        };
        write!(f, "a_{}[{}]", fam, self.index)
    }
}

impl FromStr for PositiveRoot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("root {:?}: expected a_x[i] or a_y[i]", s));
        let s = s.trim();
        let rest = s.strip_prefix("a_").ok_or_else(err)?;
        let (fam, rest) = rest.split_at(rest.find('[').ok_or_else(err)?);
        let family = match fam {
            "x" => RootFamily::X,
            "y" => RootFamily::Y,
            _ => return Err(err()),
        };
        let idx = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let index: u32 = idx.parse().map_err(|_| err())?;
        if index == 0 {
            return Err(err());
        }
        Ok(PositiveRoot { family, index })
    }
}

/// Demazure operator `∂_g(f) = (f − g·f)/α_g`.
pub fn demazure(g: Gen, p: &BivarPoly) -> BivarPoly {
    let diff = p - &g.act(p);
    diff.divexact(&g.simple_root())
        .expect("simple root is nonzero")
        .expect("f - g.f is divisible by the simple root of g")
}

/// `ψ: Λ_w → Λ_{n−1}` for `w` beginning with `color`: `ℓ(v)−1` if `v` begins
/// with `color`, `−ℓ(v)` otherwise.
pub fn psi_colored(v: &CoxeterWord, color: Gen) -> Result<i64> {
    match v.first() {
        None => Err(Error::InvalidArgument(
            "psi is undefined on the identity".into(),
        )),
        Some(g) if g == color => Ok(v.len() as i64 - 1),
        Some(_) => Ok(-(v.len() as i64)),
    }
}

pub fn psi(v: &CoxeterWord) -> Result<i64> {
    psi_colored(v, Gen::S)
}

/// Inverse of [`psi_colored`] on `Λ_{n−1}`.
pub fn phi_colored(lambda: i64, n: usize, color: Gen) -> Result<CoxeterWord> {
    let m = n as i64 - 1;
    if n == 0 || lambda.abs() > m || (m - lambda.abs()) % 2 != 0 || (lambda < 0 && m == 0) {
        return Err(Error::InvalidArgument(format!(
            "lambda = {} is not in Lambda_{}",
            lambda, m
        )));
    }
    if lambda >= 0 {
        Ok(CoxeterWord::alternating(color, lambda as usize + 1))
    } else {
        Ok(CoxeterWord::alternating(
            color.other(),
            lambda.unsigned_abs() as usize,
        ))
    }
}

pub fn phi(lambda: i64, n: usize) -> Result<CoxeterWord> {
    phi_colored(lambda, n, Gen::S)
}

/// Total order on `Λ_{±n}`: by `|λ|`, with `−|λ|` below `|λ|`.
pub fn cell_order_key(lambda: i64) -> (u64, bool) {
    (lambda.unsigned_abs(), lambda >= 0)
}

/// The suffixes of `w`, longest first.
pub fn tails(w: &CoxeterWord) -> Vec<CoxeterWord> {
    (0..w.len())
        .map(|start| CoxeterWord {
            letters: w.letters[start..].to_vec(),
        })
        .collect()
}

/// Each tail with its last letter removed; ends with the identity.
pub fn tails_complement(w: &CoxeterWord) -> Vec<CoxeterWord> {
    tails(w)
        .into_iter()
        .map(|mut v| {
            v.letters.pop();
            v
        })
        .collect()
}

/// Roots `α` with index `≤ bound` such that `v < s_α v ≤ w`.
pub fn reflections_between(v: &CoxeterWord, w: &CoxeterWord, bound: u32) -> BTreeSet<PositiveRoot> {
    PositiveRoot::all_up_to(bound)
        .into_iter()
        .filter(|r| {
            let sv = word_mul(&r.reflection(), v);
            bruhat_lt(v, &sv) && bruhat_leq(&sv, w)
        })
        .collect()
}

/// The reflections between `φ(λ)` and `w` for `ℓ(w) = n`, `w` beginning with
/// `s`, with `k = (n−1−|λ|)/2`.
pub fn closed_form_reflections(lambda: i64, n: usize) -> Result<BTreeSet<PositiveRoot>> {
    let m = n as i64 - 1;
    if n == 0 || lambda.abs() > m || (m - lambda.abs()) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "lambda = {} and n = {} are incompatible",
            lambda, n
        )));
    }
    let k = ((m - lambda.abs()) / 2) as u32;
    let mut out = BTreeSet::new();
    if lambda >= 0 {
        let l = lambda as u32;
        out.extend((l + 2..=l + k + 1).map(PositiveRoot::x));
        out.extend((1..=k).map(PositiveRoot::y));
    } else {
        let l = lambda.unsigned_abs() as u32;
        out.extend((1..=k + 1).map(PositiveRoot::x));
        out.extend((1 + l..=k + l).map(PositiveRoot::y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CoxeterWord {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication() {
        assert_eq!(word_mul(&w("st"), &w("ts")), CoxeterWord::identity());
        assert_eq!(word_mul(&w("s"), &w("t")), w("st"));
        assert_eq!(word_mul(&w("sts"), &w("sts")), CoxeterWord::identity());
        assert_eq!(word_mul(&w("sts"), &w("st")), w("s"));
    }

    #[test]
    fn parsing() {
        assert!("sst".parse::<CoxeterWord>().is_err());
        assert!("sx".parse::<CoxeterWord>().is_err());
        assert_eq!(w("e").to_string(), "e");
        assert_eq!(w("stst").to_string(), "stst");
        assert_eq!(
            "a_y[3]".parse::<PositiveRoot>().unwrap(),
            PositiveRoot::y(3)
        );
        assert_eq!(PositiveRoot::x(12).to_string(), "a_x[12]");
        assert!("a_x[0]".parse::<PositiveRoot>().is_err());
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_leq(&w("s"), &w("ts")));
        assert!(bruhat_subword_oracle(&w("s"), &w("ts")));
        assert!(!bruhat_leq(&w("s"), &w("t")));
        assert!(!bruhat_subword_oracle(&w("s"), &w("t")));
        assert!(bruhat_subword_oracle(&w("ts"), &w("stst")));
        assert!(!bruhat_subword_oracle(&w("sts"), &w("tst")));
        for v in all_words(4) {
            assert!(bruhat_leq(&CoxeterWord::identity(), &v));
            assert!(bruhat_subword_oracle(&v, &v));
        }
    }

    #[test]
    fn generator_action() {
        assert_eq!(Gen::S.act(&BivarPoly::x()), -BivarPoly::x());
        assert_eq!(Gen::S.act(&BivarPoly::y()), BivarPoly::linear(2, 1));
        assert_eq!(Gen::T.act(&BivarPoly::y()), -BivarPoly::y());
    }

    #[test]
    fn reflections_negate_their_roots() {
        assert_eq!(PositiveRoot::x(1).reflection(), w("s"));
        assert_eq!(PositiveRoot::y(1).reflection(), w("t"));
        // brute-force search for the involution negating 2x+y
        let target = BivarPoly::linear(2, 1);
        let found: Vec<_> = all_words(5)
            .into_iter()
            .filter(|q| q.act(&target) == -&target && word_mul(q, q).is_identity())
            .collect();
        assert_eq!(found, vec![PositiveRoot::x(2).reflection()]);
    }

    #[test]
    fn demazure_values() {
        assert_eq!(demazure(Gen::S, &BivarPoly::x()), BivarPoly::from_int(2));
        assert_eq!(demazure(Gen::S, &BivarPoly::y()), BivarPoly::from_int(-2));
        assert_eq!(demazure(Gen::T, &BivarPoly::y()), BivarPoly::from_int(2));
        assert_eq!(demazure(Gen::T, &BivarPoly::x()), BivarPoly::from_int(-2));
        assert!(demazure(Gen::S, &BivarPoly::one()).is_zero());
    }

    #[test]
    fn psi_on_seven_tails() {
        let w7 = w("stststs");
        let ps: Vec<i64> = tails(&w7).iter().map(|v| psi(v).unwrap()).collect();
        assert_eq!(ps, vec![6, -6, 4, -4, 2, -2, 0]);
        for (lam, v) in ps.iter().zip(tails(&w7)) {
            assert_eq!(phi(*lam, 7).unwrap(), v);
        }
        assert_eq!(psi(&w("s")).unwrap(), 0);
        assert_eq!(psi(&w("ts")).unwrap(), -2);
        assert!(psi(&CoxeterWord::identity()).is_err());
    }

    #[test]
    fn tails_and_complement() {
        assert_eq!(tails(&w("s")), vec![w("s")]);
        let comp = tails_complement(&w("stststs"));
        assert_eq!(comp.first(), Some(&w("ststst")));
        assert_eq!(comp.last(), Some(&CoxeterWord::identity()));
        let mut all: Vec<_> = tails(&w("stststs")).into_iter().chain(comp).collect();
        all.sort();
        let mut below: Vec<_> = all_words(7)
            .into_iter()
            .filter(|v| bruhat_leq(v, &w("stststs")))
            .collect();
        below.sort();
        assert_eq!(all, below);
    }

    #[test]
    fn lemma_sets_small() {
        let w3 = w("sts");
        let set = reflections_between(&w("s"), &w3, 3);
        let words: BTreeSet<_> = set.iter().map(|r| r.reflection().to_string()).collect();
        assert_eq!(
            words,
            ["sts".to_string(), "t".to_string()].into_iter().collect()
        );
        assert_eq!(set, closed_form_reflections(0, 3).unwrap());
        assert!(reflections_between(&w3, &w3, 3).is_empty());
        assert!(closed_form_reflections(1, 3).is_err());
    }
}
