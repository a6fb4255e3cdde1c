//! Exact polynomial arithmetic.
//!
//! [`BivarPoly`] is a sparse polynomial in `x` and `y` over the rationals, graded
//! by `deg x = deg y = 2`. [`LaurentPoly`] is an integer Laurent polynomial in
//! `q`, used for graded dimensions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x^x * y^y`.
///
/// Ordered graded-lexicographically with `x > y`, so the largest monomial of a
/// polynomial is its leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn total_degree(self) -> u32 {
        self.x + self.y
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.x + rhs.x, self.y + rhs.y)
    }
}

/// Polynomial in `ℚ[x, y]`. The zero polynomial has no terms and no stored
/// coefficient is ever zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BivarPoly::monomial(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        BivarPoly::constant(int(c))
    }

    pub fn x() -> Self {
        BivarPoly::monomial(Rational::one(), Monomial::new(1, 0))
    }

    pub fn y() -> Self {
        BivarPoly::monomial(Rational::one(), Monomial::new(0, 1))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BivarPoly { terms }
    }

    /// `a*x + b*y` with integer coefficients.
    pub fn linear(a: i64, b: i64) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(Monomial::new(1, 0), int(a));
        p.add_term(Monomial::new(0, 1), int(b));
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = BivarPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Highest `a + b` over the stored terms.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.total_degree())
    }

    /// Degree in the grading `deg x = deg y = 2`, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.total_degree());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(2 * first)
        } else {
            None
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k * m, v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BivarPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => BivarPoly::zero(),
        }
    }

    /// Ring homomorphism `ℚ[x,y] → ℚ[x,y]` given by the images of `x` and `y`.
    pub fn substitute(&self, img_x: &BivarPoly, img_y: &BivarPoly) -> Self {
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let px = powers(img_x, max_x);
        let py = powers(img_y, max_y);
        let mut out = BivarPoly::zero();
        for (m, c) in &self.terms {
            let t = (&px[m.x as usize] * &py[m.y as usize]).scale(c);
            out += &t;
        }
        out
    }

    pub fn swap_xy(&self) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.y, m.x), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rat(x, m.x) * pow_rat(y, m.y);
        }
        acc
    }

    /// Exact quotient `p / d` when `d` divides `p` in `ℚ[x,y]`, `None` otherwise.
    pub fn divexact(&self, d: &BivarPoly) -> Result<Option<BivarPoly>> {
        let (dm, dc) = match d.leading() {
            Some((m, c)) => (m, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Ok(None);
            }
            let qm = Monomial::new(rm.x - dm.x, rm.y - dm.y);
            let qc = rc / &dc;
            rem -= &d.mul_monomial(qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    pub fn divides(&self, p: &BivarPoly) -> bool {
        matches!(p.divexact(self), Ok(Some(_)))
    }

    /// Lowest power of `x` among the terms of a polynomial in `x` alone.
    pub fn x_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x + m.y).min()
    }

    /// Serialization form: `[a, b, numerator, denominator]` per term.
    pub fn to_term_list(&self) -> Vec<(u32, u32, BigInt, BigInt)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.x, m.y, c.numer().clone(), c.denom().clone()))
            .collect()
    }
}

fn powers(p: &BivarPoly, max: u32) -> Vec<BivarPoly> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(BivarPoly::one());
    for i in 0..max as usize {
        let next = &out[i] * p;
        out.push(next);
    }
    out
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({})", self)
    }
}

impl<'a> AddAssign<&'a BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &'a BivarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a BivarPoly> for BivarPoly {
    fn sub_assign(&mut self, rhs: &'a BivarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &'a BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &'a BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(mut self, rhs: BivarPoly) -> BivarPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &'a BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        out
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational, bare_one: bool) -> fmt::Result {
    if c.is_integer() {
        if !(bare_one && c.is_one()) {
            write!(f, "{}", c.numer())?;
        }
        Ok(())
    } else {
        write!(f, "({}/{})", c.numer(), c.denom())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: Monomial) -> fmt::Result {
    for (var, e) in [('x', m.x), ('y', m.y)] {
        match e {
            0 => {}
            1 => write!(f, "{}", var)?,
            _ => write!(f, "{}^{}", var, e)?,
        }
    }
    Ok(())
}

/// Renders terms from the leading term down, e.g. `x^2-2xy`, `3x+2y`,
/// `xy+(2/3)y^2`.
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let is_const = *m == Monomial::ONE;
            write_coeff(f, &abs, !is_const)?;
            write_monomial(f, *m)?;
        }
        Ok(())
    }
}

impl FromStr for BivarPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("polynomial {:?}: {}", s, msg));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty"));
        }
        let mut out = BivarPoly::zero();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected sign between terms"));
            }
            // coefficient
            let mut coeff: Option<Rational> = None;
            if i < chars.len() && chars[i] == '(' {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| err("unclosed parenthesis"))?;
                let inner: String = chars[i + 1..i + close].iter().collect();
                coeff = Some(parse_rational(&inner).ok_or_else(|| err("bad coefficient"))?);
                i += close + 1;
            } else {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                if i > start {
                    let txt: String = chars[start..i].iter().collect();
                    coeff = Some(parse_rational(&txt).ok_or_else(|| err("bad coefficient"))?);
                }
            }
            let mut mono = Monomial::ONE;
            let mut saw_var = false;
            while i < chars.len() && (chars[i] == 'x' || chars[i] == 'y') {
                let var = chars[i];
                i += 1;
                let mut e = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let txt: String = chars[start..i].iter().collect();
                    e = txt.parse().map_err(|_| err("bad exponent"))?;
                }
                if var == 'x' {
                    mono.x += e;
                } else {
                    mono.y += e;
                }
                saw_var = true;
            }
            if coeff.is_none() && !saw_var {
                return Err(err("empty term"));
            }
            let c = coeff.unwrap_or_else(Rational::one) * int(sign);
            out.add_term(mono, c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn json_to_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (a, b, n, d) in self.to_term_list() {
            let entry = serde_json::json!([a, b, bigint_to_json(&n), bigint_to_json(&d)]);
            seq.serialize_element(&entry)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<Vec<serde_json::Value>> = Vec::deserialize(deserializer)?;
        let mut out = BivarPoly::zero();
        for t in raw {
            if t.len() != 4 {
                return Err(de::Error::custom(
                    "term must be [a, b, numerator, denominator]",
                ));
            }
            let a = t[0]
                .as_u64()
                .ok_or_else(|| de::Error::custom("bad x exponent"))?;
            let b = t[1]
                .as_u64()
                .ok_or_else(|| de::Error::custom("bad y exponent"))?;
            let n = json_to_bigint(&t[2]).ok_or_else(|| de::Error::custom("bad numerator"))?;
            let d = json_to_bigint(&t[3]).ok_or_else(|| de::Error::custom("bad denominator"))?;
            if d.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            out.add_term(Monomial::new(a as u32, b as u32), Rational::new(n, d));
        }
        Ok(out)
    }
}

/// Integer Laurent polynomial in `q`; no stored coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c * q^e`
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    /// Multiplication by `q^k`, i.e. the grading shift `[k]`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Coefficient-wise `self ≤ other`.
    pub fn le_coefficientwise(&self, other: &LaurentPoly) -> bool {
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.into_iter().all(|e| self.coeff(e) <= other.coeff(e))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, *c);
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

/// Ascending powers: `5q + 4q^3 + q^5`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{}", abs)?;
                continue;
            }
            if abs != 1 {
                write!(f, "{}", abs)?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", e)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("Laurent polynomial {:?}", s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if !first {
                return Err(err());
            }
            first = false;
            let end = rest[1..]
                .find(['+', '-'])
                .map(|p| p + 1)
                .unwrap_or(rest.len());
            // a '-' directly after '^' is an exponent sign, not a separator
            let mut end = end;
            while end < rest.len() && rest.as_bytes()[end - 1] == b'^' {
                end = rest[end + 1..]
                    .find(['+', '-'])
                    .map(|p| p + end + 1)
                    .unwrap_or(rest.len());
            }
            let term = &rest[..end];
            rest = &rest[end..];
            let (coef, exp) = match term.find('q') {
                None => (term.parse::<i64>().map_err(|_| err())?, 0),
                Some(p) => {
                    let c = if p == 0 {
                        1
                    } else {
                        term[..p].parse::<i64>().map_err(|_| err())?
                    };
                    let tail = &term[p + 1..];
                    let e = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<i64>()
                            .map_err(|_| err())?
                    };
                    (c, e)
                }
            };
            out.add_term(exp, sign * coef);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Dense univariate polynomial over `ℚ`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `c * t^e`
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = c;
        UniPoly::from_coeffs(v)
    }

    /// Image of `p(x, y)` under `x ↦ t, y ↦ t`.
    pub fn from_diagonal(p: &BivarPoly) -> Self {
        let mut v: Vec<Rational> = Vec::new();
        for (m, c) in p.terms() {
            let e = m.total_degree() as usize;
            if v.len() <= e {
                v.resize(e + 1, Rational::zero());
            }
            v[e] += c;
        }
        UniPoly::from_coeffs(v)
    }

    /// Image of `p(x, y)` under `x ↦ t, y ↦ 1`.
    pub fn dehomogenize(p: &BivarPoly) -> Self {
        let mut v: Vec<Rational> = Vec::new();
        for (m, c) in p.terms() {
            let e = m.x as usize;
            if v.len() <= e {
                v.resize(e + 1, Rational::zero());
            }
            v[e] += c;
        }
        UniPoly::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `t = 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => UniPoly::zero(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        UniPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `None` for a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let dd = d.degree()?;
        let lead = d.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            if !c.is_zero() {
                let shift = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] -= &c * dc;
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Some((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = BivarPoly::linear(1, 1);
        let b = BivarPoly::linear(1, -1);
        assert_eq!(&a * &b, p("x^2-y^2"));
    }

    #[test]
    fn additive_identity() {
        let a = p("3x+2y");
        assert_eq!(&a + &BivarPoly::zero(), a);
    }

    #[test]
    fn distributive_expansion() {
        // (2x+y)y = 2xy + y^2
        let lhs = &BivarPoly::linear(2, 1) * &BivarPoly::y();
        let mut rhs = BivarPoly::zero();
        rhs.add_term(Monomial::new(1, 1), int(2));
        rhs.add_term(Monomial::new(0, 2), int(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitutions() {
        let f = BivarPoly::linear(2, 1);
        let r = f.substitute(&BivarPoly::from_int(1), &BivarPoly::from_int(-2));
        assert!(r.is_zero());

        for i in 1..6 {
            let f = BivarPoly::linear(i, i - 1);
            let r = f.substitute(&BivarPoly::x(), &BivarPoly::x());
            assert_eq!(r, BivarPoly::linear(2 * i - 1, 0));
        }

        let q = p("x^2y+3xy-7");
        let r = q.substitute(&BivarPoly::zero(), &BivarPoly::zero());
        assert_eq!(r, BivarPoly::from_int(-7));
    }

    #[test]
    fn exact_division() {
        let d = BivarPoly::linear(2, 1);
        let prod = &d * &BivarPoly::y();
        assert_eq!(prod.divexact(&d).unwrap(), Some(BivarPoly::y()));
        assert_eq!(BivarPoly::x().divexact(&BivarPoly::y()).unwrap(), None);
        assert_eq!(p("x^2-y^2").divexact(&p("x+y")).unwrap(), Some(p("x-y")));
        assert!(matches!(
            p("x").divexact(&BivarPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!(p("3x+2y").to_string(), "3x+2y");
        assert_eq!(p("x^2-2xy").to_string(), "x^2-2xy");
        assert_eq!(BivarPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        let half = BivarPoly::monomial(rat(1, 2), Monomial::new(0, 2));
        assert_eq!(
            (&BivarPoly::x() * &BivarPoly::y() + half).to_string(),
            "xy+(1/2)y^2"
        );
        assert_eq!(p("xy+(1/2)y^2").monic().to_string(), "xy+(1/2)y^2");
        assert_eq!(p("3xy+2y^2").monic(), p("xy+(2/3)y^2"));
    }

    #[test]
    fn json_terms() {
        let a = p("xy+(1/2)y^2-3");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[0,0,-3,1],[0,2,1,2],[1,1,1,1]]");
        let back: BivarPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x^2+xy").homogeneous_degree(), Some(4));
        assert_eq!(p("x^2+y").homogeneous_degree(), None);
        assert_eq!(BivarPoly::one().homogeneous_degree(), Some(0));
    }

    #[test]
    fn laurent_rendering_roundtrip() {
        let mut l = LaurentPoly::zero();
        l.add_term(1, 5);
        l.add_term(3, 4);
        l.add_term(5, 1);
        assert_eq!(l.to_string(), "5q + 4q^3 + q^5");
        assert_eq!(l.to_string().parse::<LaurentPoly>().unwrap(), l);
        let mut m = LaurentPoly::monomial(-2, -3);
        m.add_term(0, 1);
        assert_eq!(m.to_string(), "-2q^-3 + 1");
        assert_eq!(m.to_string().parse::<LaurentPoly>().unwrap(), m);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn univariate_division() {
        // t^3 - 1 = (t - 1)(t^2 + t + 1)
        let a = UniPoly::from_coeffs(vec![int(-1), int(0), int(0), int(1)]);
        let b = UniPoly::from_coeffs(vec![int(-1), int(1)]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_coeffs(vec![int(1), int(1), int(1)]));
    }
}
