//! Multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Values are kept in a canonical form: no zero coefficients, no zero
//! exponents, terms ordered by [`Monomial`]'s graded order. Two equal
//! polynomials therefore have identical term maps, and `==` is structural.
//!
//! The text format is the numerator/denominator form returned by
//! [`LaurentPoly::laurent_split`], e.g. `(1+x1+x2)/(x1x2)`. The parser
//! accepts a slightly larger grammar (sums of such quotients, `*`, `^`,
//! parentheses) so that values like `1+2/x1` can be typed directly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("no exact Laurent quotient exists")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroInput,
    #[error("variable index must be at least 1")]
    BadVariable,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Index `i` of the indeterminate `x_i`; always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(u32);

impl VarIndex {
    pub fn new(index: u32) -> Result<Self, LaurentError> {
        if index == 0 {
            Err(LaurentError::BadVariable)
        } else {
            Ok(VarIndex(index))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// A Laurent monomial `x_{i1}^{e1} x_{i2}^{e2} ...` with nonzero integer
/// exponents, stored sorted by variable index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarIndex, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: VarIndex, exponent: i64) -> Self {
        if exponent == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index, exponent)])
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// combining repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarIndex, i64)>) -> Self {
        let mut acc: BTreeMap<VarIndex, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarIndex) -> i64 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(VarIndex, i64)] {
        &self.0
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    pub fn inverse(&self) -> Self {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((a, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inverse())
    }

    /// Drops every variable in `kill` (i.e. evaluates it at 1).
    fn without(&self, kill: &BTreeSet<VarIndex>) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| !kill.contains(v)).collect())
    }
}

/// Graded order: lower total degree first; within a degree, at the first
/// variable where the exponents differ the larger exponent comes first.
/// So `1 < x1 < x2 < x1^2 < x1x2 < x2^2`. Multiplicative, hence usable as a
/// term order for division.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            let a = self.0.get(i);
            let b = other.0.get(j);
            match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return 0.cmp(&ea),
                (None, Some(&(_, eb))) => return eb.cmp(&0),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                    // `self` has a nonzero exponent where `other` has 0
                    Ordering::Less => return 0.cmp(&ea),
                    Ordering::Greater => return eb.cmp(&0),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &(v, e) in &self.0 {
            if e == 1 {
                write!(f, "x{}", v.0)?;
            } else {
                write!(f, "x{}^{}", v.0, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `x_i`. Panics if `i == 0`.
    pub fn var(i: u32) -> Self {
        let v = VarIndex::new(i).expect("variable indices start at 1");
        LaurentPoly::term(Monomial::var(v, 1), 1)
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(m, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Returns the value if this is a constant (including 0).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn variables(&self) -> BTreeSet<VarIndex> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    /// Largest variable index that occurs, or 0 for constants.
    pub fn max_var(&self) -> u32 {
        self.variables().iter().next_back().map_or(0, |v| v.0)
    }

    /// Largest total degree among the terms (`None` for 0).
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum exponent over all terms, as a monomial
    /// (variables absent from a term count as exponent 0).
    fn min_monomial(&self) -> Monomial {
        let vars = self.variables();
        Monomial::from_pairs(vars.into_iter().map(|v| {
            let lo = self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0);
            (v, lo.min(0))
        }))
    }

    /// Same as `min_monomial` but allows positive shifts too: the largest
    /// monomial dividing every term.
    fn content_monomial(&self) -> Monomial {
        let vars = self.variables();
        Monomial::from_pairs(
            vars.into_iter()
                .map(|v| (v, self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0))),
        )
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Both sides are shifted to polynomials without monomial factors; the
    /// polynomial quotient is computed by leading-term division and must
    /// leave no remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let shift_a = self.content_monomial();
        let shift_b = divisor.content_monomial();
        let a = self.mul_monomial(&shift_a.inverse());
        let b = divisor.mul_monomial(&shift_b.inverse());

        let (lead_b, lead_cb) = b.terms.iter().next_back().expect("nonzero");
        let mut rem = a;
        let mut quot = LaurentPoly::zero();
        while let Some((lead_r, lead_cr)) = rem.terms.iter().next_back() {
            let m = lead_r.div(lead_b);
            if !m.0.iter().all(|&(_, e)| e > 0) {
                return Err(LaurentError::NotDivisible);
            }
            if !(lead_cr % lead_cb).is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let c = lead_cr / lead_cb;
            for (bm, bc) in &b.terms {
                rem.add_term(m.mul(bm), -(&c * bc));
            }
            quot.add_term(m, c);
        }
        Ok(quot.mul_monomial(&shift_a.div(&shift_b)))
    }

    /// Evaluates every variable in `kill` at 1.
    pub fn substitute_ones(&self, kill: &BTreeSet<VarIndex>) -> LaurentPoly {
        if kill.is_empty() {
            return self.clone();
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.without(kill), c.clone());
        }
        out
    }

    /// Splits into `numerator / denominator` where the numerator is an
    /// ordinary polynomial and the denominator monomial is minimal.
    pub fn laurent_split(&self) -> Result<(LaurentPoly, Monomial), LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroInput);
        }
        let shift = self.min_monomial();
        let denominator = shift.inverse();
        Ok((self.mul_monomial(&denominator), denominator))
    }

    /// Whether every numerator coefficient is positive.
    pub fn has_positive_numerator(&self) -> Result<bool, LaurentError> {
        let (num, _) = self.laurent_split()?;
        Ok(num.terms.values().all(|c| c.is_positive()))
    }

    /// Canonical ordering used for printing sets of variables: by
    /// denominator monomial, then by numerator terms.
    pub fn canonical_cmp(&self, other: &LaurentPoly) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (na, da) = self.laurent_split().expect("nonzero");
        let (nb, db) = other.laurent_split().expect("nonzero");
        da.cmp(&db).then_with(|| na.terms.iter().cmp(nb.terms.iter()))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| &a * &b)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    for (k, (m, c)) in p.terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if neg {
            write!(f, "-")?;
        } else if k > 0 {
            write!(f, "+")?;
        }
        if m.is_one() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write!(f, "{m}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (num, den) = self.laurent_split().expect("nonzero");
        if den.is_one() {
            return write_terms(f, &num);
        }
        if num.num_terms() == 1 {
            write_terms(f, &num)?;
        } else {
            write!(f, "(")?;
            write_terms(f, &num)?;
            write!(f, ")")?;
        }
        if den.0.len() > 1 {
            write!(f, "/({den})")
        } else {
            write!(f, "/{den}")
        }
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse::<BigInt>().map_err(|_| self.err("bad number"))
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_power(&mut self) -> bool {
        matches!(self.peek(), Some(b'x' | b'(' | b'0'..=b'9'))
    }

    fn product(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.power()?;
        loop {
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.power()?;
            } else if self.starts_power() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let num = self.product()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.product()?;
            num.div_exact(&den).map_err(|e| match e {
                LaurentError::NotDivisible => self.err("quotient is not a Laurent polynomial"),
                other => other,
            })
        } else {
            Ok(num)
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: u32 = self
            .number()?
            .try_into()
            .map_err(|_| self.err("exponent too large"))?;
        if !neg {
            return Ok(base.pow(e));
        }
        // negative powers only make sense for unit monomials
        let (m, c) = match base.terms.iter().next() {
            Some((m, c)) if base.num_terms() == 1 && c.abs().is_one() => (m.clone(), c.clone()),
            _ => return Err(self.err("negative exponent on a non-monomial")),
        };
        let inv = LaurentPoly::term(m.inverse(), c);
        Ok(inv.pow(e))
    }

    fn atom(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.err("expected a variable index after 'x'"));
                }
                let idx: u32 = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| self.err("variable index too large"))?;
                let v = VarIndex::new(idx).map_err(|_| self.err("variable index must be >= 1"))?;
                Ok(LaurentPoly::term(Monomial::var(v, 1), 1))
            }
            Some(b'0'..=b'9') => Ok(LaurentPoly::constant(self.number()?)),
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}
