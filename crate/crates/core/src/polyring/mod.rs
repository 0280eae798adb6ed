//! Sparse multivariate polynomials over the rationals.
//!
//! The ring has generators `x0, x1, ...` (created on demand) plus one
//! distinguished variable `x`, the argument of the Fibonacci and Lucas
//! polynomials. Polynomials are kept in canonical form: no zero
//! coefficients, no zero exponents, so `==` is mathematical equality.

mod json;
mod matrix;

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, Rational};

pub use json::PolyJson;
pub use matrix::{PolyMatrix, MAX_DET_SIZE};

/// A ring variable. Generators order by index; `x` sorts after every generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Gen(u32),
    X,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Gen(i) => write!(f, "x{i}"),
            Var::X => f.write_str("x"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "x" {
            return Ok(Var::X);
        }
        s.strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .filter(|d| d.len() == 1 || !d.starts_with('0'))
            .and_then(|d| d.parse().ok())
            .map(Var::Gen)
            .ok_or_else(|| Error::Json(format!("unknown variable name {s:?}")))
    }
}

/// Power product of variables, stored sparsely and sorted by variable.
///
/// The `Ord` impl is the canonical term order: higher total degree first,
/// ties broken lexicographically with `x0 > x1 > ... > x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Self { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs; repeated variables add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Self {
            exps: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ea) = self.exps[i];
            let (b, eb) = other.exps[j];
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
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Self { exps: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let mut e = e;
            if j < other.exps.len() && other.exps[j].0 == v {
                let d = other.exps[j].1;
                if d > e {
                    return None;
                }
                e -= d;
                j += 1;
            } else if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if e > 0 {
                out.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Self { exps: out })
    }

    /// Lowers the exponent of `v` by one; `None` if `v` does not occur.
    fn without_one(&self, v: Var) -> Option<(u32, Self)> {
        let i = self.exps.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.exps[i].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(i);
        } else {
            exps[i].1 -= 1;
        }
        Some((e, Self { exps }))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| lex_descending(&self.exps, &other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Less means "comes first": the earliest differing variable has the larger exponent.
fn lex_descending(a: &[(Var, u32)], b: &[(Var, u32)]) -> Ordering {
    for (&(va, ea), &(vb, eb)) in a.iter().zip(b) {
        match va.cmp(&vb) {
            Ordering::Less => return Ordering::Less,
            Ordering::Greater => return Ordering::Greater,
            Ordering::Equal => match eb.cmp(&ea) {
                Ordering::Equal => {}
                ord => return ord,
            },
        }
    }
    b.len().cmp(&a.len())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Images of variables under a substitution. `x` maps to itself unless listed.
pub type Substitution = BTreeMap<Var, Poly>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    /// The generator `x_i`.
    pub fn gen(i: u32) -> Self {
        Self::var(Var::Gen(i))
    }

    /// The distinguished variable `x`.
    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    /// Univariate polynomial in `x` from ascending coefficients.
    pub fn from_x_coeffs(coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), Monomial::pow(Var::X, i as u32))),
        )
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (0 for the zero polynomial).
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.coeff(&Monomial::one()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.variables()
            .into_iter()
            .filter_map(|v| match v {
                Var::Gen(i) => Some(i),
                Var::X => None,
            })
            .max()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism sending each variable to its image; `x` defaults to itself.
    pub fn subst(&self, images: &Substitution) -> Result<Self> {
        let mut powers: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (v, e) in m.iter() {
                let power = match powers.entry((v, e)) {
                    Entry::Occupied(slot) => slot.into_mut(),
                    Entry::Vacant(slot) => {
                        let base = match images.get(&v) {
                            Some(p) => p.clone(),
                            None if v == Var::X => Self::x(),
                            None => return Err(Error::MissingImage(v)),
                        };
                        slot.insert(base.pow(e))
                    }
                };
                t = &t * &*power;
                if t.is_zero() {
                    break;
                }
            }
            out += t;
        }
        Ok(out)
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.without_one(v) {
                out.add_term(c * int(i64::from(e)), rest);
            }
        }
        out
    }

    /// Formal derivative of a polynomial in `x` alone.
    pub fn diff_x(&self) -> Result<Self> {
        if let Some(v) = self.variables().into_iter().find(|&v| v != Var::X) {
            return Err(Error::NotUnivariate(v));
        }
        Ok(self.partial(Var::X))
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::InvalidArgument("division by zero polynomial".into()))?;
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm).ok_or(Error::InexactDivision)?;
            let qc = c * &lc_inv;
            let t = Self::term(qc, qm);
            rem -= &t * divisor;
            quot += t;
        }
        Ok(quot)
    }

    /// Largest `k` such that `v^k` divides every term.
    pub fn var_valuation(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    /// Divides every term by `v^k`; the caller guarantees divisibility.
    pub fn div_var_pow(&self, v: Var, k: u32) -> Result<Self> {
        let d = Monomial::pow(v, k);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(&d).ok_or(Error::InexactDivision)?, c.clone());
        }
        Ok(Self { terms })
    }

    /// Ascending coefficient list of a polynomial in `x` alone.
    pub fn x_coeffs(&self) -> Result<Vec<Rational>> {
        let deg = self.degree_in(Var::X) as usize;
        let mut out = vec![Rational::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            if let Some((v, _)) = m.iter().find(|&(v, _)| v != Var::X) {
                return Err(Error::NotUnivariate(v));
            }
            out[m.exponent(Var::X) as usize] = c.clone();
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (m, c) in rhs.terms {
            self.add_term(c, m);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(-c.clone(), m.clone());
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(-c, m);
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
