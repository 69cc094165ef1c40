//! The Novikov coefficient ring: finite sums `Σ λ q^l t^ε` with rational
//! coefficients `λ`, integer `l` and rational `ε`.
//!
//! `q` carries degree 2 and `t` degree 0. Terms are stored in canonical order
//! (descending `t` exponent, then ascending `q` exponent) so that printing is
//! deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Exponent pair `q^q t^t` of a single Novikov monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub q: i64,
    pub t: Rational,
}

impl Monomial {
    pub fn new(q: i64, t: Rational) -> Self {
        Self { q, t }
    }

    pub fn unit() -> Self {
        Self::new(0, Rational::zero())
    }

    /// Degree of the monomial; `q` has degree 2.
    pub fn degree(&self) -> i64 {
        2 * self.q
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.q + other.q, &self.t + &other.t)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.t.cmp(&self.t).then(self.q.cmp(&other.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the Novikov ring. Never stores a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NovikovScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl NovikovScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, Rational::zero())
    }

    /// `c q^q t^t`.
    pub fn monomial(c: Rational, q: i64, t: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(q, t), c);
        }
        Self { terms }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
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

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies every term by the monomial `q^m.q t^m.t`.
    pub fn shift(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.times(m), v.clone())).collect(),
        }
    }

    /// Supremum of the `t` exponents.
    pub fn valuation(&self) -> Result<Rational> {
        self.terms
            .keys()
            .next()
            .map(|m| m.t.clone())
            .ok_or(Error::ZeroElement)
    }

    /// Smallest `t` exponent present, if any.
    pub fn min_t(&self) -> Option<Rational> {
        self.terms.keys().next_back().map(|m| m.t.clone())
    }

    /// Drops every term whose `t` exponent is below `floor`.
    pub fn truncate(&self, floor: &Rational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| &m.t >= floor)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The terms sharing the top `t` exponent.
    pub fn leading_slice(&self) -> Self {
        let Some(top) = self.terms.keys().next() else {
            return Self::zero();
        };
        let top = top.t.clone();
        Self {
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.t == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Returns the sole term if the scalar is a single monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Degrees `2l` of the terms present, deduplicated.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl Add<&NovikovScalar> for &NovikovScalar {
    type Output = NovikovScalar;
    fn add(self, rhs: &NovikovScalar) -> NovikovScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for NovikovScalar {
    type Output = NovikovScalar;
    fn add(mut self, rhs: NovikovScalar) -> NovikovScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&NovikovScalar> for NovikovScalar {
    fn add_assign(&mut self, rhs: &NovikovScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        NovikovScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        -&self
    }
}

impl Sub<&NovikovScalar> for &NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, rhs: &NovikovScalar) -> NovikovScalar {
        self + &(-rhs)
    }
}

impl Sub for NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, rhs: NovikovScalar) -> NovikovScalar {
        &self - &rhs
    }
}

impl Mul<&NovikovScalar> for &NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, rhs: &NovikovScalar) -> NovikovScalar {
        let mut out = NovikovScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, rhs: NovikovScalar) -> NovikovScalar {
        &self * &rhs
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} q^{} t^{{{}}}", c, m.q, m.t)?;
        }
        Ok(())
    }
}

impl FromStr for NovikovScalar {
    type Err = Error;

    /// Parses the canonical text form, e.g. `-1 q^3 t^{1} + 2 q^0 t^{-1/2}`.
    /// Terms may come in any order; `0` is the zero element.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let (c, m) = parse_term(term.trim())?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(Rational, Monomial)> {
    let bad = || Error::Parse(format!("malformed Novikov term `{term}`"));
    let mut parts = term.split_whitespace();
    let (Some(c), Some(q), Some(t), None) = (parts.next(), parts.next(), parts.next(), parts.next())
    else {
        return Err(bad());
    };
    let c = parse_rational(c)?;
    let q = q
        .strip_prefix("q^")
        .and_then(|x| x.parse::<i64>().ok())
        .ok_or_else(bad)?;
    let t = t
        .strip_prefix("t^{")
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(bad)?;
    Ok((c, Monomial::new(q, parse_rational(t)?)))
}

/// Parses `p`, `p/q` or `-p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let r = Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn mono(c: i64, q: i64, tn: i64, td: i64) -> NovikovScalar {
        NovikovScalar::monomial(rat(c, 1), q, rat(tn, td))
    }

    #[test]
    fn additive_inverse_cancels() {
        let x = mono(1, 1, 1, 2);
        let y = mono(-1, 1, 1, 2);
        assert!((&x + &y).is_zero());
    }

    #[test]
    fn disjoint_supports_add() {
        let s = mono(1, 1, 1, 1) + mono(1, 2, 1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "1 q^1 t^{1} + 1 q^2 t^{1}");
    }

    #[test]
    fn products() {
        assert_eq!(mono(1, -2, -1, 1) * mono(1, 2, 1, 1), NovikovScalar::one());
        assert_eq!(mono(2, 1, 1, 2) * mono(3, 0, 1, 2), mono(6, 1, 1, 1));
        // (1 + q t)(1 - q t) = 1 - q^2 t^2
        let a = NovikovScalar::one() + mono(1, 1, 1, 1);
        let b = NovikovScalar::one() - mono(1, 1, 1, 1);
        assert_eq!(a * b, NovikovScalar::one() - mono(1, 2, 2, 1));
    }

    #[test]
    fn valuation_cases() {
        assert_eq!(mono(1, 3, 1, 1).valuation().unwrap(), rat(1, 1));
        let x = mono(1, 0, -1, 1) + mono(5, 1, 3, 2);
        assert_eq!(x.valuation().unwrap(), rat(3, 2));
        assert_eq!(NovikovScalar::zero().valuation(), Err(Error::ZeroElement));
    }

    #[test]
    fn truncation_cases() {
        let x = mono(1, 0, -1, 1) + mono(1, 0, 1, 1);
        assert_eq!(x.truncate(&rat(0, 1)), mono(1, 0, 1, 1));
        assert_eq!(x.truncate(&rat(-1_000_000, 1)), x);
        let y = mono(1, 0, -2, 1) + mono(1, 0, -1, 1) + NovikovScalar::one();
        assert_eq!(y.truncate(&rat(-1, 1)), mono(1, 0, -1, 1) + NovikovScalar::one());
    }

    #[test]
    fn canonical_text_round_trip() {
        let x = mono(-1, 3, 1, 1) + mono(2, 0, -1, 2);
        let s = x.to_string();
        assert_eq!(s, "-1 q^3 t^{1} + 2 q^0 t^{-1/2}");
        assert_eq!(s.parse::<NovikovScalar>().unwrap(), x);
        assert_eq!("0".parse::<NovikovScalar>().unwrap(), NovikovScalar::zero());
        assert!("1 q^x t^{0}".parse::<NovikovScalar>().is_err());
    }
}
