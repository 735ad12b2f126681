//! Countable ordinals below epsilon_0 in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients. The
//! representation is canonical, so structural equality is ordinal equality.
//! [`ExtOrdinal`] adds the top value `T` standing for the length of the Wadge
//! hierarchy of Baire space; it is never computed with, only compared.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Term {
    exp: Ordinal,
    coeff: u64,
}

/// A countable ordinal in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Parity of an ordinal: the parity of its finite tail. Limits are even.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Ordinal {
        Ordinal::from(1)
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `w^exp`.
    pub fn omega_pow(exp: Ordinal) -> Ordinal {
        Ordinal::monomial(exp, 1)
    }

    /// `w^exp * coeff`; zero when `coeff == 0`.
    pub fn monomial(exp: Ordinal, coeff: u64) -> Ordinal {
        if coeff == 0 {
            return Ordinal::zero();
        }
        Ordinal { terms: vec![Term { exp, coeff }] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exp.is_zero())
    }

    pub fn successor(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// `self + n`.
    pub fn plus(&self, n: u64) -> Ordinal {
        self.add(&Ordinal::from(n))
    }

    /// The immediate predecessor of a successor ordinal.
    pub fn predecessor(&self) -> Option<Ordinal> {
        self.sub_finite(1)
    }

    /// `self - n` when `self = mu + k` with `k >= n`.
    pub fn sub_finite(&self, n: u64) -> Option<Ordinal> {
        let (limit, tail) = self.split();
        let rest = tail.checked_sub(n)?;
        Some(limit.plus(rest))
    }

    /// Unique decomposition `self = limit + n` with `limit` a limit ordinal or zero.
    pub fn split(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some(t) if t.exp.is_zero() => {
                let limit = Ordinal { terms: self.terms[..self.terms.len() - 1].to_vec() };
                (limit, t.coeff)
            }
            _ => (self.clone(), 0),
        }
    }

    pub fn parity(&self) -> Parity {
        if self.split().1.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Exponent of the leading CNF term (`0` for the ordinal 0).
    pub fn leading_exponent(&self) -> Ordinal {
        self.terms.first().map(|t| t.exp.clone()).unwrap_or_default()
    }

    /// Coefficient of the leading CNF term (`0` for the ordinal 0).
    pub fn leading_coefficient(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.coeff)
    }

    /// CNF terms as `(exponent, coefficient)` pairs, highest first.
    pub fn cnf(&self) -> impl Iterator<Item = (&Ordinal, u64)> {
        self.terms.iter().map(|t| (&t.exp, t.coeff))
    }

    /// Ordinal sum.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(head) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exp >= head.exp)
            .cloned()
            .collect();
        let mut rest = other.terms.iter();
        match terms.last_mut() {
            Some(last) if last.exp == head.exp => {
                last.coeff = last.coeff.checked_add(head.coeff).expect("coefficient overflow");
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Ordinal product (left factor first).
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let lead = &self.terms[0];
        let mut acc = Ordinal::zero();
        for t in &other.terms {
            let piece = if t.exp.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].coeff = lead.coeff.checked_mul(t.coeff).expect("coefficient overflow");
                Ordinal { terms }
            } else {
                Ordinal::monomial(lead.exp.add(&t.exp), t.coeff)
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// `self * n` for a natural `n`.
    pub fn times(&self, n: u64) -> Ordinal {
        self.mul(&Ordinal::from(n))
    }

    /// The `n`-th element of the canonical fundamental sequence of a limit.
    ///
    /// The last CNF term is peeled: `(mu + w^(b+1))[n] = mu + w^b*(n+1)` and
    /// `(mu + w^l)[n] = mu + w^(l[n])` for limit `l`.
    pub fn fundamental_sequence(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        let mut terms = self.terms.clone();
        let last = terms.pop().expect("limit is nonzero");
        if last.coeff > 1 {
            terms.push(Term { exp: last.exp.clone(), coeff: last.coeff - 1 });
        }
        let prefix = Ordinal { terms };
        let step = if last.exp.is_successor() {
            let pred = last.exp.predecessor().expect("successor exponent");
            Ordinal::monomial(pred, n + 1)
        } else {
            Ordinal::omega_pow(last.exp.fundamental_sequence(n)?)
        };
        Ok(prefix.add(&step))
    }

    /// True when `self` is a limit of limit ordinals (the last CNF exponent is at least 2).
    pub fn is_limit_of_limits(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp > Ordinal::one())
    }

    /// For `self = mu + w` with `mu` limit or zero, returns `mu`.
    pub fn strip_omega(&self) -> Option<Ordinal> {
        let last = self.terms.last()?;
        if last.exp != Ordinal::one() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.coeff > 1 {
            last.coeff -= 1;
        } else {
            terms.pop();
        }
        Some(Ordinal { terms })
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Ordinal {
        Ordinal::monomial(Ordinal::zero(), n)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.exp.cmp(&b.exp).then(a.coeff.cmp(&b.coeff));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            f.write_str("w")?;
            if t.exp != Ordinal::one() {
                if t.exp.is_finite() || t.exp.is_bare_power() {
                    write!(f, "^{}", t.exp)?;
                } else {
                    write!(f, "^({})", t.exp)?;
                }
            }
            if t.coeff > 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl Ordinal {
    // `w` or `w^e` with coefficient 1: prints without parentheses as an exponent.
    fn is_bare_power(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.coeff == 1 && !t.exp.is_zero())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Ordinal, OrdinalError> {
        let mut p = OrdinalParser::new(s);
        let ord = p.ordinal()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(ord)
    }
}

/// Parses an ordinal from its ASCII notation.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, OrdinalError> {
    text.parse()
}

/// Recursive-descent parser for the ordinal grammar. Also used by the term parser.
pub(crate) struct OrdinalParser<'a> {
    pub(crate) src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> OrdinalParser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        OrdinalParser { src: s.as_bytes(), pos: 0 }
    }

    pub(crate) fn at(s: &'a str, pos: usize) -> Self {
        OrdinalParser { src: s.as_bytes(), pos }
    }

    pub(crate) fn error(&self, msg: &str) -> OrdinalError {
        OrdinalError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn natural(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| OrdinalError::Syntax { pos: start, msg: "natural number too large".into() })
    }

    /// `ordinal := summand ('+' summand)*`
    pub(crate) fn ordinal(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.summand()?;
        while self.eat(b'+') {
            let next = self.summand()?;
            acc = acc.add(&next);
        }
        Ok(acc)
    }

    /// `summand := nat | 'w' ['^' exponent] ['*' nat] | '(' ordinal ')'`
    fn summand(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from(self.natural()?)),
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') { self.exponent()? } else { Ordinal::one() };
                let coeff = if self.eat(b'*') { self.natural()? } else { 1 };
                Ok(Ordinal::monomial(exp, coeff))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.ordinal()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a natural, 'w' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// `exponent := nat | 'w' ['^' exponent] | '(' ordinal ')'`
    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from(self.natural()?)),
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') { self.exponent()? } else { Ordinal::one() };
                Ok(Ordinal::omega_pow(exp))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.ordinal()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected an exponent")),
        }
    }
}

/// A countable ordinal or the top value `T`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ExtOrdinal {
    Countable(Ordinal),
    BigTheta,
}

impl ExtOrdinal {
    pub fn countable(&self) -> Option<&Ordinal> {
        match self {
            ExtOrdinal::Countable(o) => Some(o),
            ExtOrdinal::BigTheta => None,
        }
    }

    pub fn is_big_theta(&self) -> bool {
        matches!(self, ExtOrdinal::BigTheta)
    }
}

impl From<Ordinal> for ExtOrdinal {
    fn from(o: Ordinal) -> ExtOrdinal {
        ExtOrdinal::Countable(o)
    }
}

impl fmt::Display for ExtOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtOrdinal::Countable(o) => o.fmt(f),
            ExtOrdinal::BigTheta => f.write_str("T"),
        }
    }
}

impl FromStr for ExtOrdinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<ExtOrdinal, OrdinalError> {
        if s.trim() == "T" {
            Ok(ExtOrdinal::BigTheta)
        } else {
            Ok(ExtOrdinal::Countable(s.parse()?))
        }
    }
}
