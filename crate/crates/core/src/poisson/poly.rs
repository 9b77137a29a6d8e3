use crate::rational::{parse_rational, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of `x1`, then `x2`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; assumes `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in
    /// ascending grlex order.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(rest: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if rest == 1 {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=d {
                prefix.push(e);
                rec(rest - 1, d - e, prefix, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            return if d == 0 {
                vec![Monomial(Vec::new())]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        rec(nvars, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, e)| **e > 0) {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{e}", i + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("unexpected {found:?} at byte {at}")]
    Unexpected { at: usize, found: String },
    #[error("variable x{index} outside x1..x{nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("empty polynomial")]
    Empty,
}

/// Sparse polynomial over the rationals in a fixed number of variables. No
/// zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(
                m.nvars(),
                nvars,
                "monomial has the wrong number of variables"
            );
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, s: &Rational) {
        self.check_vars(other);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_vars(other);
        let mut acc: std::collections::HashMap<Monomial, Rational> = Default::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                *acc.entry(a.mul(b)).or_insert_with(Rational::zero) += x * y;
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(
            x.len(),
            self.nvars,
            "point has the wrong number of coordinates"
        );
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            total += t;
        }
        total
    }

    fn check_vars(&self, other: &Polynomial) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different numbers of variables"
        );
    }

    /// Parses the sparse text format, e.g. `1/2 x1^2 x3 - 3 x2 + 1`.
    /// Factors may also be joined with `*`.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial, ParsePolyError> {
        Parser {
            s: text.as_bytes(),
            pos: 0,
            nvars,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParsePolyError {
        let found = match self.s.get(self.pos) {
            Some(&b) => (b as char).to_string(),
            None => "end of input".into(),
        };
        ParsePolyError::Unexpected {
            at: self.pos,
            found,
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits")
    }

    fn number(&mut self) -> Result<Rational, ParsePolyError> {
        let start = self.pos;
        let mut text = self.digits().to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.digits();
            if d.is_empty() {
                return Err(self.unexpected());
            }
            text = format!("{text}/{d}");
        }
        parse_rational(&text).map_err(|_| ParsePolyError::Unexpected {
            at: start,
            found: text,
        })
    }

    fn polynomial(mut self) -> Result<Polynomial, ParsePolyError> {
        let mut p = Polynomial::zero(self.nvars);
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match self.peek() {
                None if first => return Err(ParsePolyError::Empty),
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.unexpected()),
            }
            first = false;
            let (m, c) = self.term()?;
            p.add_term(m, sign * c);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParsePolyError> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.nvars];
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() || b == b'.' => {
                    coeff *= self.number()?;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.digits();
                    let index: usize = idx.parse().map_err(|_| self.unexpected())?;
                    if index == 0 || index > self.nvars {
                        return Err(ParsePolyError::VariableOutOfRange {
                            index,
                            nvars: self.nvars,
                        });
                    }
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.digits().parse().map_err(|_| self.unexpected())?;
                    }
                    exps[index - 1] += e;
                }
                _ => return Err(self.unexpected()),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b) if b.is_ascii_digit() || b == b'x' || b == b'.' => {}
                _ => break,
            }
        }
        Ok((Monomial(exps), coeff))
    }
}

impl fmt::Display for Polynomial {
    /// Highest grlex term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a} {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.nvars)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    text: String,
}

/// Encoded as `{"nvars": n, "text": "<text format>"}`.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        Polynomial::parse(&r.text, r.nvars).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![0, 1, 1]);
        let c = Monomial::new(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::of_degree(3, 2).last().unwrap(), &a);
    }

    #[test]
    fn parse_and_print() {
        let p = Polynomial::parse("1/2 x1^2 x3 - 3 x2 + 1", 3).unwrap();
        assert_eq!(p.to_string(), "1/2 x1^2 x3 - 3 x2 + 1");
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0, 1])), ratio(1, 2));
        let q = Polynomial::parse("-x1*x2 + 2*x2 x1 - 0.5", 2).unwrap();
        assert_eq!(q.to_string(), "x1 x2 - 1/2");
        assert_eq!(Polynomial::parse("0", 2).unwrap(), Polynomial::zero(2));
        assert!(matches!(
            Polynomial::parse("x4", 3),
            Err(ParsePolyError::VariableOutOfRange { index: 4, nvars: 3 })
        ));
        assert!(Polynomial::parse("x1 +", 3).is_err());
        assert!(Polynomial::parse("", 3).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "x1^2 + 2 x1 x2 + x2^2");
        assert_eq!(sq.derivative(0).to_string(), "2 x1 + 2 x2");
        assert_eq!(sq.eval(&[rat(1), rat(2)]), rat(9));
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(s.pow(3).degree(), Some(3));
    }

    #[test]
    fn serde_round_trip() {
        let p = Polynomial::parse("x1^3 - 2/3 x2", 3).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }
}
