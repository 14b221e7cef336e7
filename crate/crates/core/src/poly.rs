//! Sparse multivariate polynomials with rational coefficients.
//!
//! A [`MultiPoly`] has a fixed number of variables; terms are keyed by their
//! exponent vectors. The family formulas are written as strings and parsed
//! with [`MultiPoly::parse`], so the numeric generators and the symbolic
//! identity checks evaluate the very same polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Q};

pub mod identity;

pub use identity::verify_identity_family;

/// Total-degree cap enforced by [`MultiPoly::checked_mul`] and
/// [`MultiPoly::checked_pow`].
pub const DEGREE_CAP: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has the wrong length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let degree = self.degree() + other.degree();
        if degree > DEGREE_CAP {
            return Err(Error::ExponentOverflow {
                degree,
                cap: DEGREE_CAP,
            });
        }
        Ok(self * other)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self> {
        let degree = self.degree().saturating_mul(k);
        if degree > DEGREE_CAP {
            return Err(Error::ExponentOverflow {
                degree,
                cap: DEGREE_CAP,
            });
        }
        Ok(self.pow(k))
    }

    /// `self^k` by repeated squaring; no degree cap.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars, "point has the wrong dimension");
        let max: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<Q>> = point
            .iter()
            .zip(&max)
            .map(|(x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(Q::one());
                for i in 0..m as usize {
                    let next = &v[i] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable
    /// count, which becomes the variable count of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![Self::one(p.nvars), p.clone()])
            .collect();
        let mut acc = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t = &t * &cache[i][k as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes a polynomial for one variable, keeping the variable count.
    pub fn substitute(&self, var: usize, image: &MultiPoly) -> Self {
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                if i == var {
                    image.clone()
                } else {
                    Self::var(self.nvars, i)
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_terms(&self) -> Option<Vec<(Vec<u32>, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (e.clone(), c.to_integer())))
            .collect()
    }

    /// Parses `+ - * ^`, parentheses, integer literals and the given
    /// variable names. Juxtaposition multiplies, so `2(p+q)m` is accepted;
    /// adjacent names need an explicit `*`.
    pub fn parse(src: &str, vars: &[&str]) -> Result<Self> {
        let mut p = Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            vars,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected {:?} at offset {} in polynomial",
                p.chars[p.pos], p.pos
            )));
        }
        Ok(out)
    }

    /// Terms in graded-lex order using the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        Named { poly: self, names }
    }
}

struct Named<'a> {
    poly: &'a MultiPoly,
    names: &'a [&'a str],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = p.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &p.terms[e];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(mag.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                let name = self
                    .names
                    .get(i)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{i}"));
                match k {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            -self.term()?
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() || c == '_' => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent at offset {start}")))?;
            return base.checked_pow(k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = lit.parse().expect("digits parse");
                Ok(MultiPoly::constant(self.nvars(), int(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(MultiPoly::var(self.nvars(), i))
            }
            Some(c) => Err(Error::Parse(format!(
                "unexpected {c:?} at offset {}",
                self.pos
            ))),
            None => Err(Error::Parse("unexpected end of polynomial".into())),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() + rhs.clone()
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use proptest::prelude::*;

    const XY: &[&str] = &["x", "y"];

    #[test]
    fn parse_and_evaluate() {
        let p = MultiPoly::parse("2(x+y)(x-3y) - x^2 + 7", XY).unwrap();
        assert_eq!(p.eval(&[q(2), q(1)]), q(-6 - 4 + 7));
        assert_eq!(p.degree(), 2);
        let r = MultiPoly::parse("-(x^2)^3", XY).unwrap();
        assert_eq!(r.eval(&[q(2), q(0)]), q(-64));
    }

    #[test]
    fn parse_errors() {
        assert!(MultiPoly::parse("x + z", XY).is_err());
        assert!(MultiPoly::parse("(x + y", XY).is_err());
        assert!(MultiPoly::parse("x +", XY).is_err());
        assert!(MultiPoly::parse("x ^ y", XY).is_err());
    }

    #[test]
    fn display_graded_lex() {
        let p = MultiPoly::parse("1 - y + 3x*y^2 - x^3 + 2x", XY).unwrap();
        assert_eq!(
            p.display_with(XY).to_string(),
            "-x^3 + 3*x*y^2 + 2*x - y + 1"
        );
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn degree_cap() {
        let x = MultiPoly::var(1, 0);
        assert!(x.checked_pow(DEGREE_CAP).is_ok());
        assert_eq!(
            x.checked_pow(DEGREE_CAP + 1),
            Err(Error::ExponentOverflow {
                degree: DEGREE_CAP + 1,
                cap: DEGREE_CAP
            })
        );
        let big = x.pow(100);
        assert!(big.checked_mul(&big).is_err());
    }

    #[test]
    fn compose_and_substitute() {
        let p = MultiPoly::parse("x^2 - y", XY).unwrap();
        let t = MultiPoly::parse("x + 1", XY).unwrap();
        let s = p.substitute(0, &t);
        assert_eq!(s, MultiPoly::parse("x^2 + 2x + 1 - y", XY).unwrap());
        let c = p.compose(&[MultiPoly::var(1, 0), MultiPoly::constant(1, frac(1, 2))]);
        assert_eq!(c.eval(&[q(3)]), frac(17, 2));
    }

    #[test]
    fn cancellation_to_zero() {
        let p = MultiPoly::parse("(x+y)^2 - x^2 - 2x*y - y^2", XY).unwrap();
        assert!(p.is_zero());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u32..4, 0u32..4), -9i64..10), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], q(c))))
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), x in -5i64..6, y in -5i64..6) {
            let pt = [q(x), q(y)];
            prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
            prop_assert_eq!((a.clone() + b.clone()).eval(&pt), a.eval(&pt) + b.eval(&pt));
            prop_assert_eq!((a.clone() - b.clone()).eval(&pt), a.eval(&pt) - b.eval(&pt));
            prop_assert_eq!(a.pow(3).eval(&pt), num_traits::pow(a.eval(&pt), 3));
        }

        #[test]
        fn display_parses_back(a in small_poly()) {
            let s = a.display_with(XY).to_string();
            prop_assert_eq!(MultiPoly::parse(&s, XY).unwrap(), a);
        }
    }
}
