//! Sparse multivariate polynomials with integer coefficients.
//!
//! Text form: a signed sum of monomials such as `3*x1^2*x2 - x2 + 5`, with
//! variables `x1 .. xn` (1-based). Spaces are allowed around operators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialZ {
    n_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PolynomialZ {
    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(n_vars, [(vec![0; n_vars], c.into())]).expect("constant monomial has the right length")
    }

    /// The variable with 0-based index `i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable {i} out of range for {n_vars} variables");
        let mut m = vec![0; n_vars];
        m[i] = 1;
        Self::from_terms(n_vars, [(m, BigInt::one())]).unwrap()
    }

    /// Sums the given terms, dropping zero coefficients.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (m, c) in terms {
            if m.len() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial of length {} in {n_vars} variables",
                    m.len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u64).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Same polynomial in `n` variables (`n` at least the current count).
    pub fn with_n_vars(&self, n: usize) -> Self {
        assert!(n >= self.n_vars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m.resize(n, 0);
                (m, c.clone())
            })
            .collect();
        Self { n_vars: n, terms }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.n_vars, "evaluation point has the wrong length");
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (xi, &e) in x.iter().zip(m) {
                if e > 0 {
                    t *= Pow::pow(xi, e);
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (xi, &e) in x.iter().zip(m) {
                    if e > 0 {
                        t *= xi.powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m[i] > 0).map(|(m, c)| {
            let mut m = m.clone();
            let e = m[i];
            m[i] -= 1;
            (m, c * BigInt::from(e))
        });
        Self::from_terms(self.n_vars, terms).unwrap()
    }

    /// Splits into `(positive part, negated negative part)`, both with
    /// non-negative coefficients.
    pub fn split_signs(&self) -> (Self, Self) {
        let mut pos = Self::zero(self.n_vars);
        let mut neg = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if c.is_positive() {
                pos.terms.insert(m.clone(), c.clone());
            } else {
                neg.terms.insert(m.clone(), -c);
            }
        }
        (pos, neg)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.n_vars, self.terms.iter().map(|(m, v)| (m.clone(), v * c))).unwrap()
    }

    /// Parses the text form in `n_vars` variables.
    pub fn parse(s: &str, n_vars: usize) -> Result<Self> {
        Parser::new(s, n_vars).polynomial()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n_vars, other.n_vars, "polynomials over different variable counts");
    }
}

impl Add for &PolynomialZ {
    type Output = PolynomialZ;
    fn add(self, rhs: &PolynomialZ) -> PolynomialZ {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &PolynomialZ {
    type Output = PolynomialZ;
    fn neg(self) -> PolynomialZ {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &PolynomialZ {
    type Output = PolynomialZ;
    fn sub(self, rhs: &PolynomialZ) -> PolynomialZ {
        self + &(-rhs)
    }
}

impl Mul for &PolynomialZ {
    type Output = PolynomialZ;
    fn mul(self, rhs: &PolynomialZ) -> PolynomialZ {
        self.check_same(rhs);
        let mut out = PolynomialZ::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1
                    .iter()
                    .zip(m2)
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &[u32], coeff: &BigInt) -> fmt::Result {
    let vars: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if vars.is_empty() {
        return write!(f, "{coeff}");
    }
    if !coeff.is_one() {
        write!(f, "{coeff}*")?;
    }
    write!(f, "{}", vars.join("*"))
}

impl fmt::Display for PolynomialZ {
    /// Terms by descending degree, then descending exponent vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u64 = a.0.iter().map(|&e| e as u64).sum();
            let db: u64 = b.0.iter().map(|&e| e as u64).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, m, &c.abs())?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, n_vars: usize) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
            n_vars,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn polynomial(mut self) -> Result<PolynomialZ> {
        let mut p = PolynomialZ::zero(self.n_vars);
        self.skip_ws();
        let mut sign = BigInt::one();
        if self.peek() == Some(b'-') {
            sign = -sign;
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c * &sign);
            self.skip_ws();
            match self.peek() {
                None => return Ok(p),
                Some(b'+') => sign = BigInt::one(),
                Some(b'-') => sign = BigInt::from(-1),
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
            self.skip_ws();
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut m = vec![0u32; self.n_vars];
        let mut c = BigInt::one();
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let idx: usize = self.digits()?.parse().map_err(|_| self.err("variable index too large"))?;
                    if idx == 0 || idx > self.n_vars {
                        return Err(self.err(&format!("variable x{idx} outside x1..x{}", self.n_vars)));
                    }
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.digits()?.parse().map_err(|_| self.err("exponent too large"))?;
                    }
                    m[idx - 1] = m[idx - 1].checked_add(e).ok_or_else(|| self.err("exponent overflow"))?;
                }
                Some(d) if d.is_ascii_digit() => {
                    let v: BigInt = self.digits()?.parse().expect("digit string");
                    c *= v;
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            } else {
                return Ok((m, c));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{frac, int};

    #[test]
    fn text_round_trip() {
        for s in ["0", "5", "-x1", "3*x1^2*x2 - x2 + 5", "x1*x2 - x3", "-2*x1^3 + x2^2 - 7"] {
            let p = PolynomialZ::parse(s, 3).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(PolynomialZ::parse(&p.to_string(), 3).unwrap(), p);
        }
    }

    #[test]
    fn parsing_normalises() {
        let p = PolynomialZ::parse("x1 + x1 - x1", 1).unwrap();
        assert_eq!(p, PolynomialZ::var(1, 0));
        let q = PolynomialZ::parse("2 * x1 * 3 * x1", 1).unwrap();
        assert_eq!(q.to_string(), "6*x1^2");
        assert!(PolynomialZ::parse("x1 - x1", 1).unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        for s in ["", "x0", "x3", "x1^", "x1 +", "+x1", "x1 x2", "2x1", "x1^99999999999", "x1^4294967295*x1"] {
            assert!(PolynomialZ::parse(s, 2).is_err(), "{s:?}");
        }
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let x = PolynomialZ::var(2, 0);
        let y = PolynomialZ::var(2, 1);
        let p = &(&x * &x) - &(&y + &PolynomialZ::constant(2, 2));
        assert_eq!(p.eval(&[frac(3, 2), int(1)]), frac(-3, 4));
        assert_eq!(p.eval_f64(&[1.5, 1.0]), -0.75);
        assert_eq!(p.derivative(0).to_string(), "2*x1");
        assert_eq!(p.degree(), 2);
        let (pos, neg) = p.split_signs();
        assert_eq!(pos.to_string(), "x1^2");
        assert_eq!(neg.to_string(), "x2 + 2");
    }
}
