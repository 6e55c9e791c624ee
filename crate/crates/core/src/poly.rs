//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then the exponents compared left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
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

/// `["x1", ..., "xd"]`, optionally followed by `"s"`.
pub fn variable_names(d: usize, with_s: bool) -> Vec<String> {
    (1..=d)
        .map(|i| format!("x{i}"))
        .chain(with_s.then(|| "s".to_string()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl ExactPolynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn monomial(vars: Vec<String>, exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != p.vars.len() {
                return Err(Error::DimensionMismatch {
                    what: "exponent vector length",
                    expected: p.vars.len(),
                    found: exps.len(),
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        let merged = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Highest total degree in the variables selected by `mask`.
    pub fn partial_degree(&self, mask: &[bool]) -> u32 {
        self.terms
            .keys()
            .map(|m| {
                m.0.iter()
                    .zip(mask)
                    .filter(|(_, &on)| on)
                    .map(|(e, _)| e)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero(self.vars.clone());
        if !c.is_zero() {
            for (m, v) in &self.terms {
                p.terms.insert(m.clone(), v * c);
            }
        }
        p
    }

    /// Substitutes `value` for variable `var`, removing it from the
    /// variable list.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut p = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = exps.remove(var);
            p.add_term(exps, c * pow_rational(value, e));
        }
        p
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(
            point.len(),
            self.vars.len(),
            "evaluation point has wrong length"
        );
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * pow_rational(x, e))
            })
            .sum()
    }

    fn assert_same_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variables"
        );
    }

    /// Parses the textual form produced by `Display`, e.g.
    /// `x1^3*s^15 + s^12 - 2/3*x1*x2*s + x2^3`.
    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        Parser::new(text, vars).polynomial()
    }
}

fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: Self) -> ExactPolynomial {
        self.assert_same_vars(rhs);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.0.clone(), c.clone());
        }
        p
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: Self) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> ExactPolynomial {
        self.assert_same_vars(rhs);
        let mut p = ExactPolynomial::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                p.add_term(exps, ca * cb);
            }
        }
        p
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .zip(&self.vars)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, v)| {
                        if e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a [String]) -> Self {
        Self { text, pos: 0, vars }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected integer"));
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("digits parse"))
    }

    fn polynomial(&mut self) -> Result<ExactPolynomial> {
        let mut p = ExactPolynomial::zero(self.vars.to_vec());
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else {
                if !self.eat('+') && !first {
                    break;
                }
                false
            };
            let (exps, c) = self.term()?;
            p.add_term(exps, if negative { -c } else { c });
            first = false;
        }
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Vec<u32>, BigRational)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = BigRational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let den = if self.eat('/') {
                        self.integer()?
                    } else {
                        BigInt::one()
                    };
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    coeff *= BigRational::new(num, den);
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let rest = &self.text[self.pos..];
                    let len = rest
                        .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                        .unwrap_or(rest.len());
                    let name = &rest[..len];
                    let Some(v) = self.vars.iter().position(|x| x == name) else {
                        return Err(self.error(format!("unknown variable `{name}`")));
                    };
                    self.pos += len;
                    let e = if self.eat('^') {
                        u32::try_from(self.integer()?)
                            .map_err(|_| self.error("exponent too large"))?
                    } else {
                        1
                    };
                    exps[v] += e;
                }
                _ => return Err(self.error("expected coefficient or variable")),
            }
            if !self.eat('*') {
                return Ok((exps, coeff));
            }
        }
    }
}

/// A list of polynomials over one shared variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialSystem {
    vars: Vec<String>,
    polys: Vec<ExactPolynomial>,
}

impl PolynomialSystem {
    pub fn new(polys: Vec<ExactPolynomial>) -> Result<Self> {
        let Some(first) = polys.first() else {
            return Err(Error::EmptySystem);
        };
        let vars = first.vars.clone();
        if polys.iter().any(|p| p.vars != vars) {
            return Err(Error::VariableMismatch);
        }
        Ok(Self { vars, polys })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn polys(&self) -> &[ExactPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.vars.len()
    }

    /// Substitutes `value` for variable `var` in every polynomial.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Self {
        let polys: Vec<_> = self
            .polys
            .iter()
            .map(|p| p.substitute(var, value))
            .collect();
        let mut vars = self.vars.clone();
        vars.remove(var);
        Self { vars, polys }
    }
}

impl std::ops::Index<usize> for PolynomialSystem {
    type Output = ExactPolynomial;

    fn index(&self, i: usize) -> &ExactPolynomial {
        &self.polys[i]
    }
}

impl fmt::Display for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars3() -> Vec<String> {
        variable_names(2, true)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prints_in_graded_lex_descending_order() {
        let p = ExactPolynomial::from_terms(
            vars3(),
            vec![
                (vec![0, 0, 12], q(1, 1)),
                (vec![0, 3, 0], q(1, 1)),
                (vec![1, 1, 1], q(1, 1)),
                (vec![3, 0, 15], q(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "x1^3*s^15 + s^12 + x1*x2*s + x2^3");
    }

    #[test]
    fn print_coefficients() {
        let vars = variable_names(2, false);
        let p = ExactPolynomial::parse("-19*x1 + 1/3 - x2^2 + 7*x1*x2", &vars).unwrap();
        assert_eq!(p.to_string(), "7*x1*x2 - x2^2 - 19*x1 + 1/3");
        assert_eq!(ExactPolynomial::zero(vars).to_string(), "0");
    }

    #[test]
    fn parse_merges_terms() {
        let vars = variable_names(2, false);
        let p = ExactPolynomial::parse("x1*x2 + x1*x2", &vars).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&[1, 1]), q(2, 1));
        let z = ExactPolynomial::parse("x1 - x1", &vars).unwrap();
        assert!(z.is_zero());
        assert_eq!(
            ExactPolynomial::parse("x1*x1^2", &vars)
                .unwrap()
                .coefficient(&[3, 0]),
            q(1, 1)
        );
    }

    #[test]
    fn parse_errors() {
        let vars = variable_names(2, false);
        for bad in ["", "x3", "x1 +", "2/0*x1", "x1 x2", "x1^"] {
            assert!(
                matches!(ExactPolynomial::parse(bad, &vars), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn arithmetic() {
        let vars = variable_names(2, false);
        let a = ExactPolynomial::parse("x1 + 1", &vars).unwrap();
        let b = ExactPolynomial::parse("x1 - 1", &vars).unwrap();
        assert_eq!((&a * &b).to_string(), "x1^2 - 1");
        assert_eq!((&a - &b).to_string(), "2");
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_drops_variable() {
        let p = ExactPolynomial::parse("x1^3*s^15 + s^12 + x1*x2*s + x2^3", &vars3()).unwrap();
        let at_one = p.substitute(2, &q(1, 1));
        assert_eq!(at_one.vars(), &["x1".to_string(), "x2".to_string()]);
        assert_eq!(at_one.to_string(), "x1^3 + x2^3 + x1*x2 + 1");
        let at_half = p.substitute(2, &q(1, 2));
        assert_eq!(at_half.coefficient(&[3, 0]), q(1, 1 << 15));
    }

    #[test]
    fn eval_exact() {
        let p = ExactPolynomial::parse("x1^2 - 2*x2 + 1/2", &variable_names(2, false)).unwrap();
        assert_eq!(p.eval(&[q(3, 2), q(1, 4)]), q(9, 4) - q(1, 2) + q(1, 2));
    }

    #[test]
    fn degrees() {
        let p = ExactPolynomial::parse("x1^2*s^9 + x2*s^3 + x1*x2^2", &vars3()).unwrap();
        assert_eq!(p.total_degree(), Some(11));
        assert_eq!(p.partial_degree(&[true, true, false]), 3);
        assert_eq!(ExactPolynomial::zero(vars3()).total_degree(), None);
    }

    #[test]
    fn system_requires_shared_vars() {
        let a = ExactPolynomial::zero(variable_names(2, false));
        let b = ExactPolynomial::zero(variable_names(3, false));
        assert_eq!(
            PolynomialSystem::new(vec![a, b]),
            Err(Error::VariableMismatch)
        );
        assert_eq!(PolynomialSystem::new(vec![]), Err(Error::EmptySystem));
    }
}
