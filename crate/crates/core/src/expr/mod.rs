//! Exact-rational multivariate polynomials over a named chart.
//!
//! An [`Expr`] is a sparse table from monomials to nonzero rational
//! coefficients. Variables are addressed by their position in a [`Chart`];
//! the chart only matters for parsing and printing, so an expression built on
//! a chart stays valid on any chart that extends it.

mod parser;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An ordered list of coordinate names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Chart {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Chart>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !valid_name(&name) {
                return Err(Error::InvalidCoordinate(name));
            }
            if out.contains(&name) {
                return Err(Error::DuplicateCoordinate(name));
            }
            out.push(name);
        }
        Ok(Chart { names: out })
    }

    /// `prefix1, …, prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Chart {
        Chart::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("numbered chart is well formed")
    }

    /// The chart `x1, …, xn`.
    pub fn standard(n: usize) -> Chart {
        Chart::numbered("x", n)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends further coordinates; all names must stay distinct.
    pub fn extend<I, S>(&self, more: I) -> Result<Chart>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Chart::new(
            self.names
                .iter()
                .cloned()
                .chain(more.into_iter().map(Into::into)),
        )
    }

    pub fn var(&self, name: &str) -> Result<Expr> {
        self.index_of(name)
            .map(Expr::var)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn parse(&self, text: &str) -> Result<Expr> {
        Expr::parse(text, self)
    }
}

/// Exponent vector in chart order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn var(index: usize) -> Monomial {
        let mut e = vec![0; index + 1];
        e[index] = 1;
        Monomial(e)
    }

    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    fn trim(mut self) -> Monomial {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let len = self.0.len().max(other.0.len());
        let mut e = Vec::with_capacity(len);
        for i in 0..len {
            e.push(self.exponent(i).checked_add(other.exponent(i))?);
        }
        Some(Monomial(e))
    }

    fn width(&self) -> usize {
        self.0.len()
    }
}

// Graded lexicographic: total degree first, then the exponent of the earliest
// coordinate decides.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            (0..len)
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact rational coefficients, always in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::default()
    }

    pub fn one() -> Expr {
        Expr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Expr {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        Expr { terms }
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Expr {
        Expr::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The coordinate function with the given chart position.
    pub fn var(index: usize) -> Expr {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), Rational::one());
        Expr { terms }
    }

    /// Builds `c · Π x_i^{e_i}` from an exponent vector in chart order.
    pub fn monomial(coefficient: Rational, exponents: &[u32]) -> Expr {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(Monomial(exponents.to_vec()).trim(), coefficient);
        }
        Expr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.0.is_empty())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Number of leading chart positions this expression can touch: every
    /// variable it uses has index `< width()`.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    /// Terms as `(exponents, coefficient)`, in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
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

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Expr {
        self.scale(&Rational::from_integer(BigInt::from(c)))
    }

    pub fn try_mul(&self, other: &Expr) -> Result<Expr> {
        let mut out = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.checked_mul(m2).ok_or(Error::ExponentOverflow)?;
                out.add_term(m, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, exp: u32) -> Result<Expr> {
        let mut result = Expr::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, exp: u32) -> Expr {
        self.try_pow(exp).expect("exponent overflow")
    }

    /// Formal partial derivative with respect to the coordinate at `var`.
    pub fn differentiate(&self, var: usize) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(
                Monomial(exps).trim(),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    pub fn differentiate_named(&self, chart: &Chart, name: &str) -> Result<Expr> {
        let var = chart
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.differentiate(var))
    }

    /// Exact value at a point given by coordinate name.
    pub fn eval_at(&self, chart: &Chart, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let width = self.width();
        let mut values = Vec::with_capacity(width);
        for i in 0..width {
            let used = self.terms.keys().any(|m| m.exponent(i) > 0);
            let name = chart.names.get(i).map(String::as_str).unwrap_or("?");
            match point.get(name) {
                Some(v) => values.push(v.clone()),
                None if !used => values.push(Rational::zero()),
                None => return Err(Error::MissingAssignment(name.to_string())),
            }
        }
        Ok(self.eval(&values))
    }

    /// Exact value at a point given positionally; positions the expression
    /// never uses may be absent.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow::pow(point[i].clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Replaces the coordinate at position `i` by `images[i]` for every `i`.
    pub fn substitute(&self, images: &[Expr]) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let mut term = Expr::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e);
                }
            }
            out += &term;
        }
        out
    }

    pub fn parse(text: &str, chart: &Chart) -> Result<Expr> {
        parser::parse(text, chart)
    }

    /// Printable form relative to a chart.
    pub fn display<'a>(&'a self, chart: &'a Chart) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, chart }
    }

    pub fn to_string_in(&self, chart: &Chart) -> String {
        self.display(chart).to_string()
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chart = Chart::numbered("v", self.width());
        write!(f, "Expr({})", self.display(&chart))
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    chart: &'a Chart,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.expr.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.0.is_empty() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                let name = self
                    .chart
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("_{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Expr {
        Expr::constant(c)
    }
}

impl AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, rhs: &Expr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Expr> for Expr {
    fn sub_assign(&mut self, rhs: &Expr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        self.try_mul(rhs).expect("exponent overflow")
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl AddAssign<Expr> for Expr {
    fn add_assign(&mut self, rhs: Expr) {
        *self += &rhs;
    }
}

impl SubAssign<Expr> for Expr {
    fn sub_assign(&mut self, rhs: Expr) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let mut out = Expr::zero();
        for e in iter {
            out += &e;
        }
        out
    }
}
