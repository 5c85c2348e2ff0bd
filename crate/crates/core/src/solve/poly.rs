//! Sparse multivariate polynomials over the rationals.

use crate::error::{Error, Result};
use crate::series::{CoefficientRing, Rational, RingOps};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
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

/// A polynomial with rational coefficients in an ordered list of named
/// variables. Zero coefficients are never stored.
///
/// Constants may carry an empty variable list; arithmetic between
/// polynomials over different variable lists works over the union of the
/// lists (first operand's order first).
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    fn empty(vars: Arc<Vec<String>>) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(r: Rational) -> Self {
        let mut p = Self::empty(Arc::new(Vec::new()));
        if !r.is_zero() {
            p.terms.insert(Monomial::constant(0), r);
        }
        p
    }

    /// Generators of the polynomial ring in `names`, in order.
    pub fn generators<S: AsRef<str>>(names: &[S]) -> Vec<Polynomial> {
        let vars = Arc::new(
            names
                .iter()
                .map(|s| s.as_ref().to_string())
                .collect::<Vec<_>>(),
        );
        (0..names.len())
            .map(|i| Self::variable_in(&vars, i))
            .collect()
    }

    pub fn variable_in(vars: &Arc<Vec<String>>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut p = Self::empty(vars.clone());
        p.terms.insert(Monomial(exps), Rational::one());
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms<S: AsRef<str>>(
        names: &[S],
        terms: impl IntoIterator<Item = (Rational, Vec<u32>)>,
    ) -> Result<Self> {
        let vars = Arc::new(
            names
                .iter()
                .map(|s| s.as_ref().to_string())
                .collect::<Vec<_>>(),
        );
        let mut p = Self::empty(vars);
        for (c, exps) in terms {
            if exps.len() != names.len() {
                return Err(Error::DimensionMismatch {
                    expected: names.len(),
                    actual: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn variable_list(&self) -> Arc<Vec<String>> {
        self.vars.clone()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_constant())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Total degree at most one.
    pub fn is_affine(&self) -> bool {
        self.total_degree() <= 1
    }

    /// Coefficient of the degree-one monomial in `var`.
    pub fn linear_coefficient(&self, var: usize) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 1 && m.0[var] == 1)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// used variable.
    pub fn over(&self, vars: &Arc<Vec<String>>) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return Ok(Polynomial {
                vars: vars.clone(),
                terms: self.terms.clone(),
            });
        }
        let map = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let used = self.terms.keys().any(|m| m.0[i] > 0);
                match vars.iter().position(|v| v == name) {
                    Some(j) => Ok(Some(j)),
                    None if !used => Ok(None),
                    None => Err(Error::UnknownVariable(name.clone())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::empty(vars.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] += e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return (self.clone(), other.with_vars_unchecked(&self.vars));
        }
        if other.used_variables().is_empty() {
            return (
                self.clone(),
                other.over(&self.vars).expect("constants fit any ring"),
            );
        }
        if self.used_variables().is_empty() {
            return (
                self.over(&other.vars).expect("constants fit any ring"),
                other.clone(),
            );
        }
        let mut union: Vec<String> = (*self.vars).clone();
        for v in other.vars.iter() {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        let union = Arc::new(union);
        (
            self.over(&union).expect("union contains all variables"),
            other.over(&union).expect("union contains all variables"),
        )
    }

    fn with_vars_unchecked(&self, vars: &Arc<Vec<String>>) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = Self::empty(a.vars.clone());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::empty(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Self {
        if self.degree_in(var) == 0 {
            return self.clone();
        }
        let value = value.over(&self.vars).unwrap_or_else(|_| value.clone());
        let mut powers: Vec<Polynomial> = vec![self.one_like()];
        let mut out = Self::empty(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(&value);
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[var] = 0;
            let mut base = Self::empty(self.vars.clone());
            base.terms.insert(Monomial(rest), c.clone());
            out = out.add(&base.mul(&powers[e]));
        }
        out
    }

    /// Replaces variables by name; names not present are ignored.
    pub fn substitute_named(&self, name: &str, value: &Polynomial) -> Self {
        match self.index_of(name) {
            Some(i) => self.substitute(i, value),
            None => self.clone(),
        }
    }

    /// Exact evaluation at a rational point given in variable order.
    /// Constants evaluate to themselves at any point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            if let Some(c) = self.constant_value() {
                return Ok(c);
            }
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                actual: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer polynomial with coprime coefficients and the same zero set:
    /// denominators cleared, content removed, leading (highest grlex) term
    /// positive.
    pub fn primitive_integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        let l = self.denominator_lcm();
        let ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    m.clone(),
                    (c * Rational::from_integer(l.clone())).to_integer(),
                )
            })
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        let sign = match ints.last() {
            Some((_, c)) if c.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        let divisor = content * sign;
        ints.into_iter().map(|(m, c)| (m, c / &divisor)).collect()
    }

    /// Coefficients (lowest degree first) of the primitive integer form when
    /// the polynomial involves exactly one variable.
    pub fn as_univariate_integer(&self) -> Result<(usize, Vec<BigInt>)> {
        let used = self.used_variables();
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if used.len() != 1 {
            return Err(Error::NotUnivariate(used.len()));
        }
        let var = used[0];
        let degree = self.degree_in(var) as usize;
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for (m, c) in self.primitive_integer_terms() {
            coeffs[m.0[var] as usize] = c;
        }
        Ok((var, coeffs))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl RingOps for Polynomial {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, r: &Rational) -> Self {
        Polynomial::scale(self, r)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Self::empty(self.vars.clone())
    }
    fn one_like(&self) -> Self {
        let mut p = Self::empty(self.vars.clone());
        p.terms
            .insert(Monomial::constant(self.vars.len()), Rational::one());
        p
    }
}

impl CoefficientRing for Polynomial {
    fn zero_value() -> Self {
        Polynomial::constant(Rational::zero())
    }
    fn one_value() -> Self {
        Polynomial::constant(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Polynomial::constant(r.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.constant_value()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
