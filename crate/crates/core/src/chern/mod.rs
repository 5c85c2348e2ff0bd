//! Symmetric-function calculus on formal Chern roots in `Z[x]/(x^{n+1})`.
//!
//! Classes are scalar-per-degree lists: the degree-`k` entry is the
//! coefficient of `x^k`. Chern roots never exist as objects; everything is
//! expressed through their power sums and elementary symmetric functions.

use crate::error::{Error, Result};
use crate::series::{
    alternate, big, binomial, factorial, int, CoefficientRing, Rational, RingOps, TruncatedSeries,
};
use num_traits::One;
use std::sync::OnceLock;

/// A class in `Z[x]/(x^{n+1})` (or its extension by another coefficient
/// ring); the truncation order is the ambient dimension.
pub type GradedClass<C> = TruncatedSeries<C>;

/// Formal Chern data `c_1..c_n`; `c_0 = 1` is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernVector<C> {
    entries: Vec<C>,
}

impl<C: CoefficientRing> ChernVector<C> {
    pub fn new(entries: Vec<C>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimension {
                n: 0,
                reason: "a Chern vector needs at least c_1".into(),
            });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `c_i`, with `c_0 = 1` and `c_i = 0` above the dimension.
    pub fn get(&self, i: usize) -> C {
        match i {
            0 => C::one_value(),
            i if i <= self.entries.len() => self.entries[i - 1].clone(),
            _ => C::zero_value(),
        }
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    /// `1 + c_1 x + ... + c_n x^n`.
    pub fn total_class(&self) -> GradedClass<C> {
        let n = self.dim();
        GradedClass::from_coefficients(n, (0..=n).map(|i| self.get(i)).collect())
    }

    pub fn map<D: CoefficientRing>(&self, f: impl Fn(&C) -> D) -> ChernVector<D> {
        ChernVector {
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl ChernVector<Rational> {
    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&c| int(c)).collect())
    }
}

/// A manifold whose even cohomology is `Z[x]/(x^{n+1})` with `x^n[M] = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldModel<C> {
    chern: ChernVector<C>,
}

impl<C: CoefficientRing> ManifoldModel<C> {
    pub fn new(chern: ChernVector<C>) -> Self {
        Self { chern }
    }

    pub fn dim(&self) -> usize {
        self.chern.dim()
    }

    pub fn chern(&self) -> &ChernVector<C> {
        &self.chern
    }

    /// Pairing with the fundamental class: the coefficient of `x^n`.
    pub fn integrate(&self, class: &GradedClass<C>) -> Result<C> {
        integrate(self, class)
    }
}

pub fn integrate<C: CoefficientRing>(m: &ManifoldModel<C>, class: &GradedClass<C>) -> Result<C> {
    if class.order() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            actual: class.order(),
        });
    }
    Ok(class.coeff(m.dim()).clone())
}

/// Power sums `p_1..p_n` of the Chern roots (Newton's identities).
pub fn chern_to_power_sums<C: CoefficientRing>(c: &ChernVector<C>) -> Vec<C> {
    let n = c.dim();
    let mut p: Vec<C> = Vec::with_capacity(n);
    for k in 1..=n {
        // p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
        let mut acc = alternate(&c.get(k).scale(&int(k as i64)), k - 1);
        for i in 1..k {
            let term = c.get(i).times(&p[k - i - 1]);
            acc = acc.plus(&alternate(&term, i - 1));
        }
        p.push(acc);
    }
    p
}

/// Elementary symmetric functions `e_1..e_rank` from power sums
/// `p_1..p_rank` via `k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`.
///
/// Works over any ring containing the rationals, including graded classes.
pub fn power_sums_to_elementary<T: RingOps>(p: &[T], rank: usize) -> Result<Vec<T>> {
    if p.len() < rank {
        return Err(Error::IndexOutOfRange {
            index: rank,
            max: p.len(),
        });
    }
    if rank == 0 {
        return Ok(Vec::new());
    }
    let mut e: Vec<T> = Vec::with_capacity(rank + 1);
    e.push(p[0].one_like());
    for k in 1..=rank {
        let mut acc = p[0].zero_like();
        for i in 1..=k {
            let term = e[k - i].times(&p[i - 1]);
            acc = acc.plus(&alternate(&term, i - 1));
        }
        e.push(acc.scale(&Rational::new(One::one(), k.into())));
    }
    e.remove(0);
    Ok(e)
}

/// Power sums `P_1..P_rank` of the alphabet `{e^{t x_i}}`:
/// `P_k = sum_m (t k)^m p_m x^m / m!` with `p_0 = rank`.
pub fn exp_alphabet_power_sums<C: CoefficientRing>(
    c: &ChernVector<C>,
    t: &Rational,
    rank: usize,
) -> Vec<GradedClass<C>> {
    let n = c.dim();
    let p = chern_to_power_sums(c);
    let inv_fact: Vec<Rational> = (0..=n).map(|m| factorial(m).recip()).collect();
    (1..=rank)
        .map(|k| {
            let tk = t * int(k as i64);
            let mut coeffs = Vec::with_capacity(n + 1);
            coeffs.push(C::from_int(rank as i64));
            let mut power = Rational::one();
            for m in 1..=n {
                power *= &tk;
                coeffs.push(p[m - 1].scale(&(&power * &inv_fact[m])));
            }
            GradedClass::from_coefficients(n, coeffs)
        })
        .collect()
}

fn todd_log_table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| todd_log_coefficients_uncached(64))
}

fn todd_log_coefficients_uncached(order: usize) -> Vec<Rational> {
    // x/(1 - e^{-x}) = sum_m B_m (-x)^m / m!
    let b = crate::series::bernoulli_table(order);
    let coeffs: Vec<Rational> = b
        .iter()
        .enumerate()
        .map(|(m, bm)| alternate(bm, m) / factorial(m))
        .collect();
    TruncatedSeries::from_coefficients(order, coeffs)
        .log()
        .expect("constant term is B_0 = 1")
        .into_coefficients()
}

/// Coefficients `t_0..t_order` of `log(x / (1 - e^{-x}))`.
pub fn todd_log_coefficients(order: usize) -> Vec<Rational> {
    let cached = todd_log_table();
    if order < cached.len() {
        cached[..=order].to_vec()
    } else {
        todd_log_coefficients_uncached(order)
    }
}

/// `Td = exp(sum_{m>=1} t_m p_m x^m)` truncated at degree `n`.
pub fn todd_class<C: CoefficientRing>(c: &ChernVector<C>) -> GradedClass<C> {
    let n = c.dim();
    let t = todd_log_coefficients(n);
    let p = chern_to_power_sums(c);
    let mut coeffs = vec![C::zero_value()];
    coeffs.extend((1..=n).map(|m| p[m - 1].scale(&t[m])));
    GradedClass::from_coefficients(n, coeffs)
        .exp()
        .expect("constant term is zero")
}

/// `c_i(P^n) = binom(n+1, i)`.
pub fn projective_space_chern(n: usize) -> Result<ChernVector<Rational>> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            n,
            reason: "projective space needs n >= 1".into(),
        });
    }
    ChernVector::new((1..=n).map(|i| big(binomial(n + 1, i))).collect())
}
