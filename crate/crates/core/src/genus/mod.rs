//! The chi_y genus: `chi_p` from Chern data through Riemann-Roch or from
//! Hodge numbers, its re-expansion about `y = -1`, and the `A_k` view.

mod hodge;

pub use hodge::HodgeDiamond;

use crate::chern::{
    exp_alphabet_power_sums, power_sums_to_elementary, todd_class, GradedClass, ManifoldModel,
};
use crate::error::{Error, Result};
use crate::series::{alternate, big, binomial, int, rat, CoefficientRing, Rational};
use num_bigint::BigInt;
use std::fmt;

/// `chi_y = sum_p chi_p y^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiYPolynomial<C> {
    chi: Vec<C>,
}

impl<C: CoefficientRing> ChiYPolynomial<C> {
    pub fn new(chi: Vec<C>) -> Result<Self> {
        if chi.is_empty() {
            return Err(Error::InvalidDimension {
                n: 0,
                reason: "chi_y needs at least chi_0".into(),
            });
        }
        Ok(Self { chi })
    }

    pub fn dim(&self) -> usize {
        self.chi.len() - 1
    }

    pub fn chi_p(&self, p: usize) -> &C {
        &self.chi[p]
    }

    pub fn coefficients(&self) -> &[C] {
        &self.chi
    }
}

impl ChiYPolynomial<Rational> {
    /// Indices `p` whose `chi_p` is not an integer. Formal Chern data need not
    /// come from a manifold, so this is a diagnostic rather than an error.
    pub fn non_integral(&self) -> Vec<usize> {
        (0..self.chi.len())
            .filter(|&p| !self.chi[p].is_integer())
            .collect()
    }

    /// `sum_p (-y)^p`, the chi_y genus of projective space.
    pub fn projective_space(n: usize) -> Self {
        Self {
            chi: (0..=n).map(|p| alternate(&int(1), p)).collect(),
        }
    }
}

impl fmt::Display for ChiYPolynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, &self.chi, "y")
    }
}

/// Coefficients `a_j` with `chi_y = sum_j a_j (y+1)^j`; `A_k = a_{2k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinusOneExpansion<C> {
    coeffs: Vec<C>,
}

impl<C: CoefficientRing> MinusOneExpansion<C> {
    pub fn coefficient(&self, j: usize) -> Option<&C> {
        self.coeffs.get(j)
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    /// `A_k`, or `None` when `2k` exceeds the degree (it vanishes there).
    pub fn a_k(&self, k: usize) -> Option<&C> {
        self.coeffs.get(2 * k)
    }

    /// Re-expands in powers of `y`.
    pub fn reconstruct(&self) -> ChiYPolynomial<C> {
        let n = self.coeffs.len() - 1;
        let chi = (0..=n)
            .map(|p| {
                (p..=n).fold(C::zero_value(), |acc, j| {
                    acc.plus(&self.coeffs[j].scale(&big(binomial(j, p))))
                })
            })
            .collect();
        ChiYPolynomial { chi }
    }
}

impl fmt::Display for MinusOneExpansion<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, &self.coeffs, "(y+1)")
    }
}

fn write_polynomial(f: &mut fmt::Formatter<'_>, coeffs: &[Rational], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c == &int(0) {
            continue;
        }
        let negative = c < &int(0);
        let abs = if negative { -c } else { c.clone() };
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs == int(1) {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `ch(Omega^p)` for every `p`, as elementary symmetric functions of the
/// alphabet `{e^{-x_i}}`. Index `p` holds `E_p`, with `E_0 = 1`.
fn cotangent_exterior_characters<C: CoefficientRing>(m: &ManifoldModel<C>) -> Vec<GradedClass<C>> {
    let n = m.dim();
    let alphabet = exp_alphabet_power_sums(m.chern(), &int(-1), n);
    let mut e = vec![GradedClass::one(n)];
    e.extend(power_sums_to_elementary(&alphabet, n).expect("n power sums for rank n"));
    e
}

/// Top-degree coefficient of `a * b` without forming the full product.
fn top_pairing<C: CoefficientRing>(a: &GradedClass<C>, b: &GradedClass<C>) -> C {
    let n = a.order();
    (0..=n).fold(C::zero_value(), |acc, i| {
        let (u, v) = (a.coeff(i), b.coeff(n - i));
        if u.is_zero_value() || v.is_zero_value() {
            acc
        } else {
            acc.plus(&u.times(v))
        }
    })
}

/// `chi_p = integral of ch(Omega^p) Td`.
pub fn chi_p_from_chern<C: CoefficientRing>(m: &ManifoldModel<C>, p: usize) -> Result<C> {
    let n = m.dim();
    if p > n {
        return Err(Error::IndexOutOfRange { index: p, max: n });
    }
    let e = cotangent_exterior_characters(m);
    let td = todd_class(m.chern());
    m.integrate(&e[p].mul(&td)?)
}

pub fn chi_y_from_chern<C: CoefficientRing>(m: &ManifoldModel<C>) -> ChiYPolynomial<C> {
    let e = cotangent_exterior_characters(m);
    let td = todd_class(m.chern());
    ChiYPolynomial {
        chi: e.iter().map(|ep| top_pairing(ep, &td)).collect(),
    }
}

/// `chi_p = sum_q (-1)^q h^{p,q}`.
pub fn chi_y_from_hodge(h: &HodgeDiamond) -> ChiYPolynomial<Rational> {
    let n = h.dim();
    let chi = (0..=n)
        .map(|p| {
            (0..=n).fold(int(0), |acc, q| {
                acc + alternate(&big(BigInt::from(h.get(p, q))), q)
            })
        })
        .collect();
    ChiYPolynomial { chi }
}

/// Exact Taylor re-expansion about `y = -1`, all `n + 1` coefficients.
pub fn expand_at_minus_one<C: CoefficientRing>(chi: &ChiYPolynomial<C>) -> MinusOneExpansion<C> {
    let n = chi.dim();
    // y^p = sum_j binom(p, j) (-1)^{p-j} (y+1)^j
    let coeffs = (0..=n)
        .map(|j| {
            (j..=n).fold(C::zero_value(), |acc, p| {
                let c = &chi.chi[p];
                if c.is_zero_value() {
                    return acc;
                }
                acc.plus(&alternate(&c.scale(&big(binomial(p, j))), p - j))
            })
        })
        .collect();
    MinusOneExpansion { coeffs }
}

/// `n(3n-5)/24 c_n + 1/12 c_1 c_{n-1}`, the `(y+1)^2` coefficient.
pub fn a1_closed_form<C: CoefficientRing>(m: &ManifoldModel<C>) -> Result<C> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            reason: "the (y+1)^2 formula needs n >= 2".into(),
        });
    }
    let c = m.chern();
    let ni = n as i64;
    let euler = c.get(n).scale(&rat(ni * (3 * ni - 5), 24));
    let c1_cn1 = c.get(1).times(&c.get(n - 1)).scale(&rat(1, 12));
    Ok(euler.plus(&c1_cn1))
}

/// Values of `c_n(M)`, `c_{n-1}(D)`, `c_1 c_{n-1}(M)` and `c_1 c_{n-2}(D)`
/// shared with `(P^n, P^{n-1})` once `A_0` and `A_1` agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinnedProducts {
    pub euler_m: BigInt,
    pub euler_d: BigInt,
    pub c1_cn1_m: BigInt,
    pub c1_cn2_d: BigInt,
}

pub fn pinned_products(n: usize) -> Result<PinnedProducts> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            reason: "the pair (M, D) needs n >= 2".into(),
        });
    }
    let n = BigInt::from(n);
    let one = BigInt::from(1);
    Ok(PinnedProducts {
        euler_m: &n + &one,
        euler_d: n.clone(),
        c1_cn1_m: &n * (&n + &one) * (&n + &one) / 2,
        c1_cn2_d: (&n - &one) * &n * &n / 2,
    })
}
