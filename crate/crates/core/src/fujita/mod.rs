//! The compactification pair `(M, D)`: adjunction, the two admissible first
//! Chern classes, the parity obstruction, and generation of the Chern-number
//! system that a non-standard pair would have to satisfy.

mod system;

pub use system::{
    Equation, EquationJson, EquationSystem, MonomialJson, Provenance, Side, SystemJson,
    SystemOrigin,
};

use crate::chern::{projective_space_chern, ChernVector, ManifoldModel};
use crate::error::{Error, Result};
use crate::genus::{chi_y_from_chern, expand_at_minus_one, pinned_products, MinusOneExpansion};
use crate::series::{alternate, big, int, CoefficientRing, Rational};
use crate::solve::Polynomial;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which root of the first-Chern-class dichotomy is assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `c_1(M) = n + 1`.
    Standard,
    /// `c_1(M) = (n + 1)/2`.
    Half,
}

impl Branch {
    /// `c_1(M)` in dimension `n`; the half branch needs `n` odd.
    pub fn first_chern(self, n: usize) -> Result<BigInt> {
        match self {
            Branch::Standard => Ok(BigInt::from(n + 1)),
            Branch::Half if n % 2 == 1 => Ok(BigInt::from(n.div_ceil(2))),
            Branch::Half => Err(Error::InvalidBranch {
                branch: self.to_string(),
                n,
                reason: "(n+1)/2 is not an integer".into(),
            }),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Standard => "standard",
            Branch::Half => "half",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Branch::Standard),
            "half" => Ok(Branch::Half),
            other => Err(Error::Parse(format!("unknown branch {other:?}"))),
        }
    }
}

/// Which expansion coefficients become equations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Only the even coefficients `A_k`.
    #[default]
    #[serde(rename = "ak")]
    AkOnly,
    /// Every coefficient of the `(y+1)`-expansion (stronger than the `A_k`
    /// system; assumes full Hodge-number agreement).
    #[serde(rename = "full")]
    FullChiY,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::AkOnly => "ak",
            Mode::FullChiY => "full",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ak" => Ok(Mode::AkOnly),
            "full" => Ok(Mode::FullChiY),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// `M` with its divisor `D`, whose Chern data follow from adjunction.
#[derive(Clone, Debug, PartialEq)]
pub struct PairModel<C> {
    pub n: usize,
    pub chern_m: ChernVector<C>,
    pub chern_d: ChernVector<C>,
    pub branch: Branch,
}

impl<C: CoefficientRing> PairModel<C> {
    pub fn new(chern_m: ChernVector<C>, branch: Branch) -> Result<Self> {
        let chern_d = adjunction_chern(&chern_m)?;
        Ok(Self {
            n: chern_m.dim(),
            chern_m,
            chern_d,
            branch,
        })
    }

    /// `c_i(M) = c_i(D) + c_{i-1}(D)` for `1 <= i <= n-1`.
    pub fn adjunction_holds(&self) -> bool {
        (1..self.n).all(|i| {
            self.chern_m
                .get(i)
                .minus(&self.chern_d.get(i).plus(&self.chern_d.get(i - 1)))
                .is_zero_value()
        })
    }
}

/// `c_i(D) = c_i(M) - c_{i-1}(D)` with `c_0(D) = 1`, for `1 <= i <= n-1`.
pub fn adjunction_chern<C: CoefficientRing>(chern_m: &ChernVector<C>) -> Result<ChernVector<C>> {
    let n = chern_m.dim();
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            reason: "the divisor of a curve is a point".into(),
        });
    }
    let mut d: Vec<C> = Vec::with_capacity(n - 1);
    let mut prev = C::one_value();
    for i in 1..n {
        let next = chern_m.get(i).minus(&prev);
        d.push(next.clone());
        prev = next;
    }
    ChernVector::new(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyRoot {
    pub value: Rational,
    pub integral: bool,
}

/// Exact rational square root, if there is one.
pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Residual `n(n+1)^2 / (2c) - n - (n-1)n^2 / (2(c-1))` of the first-Chern
/// equation obtained by combining adjunction with the pinned products.
pub fn dichotomy_residual(n: usize, c1: &Rational) -> Option<Rational> {
    if c1.is_zero() || *c1 == int(1) {
        return None;
    }
    let ni = n as i64;
    let lhs = int(ni * (ni + 1) * (ni + 1)) / (int(2) * c1);
    let rhs = int(ni) + int((ni - 1) * ni * ni) / (int(2) * (c1 - int(1)));
    Some(lhs - rhs)
}

/// Solutions in `c_1(M)` of the equation combining adjunction with the
/// pinned Chern products, sorted descending.
pub fn dichotomy_roots(n: usize) -> Result<Vec<DichotomyRoot>> {
    let pinned = pinned_products(n)?;
    // P_M / c = E_D + P_D / (c - 1)
    //   <=>  E_D c^2 - (P_M + E_D - P_D) c + P_M = 0   (c != 0, 1)
    let (pm, ed, pd) = (
        big(pinned.c1_cn1_m),
        big(pinned.euler_d),
        big(pinned.c1_cn2_d),
    );
    let a = ed.clone();
    let b = -(&pm + &ed - &pd);
    let c = pm;
    let disc = &b * &b - int(4) * &a * &c;
    let Some(root) = rational_sqrt(&disc) else {
        return Ok(Vec::new());
    };
    let mut roots: Vec<Rational> =
        vec![(-&b + &root) / (int(2) * &a), (-&b - &root) / (int(2) * &a)];
    roots.dedup();
    Ok(roots
        .into_iter()
        .filter(|r| !r.is_zero() && *r != int(1))
        .map(|value| DichotomyRoot {
            integral: value.is_integer(),
            value,
        })
        .collect())
}

/// The half branch survives integrality and the mod-2 agreement of
/// `c_1(M)` with `c_1(P^n)` (both reduce to `w_2`) exactly when
/// `n = 3 (mod 4)`.
pub fn parity_admissible(n: usize) -> bool {
    if n < 2 || n.is_multiple_of(2) {
        return false;
    }
    let half = n.div_ceil(2);
    half % 2 == (n + 1) % 2
}

/// Chern numbers forced in the half branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForcedValues {
    Consistent {
        /// `c_{n-1}(M) = n(n+1)`.
        c_m_top_minus_one: BigInt,
        /// `c_{n-2}(D) = n^2`.
        c_d_top_minus_two: BigInt,
    },
    /// Two forced values land on the same Chern class.
    Inconsistent {
        side: Side,
        index: usize,
        first: BigInt,
        second: BigInt,
    },
}

pub fn forced_values(n: usize) -> Result<ForcedValues> {
    if n < 3 || n % 4 != 3 {
        return Err(Error::InvalidDimension {
            n,
            reason: "forced values exist only for n = 3 (mod 4)".into(),
        });
    }
    let pinned = pinned_products(n)?;
    let c1_m = Branch::Half.first_chern(n)?;
    let c1_d = &c1_m - 1;
    let c_m_top_minus_one = &pinned.c1_cn1_m / &c1_m;
    let c_d_top_minus_two = &pinned.c1_cn2_d / &c1_d;

    let mut forced: BTreeMap<(Side, usize), BigInt> = BTreeMap::new();
    let entries = [
        (Side::M, 1, c1_m),
        (Side::M, n, pinned.euler_m),
        (Side::D, 1, c1_d),
        (Side::D, n - 1, pinned.euler_d),
        (Side::M, n - 1, c_m_top_minus_one.clone()),
        (Side::D, n - 2, c_d_top_minus_two.clone()),
    ];
    for (side, index, value) in entries {
        if let Some(first) = forced.get(&(side, index)) {
            if *first != value {
                return Ok(ForcedValues::Inconsistent {
                    side,
                    index,
                    first: first.clone(),
                    second: value,
                });
            }
        }
        forced.insert((side, index), value);
    }
    Ok(ForcedValues::Consistent {
        c_m_top_minus_one,
        c_d_top_minus_two,
    })
}

/// `sum_{k=0}^{n} (-1)^k c_k - (-1)^n`, zero exactly when the alternating
/// Chern sum identity holds.
pub fn alternating_sum_residual<C: CoefficientRing>(c: &ChernVector<C>) -> C {
    let n = c.dim();
    let sum = (0..=n).fold(C::zero_value(), |acc, k| acc.plus(&alternate(&c.get(k), k)));
    sum.minus(&alternate(&C::one_value(), n))
}

pub fn alternating_sum_check(c: &ChernVector<Rational>) -> bool {
    alternating_sum_residual(c).is_zero()
}

/// Names of the unknowns `c_2(M)..c_{n-1}(M)`.
pub fn unknown_names(n: usize) -> Vec<String> {
    (2..n).map(|i| format!("c{i}")).collect()
}

fn expansion_of<C: CoefficientRing>(c: &ChernVector<C>) -> MinusOneExpansion<C> {
    expand_at_minus_one(&chi_y_from_chern(&ManifoldModel::new(c.clone())))
}

/// Chern vector of `M` with `c_1` from the branch, `c_n = n + 1`, and the
/// remaining entries symbolic.
pub fn symbolic_chern_m(n: usize, branch: Branch) -> Result<ChernVector<Polynomial>> {
    let c1 = branch.first_chern(n)?;
    let unknowns = Polynomial::generators(&unknown_names(n));
    let mut entries = vec![Polynomial::constant(big(c1))];
    entries.extend(unknowns);
    entries.push(Polynomial::constant(int(n as i64 + 1)));
    ChernVector::new(entries)
}

/// Builds the system of Chern-number equations a pair `(M, D)` with the
/// chosen branch must satisfy, over the unknowns `c_2(M)..c_{n-1}(M)`.
///
/// Emitted, in order: expansion coefficients of `chi_y(M)` against `P^n`
/// (`A_1..`; plus odd ones in full mode), the same for `D` against
/// `P^{n-1}` starting at `A_0(D)`, then the alternating Chern sum.
/// Equations that vanish identically are dropped and noted.
pub fn generate_system(n: usize, branch: Branch, mode: Mode) -> Result<EquationSystem> {
    if n < 3 {
        return Err(Error::InvalidDimension {
            n,
            reason: "systems are generated for n >= 3".into(),
        });
    }
    let chern_m = symbolic_chern_m(n, branch)?;
    let pair = PairModel::new(chern_m, branch)?;

    let mut equations = Vec::new();
    let mut notes = Vec::new();
    let mut push = |provenance: Provenance, poly: Polynomial, notes: &mut Vec<String>| {
        if poly.is_zero() {
            log::debug!("dropping identically vanishing equation {provenance}");
            notes.push(format!("{provenance} vanishes identically; dropped"));
        } else {
            equations.push(Equation {
                provenance,
                polynomial: poly,
            });
        }
    };

    let sides = [
        (Side::M, &pair.chern_m, projective_space_chern(n)?, 1usize),
        (
            Side::D,
            &pair.chern_d,
            projective_space_chern(n - 1)?,
            0usize,
        ),
    ];
    for (side, chern, reference, first) in sides {
        let got = expansion_of(chern);
        let want = expansion_of(&reference);
        for index in first..got.coefficients().len() {
            if index % 2 == 1 && mode == Mode::AkOnly {
                continue;
            }
            let lhs = &got.coefficients()[index];
            let rhs = Polynomial::constant(want.coefficients()[index].clone());
            push(
                Provenance::Expansion { side, index },
                lhs.sub(&rhs),
                &mut notes,
            );
        }
    }
    push(
        Provenance::AlternatingSum,
        alternating_sum_residual(&pair.chern_m),
        &mut notes,
    );

    let origin = SystemOrigin { n, branch, mode };
    Ok(EquationSystem::new(Some(origin), unknown_names(n), equations)?.with_notes(notes))
}

/// `c_i = binom(n+1, i)` for the unknowns `c_2..c_{n-1}`.
pub fn binomial_assignment(n: usize) -> Vec<Rational> {
    (2..n)
        .map(|i| big(crate::series::binomial(n + 1, i)))
        .collect()
}

#[cfg(test)]
mod tests;
