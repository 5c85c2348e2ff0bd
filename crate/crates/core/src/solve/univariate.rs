use super::Polynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Above this Cauchy bound a root search goes through factoring the
/// constant term instead of scanning.
const SCAN_LIMIT: u64 = 10_000_000;
const TRIAL_LIMIT: u64 = 1_000_000;

/// Why the listed integer roots are all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootEvidence {
    /// `a x + b`: the only rational root is `-b/a`.
    Linear {
        #[serde(with = "super::json::big")]
        a: BigInt,
        #[serde(with = "super::json::big")]
        b: BigInt,
    },
    /// `a x^2 + b x + c`: rational roots exist only for a square
    /// discriminant.
    Quadratic {
        #[serde(with = "super::json::big")]
        discriminant: BigInt,
        square: bool,
    },
    /// Nonzero roots divide `constant`, the lowest nonzero coefficient;
    /// every candidate divisor was evaluated.
    Divisors {
        #[serde(with = "super::json::big")]
        constant: BigInt,
        candidates: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateRoots {
    pub variable: usize,
    /// Primitive integer coefficients, lowest degree first.
    pub coefficients: Vec<BigInt>,
    /// Distinct integer roots, ascending.
    pub roots: Vec<BigInt>,
    pub evidence: RootEvidence,
}

pub fn evaluate_integer(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub(crate) fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// `1 + max |a_i / a_d|`, rounded up; no root is larger in modulus.
fn cauchy_bound(coeffs: &[BigInt]) -> BigInt {
    let lead = coeffs.last().expect("nonempty").abs();
    let m = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigInt::one() + m.div_ceil(&lead)
}

/// Positive divisors of `n != 0`, if `n` can be factored by trial division
/// up to a million (a leftover cofactor below `10^12` is then prime).
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let limit = BigInt::from(TRIAL_LIMIT);
        if rest > &limit * &limit {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &q;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Integer roots of a nonzero integer polynomial (lowest degree first).
pub fn integer_roots_of(coeffs: &[BigInt]) -> Result<(Vec<BigInt>, RootEvidence)> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    match coeffs.len() {
        1 => Ok((
            Vec::new(),
            RootEvidence::Divisors {
                constant: coeffs[0].clone(),
                candidates: 0,
            },
        )),
        2 => {
            let (b, a) = (coeffs[0].clone(), coeffs[1].clone());
            let roots = if (&b % &a).is_zero() {
                vec![-(&b / &a)]
            } else {
                Vec::new()
            };
            Ok((roots, RootEvidence::Linear { a, b }))
        }
        3 => {
            let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
            let discriminant = b * b - BigInt::from(4) * a * c;
            let square = is_square(&discriminant);
            let mut roots = Vec::new();
            if square {
                let s = discriminant.sqrt();
                for num in [-b - &s, -b + &s] {
                    let den = BigInt::from(2) * a;
                    if (&num % &den).is_zero() {
                        roots.push(num / den);
                    }
                }
                roots.sort();
                roots.dedup();
            }
            Ok((
                roots,
                RootEvidence::Quadratic {
                    discriminant,
                    square,
                },
            ))
        }
        _ => divisor_search(&coeffs),
    }
}

fn divisor_search(coeffs: &[BigInt]) -> Result<(Vec<BigInt>, RootEvidence)> {
    let shift = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let g = &coeffs[shift..];
    let constant = g[0].clone();
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(BigInt::zero());
    }
    let bound = cauchy_bound(g);
    let mut candidates = 0u64;
    let mut test = |d: BigInt, roots: &mut Vec<BigInt>| {
        for x in [d.clone(), -d] {
            candidates += 1;
            if evaluate_integer(g, &x).is_zero() {
                roots.push(x);
            }
        }
    };
    match divisors(&constant) {
        Some(divs) => {
            for d in divs.into_iter().take_while(|d| *d <= bound) {
                test(d, &mut roots);
            }
        }
        None => {
            let limit = bound
                .to_u64()
                .filter(|&b| b <= SCAN_LIMIT)
                .ok_or_else(|| Error::RootBoundTooLarge(bound.to_string()))?;
            for d in 1..=limit {
                let d = BigInt::from(d);
                if (&constant % &d).is_zero() {
                    test(d, &mut roots);
                }
            }
        }
    }
    roots.sort();
    Ok((
        roots,
        RootEvidence::Divisors {
            constant,
            candidates,
        },
    ))
}

/// Integer roots of a polynomial in exactly one variable, after clearing
/// denominators to a primitive integer polynomial.
pub fn univariate_integer_roots(p: &Polynomial) -> Result<UnivariateRoots> {
    let (variable, coefficients) = p.as_univariate_integer()?;
    let (roots, evidence) = integer_roots_of(&coefficients)?;
    Ok(UnivariateRoots {
        variable,
        coefficients,
        roots,
        evidence,
    })
}

/// Independent check that `evidence` proves `roots` are all the integer
/// roots of `coeffs`. Returns a reason on failure.
pub fn check_root_evidence(
    coeffs: &[BigInt],
    roots: &[BigInt],
    evidence: &RootEvidence,
) -> std::result::Result<(), String> {
    for r in roots {
        if !evaluate_integer(coeffs, r).is_zero() {
            return Err(format!("{r} is not a root"));
        }
    }
    let degree = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or("zero polynomial")?;
    match evidence {
        RootEvidence::Linear { a, b } => {
            if degree != 1 || coeffs[1] != *a || coeffs[0] != *b {
                return Err("linear evidence does not match the polynomial".into());
            }
            let expected = usize::from((b % a).is_zero());
            (roots.len() == expected)
                .then_some(())
                .ok_or_else(|| "linear root count mismatch".into())
        }
        RootEvidence::Quadratic {
            discriminant,
            square,
        } => {
            if degree != 2 {
                return Err("quadratic evidence on a non-quadratic".into());
            }
            let d = &coeffs[1] * &coeffs[1] - BigInt::from(4) * &coeffs[2] * &coeffs[0];
            if d != *discriminant || is_square(&d) != *square {
                return Err("discriminant mismatch".into());
            }
            if !square && !roots.is_empty() {
                return Err("roots listed with a non-square discriminant".into());
            }
            // a square discriminant gives at most the two listed candidates
            let found = integer_roots_of(coeffs).map_err(|e| e.to_string())?.0;
            (found == roots)
                .then_some(())
                .ok_or_else(|| "root list incomplete".into())
        }
        RootEvidence::Divisors { constant, .. } => {
            let shift = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
            if coeffs[shift] != *constant {
                return Err("constant term mismatch".into());
            }
            let found = integer_roots_of(coeffs).map_err(|e| e.to_string())?.0;
            (found == roots)
                .then_some(())
                .ok_or_else(|| "divisor scan finds different roots".into())
        }
    }
}
