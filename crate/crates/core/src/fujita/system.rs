use super::{Branch, Mode};
use crate::error::{Error, Result};
use crate::series::Rational;
use crate::solve::Polynomial;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Which manifold of the pair an equation talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    M,
    D,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::M => "M",
            Side::D => "D",
        })
    }
}

/// Where an equation comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Coefficient of `(y+1)^index` in chi_y agrees with projective space.
    /// Even indices are the `A_k`; odd ones only appear in full mode.
    Expansion {
        side: Side,
        index: usize,
    },
    /// `sum_k (-1)^k c_k(M) = (-1)^n`.
    AlternatingSum,
    Custom(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Expansion { side, index } if index % 2 == 0 => {
                write!(f, "A_{}({side})", index / 2)
            }
            Provenance::Expansion { side, index } => write!(f, "a_{index}({side})"),
            Provenance::AlternatingSum => f.write_str("alternating_sum"),
            Provenance::Custom(s) => f.write_str(s),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "alternating_sum" {
            return Ok(Provenance::AlternatingSum);
        }
        let parse_expansion = |rest: &str, even: bool| -> Option<Provenance> {
            let (num, side) = rest.split_once('(')?;
            let side = match side {
                "M)" => Side::M,
                "D)" => Side::D,
                _ => return None,
            };
            let k: usize = num.parse().ok()?;
            let index = if even { 2 * k } else { k };
            (even || index % 2 == 1).then_some(Provenance::Expansion { side, index })
        };
        let parsed = if let Some(rest) = s.strip_prefix("A_") {
            parse_expansion(rest, true)
        } else if let Some(rest) = s.strip_prefix("a_") {
            parse_expansion(rest, false)
        } else {
            None
        };
        Ok(parsed.unwrap_or_else(|| Provenance::Custom(s.to_string())))
    }
}

/// `polynomial = 0`, tagged with its origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub provenance: Provenance,
    pub polynomial: Polynomial,
}

/// The `(n, branch, mode)` a generated system was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemOrigin {
    pub n: usize,
    pub branch: Branch,
    pub mode: Mode,
}

/// Polynomial equations over the rationals in a declared list of integer
/// unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSystem {
    origin: Option<SystemOrigin>,
    variables: Arc<Vec<String>>,
    equations: Vec<Equation>,
    notes: Vec<String>,
}

impl EquationSystem {
    /// Every equation may only use declared variables; polynomials are
    /// re-expressed over the declared list.
    pub fn new(
        origin: Option<SystemOrigin>,
        variables: Vec<String>,
        equations: Vec<Equation>,
    ) -> Result<Self> {
        let variables = Arc::new(variables);
        let equations = equations
            .into_iter()
            .map(|eq| {
                Ok(Equation {
                    polynomial: eq.polynomial.over(&variables)?,
                    provenance: eq.provenance,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            origin,
            variables,
            equations,
            notes: Vec::new(),
        })
    }

    pub(crate) fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    pub fn origin(&self) -> Option<SystemOrigin> {
        self.origin
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_list(&self) -> Arc<Vec<String>> {
        self.variables.clone()
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Log of generation decisions (e.g. equations dropped as `0 = 0`).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Values of every equation at `point` (variable order).
    pub fn residuals(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.equations
            .iter()
            .map(|eq| eq.polynomial.evaluate(point))
            .collect()
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> Result<bool> {
        Ok(self
            .residuals(point)?
            .iter()
            .all(|r| r == &Rational::from_integer(0.into())))
    }

    pub fn to_json_value(&self) -> SystemJson {
        SystemJson {
            n: self.origin.map(|o| o.n),
            branch: self.origin.map(|o| o.branch),
            mode: self.origin.map(|o| o.mode),
            variables: self.variables.to_vec(),
            equations: self
                .equations
                .iter()
                .map(|eq| EquationJson {
                    provenance: eq.provenance.to_string(),
                    monomials: eq
                        .polynomial
                        .terms()
                        .rev()
                        .map(|(m, c)| MonomialJson {
                            coeff_num: c.numer().to_string(),
                            coeff_den: c.denom().to_string(),
                            exponents: m.exponents().to_vec(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value())
            .expect("system JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SystemJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(raw)
    }
}

impl TryFrom<SystemJson> for EquationSystem {
    type Error = Error;

    fn try_from(raw: SystemJson) -> Result<Self> {
        let origin = match (raw.n, raw.branch, raw.mode) {
            (Some(n), Some(branch), Some(mode)) => Some(SystemOrigin { n, branch, mode }),
            (None, None, None) => None,
            _ => {
                return Err(Error::Parse(
                    "n, branch and mode must be given together".into(),
                ))
            }
        };
        let parse_int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
        };
        let equations = raw
            .equations
            .into_iter()
            .map(|eq| {
                let terms = eq
                    .monomials
                    .into_iter()
                    .map(|m| {
                        let den = parse_int(&m.coeff_den)?;
                        if den == BigInt::from(0) {
                            return Err(Error::Parse("zero denominator".into()));
                        }
                        Ok((Rational::new(parse_int(&m.coeff_num)?, den), m.exponents))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Equation {
                    provenance: eq.provenance.parse()?,
                    polynomial: Polynomial::from_terms(&raw.variables, terms)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        EquationSystem::new(origin, raw.variables, equations)
    }
}

/// Serialized form; integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: Option<usize>,
    pub branch: Option<Branch>,
    pub mode: Option<Mode>,
    pub variables: Vec<String>,
    pub equations: Vec<EquationJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationJson {
    pub provenance: String,
    pub monomials: Vec<MonomialJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub coeff_num: String,
    pub coeff_den: String,
    pub exponents: Vec<u32>,
}
