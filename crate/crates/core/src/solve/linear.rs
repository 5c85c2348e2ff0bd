use super::Polynomial;
use crate::fujita::{Equation, EquationSystem, Provenance};
use crate::series::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Rational multipliers on a list of equations, keyed by equation index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination(BTreeMap<usize, Rational>);

impl Combination {
    pub fn unit(index: usize) -> Self {
        Combination(BTreeMap::from([(index, Rational::one())]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut c = Combination::default();
        for (i, k) in terms {
            c.add_term(i, k);
        }
        c
    }

    fn add_term(&mut self, index: usize, k: Rational) {
        let entry = self.0.entry(index).or_insert_with(Rational::zero);
        *entry += k;
        if entry.is_zero() {
            self.0.remove(&index);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&i, k)| (i, k))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Combination(self.0.iter().map(|(&i, c)| (i, c * k)).collect())
    }

    /// `self + k * other`.
    pub fn plus_scaled(&self, other: &Self, k: &Rational) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.0 {
            out.add_term(i, c * k);
        }
        out
    }

    /// `sum_i k_i * equations[i]`; `None` if an index is out of range.
    pub fn apply(&self, equations: &[Polynomial]) -> Option<Polynomial> {
        let mut acc = Polynomial::constant(Rational::zero());
        for (&i, k) in &self.0 {
            acc = acc.add(&equations.get(i)?.scale(k));
        }
        Some(acc)
    }
}

/// `variable = value`, where `value` no longer involves `variable` or any
/// earlier-eliminated variable. `combination`, applied to the equations
/// as they stand after the earlier substitutions, equals
/// `variable - value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub variable: usize,
    pub value: Polynomial,
    pub combination: Combination,
}

impl Substitution {
    pub fn describe(&self, variables: &[String]) -> String {
        format!("{} = {}", variables[self.variable], self.value)
    }
}

/// A combination of the input equations that reduces to a nonzero constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Inconsistency {
    pub combination: Combination,
    pub constant: Rational,
}

/// An equation left over after elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedEquation {
    /// Index of the input equation it started from.
    pub origin: usize,
    pub polynomial: Polynomial,
    pub combination: Combination,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearReduction {
    variables: Arc<Vec<String>>,
    pub substitutions: Vec<Substitution>,
    pub remaining: Vec<ReducedEquation>,
    /// Input equations that became `0 = 0`.
    pub dropped: Vec<usize>,
    pub inconsistency: Option<Inconsistency>,
}

impl LinearReduction {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Each eliminated variable as a polynomial in the free variables only.
    pub fn resolved(&self) -> Vec<(usize, Polynomial)> {
        let mut out: Vec<(usize, Polynomial)> = Vec::new();
        for s in self.substitutions.iter().rev() {
            let mut v = s.value.clone();
            for (var, val) in &out {
                v = v.substitute(*var, val);
            }
            out.push((s.variable, v));
        }
        out.reverse();
        out
    }

    pub fn eliminated(&self) -> Vec<usize> {
        self.substitutions.iter().map(|s| s.variable).collect()
    }

    /// Variables that were not eliminated, in declaration order.
    pub fn free_variables(&self) -> Vec<usize> {
        let gone = self.eliminated();
        (0..self.variables.len())
            .filter(|v| !gone.contains(v))
            .collect()
    }

    /// The remaining equations as a system over the same variables, tagged
    /// with the provenance of the equation each one started from.
    pub fn reduced_system(&self, original: &EquationSystem) -> EquationSystem {
        let equations = self
            .remaining
            .iter()
            .map(|r| Equation {
                provenance: original
                    .equations()
                    .get(r.origin)
                    .map(|e| e.provenance.clone())
                    .unwrap_or_else(|| Provenance::Custom(format!("eq{}", r.origin))),
                polynomial: r.polynomial.clone(),
            })
            .collect();
        EquationSystem::new(original.origin(), original.variables().to_vec(), equations)
            .expect("reduced equations use declared variables")
    }

    pub fn trace(&self) -> Vec<String> {
        self.substitutions
            .iter()
            .map(|s| s.describe(&self.variables))
            .collect()
    }
}

impl fmt::Display for LinearReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.trace() {
            writeln!(f, "{line}")?;
        }
        if let Some(inc) = &self.inconsistency {
            writeln!(f, "inconsistent: 0 = {}", inc.constant)?;
        }
        for r in &self.remaining {
            writeln!(f, "{} = 0", r.polynomial)?;
        }
        Ok(())
    }
}

/// Gaussian elimination over the affine-linear equations, repeated until no
/// affine equation remains (substitution can make nonlinear equations
/// linear). The pivot is the last variable of the first affine equation.
pub fn linear_reduce(sys: &EquationSystem) -> LinearReduction {
    let polys: Vec<Polynomial> = sys
        .equations()
        .iter()
        .map(|e| e.polynomial.clone())
        .collect();
    reduce_polynomials(sys.variable_list(), &polys)
}

pub(crate) fn reduce_polynomials(
    variables: Arc<Vec<String>>,
    equations: &[Polynomial],
) -> LinearReduction {
    let mut working: Vec<ReducedEquation> = Vec::new();
    let mut dropped = Vec::new();
    for (i, p) in equations.iter().enumerate() {
        if p.is_zero() {
            dropped.push(i);
        } else {
            working.push(ReducedEquation {
                origin: i,
                polynomial: p.clone(),
                combination: Combination::unit(i),
            });
        }
    }
    let mut out = LinearReduction {
        variables,
        substitutions: Vec::new(),
        remaining: Vec::new(),
        dropped,
        inconsistency: None,
    };

    while let Some(pos) = working.iter().position(|w| w.polynomial.is_affine()) {
        let eq = working.remove(pos);
        let used = eq.polynomial.used_variables();
        let Some(&var) = used.last() else {
            out.inconsistency = Some(Inconsistency {
                constant: eq.polynomial.constant_term(),
                combination: eq.combination,
            });
            out.remaining = working;
            return out;
        };
        // a*var + rest = 0  =>  var - (-rest/a) = eq / a
        let a = eq.polynomial.linear_coefficient(var);
        let inv = Rational::one() / &a;
        let normalized = eq.polynomial.scale(&inv);
        let var_poly = Polynomial::variable_in(&out.variables, var);
        let value = var_poly.sub(&normalized);
        log::trace!("eliminating {} = {}", out.variables[var], value);

        let mut next = Vec::with_capacity(working.len());
        for w in working {
            let poly = w.polynomial.substitute(var, &value);
            if poly.is_zero() {
                out.dropped.push(w.origin);
            } else {
                next.push(ReducedEquation {
                    polynomial: poly,
                    ..w
                });
            }
        }
        working = next;
        out.substitutions.push(Substitution {
            variable: var,
            value,
            combination: eq.combination.scale(&inv),
        });
    }
    out.remaining = working;
    out.dropped.sort_unstable();
    out
}
