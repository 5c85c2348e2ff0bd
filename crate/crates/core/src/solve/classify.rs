use super::enumerate::{enumerate_polynomials, no_zero_modulo, EnumerateOptions};
use super::linear::{reduce_polynomials, Combination, Substitution};
use super::univariate::{check_root_evidence, univariate_integer_roots, RootEvidence};
use super::Polynomial;
use crate::error::{Error, Result};
use crate::fujita::{generate_system, Branch, EquationSystem, Mode, MonomialJson};
use crate::series::{binomial, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Default box `|c_i| <= binom(n+1, i) * bound_scale` for generated
    /// systems.
    pub bound_scale: u64,
    /// Per-variable overrides, inclusive.
    pub bounds: BTreeMap<String, (i64, i64)>,
    /// Sieving primes for enumeration.
    pub moduli: Vec<u64>,
    /// Moduli tried for a zero-free reduction before enumerating.
    pub obstruction_moduli: Vec<u64>,
    pub workers: usize,
    pub max_box: u128,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            bound_scale: 16,
            bounds: BTreeMap::new(),
            moduli: vec![2, 3, 5, 7, 11],
            obstruction_moduli: vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27],
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_box: 100_000_000_000,
        }
    }
}

impl SolveConfig {
    pub fn bound_for(&self, sys: &EquationSystem, var: usize) -> Result<(i64, i64)> {
        let name = &sys.variables()[var];
        if let Some(&b) = self.bounds.get(name) {
            if b.0 > b.1 {
                return Err(Error::EmptyBounds(name.clone()));
            }
            return Ok(b);
        }
        let index = name.strip_prefix('c').and_then(|i| i.parse::<usize>().ok());
        match (sys.origin(), index) {
            (Some(o), Some(i)) if i <= o.n + 1 => {
                let b = (binomial(o.n + 1, i) * BigInt::from(self.bound_scale))
                    .to_i64()
                    .ok_or_else(|| Error::Config(format!("default bound for {name} overflows")))?;
                Ok((-b, b))
            }
            _ => Err(Error::Config(format!("no bound given for variable {name}"))),
        }
    }

    fn validate(&self, sys: &EquationSystem) -> Result<()> {
        for name in self.bounds.keys() {
            if !sys.variables().contains(name) {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        if self.obstruction_moduli.iter().any(|&m| m < 2) {
            return Err(Error::Config(
                "obstruction moduli must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

/// A derivation that either refutes every integer solution below it or
/// pins the solutions down.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub steps: Vec<Substitution>,
    pub conclusion: Conclusion,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Conclusion {
    /// The combination of current equations is a nonzero constant.
    LinearInconsistency {
        combination: Combination,
        constant: Rational,
    },
    /// The steps force a variable to a non-integer.
    NonIntegralValue { variable: usize, value: Rational },
    /// A univariate consequence has no integer root.
    NoIntegerRoot {
        equation: Combination,
        variable: usize,
        coefficients: Vec<BigInt>,
        evidence: RootEvidence,
    },
    /// The listed equations have no common zero modulo `modulus`.
    NoZeroModulo {
        modulus: u64,
        equations: Vec<Combination>,
    },
    /// Every variable is determined; the point is integral.
    Point { assignment: Vec<BigInt> },
    /// One case per integer root of a univariate consequence.
    Branch {
        equation: Combination,
        variable: usize,
        coefficients: Vec<BigInt>,
        roots: Vec<BigInt>,
        evidence: RootEvidence,
        cases: Vec<Certificate>,
    },
    /// The box was too large for the budget and was not scanned.
    Unsearched {
        variables: Vec<usize>,
        bounds: Vec<(i64, i64)>,
        box_size: u128,
    },
    /// Exhaustive scan of a box; says nothing outside it.
    Enumerated {
        variables: Vec<usize>,
        bounds: Vec<(i64, i64)>,
        solutions: Vec<Vec<BigInt>>,
        visited: u64,
    },
}

impl Certificate {
    /// Whether the tree proves its solution list complete (no box scans).
    pub fn is_exhaustive(&self) -> bool {
        match &self.conclusion {
            Conclusion::Enumerated { .. } | Conclusion::Unsearched { .. } => false,
            Conclusion::Branch { cases, .. } => cases.iter().all(Certificate::is_exhaustive),
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NoIntegerSolution,
    Solutions {
        solutions: Vec<Vec<BigInt>>,
        complete: bool,
    },
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NoIntegerSolution => "no_integer_solution",
            Verdict::Solutions { .. } => "solutions",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub n: Option<usize>,
    pub branch: Option<Branch>,
    pub mode: Option<Mode>,
    pub variables: Vec<String>,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Top-level substitutions, e.g. `c4 = 30`.
    pub reduction_trace: Vec<String>,
    /// Boxes scanned or skipped for budget, per variable.
    pub bounds: Vec<(String, i64, i64)>,
    pub moduli: Vec<u64>,
    pub visited: u64,
    pub elapsed_ms: u64,
}

/// What replaying a certificate establishes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayOutcome {
    /// Verified integer solutions, sorted.
    pub points: Vec<Vec<BigInt>>,
    /// No integer solution exists outside `points`.
    pub complete: bool,
}

impl ReplayOutcome {
    pub fn verdict(&self) -> Verdict {
        match (self.points.is_empty(), self.complete) {
            (true, true) => Verdict::NoIntegerSolution,
            (true, false) => Verdict::Inconclusive,
            (false, complete) => Verdict::Solutions {
                solutions: self.points.clone(),
                complete,
            },
        }
    }
}

fn constant(value: &BigInt) -> Polynomial {
    Polynomial::constant(Rational::from_integer(value.clone()))
}

/// Back-substitutes a chain of substitutions, each free of the variables
/// eliminated before it; result sorted by variable.
fn resolve(chain: &[(usize, Polynomial)]) -> Vec<(usize, Polynomial)> {
    let mut out: Vec<(usize, Polynomial)> = Vec::new();
    for (var, value) in chain.iter().rev() {
        let mut v = value.clone();
        for (w, val) in &out {
            v = v.substitute(*w, val);
        }
        out.push((*var, v));
    }
    out.sort_by_key(|(v, _)| *v);
    out
}

fn apply_steps(cur: &[Polynomial], steps: &[Substitution]) -> Vec<Polynomial> {
    let mut cur = cur.to_vec();
    for s in steps {
        cur = cur
            .iter()
            .map(|p| p.substitute(s.variable, &s.value))
            .collect();
    }
    cur
}

fn first_non_integral(resolved: &[(usize, Polynomial)]) -> Option<(usize, Rational)> {
    resolved.iter().find_map(|(v, p)| {
        p.constant_value()
            .filter(|c| !c.is_integer())
            .map(|c| (*v, c))
    })
}

struct Solver<'a> {
    sys: &'a EquationSystem,
    config: &'a SolveConfig,
    vars: Arc<Vec<String>>,
    visited: u64,
    scanned: BTreeSet<usize>,
}

impl Solver<'_> {
    fn node(
        &mut self,
        cur: Vec<Polynomial>,
        chain: Vec<(usize, Polynomial)>,
    ) -> Result<Certificate> {
        let red = reduce_polynomials(self.vars.clone(), &cur);
        let steps = red.substitutions.clone();
        if let Some(inc) = red.inconsistency {
            return Ok(Certificate {
                steps,
                conclusion: Conclusion::LinearInconsistency {
                    combination: inc.combination,
                    constant: inc.constant,
                },
            });
        }
        let mut chain = chain;
        chain.extend(steps.iter().map(|s| (s.variable, s.value.clone())));
        let resolved = resolve(&chain);
        if let Some((variable, value)) = first_non_integral(&resolved) {
            return Ok(Certificate {
                steps,
                conclusion: Conclusion::NonIntegralValue { variable, value },
            });
        }
        let determined: BTreeSet<usize> = chain.iter().map(|(v, _)| *v).collect();
        let free: Vec<usize> = (0..self.vars.len())
            .filter(|v| !determined.contains(v))
            .collect();

        if free.is_empty() {
            let assignment = resolved
                .iter()
                .map(|(_, p)| p.constant_value().expect("no free variables").to_integer())
                .collect();
            return Ok(Certificate {
                steps,
                conclusion: Conclusion::Point { assignment },
            });
        }
        if red.remaining.is_empty() {
            let names: Vec<&str> = free.iter().map(|&v| self.vars[v].as_str()).collect();
            return Err(Error::Config(format!(
                "variables {} are unconstrained",
                names.join(", ")
            )));
        }

        let after = apply_steps(&cur, &steps);
        let mut univariate: Vec<(u32, usize)> = red
            .remaining
            .iter()
            .enumerate()
            .filter(|(_, r)| r.polynomial.used_variables().len() == 1)
            .map(|(i, r)| (r.polynomial.total_degree(), i))
            .collect();
        univariate.sort();
        for (_, i) in univariate {
            let eq = &red.remaining[i];
            let roots = match univariate_integer_roots(&eq.polynomial) {
                Ok(r) => r,
                Err(Error::RootBoundTooLarge(b)) => {
                    log::debug!("root bound {b} too large; trying another equation");
                    continue;
                }
                Err(e) => return Err(e),
            };
            if roots.roots.is_empty() {
                return Ok(Certificate {
                    steps,
                    conclusion: Conclusion::NoIntegerRoot {
                        equation: eq.combination.clone(),
                        variable: roots.variable,
                        coefficients: roots.coefficients,
                        evidence: roots.evidence,
                    },
                });
            }
            let mut cases = Vec::with_capacity(roots.roots.len());
            for r in &roots.roots {
                let value = constant(r);
                let child: Vec<Polynomial> = after
                    .iter()
                    .map(|p| p.substitute(roots.variable, &value))
                    .collect();
                let mut child_chain = chain.clone();
                child_chain.push((roots.variable, value));
                cases.push(self.node(child, child_chain)?);
            }
            return Ok(Certificate {
                steps,
                conclusion: Conclusion::Branch {
                    equation: eq.combination.clone(),
                    variable: roots.variable,
                    coefficients: roots.coefficients,
                    roots: roots.roots,
                    evidence: roots.evidence,
                    cases,
                },
            });
        }

        let free_names = Arc::new(
            free.iter()
                .map(|&v| self.vars[v].clone())
                .collect::<Vec<_>>(),
        );
        let polys: Vec<Polynomial> = red
            .remaining
            .iter()
            .map(|r| r.polynomial.over(&free_names))
            .collect::<Result<_>>()?;
        for &m in &self.config.obstruction_moduli {
            if no_zero_modulo(&polys, free.len(), m) == Some(true) {
                return Ok(Certificate {
                    steps,
                    conclusion: Conclusion::NoZeroModulo {
                        modulus: m,
                        equations: red
                            .remaining
                            .iter()
                            .map(|r| r.combination.clone())
                            .collect(),
                    },
                });
            }
        }

        let bounds = free
            .iter()
            .map(|&v| self.config.bound_for(self.sys, v))
            .collect::<Result<Vec<_>>>()?;
        let options = EnumerateOptions {
            moduli: self.config.moduli.clone(),
            workers: self.config.workers,
            max_box: self.config.max_box,
        };
        let box_size = bounds
            .iter()
            .try_fold(1u128, |acc, (lo, hi)| {
                acc.checked_mul((hi - lo + 1) as u128)
            })
            .unwrap_or(u128::MAX);
        if box_size > self.config.max_box {
            log::warn!("box of {box_size} points exceeds the budget; not scanned");
            self.scanned.extend(free.iter().copied());
            return Ok(Certificate {
                steps,
                conclusion: Conclusion::Unsearched {
                    variables: free,
                    bounds,
                    box_size,
                },
            });
        }
        log::info!("enumerating {} over {:?}", free_names.join(", "), bounds);
        let found = enumerate_polynomials(&polys, &bounds, &options)?;
        self.visited += found.visited;
        self.scanned.extend(free.iter().copied());

        let mut solutions = Vec::new();
        'points: for point in found.solutions {
            let mut full = vec![Rational::zero(); self.vars.len()];
            for (&v, x) in free.iter().zip(&point) {
                full[v] = Rational::from_integer(x.clone());
            }
            let mut values = vec![BigInt::zero(); self.vars.len()];
            for (&v, x) in free.iter().zip(point) {
                values[v] = x;
            }
            for (v, p) in &resolved {
                let x = p.evaluate(&full)?;
                if !x.is_integer() {
                    continue 'points;
                }
                values[*v] = x.to_integer();
            }
            solutions.push(values);
        }
        Ok(Certificate {
            steps,
            conclusion: Conclusion::Enumerated {
                variables: free,
                bounds,
                solutions,
                visited: found.visited,
            },
        })
    }
}

/// Replays `cert` against `sys`: every substitution must follow from the
/// equations by its stated combination, every conclusion must check, and
/// every listed point must satisfy the original system exactly.
pub fn replay_certificate(
    sys: &EquationSystem,
    cert: &Certificate,
) -> std::result::Result<ReplayOutcome, String> {
    let cur: Vec<Polynomial> = sys
        .equations()
        .iter()
        .map(|e| e.polynomial.clone())
        .collect();
    let mut out = replay_node(sys, &sys.variable_list(), cur, Vec::new(), cert)?;
    out.points.sort();
    out.points.dedup();
    Ok(out)
}

fn check_point(sys: &EquationSystem, point: &[BigInt]) -> std::result::Result<(), String> {
    let q: Vec<Rational> = point
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect();
    match sys.is_satisfied_by(&q) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("point {point:?} does not satisfy the system")),
        Err(e) => Err(e.to_string()),
    }
}

fn replay_node(
    sys: &EquationSystem,
    vars: &Arc<Vec<String>>,
    mut cur: Vec<Polynomial>,
    mut chain: Vec<(usize, Polynomial)>,
    cert: &Certificate,
) -> std::result::Result<ReplayOutcome, String> {
    let apply = |c: &Combination, cur: &[Polynomial]| {
        c.apply(cur)
            .ok_or_else(|| "combination refers to a missing equation".to_string())
    };
    for s in &cert.steps {
        if s.variable >= vars.len() {
            return Err(format!("step variable {} out of range", s.variable));
        }
        let value = s.value.over(vars).map_err(|e| e.to_string())?;
        let used = value.used_variables();
        if used.contains(&s.variable) || chain.iter().any(|(v, _)| used.contains(v)) {
            return Err(format!(
                "substitution for {} is not triangular",
                vars[s.variable]
            ));
        }
        let lhs = apply(&s.combination, &cur)?;
        let rhs = Polynomial::variable_in(vars, s.variable).sub(&value);
        if lhs != rhs {
            return Err(format!(
                "step {} does not follow from its combination",
                s.describe(vars)
            ));
        }
        cur = cur
            .iter()
            .map(|p| p.substitute(s.variable, &value))
            .collect();
        chain.push((s.variable, value));
    }

    match &cert.conclusion {
        Conclusion::LinearInconsistency {
            combination,
            constant,
        } => {
            let lhs = apply(combination, &cur)?;
            if constant.is_zero() || lhs.constant_value().as_ref() != Some(constant) {
                return Err("inconsistency witness does not reduce to its constant".into());
            }
            Ok(ReplayOutcome {
                points: vec![],
                complete: true,
            })
        }
        Conclusion::NonIntegralValue { variable, value } => {
            let resolved = resolve(&chain);
            let forced = resolved
                .iter()
                .find(|(v, _)| v == variable)
                .and_then(|(_, p)| p.constant_value());
            if forced.as_ref() != Some(value) || value.is_integer() {
                return Err("variable is not forced to the stated non-integer".into());
            }
            Ok(ReplayOutcome {
                points: vec![],
                complete: true,
            })
        }
        Conclusion::NoIntegerRoot {
            equation,
            variable,
            coefficients,
            evidence,
        } => {
            check_univariate(&apply(equation, &cur)?, *variable, coefficients)?;
            check_root_evidence(coefficients, &[], evidence)?;
            Ok(ReplayOutcome {
                points: vec![],
                complete: true,
            })
        }
        Conclusion::NoZeroModulo { modulus, equations } => {
            let polys = equations
                .iter()
                .map(|c| apply(c, &cur))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let used: BTreeSet<usize> = polys.iter().flat_map(|p| p.used_variables()).collect();
            let names = Arc::new(used.iter().map(|&v| vars[v].clone()).collect::<Vec<_>>());
            let local = polys
                .iter()
                .map(|p| p.over(&names))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            if *modulus < 2 || no_zero_modulo(&local, used.len(), *modulus) != Some(true) {
                return Err(format!("equations have a zero modulo {modulus}"));
            }
            Ok(ReplayOutcome {
                points: vec![],
                complete: true,
            })
        }
        Conclusion::Point { assignment } => {
            let resolved = resolve(&chain);
            if resolved.len() != vars.len() || assignment.len() != vars.len() {
                return Err("point leaves variables undetermined".into());
            }
            for ((_, p), x) in resolved.iter().zip(assignment) {
                if p.constant_value() != Some(Rational::from_integer(x.clone())) {
                    return Err("point disagrees with the substitutions".into());
                }
            }
            check_point(sys, assignment)?;
            Ok(ReplayOutcome {
                points: vec![assignment.clone()],
                complete: true,
            })
        }
        Conclusion::Branch {
            equation,
            variable,
            coefficients,
            roots,
            evidence,
            cases,
        } => {
            check_univariate(&apply(equation, &cur)?, *variable, coefficients)?;
            check_root_evidence(coefficients, roots, evidence)?;
            if cases.len() != roots.len() {
                return Err("one case per root is required".into());
            }
            let mut out = ReplayOutcome {
                points: vec![],
                complete: true,
            };
            for (r, case) in roots.iter().zip(cases) {
                let value = constant(r);
                let child = cur
                    .iter()
                    .map(|p| p.substitute(*variable, &value))
                    .collect();
                let mut child_chain = chain.clone();
                child_chain.push((*variable, value));
                let sub = replay_node(sys, vars, child, child_chain, case)?;
                out.points.extend(sub.points);
                out.complete &= sub.complete;
            }
            Ok(out)
        }
        Conclusion::Unsearched { .. } => Ok(ReplayOutcome {
            points: vec![],
            complete: false,
        }),
        Conclusion::Enumerated { solutions, .. } => {
            let resolved = resolve(&chain);
            for point in solutions {
                if point.len() != vars.len() {
                    return Err("enumerated point has the wrong length".into());
                }
                let q: Vec<Rational> = point
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect();
                for (v, p) in &resolved {
                    if p.evaluate(&q).map_err(|e| e.to_string())? != q[*v] {
                        return Err("enumerated point disagrees with the substitutions".into());
                    }
                }
                check_point(sys, point)?;
            }
            Ok(ReplayOutcome {
                points: solutions.clone(),
                complete: false,
            })
        }
    }
}

fn check_univariate(
    p: &Polynomial,
    variable: usize,
    coefficients: &[BigInt],
) -> std::result::Result<(), String> {
    let (v, c) = p.as_univariate_integer().map_err(|e| e.to_string())?;
    if v != variable || c != coefficients {
        return Err("univariate consequence does not match".into());
    }
    Ok(())
}

/// Orchestrates elimination, univariate root extraction, modular
/// obstructions and bounded enumeration. The certificate is replayed
/// before the report is returned.
pub fn classify_system(sys: &EquationSystem, config: &SolveConfig) -> Result<SearchReport> {
    let start = Instant::now();
    config.validate(sys)?;
    let mut solver = Solver {
        sys,
        config,
        vars: sys.variable_list(),
        visited: 0,
        scanned: BTreeSet::new(),
    };
    let cur: Vec<Polynomial> = sys
        .equations()
        .iter()
        .map(|e| e.polynomial.clone())
        .collect();
    let certificate = solver.node(cur, Vec::new())?;
    let outcome = replay_certificate(sys, &certificate).map_err(Error::CertificateRejected)?;
    let bounds = solver
        .scanned
        .iter()
        .map(|&v| {
            let (lo, hi) = config.bound_for(sys, v)?;
            Ok((sys.variables()[v].clone(), lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    let origin = sys.origin();
    Ok(SearchReport {
        n: origin.map(|o| o.n),
        branch: origin.map(|o| o.branch),
        mode: origin.map(|o| o.mode),
        variables: sys.variables().to_vec(),
        verdict: outcome.verdict(),
        reduction_trace: certificate
            .steps
            .iter()
            .map(|s| s.describe(sys.variables()))
            .collect(),
        certificate,
        bounds,
        moduli: config.moduli.clone(),
        visited: solver.visited,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn classify(
    n: usize,
    branch: Branch,
    mode: Mode,
    config: &SolveConfig,
) -> Result<SearchReport> {
    classify_system(&generate_system(n, branch, mode)?, config)
}

impl SearchReport {
    /// Replays the certificate and checks the verdict against it.
    pub fn verify(&self, sys: &EquationSystem) -> std::result::Result<(), String> {
        if sys.variables() != self.variables.as_slice() {
            return Err("report and system declare different variables".into());
        }
        let outcome = replay_certificate(sys, &self.certificate)?;
        if outcome.verdict() != self.verdict {
            return Err(format!(
                "certificate supports {}, report says {}",
                outcome.verdict().name(),
                self.verdict.name()
            ));
        }
        Ok(())
    }

    pub fn to_json_value(&self, include_timing: bool) -> ReportJson {
        let vars = Arc::new(self.variables.clone());
        let (solutions, complete) = match &self.verdict {
            Verdict::Solutions {
                solutions,
                complete,
            } => (Some(strings2(solutions)), Some(*complete)),
            _ => (None, None),
        };
        ReportJson {
            n: self.n,
            branch: self.branch,
            mode: self.mode,
            variables: self.variables.clone(),
            verdict: self.verdict.name().to_string(),
            complete,
            solutions,
            certificate: certificate_to_json(&self.certificate, &vars),
            reduction_trace: self.reduction_trace.clone(),
            bounds: self
                .bounds
                .iter()
                .map(|(v, lo, hi)| BoundJson {
                    variable: v.clone(),
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                })
                .collect(),
            moduli: self.moduli.clone(),
            visited: self.visited,
            elapsed_ms: include_timing.then_some(self.elapsed_ms),
        }
    }

    /// Pretty JSON; without timing the output is a pure function of the
    /// inputs.
    pub fn to_json(&self, include_timing: bool) -> String {
        serde_json::to_string_pretty(&self.to_json_value(include_timing))
            .expect("report JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ReportJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let vars = Arc::new(raw.variables.clone());
        let verdict = match (raw.verdict.as_str(), raw.solutions, raw.complete) {
            ("no_integer_solution", None, None) => Verdict::NoIntegerSolution,
            ("inconclusive", None, None) => Verdict::Inconclusive,
            ("solutions", Some(s), Some(complete)) => Verdict::Solutions {
                solutions: parse2(&s)?,
                complete,
            },
            (v, _, _) => return Err(Error::Parse(format!("malformed verdict {v:?}"))),
        };
        Ok(SearchReport {
            n: raw.n,
            branch: raw.branch,
            mode: raw.mode,
            variables: raw.variables,
            verdict,
            certificate: certificate_from_json(&raw.certificate, &vars)?,
            reduction_trace: raw.reduction_trace,
            bounds: raw
                .bounds
                .iter()
                .map(|b| Ok((b.variable.clone(), parse_i64(&b.lo)?, parse_i64(&b.hi)?)))
                .collect::<Result<_>>()?,
            moduli: raw.moduli,
            visited: raw.visited,
            elapsed_ms: raw.elapsed_ms.unwrap_or(0),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: Option<usize>,
    pub branch: Option<Branch>,
    pub mode: Option<Mode>,
    pub variables: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<Vec<Vec<String>>>,
    pub certificate: CertificateJson,
    pub reduction_trace: Vec<String>,
    pub bounds: Vec<BoundJson>,
    pub moduli: Vec<u64>,
    pub visited: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub variable: String,
    pub lo: String,
    pub hi: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub equation: usize,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    pub variable: String,
    pub value: Vec<MonomialJson>,
    pub combination: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub steps: Vec<StepJson>,
    pub conclusion: ConclusionJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConclusionJson {
    LinearInconsistency {
        combination: Vec<TermJson>,
        constant: String,
    },
    NonIntegralValue {
        variable: String,
        value: String,
    },
    NoIntegerRoot {
        equation: Vec<TermJson>,
        variable: String,
        polynomial: Vec<String>,
        evidence: RootEvidence,
    },
    NoZeroModulo {
        modulus: u64,
        equations: Vec<Vec<TermJson>>,
    },
    Point {
        assignment: Vec<String>,
    },
    Branch {
        equation: Vec<TermJson>,
        variable: String,
        polynomial: Vec<String>,
        roots: Vec<String>,
        evidence: RootEvidence,
        cases: Vec<CertificateJson>,
    },
    Unsearched {
        variables: Vec<String>,
        bounds: Vec<BoundJson>,
        box_size: String,
    },
    Enumerated {
        variables: Vec<String>,
        bounds: Vec<BoundJson>,
        solutions: Vec<Vec<String>>,
        visited: u64,
    },
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn strings2(v: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    v.iter().map(|p| strings(p)).collect()
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_i64(s: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not a 64-bit integer: {s:?}")))
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

fn parse1(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter().map(|s| parse_big(s)).collect()
}

fn parse2(v: &[Vec<String>]) -> Result<Vec<Vec<BigInt>>> {
    v.iter().map(|p| parse1(p)).collect()
}

fn combination_to_json(c: &Combination) -> Vec<TermJson> {
    c.terms()
        .map(|(equation, k)| TermJson {
            equation,
            factor: k.to_string(),
        })
        .collect()
}

fn combination_from_json(v: &[TermJson]) -> Result<Combination> {
    Ok(Combination::from_terms(
        v.iter()
            .map(|t| Ok((t.equation, parse_rational(&t.factor)?)))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn polynomial_to_json(p: &Polynomial, vars: &Arc<Vec<String>>) -> Vec<MonomialJson> {
    let p = p
        .over(vars)
        .expect("certificate polynomials use declared variables");
    p.terms()
        .rev()
        .map(|(m, c)| MonomialJson {
            coeff_num: c.numer().to_string(),
            coeff_den: c.denom().to_string(),
            exponents: m.exponents().to_vec(),
        })
        .collect()
}

fn polynomial_from_json(v: &[MonomialJson], vars: &Arc<Vec<String>>) -> Result<Polynomial> {
    let terms = v
        .iter()
        .map(|m| {
            let den = parse_big(&m.coeff_den)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok((
                Rational::new(parse_big(&m.coeff_num)?, den),
                m.exponents.clone(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(vars, terms)
}

fn var_index(vars: &[String], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

fn bounds_to_json(vars: &[String], vs: &[usize], bounds: &[(i64, i64)]) -> Vec<BoundJson> {
    vs.iter()
        .zip(bounds)
        .map(|(&v, (lo, hi))| BoundJson {
            variable: vars[v].clone(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        })
        .collect()
}

pub fn certificate_to_json(cert: &Certificate, vars: &Arc<Vec<String>>) -> CertificateJson {
    let name = |v: usize| vars[v].clone();
    let conclusion = match &cert.conclusion {
        Conclusion::LinearInconsistency {
            combination,
            constant,
        } => ConclusionJson::LinearInconsistency {
            combination: combination_to_json(combination),
            constant: constant.to_string(),
        },
        Conclusion::NonIntegralValue { variable, value } => ConclusionJson::NonIntegralValue {
            variable: name(*variable),
            value: value.to_string(),
        },
        Conclusion::NoIntegerRoot {
            equation,
            variable,
            coefficients,
            evidence,
        } => ConclusionJson::NoIntegerRoot {
            equation: combination_to_json(equation),
            variable: name(*variable),
            polynomial: strings(coefficients),
            evidence: evidence.clone(),
        },
        Conclusion::NoZeroModulo { modulus, equations } => ConclusionJson::NoZeroModulo {
            modulus: *modulus,
            equations: equations.iter().map(combination_to_json).collect(),
        },
        Conclusion::Point { assignment } => ConclusionJson::Point {
            assignment: strings(assignment),
        },
        Conclusion::Branch {
            equation,
            variable,
            coefficients,
            roots,
            evidence,
            cases,
        } => ConclusionJson::Branch {
            equation: combination_to_json(equation),
            variable: name(*variable),
            polynomial: strings(coefficients),
            roots: strings(roots),
            evidence: evidence.clone(),
            cases: cases.iter().map(|c| certificate_to_json(c, vars)).collect(),
        },
        Conclusion::Unsearched {
            variables,
            bounds,
            box_size,
        } => ConclusionJson::Unsearched {
            variables: variables.iter().map(|&v| name(v)).collect(),
            bounds: bounds_to_json(vars, variables, bounds),
            box_size: box_size.to_string(),
        },
        Conclusion::Enumerated {
            variables,
            bounds,
            solutions,
            visited,
        } => ConclusionJson::Enumerated {
            variables: variables.iter().map(|&v| name(v)).collect(),
            bounds: bounds_to_json(vars, variables, bounds),
            solutions: strings2(solutions),
            visited: *visited,
        },
    };
    CertificateJson {
        steps: cert
            .steps
            .iter()
            .map(|s| StepJson {
                variable: name(s.variable),
                value: polynomial_to_json(&s.value, vars),
                combination: combination_to_json(&s.combination),
            })
            .collect(),
        conclusion,
    }
}

pub fn certificate_from_json(
    raw: &CertificateJson,
    vars: &Arc<Vec<String>>,
) -> Result<Certificate> {
    let idx = |name: &str| var_index(vars, name);
    let steps = raw
        .steps
        .iter()
        .map(|s| {
            Ok(Substitution {
                variable: idx(&s.variable)?,
                value: polynomial_from_json(&s.value, vars)?,
                combination: combination_from_json(&s.combination)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let conclusion = match &raw.conclusion {
        ConclusionJson::LinearInconsistency {
            combination,
            constant,
        } => Conclusion::LinearInconsistency {
            combination: combination_from_json(combination)?,
            constant: parse_rational(constant)?,
        },
        ConclusionJson::NonIntegralValue { variable, value } => Conclusion::NonIntegralValue {
            variable: idx(variable)?,
            value: parse_rational(value)?,
        },
        ConclusionJson::NoIntegerRoot {
            equation,
            variable,
            polynomial,
            evidence,
        } => Conclusion::NoIntegerRoot {
            equation: combination_from_json(equation)?,
            variable: idx(variable)?,
            coefficients: parse1(polynomial)?,
            evidence: evidence.clone(),
        },
        ConclusionJson::NoZeroModulo { modulus, equations } => Conclusion::NoZeroModulo {
            modulus: *modulus,
            equations: equations
                .iter()
                .map(|c| combination_from_json(c))
                .collect::<Result<_>>()?,
        },
        ConclusionJson::Point { assignment } => Conclusion::Point {
            assignment: parse1(assignment)?,
        },
        ConclusionJson::Branch {
            equation,
            variable,
            polynomial,
            roots,
            evidence,
            cases,
        } => Conclusion::Branch {
            equation: combination_from_json(equation)?,
            variable: idx(variable)?,
            coefficients: parse1(polynomial)?,
            roots: parse1(roots)?,
            evidence: evidence.clone(),
            cases: cases
                .iter()
                .map(|c| certificate_from_json(c, vars))
                .collect::<Result<_>>()?,
        },
        ConclusionJson::Unsearched {
            variables,
            bounds,
            box_size,
        } => Conclusion::Unsearched {
            variables: variables.iter().map(|v| idx(v)).collect::<Result<_>>()?,
            bounds: bounds
                .iter()
                .map(|b| Ok((parse_i64(&b.lo)?, parse_i64(&b.hi)?)))
                .collect::<Result<_>>()?,
            box_size: box_size
                .parse()
                .map_err(|_| Error::Parse(format!("bad box size {box_size:?}")))?,
        },
        ConclusionJson::Enumerated {
            variables,
            bounds,
            solutions,
            visited,
        } => Conclusion::Enumerated {
            variables: variables.iter().map(|v| idx(v)).collect::<Result<_>>()?,
            bounds: bounds
                .iter()
                .map(|b| Ok((parse_i64(&b.lo)?, parse_i64(&b.hi)?)))
                .collect::<Result<_>>()?,
            solutions: parse2(solutions)?,
            visited: *visited,
        },
    };
    Ok(Certificate { steps, conclusion })
}
