//! Exact polynomial systems: linear elimination, univariate integer roots,
//! bounded enumeration with modular sieving, and the classification driver.

mod classify;
mod enumerate;
mod json;
mod linear;
mod poly;
mod univariate;

pub use classify::{
    certificate_from_json, certificate_to_json, classify, classify_system, replay_certificate,
    BoundJson, Certificate, CertificateJson, Conclusion, ConclusionJson, ReplayOutcome, ReportJson,
    SearchReport, SolveConfig, StepJson, TermJson, Verdict,
};
pub use enumerate::{
    bounded_enumerate, enumerate_polynomials, no_zero_modulo, EnumerateOptions, EnumerationResult,
};
pub use linear::{
    linear_reduce, Combination, Inconsistency, LinearReduction, ReducedEquation, Substitution,
};
pub use poly::{Monomial, Polynomial};
pub use univariate::{
    check_root_evidence, evaluate_integer, integer_roots_of, univariate_integer_roots,
    RootEvidence, UnivariateRoots,
};
