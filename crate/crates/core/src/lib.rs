//! Exact characteristic-class and chi_y genus computations on rank-one
//! cohomology, the Chern-number system of a compactification pair, and an
//! integer solver for it that emits replayable certificates.

pub mod chern;
pub mod error;
pub mod fujita;
pub mod genus;
pub mod series;
pub mod solve;

pub use chern::{ChernVector, GradedClass, ManifoldModel};
pub use error::{Error, Result};
pub use fujita::{Branch, EquationSystem, Mode, PairModel};
pub use genus::{ChiYPolynomial, HodgeDiamond, MinusOneExpansion};
pub use series::{Rational, TruncatedSeries};
pub use solve::{Certificate, Polynomial, SearchReport, SolveConfig, Verdict};
