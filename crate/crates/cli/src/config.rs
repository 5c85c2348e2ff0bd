//! Validation of command-line values into core types, and exit statuses.

use std::collections::BTreeMap;
use std::fmt;

use chiy_core::solve::SolveConfig;
use chiy_core::{Branch, Mode};

use crate::{BranchArg, ClassifyArgs, ModeArg, PairArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or input; exit 64.
    Usage(String),
    /// A check failed or output could not be written; exit 1.
    Check(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Check(_) => EXIT_CHECK,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Check(m) => write!(f, "{m}"),
        }
    }
}

pub fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn check(e: impl fmt::Display) -> Failure {
    Failure::Check(e.to_string())
}

pub fn branch(b: BranchArg) -> Branch {
    match b {
        BranchArg::Standard => Branch::Standard,
        BranchArg::Half => Branch::Half,
    }
}

pub fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Ak => Mode::AkOnly,
        ModeArg::Full => Mode::FullChiY,
    }
}

/// `(n, branch, mode)` after the checks `generate_system` would make.
pub fn pair(p: &PairArgs) -> Result<(usize, Branch, Mode), Failure> {
    let b = branch(p.branch);
    if p.n < 3 {
        return Err(usage(format!("--n must be at least 3, got {}", p.n)));
    }
    b.first_chern(p.n).map_err(usage)?;
    Ok((p.n, b, mode(p.mode)))
}

/// Parses `var=lo:hi`.
pub fn parse_bound(spec: &str) -> Result<(String, (i64, i64)), Failure> {
    let bad = || usage(format!("bound {spec:?} is not of the form var=lo:hi"));
    let (var, range) = spec.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(usage(format!("bound {spec:?} is empty")));
    }
    Ok((var.trim().to_string(), (lo, hi)))
}

pub fn solve_config(a: &ClassifyArgs) -> Result<SolveConfig, Failure> {
    let mut config = SolveConfig::default();
    if let Some(s) = a.bound_scale {
        if s == 0 {
            return Err(usage("--bound-scale must be positive"));
        }
        config.bound_scale = s;
    }
    let mut bounds = BTreeMap::new();
    for spec in a.bounds.iter().filter(|s| !s.trim().is_empty()) {
        let (var, b) = parse_bound(spec)?;
        if bounds.insert(var.clone(), b).is_some() {
            return Err(usage(format!("bound for {var} given twice")));
        }
    }
    config.bounds = bounds;
    if let Some(m) = &a.moduli {
        if let Some(bad) = m.iter().find(|&&p| !is_prime(p)) {
            return Err(usage(format!("sieving modulus {bad} is not prime")));
        }
        config.moduli = m.clone();
    }
    if let Some(w) = a.workers {
        if w == 0 {
            return Err(usage("--workers must be positive"));
        }
        config.workers = w;
    }
    Ok(config)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_parse() {
        assert_eq!(parse_bound("c2=-5:7").unwrap(), ("c2".to_string(), (-5, 7)));
        assert_eq!(
            parse_bound(" c3 = 0 : 0 ").unwrap(),
            ("c3".to_string(), (0, 0))
        );
        for bad in ["c2", "c2=1", "c2=a:3", "c2=4:3", "=1:x"] {
            assert!(matches!(parse_bound(bad), Err(Failure::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn primes() {
        let p: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(p, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn pair_checks() {
        let p = |n, branch| PairArgs {
            n,
            branch,
            mode: ModeArg::Ak,
        };
        assert!(pair(&p(7, BranchArg::Half)).is_ok());
        assert!(matches!(
            pair(&p(6, BranchArg::Half)),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            pair(&p(2, BranchArg::Standard)),
            Err(Failure::Usage(_))
        ));
    }
}
