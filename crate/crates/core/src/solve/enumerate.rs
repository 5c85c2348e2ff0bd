use super::Polynomial;
use crate::error::{Error, Result};
use crate::fujita::EquationSystem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::thread;

/// Residue tables are built only while `p^k * terms` stays under this.
const TABLE_WORK_LIMIT: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Primes used to skip candidates before the exact check; empty turns
    /// sieving off.
    pub moduli: Vec<u64>,
    pub workers: usize,
    /// Largest number of box points a scan may cover.
    pub max_box: u128,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            moduli: vec![2, 3, 5, 7, 11],
            workers: 1,
            max_box: 100_000_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Points in variable order, lexicographically sorted.
    pub solutions: Vec<Vec<BigInt>>,
    /// Candidates that reached the exact check.
    pub visited: u64,
    pub box_size: u128,
}

type IntTerms = Vec<(BigInt, Vec<u32>)>;
/// Same terms when every coefficient fits in `i128`.
type SmallTerms = Option<Vec<(i128, Vec<u32>)>>;

fn integer_terms(p: &Polynomial) -> IntTerms {
    p.primitive_integer_terms()
        .into_iter()
        .map(|(m, c)| (c, m.exponents().to_vec()))
        .collect()
}

fn mod_pow(mut b: u64, mut e: u32, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// One prime's view of the system: reduced coefficients and, when small
/// enough, prefix tables `prefix[j][r]` telling whether the residues `r`
/// of the first `j` variables extend to a common zero mod `p`.
#[derive(Clone, Debug)]
struct PrimeSieve {
    p: u64,
    polys: Vec<Vec<(u64, Vec<u32>)>>,
    prefix: Option<Vec<Vec<bool>>>,
}

impl PrimeSieve {
    fn new(p: u64, polys: &[IntTerms], k: usize) -> Self {
        let reduced: Vec<Vec<(u64, Vec<u32>)>> = polys
            .iter()
            .map(|t| {
                t.iter()
                    .filter_map(|(c, e)| {
                        let r = c.mod_floor(&BigInt::from(p)).to_u64().expect("residue");
                        (r != 0).then(|| (r, e.clone()))
                    })
                    .collect()
            })
            .collect();
        let mut sieve = PrimeSieve {
            p,
            polys: reduced,
            prefix: None,
        };
        let terms: u128 = polys.iter().map(|t| t.len() as u128).sum::<u128>().max(1);
        let points = (p as u128).checked_pow(k as u32);
        if let Some(points) = points.filter(|&n| n * terms <= TABLE_WORK_LIMIT) {
            sieve.prefix = Some(sieve.build_tables(k, points as usize));
        }
        sieve
    }

    fn vanishes(&self, residues: &[u64]) -> bool {
        let p = self.p;
        self.polys.iter().all(|terms| {
            let mut acc = 0u64;
            for (c, e) in terms {
                let mut t = *c;
                for (&r, &k) in residues.iter().zip(e) {
                    if k > 0 {
                        t = t * mod_pow(r, k, p) % p;
                    }
                }
                acc = (acc + t) % p;
            }
            acc == 0
        })
    }

    fn build_tables(&self, k: usize, points: usize) -> Vec<Vec<bool>> {
        let p = self.p as usize;
        let mut full = vec![false; points];
        let mut residues = vec![0u64; k];
        for (idx, slot) in full.iter_mut().enumerate() {
            let mut rest = idx;
            for j in (0..k).rev() {
                residues[j] = (rest % p) as u64;
                rest /= p;
            }
            *slot = self.vanishes(&residues);
        }
        let mut tables = vec![full];
        for _ in 0..k {
            let prev = tables.last().unwrap();
            let next: Vec<bool> = prev.chunks(p).map(|c| c.iter().any(|&b| b)).collect();
            tables.push(next);
        }
        tables.reverse();
        tables
    }

    /// Whether any point of `(Z/p)^k` is a common zero; `None` when no
    /// table was built.
    fn has_zero(&self) -> Option<bool> {
        self.prefix.as_ref().map(|t| t[0][0])
    }
}

/// True when the integer forms of `polys` (over exactly `k` variables)
/// have no common zero modulo `p`, which rules out integer solutions.
pub fn no_zero_modulo(polys: &[Polynomial], k: usize, p: u64) -> Option<bool> {
    let ints: Vec<IntTerms> = polys.iter().map(integer_terms).collect();
    PrimeSieve::new(p, &ints, k).has_zero().map(|z| !z)
}

fn exact_zero_small(terms: &[(i128, Vec<u32>)], point: &[i64]) -> Option<bool> {
    let mut acc: i128 = 0;
    for (c, e) in terms {
        let mut t = *c;
        for (&x, &k) in point.iter().zip(e) {
            if k > 0 {
                t = t.checked_mul((x as i128).checked_pow(k)?)?;
            }
        }
        acc = acc.checked_add(t)?;
    }
    Some(acc == 0)
}

fn exact_zero_big(terms: &IntTerms, point: &[i64]) -> bool {
    let mut acc = BigInt::zero();
    for (c, e) in terms {
        let mut t = c.clone();
        for (&x, &k) in point.iter().zip(e) {
            if k > 0 {
                t *= num_traits::pow(BigInt::from(x), k as usize);
            }
        }
        acc += t;
    }
    acc.is_zero()
}

struct Scanner<'a> {
    bounds: &'a [(i64, i64)],
    exact: &'a [IntTerms],
    small: &'a [SmallTerms],
    sieves: &'a [PrimeSieve],
}

impl Scanner<'_> {
    fn is_solution(&self, point: &[i64]) -> bool {
        self.exact.iter().zip(self.small).all(|(big, small)| {
            small
                .as_ref()
                .and_then(|s| exact_zero_small(s, point))
                .unwrap_or_else(|| exact_zero_big(big, point))
        })
    }

    fn passes_pointwise(&self, point: &[i64]) -> bool {
        self.sieves.iter().filter(|s| s.prefix.is_none()).all(|s| {
            let residues: Vec<u64> = point
                .iter()
                .map(|&x| x.rem_euclid(s.p as i64) as u64)
                .collect();
            s.vanishes(&residues)
        })
    }

    /// Scans the box with the first coordinate restricted to `first`.
    fn run(&self, first: (i64, i64)) -> (Vec<Vec<i64>>, u64) {
        let k = self.bounds.len();
        let mut point = vec![0i64; k];
        let mut idx = vec![vec![0usize; k + 1]; self.sieves.len()];
        let mut out = Vec::new();
        let mut visited = 0u64;
        self.level(0, first, &mut point, &mut idx, &mut out, &mut visited);
        (out, visited)
    }

    fn level(
        &self,
        j: usize,
        range: (i64, i64),
        point: &mut Vec<i64>,
        idx: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<i64>>,
        visited: &mut u64,
    ) {
        let k = self.bounds.len();
        'values: for v in range.0..=range.1 {
            point[j] = v;
            for (s, sieve) in self.sieves.iter().enumerate() {
                if let Some(tables) = &sieve.prefix {
                    let p = sieve.p as usize;
                    let r = v.rem_euclid(sieve.p as i64) as usize;
                    let i = idx[s][j] * p + r;
                    if !tables[j + 1][i] {
                        continue 'values;
                    }
                    idx[s][j + 1] = i;
                }
            }
            if j + 1 < k {
                self.level(j + 1, self.bounds[j + 1], point, idx, out, visited);
            } else if self.passes_pointwise(point) {
                *visited += 1;
                if self.is_solution(point) {
                    out.push(point.clone());
                }
            }
        }
    }
}

/// All integer points of the box where every polynomial vanishes. The
/// polynomials must be over exactly the box variables, in order.
pub fn enumerate_polynomials(
    polys: &[Polynomial],
    bounds: &[(i64, i64)],
    options: &EnumerateOptions,
) -> Result<EnumerationResult> {
    if bounds.is_empty() {
        return Err(Error::EmptyBounds("no variables to enumerate".into()));
    }
    if let Some((i, _)) = bounds.iter().enumerate().find(|(_, (lo, hi))| lo > hi) {
        return Err(Error::EmptyBounds(format!("interval {i} is empty")));
    }
    for p in polys {
        if p.variables().len() != bounds.len() && !p.used_variables().is_empty() {
            return Err(Error::DimensionMismatch {
                expected: bounds.len(),
                actual: p.variables().len(),
            });
        }
    }
    let box_size = bounds
        .iter()
        .try_fold(1u128, |acc, (lo, hi)| {
            acc.checked_mul((hi - lo + 1) as u128)
        })
        .unwrap_or(u128::MAX);
    if box_size > options.max_box {
        return Err(Error::Config(format!(
            "box of {box_size} points exceeds the budget of {}",
            options.max_box
        )));
    }
    for &p in &options.moduli {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Config(format!("modulus {p} is not prime")));
        }
    }

    let k = bounds.len();
    // constants are padded so every term has k exponents
    let exact: Vec<IntTerms> = polys
        .iter()
        .map(|p| {
            integer_terms(p)
                .into_iter()
                .map(|(c, mut e)| {
                    e.resize(k, 0);
                    (c, e)
                })
                .collect()
        })
        .collect();
    let small: Vec<SmallTerms> = exact
        .iter()
        .map(|t| {
            t.iter()
                .map(|(c, e)| c.to_i128().map(|c| (c, e.clone())))
                .collect()
        })
        .collect();
    let sieves: Vec<PrimeSieve> = options
        .moduli
        .iter()
        .map(|&p| PrimeSieve::new(p, &exact, k))
        .collect();
    if sieves.iter().any(|s| s.has_zero() == Some(false)) {
        log::debug!("no common zero modulo a sieve prime; skipping scan");
        return Ok(EnumerationResult {
            solutions: Vec::new(),
            visited: 0,
            box_size,
        });
    }

    let scanner = Scanner {
        bounds,
        exact: &exact,
        small: &small,
        sieves: &sieves,
    };
    let (lo, hi) = bounds[0];
    let workers = options.workers.max(1).min((hi - lo + 1) as usize);
    let width = (hi - lo + 1) as usize;
    let chunks: Vec<(i64, i64)> = (0..workers)
        .map(|w| {
            let a = lo + (width * w / workers) as i64;
            let b = lo + (width * (w + 1) / workers) as i64 - 1;
            (a, b)
        })
        .filter(|(a, b)| a <= b)
        .collect();
    let parts: Vec<(Vec<Vec<i64>>, u64)> = if chunks.len() == 1 {
        vec![scanner.run(chunks[0])]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|&c| {
                    let scanner = &scanner;
                    scope.spawn(move || scanner.run(c))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };
    let mut solutions: Vec<Vec<i64>> = Vec::new();
    let mut visited = 0;
    for (s, v) in parts {
        solutions.extend(s);
        visited += v;
    }
    solutions.sort();
    Ok(EnumerationResult {
        solutions: solutions
            .into_iter()
            .map(|p| p.into_iter().map(BigInt::from).collect())
            .collect(),
        visited,
        box_size,
    })
}

/// Scans a box over all variables of `sys`.
pub fn bounded_enumerate(
    sys: &EquationSystem,
    bounds: &[(i64, i64)],
    moduli: &[u64],
) -> Result<EnumerationResult> {
    if bounds.len() != sys.variables().len() {
        return Err(Error::DimensionMismatch {
            expected: sys.variables().len(),
            actual: bounds.len(),
        });
    }
    let polys: Vec<Polynomial> = sys
        .equations()
        .iter()
        .map(|e| e.polynomial.clone())
        .collect();
    let options = EnumerateOptions {
        moduli: moduli.to_vec(),
        ..EnumerateOptions::default()
    };
    enumerate_polynomials(&polys, bounds, &options)
}
