//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use chiy_core::chern::{projective_space_chern, todd_class};
use chiy_core::fujita::{
    adjunction_chern, alternating_sum_check, alternating_sum_residual, binomial_assignment,
    dichotomy_residual, dichotomy_roots, forced_values, generate_system, parity_admissible,
    ForcedValues,
};
use chiy_core::genus::{chi_y_from_chern, chi_y_from_hodge, expand_at_minus_one, pinned_products};
use chiy_core::series::{binomial, int, rat};
use chiy_core::solve::{
    classify, classify_system, linear_reduce, replay_certificate, Conclusion, Polynomial,
    SearchReport, SolveConfig, Verdict,
};
use chiy_core::{
    Branch, ChernVector, ChiYPolynomial, EquationSystem, HodgeDiamond, ManifoldModel, Mode,
    Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::panic;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn projective_space_suite() -> Check {
    let start = Instant::now();
    for n in 1..=10 {
        let c = projective_space_chern(n).map_err(|e| e.to_string())?;
        let m = ManifoldModel::new(c.clone());
        let chi = chi_y_from_chern(&m);
        ensure(chi == ChiYPolynomial::projective_space(n), || {
            format!("chi_y wrong at n = {n}")
        })?;
        let hodge = chi_y_from_hodge(&HodgeDiamond::projective_space(n));
        ensure(chi == hodge, || {
            format!("Hodge oracle disagrees at n = {n}")
        })?;
        let td = m.integrate(&todd_class(&c)).map_err(|e| e.to_string())?;
        ensure(td == int(1), || {
            format!("integral of Todd is {td} at n = {n}")
        })?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("n = 1..10 in {:?}", start.elapsed()))
}

fn quadratic_coefficient_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut count = 0;
    for n in 2..=8usize {
        for _ in 0..200 {
            let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
            let chern = ChernVector::from_ints(&c).map_err(|e| e.to_string())?;
            let a = expand_at_minus_one(&chi_y_from_chern(&ManifoldModel::new(chern)));
            let got = a.a_k(1).cloned().unwrap_or_default();
            let ni = n as i64;
            let (cn, c1, cn1) = (c[n - 1], c[0], if n >= 2 { c[n - 2] } else { 1 });
            let cn1 = if n == 2 { c1 } else { cn1 };
            let want = rat(ni * (3 * ni - 5), 24) * int(cn) + rat(1, 12) * int(c1 * cn1);
            ensure(got == want, || {
                format!("n = {n}, c = {c:?}: {got} vs {want}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} random Chern vectors, exact"))
}

/// Solves `A_1(X) = A_1(P^dim)` for one symbolic Chern class of `X`, all
/// other classes random, through the full Riemann-Roch pipeline.
fn forced_by_a1(
    dim: usize,
    c1: i64,
    euler: i64,
    symbolic: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Rational, String> {
    let t = Polynomial::generators(&["t"])[0].clone();
    let entries: Vec<Polynomial> = (1..=dim)
        .map(|i| match i {
            _ if i == symbolic => t.clone(),
            1 => Polynomial::constant(int(c1)),
            _ if i == dim => Polynomial::constant(int(euler)),
            _ => Polynomial::constant(int(rng.gen_range(-1000..=1000))),
        })
        .collect();
    let chern = ChernVector::new(entries).map_err(|e| e.to_string())?;
    let got = expand_at_minus_one(&chi_y_from_chern(&ManifoldModel::new(chern)));
    let reference = expand_at_minus_one(&chi_y_from_chern(&ManifoldModel::new(
        projective_space_chern(dim).map_err(|e| e.to_string())?,
    )));
    let eq = got.coefficients()[2].sub(&Polynomial::constant(reference.coefficients()[2].clone()));
    ensure(eq.total_degree() == 1, || {
        format!("A_1 equation {eq} is not linear in t")
    })?;
    Ok(-eq.constant_term() / eq.linear_coefficient(0))
}

fn pinned_products_and_forced_values() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for n in 2..=19usize {
        let p = pinned_products(n).map_err(|e| e.to_string())?;
        let b = BigInt::from(n);
        let one = BigInt::from(1);
        ensure(
            p.euler_m == &b + &one
                && p.euler_d == b
                && BigInt::from(2) * &p.c1_cn1_m == &b * (&b + &one) * (&b + &one)
                && BigInt::from(2) * &p.c1_cn2_d == (&b - &one) * &b * &b,
            || format!("pinned products wrong at n = {n}"),
        )?;
    }
    let mut checked = Vec::new();
    for n in (3..=19usize).filter(|n| n % 4 == 3) {
        let ni = n as i64;
        let c1_m = (ni + 1) / 2;
        let cm = forced_by_a1(n, c1_m, ni + 1, n - 1, &mut rng)?;
        ensure(cm == int(ni * (ni + 1)), || {
            format!("c_(n-1)(M) = {cm} at n = {n}")
        })?;
        if n > 3 {
            let cd = forced_by_a1(n - 1, c1_m - 1, ni, n - 2, &mut rng)?;
            ensure(cd == int(ni * ni), || {
                format!("c_(n-2)(D) = {cd} at n = {n}")
            })?;
            let fv = forced_values(n).map_err(|e| e.to_string())?;
            ensure(
                fv == ForcedValues::Consistent {
                    c_m_top_minus_one: BigInt::from(ni * (ni + 1)),
                    c_d_top_minus_two: BigInt::from(ni * ni),
                },
                || format!("forced_values({n}) = {fv:?}"),
            )?;
        } else {
            ensure(
                matches!(forced_values(3), Ok(ForcedValues::Inconsistent { .. })),
                || "n = 3 should collide".into(),
            )?;
        }
        checked.push(n);
    }
    Ok(format!(
        "pinned n = 2..19, forced values at n = {checked:?}"
    ))
}

fn dichotomy() -> Check {
    for n in 2..=50usize {
        let roots = dichotomy_roots(n).map_err(|e| e.to_string())?;
        let values: Vec<Rational> = roots.iter().map(|r| r.value.clone()).collect();
        let want = vec![int(n as i64 + 1), rat(n as i64 + 1, 2)];
        ensure(values == want, || format!("n = {n}: {values:?}"))?;
        for r in &roots {
            ensure(dichotomy_residual(n, &r.value) == Some(int(0)), || {
                format!("residual nonzero at n = {n}")
            })?;
            ensure(r.integral == r.value.is_integer(), || {
                format!("flag wrong at n = {n}")
            })?;
        }
    }
    Ok("n = 2..50".into())
}

fn parity() -> Check {
    for n in 2..=50usize {
        // (n+1)/2 must be an integer congruent to n+1 modulo 2
        let oracle = n % 2 == 1 && (n.div_ceil(2) + (n + 1)) % 2 == 0;
        ensure(parity_admissible(n) == oracle, || format!("n = {n}"))?;
        ensure(oracle == (n % 4 == 3), || {
            format!("oracle disagrees with n = 3 mod 4 at {n}")
        })?;
    }
    Ok("n = 2..50".into())
}

fn half_five_exclusion() -> Check {
    let start = Instant::now();
    let sys = generate_system(5, Branch::Half, Mode::AkOnly).map_err(|e| e.to_string())?;
    let report = classify_system(&sys, &SolveConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::NoIntegerSolution, || {
        format!("verdict {:?}", report.verdict)
    })?;
    let outcome = replay_certificate(&sys, &report.certificate)?;
    ensure(outcome.complete && outcome.points.is_empty(), || {
        "replay not a refutation".into()
    })?;
    let detail = match &report.certificate.conclusion {
        Conclusion::NoIntegerRoot { coefficients, .. } => {
            // independent check: the quadratic's discriminant is not a square
            let [c, b, a] = coefficients.as_slice() else {
                return Err(format!("not a quadratic: {coefficients:?}"));
            };
            let d = b * b - BigInt::from(4) * a * c;
            let s = d.sqrt();
            ensure(d.is_negative() || &s * &s != d, || {
                format!("discriminant {d} is a square")
            })?;
            format!("discriminant {d} not a square")
        }
        other => format!("{other:?}"),
    };
    within(start, Duration::from_secs(5))?;
    Ok(format!("{detail}, {:?}", start.elapsed()))
}

fn standard_soundness() -> Check {
    let report = classify(5, Branch::Standard, Mode::AkOnly, &SolveConfig::default())
        .map_err(|e| e.to_string())?;
    let binomials: Vec<BigInt> = (2..5).map(|i| binomial(6, i)).collect();
    match &report.verdict {
        Verdict::Solutions { solutions, .. } if solutions.contains(&binomials) => {}
        v => return Err(format!("classify(5, standard) gave {v:?}")),
    }
    for n in 3..=13 {
        let sys = generate_system(n, Branch::Standard, Mode::AkOnly).map_err(|e| e.to_string())?;
        let ok = sys
            .is_satisfied_by(&binomial_assignment(n))
            .map_err(|e| e.to_string())?;
        ensure(ok, || format!("binomials fail the system at n = {n}"))?;
    }
    Ok("classify(5) contains (15, 20, 15); systems n = 3..13 vanish at binomials".into())
}

fn half_three_degenerate() -> Check {
    let report = classify(3, Branch::Half, Mode::AkOnly, &SolveConfig::default())
        .map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::NoIntegerSolution, || {
        format!("verdict {:?}", report.verdict)
    })?;
    match report.certificate.conclusion {
        Conclusion::LinearInconsistency { constant, .. } => {
            Ok(format!("linear inconsistency 0 = {constant}"))
        }
        other => Err(format!("expected a linear inconsistency, got {other:?}")),
    }
}

fn alternating_sum() -> Check {
    for n in 1..=30 {
        let c = projective_space_chern(n).map_err(|e| e.to_string())?;
        ensure(alternating_sum_check(&c), || {
            format!("binomials fail at n = {n}")
        })?;
    }
    let sys = generate_system(5, Branch::Half, Mode::AkOnly).map_err(|e| e.to_string())?;
    let red = linear_reduce(&sys);
    let vars = sys.variable_list();
    let mut entries: Vec<Polynomial> = vec![Polynomial::constant(int(3))];
    for i in 0..vars.len() {
        let value = red
            .resolved()
            .into_iter()
            .find(|(v, _)| *v == i)
            .map(|(_, p)| p)
            .unwrap_or_else(|| Polynomial::variable_in(&vars, i));
        entries.push(value);
    }
    entries.push(Polynomial::constant(int(6)));
    let c = ChernVector::new(entries).map_err(|e| e.to_string())?;
    let residual = alternating_sum_residual(&c);
    ensure(residual.is_zero(), || {
        format!("residual {residual} on the n = 5 parameterization")
    })?;
    // the divisor side of the same parameterization is integral too
    adjunction_chern(&c).map_err(|e| e.to_string())?;
    Ok("binomials n = 1..30; n = 5 half parameterization identically".into())
}

/// Primitive integer form of `p` over `vars`, built from the coefficients
/// without the solver's helpers.
fn primitive_form(p: &Polynomial, vars: &[String]) -> Vec<(BigInt, Vec<u32>)> {
    let names: Vec<String> = p.variables().to_vec();
    let terms: Vec<(Rational, Vec<u32>)> = p
        .terms()
        .map(|(m, c)| {
            let mut e = vec![0u32; vars.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    let j = vars.iter().position(|v| *v == names[i]).expect("declared");
                    e[j] = x;
                }
            }
            (c.clone(), e)
        })
        .collect();
    let lcm = terms
        .iter()
        .fold(BigInt::from(1), |acc, (c, _)| acc.lcm(c.denom()));
    let ints: Vec<(BigInt, Vec<u32>)> = terms
        .into_iter()
        .map(|(c, e)| ((c * Rational::from_integer(lcm.clone())).to_integer(), e))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (c, _)| acc.gcd(c));
    ints.into_iter().map(|(c, e)| (c / &g, e)).collect()
}

/// Brute force over `(Z/m)^k`: does some residue point make every
/// primitive form vanish modulo `m`?
fn has_residue_zero(forms: &[Vec<(BigInt, Vec<u32>)>], k: usize, m: u64) -> bool {
    let modulus = BigInt::from(m);
    let total = (m as usize).pow(k as u32);
    (0..total).any(|mut idx| {
        let mut x = vec![BigInt::zero(); k];
        for xi in x.iter_mut().rev() {
            *xi = BigInt::from(idx % m as usize);
            idx /= m as usize;
        }
        forms.iter().all(|f| {
            let v = f.iter().fold(BigInt::zero(), |acc, (c, e)| {
                let mut t = c.clone();
                for (xi, &ei) in x.iter().zip(e) {
                    t *= num_traits::pow(xi.clone(), ei as usize);
                }
                acc + t
            });
            v.mod_floor(&modulus).is_zero()
        })
    })
}

fn open_branch_run() -> Check {
    let start = Instant::now();
    let sys = generate_system(7, Branch::Half, Mode::AkOnly).map_err(|e| e.to_string())?;
    let report = classify_system(&sys, &SolveConfig::default()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(600))?;

    let text = report.to_json(true);
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    for key in [
        "n",
        "branch",
        "mode",
        "verdict",
        "certificate",
        "bounds",
        "moduli",
        "visited",
        "elapsed_ms",
    ] {
        ensure(value.get(key).is_some(), || format!("report lacks {key}"))?;
    }
    let back = SearchReport::from_json(&text).map_err(|e| e.to_string())?;
    ensure(back == report, || "report does not round-trip".into())?;
    report.verify(&sys)?;

    // independent check of a modular refutation
    if let Conclusion::NoZeroModulo { modulus, .. } = &report.certificate.conclusion {
        let red = linear_reduce(&sys);
        let free: Vec<String> = red
            .free_variables()
            .into_iter()
            .map(|v| sys.variables()[v].clone())
            .collect();
        let forms: Vec<_> = red
            .remaining
            .iter()
            .map(|r| primitive_form(&r.polynomial, &free))
            .collect();
        ensure(!has_residue_zero(&forms, free.len(), *modulus), || {
            format!("brute force finds a zero modulo {modulus}")
        })?;
    }
    let kind = match &report.certificate.conclusion {
        Conclusion::NoZeroModulo { modulus, .. } => format!("no common zero modulo {modulus}"),
        Conclusion::Enumerated { visited, .. } => format!("box scan, {visited} exact checks"),
        other => format!("{other:?}").chars().take(60).collect(),
    };
    Ok(format!(
        "verdict {} ({kind}), trace {:?}, {:?}",
        report.verdict.name(),
        report.reduction_trace,
        start.elapsed()
    ))
}

struct Planted {
    sys: EquationSystem,
    bounds: BTreeMap<String, (i64, i64)>,
    solutions: Vec<Vec<BigInt>>,
    complete: bool,
}

fn constant(v: i64) -> Polynomial {
    Polynomial::constant(int(v))
}

fn equations(names: &[String], polys: Vec<Polynomial>) -> EquationSystem {
    let eqs = polys
        .into_iter()
        .enumerate()
        .map(|(i, polynomial)| chiy_core::fujita::Equation {
            provenance: chiy_core::fujita::Provenance::Custom(format!("e{i}")),
            polynomial,
        })
        .collect();
    EquationSystem::new(None, names.to_vec(), eqs).expect("declared variables")
}

/// A linear chain tying every variable to `x0`, a quadratic in `x0`
/// (second root possibly non-integral or complex), all mixed together.
fn planted_chain(rng: &mut ChaCha8Rng) -> Planted {
    let k = rng.gen_range(2..=4);
    let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let g = Polynomial::generators(&names);
    let s: Vec<i64> = (0..k).map(|_| rng.gen_range(-50..=50)).collect();
    let linear: Vec<Polynomial> = (1..k)
        .map(|i| g[i].sub(&g[0]).sub(&constant(s[i] - s[0])))
        .collect();
    let (a, b) = (rng.gen_range(1..=3), rng.gen_range(-60..=60));
    let kind = rng.gen_range(0..3);
    let (quadratic, x0_roots): (Polynomial, Vec<i64>) = match kind {
        // (x0 - s0)(a x0 - b)
        0 => {
            let q = g[0]
                .sub(&constant(s[0]))
                .mul(&g[0].scale(&int(a)).sub(&constant(b)));
            let mut r = vec![s[0]];
            if b % a == 0 {
                r.push(b / a);
            }
            (q, r)
        }
        // (x0 - s0)^2 + a^2 has no real root
        1 => (
            g[0].sub(&constant(s[0])).pow(2).add(&constant(a * a)),
            vec![],
        ),
        // a x0^2 - (2b + 1): no integer root when a = 1, 2 or 3 and the
        // right side is odd unless a x0^2 is odd
        _ => {
            let rhs = 2 * b.abs() + 1;
            let q = g[0].pow(2).scale(&int(2 * a)).sub(&constant(rhs));
            (q, vec![])
        }
    };
    // obscure: mix linear equations together and into the quadratic
    let mut polys = Vec::new();
    let mut quadratic = quadratic;
    for (i, l) in linear.iter().enumerate() {
        let m = rng.gen_range(-3..=3);
        quadratic = quadratic.add(&g[(i + 1) % k].scale(&int(m)).mul(l));
        let next = linear.get(i + 1).cloned().unwrap_or_else(|| constant(0));
        polys.push(l.add(&next.scale(&int(rng.gen_range(-2..=2)))));
    }
    polys.insert(rng.gen_range(0..=polys.len()), quadratic);
    let mut solutions: Vec<Vec<BigInt>> = x0_roots
        .into_iter()
        .map(|r| (0..k).map(|i| BigInt::from(r + s[i] - s[0])).collect())
        .collect();
    solutions.sort();
    solutions.dedup();
    Planted {
        sys: equations(&names, polys),
        bounds: BTreeMap::new(),
        solutions,
        complete: true,
    }
}

/// `x^2 + y^2 = A`, `x y = B` with a planted pair, plus `z` tied linearly;
/// no linear or univariate consequence, so the box scan is exercised.
fn planted_pair(rng: &mut ChaCha8Rng) -> Planted {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let g = Polynomial::generators(&names);
    let (s1, s2) = (rng.gen_range(-25i64..=25), rng.gen_range(-25i64..=25));
    let c = rng.gen_range(-10..=10);
    let polys = vec![
        g[0].pow(2)
            .add(&g[1].pow(2))
            .sub(&constant(s1 * s1 + s2 * s2)),
        g[0].mul(&g[1]).sub(&constant(s1 * s2)),
        g[2].sub(&g[0]).sub(&g[1]).sub(&constant(c)),
    ];
    let mut solutions: Vec<Vec<BigInt>> = [(s1, s2), (s2, s1), (-s1, -s2), (-s2, -s1)]
        .into_iter()
        .map(|(x, y)| {
            vec![x, y, x + y + c]
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    solutions.sort();
    solutions.dedup();
    let r = s1.abs().max(s2.abs()) + rng.gen_range(0..=10);
    Planted {
        sys: equations(&names, polys),
        bounds: BTreeMap::from([("x".to_string(), (-r, r)), ("y".to_string(), (-r, r))]),
        solutions,
        complete: false,
    }
}

fn solver_property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let (mut chains, mut pairs, mut empty) = (0, 0, 0);
    for case in 0..100 {
        let planted = if case % 4 == 3 {
            pairs += 1;
            planted_pair(&mut rng)
        } else {
            chains += 1;
            planted_chain(&mut rng)
        };
        if planted.solutions.is_empty() {
            empty += 1;
        }
        let expected = if planted.solutions.is_empty() {
            Verdict::NoIntegerSolution
        } else {
            Verdict::Solutions {
                solutions: planted.solutions.clone(),
                complete: planted.complete,
            }
        };
        for moduli in [vec![2, 3, 5, 7, 11], vec![], vec![3]] {
            let config = SolveConfig {
                bounds: planted.bounds.clone(),
                moduli: moduli.clone(),
                workers: 2,
                ..Default::default()
            };
            let report =
                classify_system(&planted.sys, &config).map_err(|e| format!("case {case}: {e}"))?;
            ensure(report.verdict == expected, || {
                format!(
                    "case {case}, moduli {moduli:?}: {:?} vs {expected:?}",
                    report.verdict
                )
            })?;
        }
    }
    Ok(format!(
        "100 systems ({chains} chains, {pairs} pairs, {empty} empty), 3 sieve settings each"
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("projective-space genus suite", projective_space_suite),
        (
            "quadratic coefficient identity",
            quadratic_coefficient_identity,
        ),
        (
            "pinned products and forced values",
            pinned_products_and_forced_values,
        ),
        ("first Chern class dichotomy", dichotomy),
        ("parity admissibility", parity),
        ("n = 5 half-branch exclusion", half_five_exclusion),
        ("standard-branch soundness", standard_soundness),
        ("n = 3 degenerate case", half_three_degenerate),
        ("alternating-sum identity", alternating_sum),
        ("n = 7 half-branch run", open_branch_run),
        ("solver property suite", solver_property_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
