use std::fmt::Write as _;
use std::fs;

use chiy_core::chern::{projective_space_chern, todd_class};
use chiy_core::fujita::{
    alternating_sum_check, binomial_assignment, dichotomy_roots, forced_values, generate_system,
    parity_admissible, ForcedValues,
};
use chiy_core::genus::{
    a1_closed_form, chi_y_from_chern, chi_y_from_hodge, expand_at_minus_one, pinned_products,
    PinnedProducts,
};
use chiy_core::series::{big, int, rat};
use chiy_core::solve::{classify as run_classify, linear_reduce, Verdict};
use chiy_core::{ChernVector, ChiYPolynomial, Error, HodgeDiamond, ManifoldModel, Rational};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::{self, check, usage, Failure, EXIT_CHECK, EXIT_INCONCLUSIVE, EXIT_OK};
use crate::output::{csv, emit, format_or, json};
use crate::{ClassifyArgs, ExpectArg, Format, GenusArgs, PnVerifyArgs, SystemArgs, TableArgs};

const RANDOM_VECTORS: usize = 25;

#[derive(Serialize)]
struct CheckRow {
    n: usize,
    check: &'static str,
    pass: bool,
    detail: String,
}

fn row(n: usize, check: &'static str, pass: bool, detail: String) -> CheckRow {
    CheckRow {
        n,
        check,
        pass,
        detail,
    }
}

/// `A_0` and `A_1` predicted from the pinned products for a space of
/// dimension `dim` with Euler number `euler` and `c_1 c_{dim-1} = prod`.
fn predicted_a0_a1(
    dim: usize,
    euler: &num_bigint::BigInt,
    prod: &num_bigint::BigInt,
) -> (Rational, Rational) {
    let d = dim as i64;
    let a1 = rat(d * (3 * d - 5), 24) * big(euler.clone()) + rat(1, 12) * big(prod.clone());
    (big(euler.clone()), a1)
}

fn pn_rows(n: usize, corrupt: bool, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRow>, Failure> {
    let mut c = projective_space_chern(n).map_err(check)?;
    if corrupt {
        let mut e = c.entries().to_vec();
        let i = n.saturating_sub(2);
        e[i] += int(1);
        c = ChernVector::new(e).map_err(check)?;
        log::warn!("corrupted c_{} of P^{n}", i + 1);
    }
    let m = ManifoldModel::new(c.clone());
    let mut rows = Vec::new();

    let td = m.integrate(&todd_class(&c)).map_err(check)?;
    rows.push(row(
        n,
        "todd",
        td == int(1),
        format!("integral of Td = {td}"),
    ));

    let chi = chi_y_from_chern(&m);
    let want = ChiYPolynomial::projective_space(n);
    rows.push(row(n, "chi_y", chi == want, format!("{chi}")));

    if n >= 2 {
        let a = expand_at_minus_one(&chi);
        let p: PinnedProducts = pinned_products(n).map_err(check)?;
        let (a0, a1) = predicted_a0_a1(n, &p.euler_m, &p.c1_cn1_m);
        let got0 = a.a_k(0).cloned().unwrap_or_default();
        let got1 = a.a_k(1).cloned().unwrap_or_default();
        rows.push(row(
            n,
            "a0",
            got0 == a0,
            format!("A_0 = {got0}, pinned {a0}"),
        ));
        rows.push(row(
            n,
            "a1",
            got1 == a1,
            format!("A_1 = {got1}, pinned {a1}"),
        ));

        let d = projective_space_chern(n - 1).map_err(check)?;
        let ad = expand_at_minus_one(&chi_y_from_chern(&ManifoldModel::new(d)));
        let (d0, d1) = predicted_a0_a1(n - 1, &p.euler_d, &p.c1_cn2_d);
        let got0 = ad.a_k(0).cloned().unwrap_or_default();
        rows.push(row(
            n,
            "a0_divisor",
            got0 == d0,
            format!("A_0 = {got0}, pinned {d0}"),
        ));
        if n >= 3 {
            let got1 = ad.a_k(1).cloned().unwrap_or_default();
            rows.push(row(
                n,
                "a1_divisor",
                got1 == d1,
                format!("A_1 = {got1}, pinned {d1}"),
            ));
        }

        let mut bad = None;
        for _ in 0..RANDOM_VECTORS {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-100..=100)).collect();
            let r = ManifoldModel::new(ChernVector::from_ints(&v).map_err(check)?);
            let got = expand_at_minus_one(&chi_y_from_chern(&r))
                .a_k(1)
                .cloned()
                .unwrap_or_default();
            if got != a1_closed_form(&r).map_err(check)? {
                bad = Some(v);
                break;
            }
        }
        let detail = match &bad {
            None => format!("{RANDOM_VECTORS} random Chern vectors"),
            Some(v) => format!("mismatch at {v:?}"),
        };
        rows.push(row(n, "a1_closed_form", bad.is_none(), detail));
    }

    rows.push(row(
        n,
        "alternating_sum",
        alternating_sum_check(&c),
        String::new(),
    ));
    Ok(rows)
}

pub fn pn_verify(a: &PnVerifyArgs) -> Result<u8, Failure> {
    if a.max_n < 1 {
        return Err(usage("--max-n must be at least 1"));
    }
    let format = format_or(
        &a.out,
        Format::Text,
        &[Format::Text, Format::Json, Format::Csv],
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut rows = Vec::new();
    for n in 1..=a.max_n {
        rows.extend(pn_rows(n, a.corrupt == Some(n), &mut rng)?);
    }
    let failed: Vec<&CheckRow> = rows.iter().filter(|r| !r.pass).collect();
    let text = match format {
        Format::Json => json(&json!({ "passed": failed.is_empty(), "seed": a.seed, "rows": rows })),
        Format::Csv => csv(
            &["n", "check", "status", "detail"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.check.to_string(),
                    status(r.pass).into(),
                    r.detail.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>3}  {:<16} {}  {}",
                    r.n,
                    r.check,
                    status(r.pass),
                    r.detail
                );
            }
            let _ = writeln!(s, "{} checks, {} failed", rows.len(), failed.len());
            s
        }
    };
    emit(&a.out, &text)?;
    for r in &failed {
        eprintln!("FAIL: n = {} {}: {}", r.n, r.check, r.detail);
    }
    Ok(if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK
    })
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn genus(a: &GenusArgs) -> Result<u8, Failure> {
    let format = format_or(&a.out, Format::Text, &[Format::Text, Format::Json])?;
    let (chi, closed) = match (&a.chern, &a.hodge) {
        (Some(list), None) => {
            let entries = list
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<Rational>()
                        .map_err(|_| usage(format!("not a number: {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = ManifoldModel::new(ChernVector::new(entries).map_err(usage)?);
            let chi = chi_y_from_chern(&m);
            let closed = (m.dim() >= 2)
                .then(|| a1_closed_form(&m))
                .transpose()
                .map_err(check)?;
            (chi, closed)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let h = HodgeDiamond::parse(&text).map_err(usage)?;
            (chi_y_from_hodge(&h), None)
        }
        _ => return Err(usage("exactly one of --chern or --hodge is required")),
    };
    let expansion = expand_at_minus_one(&chi);
    let ak: Vec<Rational> = (0..=chi.dim() / 2)
        .filter_map(|k| expansion.a_k(k).cloned())
        .collect();
    let matches = closed.as_ref().map(|c| Some(c) == expansion.a_k(1));

    let text = match format {
        Format::Json => json(&json!({
            "dimension": chi.dim(),
            "chi_p": strings(chi.coefficients()),
            "chi_y": chi.to_string(),
            "expansion": strings(expansion.coefficients()),
            "a_k": strings(&ak),
            "a1_closed_form": closed.as_ref().map(|c| c.to_string()),
            "a1_matches": matches,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "dimension  {}", chi.dim());
            let _ = writeln!(s, "chi_p      {}", strings(chi.coefficients()).join(", "));
            let _ = writeln!(s, "chi_y      {chi}");
            let _ = writeln!(s, "expansion  {expansion}");
            for (k, v) in ak.iter().enumerate() {
                let _ = writeln!(s, "A_{k:<8} {v}");
            }
            if let Some(c) = &closed {
                let verdict = if matches == Some(true) {
                    "agrees"
                } else {
                    "DISAGREES"
                };
                let _ = writeln!(s, "closed-form A_1 = {c} ({verdict})");
            }
            s
        }
    };
    emit(&a.out, &text)?;
    if matches == Some(false) {
        return Err(check("closed-form A_1 disagrees with the expansion"));
    }
    Ok(EXIT_OK)
}

pub fn system(a: &SystemArgs) -> Result<u8, Failure> {
    let (n, branch, mode) = config::pair(&a.pair)?;
    let format = format_or(&a.out, Format::Json, &[Format::Json, Format::Text])?;
    let sys = generate_system(n, branch, mode).map_err(usage)?;
    if branch == chiy_core::Branch::Standard {
        let ok = sys
            .is_satisfied_by(&binomial_assignment(n))
            .map_err(check)?;
        if !ok {
            return Err(check(format!(
                "standard system for n = {n} is not satisfied by the binomials"
            )));
        }
    }
    let reduction = a.reduced.then(|| linear_reduce(&sys));
    let text = match format {
        Format::Json => match &reduction {
            None => json(&sys.to_json_value()),
            Some(r) => json(&json!({
                "system": sys.to_json_value(),
                "reduction": {
                    "trace": r.trace(),
                    "inconsistency": r.inconsistency.as_ref().map(|i| i.constant.to_string()),
                    "reduced": r.reduced_system(&sys).to_json_value(),
                },
            })),
        },
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {n}, branch {branch}, mode {mode}");
            let _ = writeln!(s, "variables: {}", sys.variables().join(", "));
            for e in sys.equations() {
                let _ = writeln!(s, "{:<16} {} = 0", e.provenance.to_string(), e.polynomial);
            }
            for note in sys.notes() {
                let _ = writeln!(s, "note: {note}");
            }
            if let Some(r) = &reduction {
                let _ = writeln!(s, "reduction:");
                let _ = write!(s, "{r}");
            }
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(EXIT_OK)
}

pub fn classify(a: &ClassifyArgs) -> Result<u8, Failure> {
    let (n, branch, mode) = config::pair(&a.pair)?;
    let format = format_or(&a.out, Format::Json, &[Format::Json, Format::Text])?;
    let solve = config::solve_config(a)?;
    let report = run_classify(n, branch, mode, &solve).map_err(|e| match e {
        Error::Config(_) | Error::UnknownVariable(_) | Error::EmptyBounds(_) => usage(e),
        other => check(other),
    })?;
    let sys = generate_system(n, branch, mode).map_err(check)?;
    report
        .verify(&sys)
        .map_err(|e| check(format!("certificate failed replay: {e}")))?;
    log::info!(
        "classify n = {n} {branch}: {} in {} ms",
        report.verdict.name(),
        report.elapsed_ms
    );

    let text = match format {
        Format::Json => report.to_json(false),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {n}, branch {branch}, mode {mode}");
            let _ = writeln!(s, "verdict: {}", report.verdict.name());
            if let Verdict::Solutions {
                solutions,
                complete,
            } = &report.verdict
            {
                for p in solutions {
                    let vals: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(s, "  ({})", vals.join(", "));
                }
                let _ = writeln!(s, "complete: {complete}");
            }
            for t in &report.reduction_trace {
                let _ = writeln!(s, "  {t}");
            }
            let conclusion = report.to_json_value(false).certificate.conclusion;
            let _ = writeln!(
                s,
                "conclusion: {}",
                serde_json::to_string(&conclusion).expect("serializable")
            );
            s
        }
    };
    emit(&a.out, &text)?;

    let got = match report.verdict {
        Verdict::NoIntegerSolution => ExpectArg::NoIntegerSolution,
        Verdict::Solutions { .. } => ExpectArg::Solutions,
        Verdict::Inconclusive => ExpectArg::Inconclusive,
    };
    Ok(match a.expect {
        Some(e) if e != got => {
            let want = e.to_possible_value().expect("not skipped");
            eprintln!(
                "chiy: expected {}, got {}",
                want.get_name(),
                report.verdict.name()
            );
            EXIT_CHECK
        }
        Some(_) => EXIT_OK,
        None if got == ExpectArg::Inconclusive => EXIT_INCONCLUSIVE,
        None => EXIT_OK,
    })
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    standard_root: String,
    half_root: String,
    half_integral: bool,
    half_admissible: bool,
    forced_c_m: Option<String>,
    forced_c_d: Option<String>,
    note: String,
}

fn table_row(n: usize) -> Result<TableRow, Failure> {
    let roots = dichotomy_roots(n).map_err(check)?;
    let [standard, half] = roots.as_slice() else {
        return Err(check(format!("expected two dichotomy roots at n = {n}")));
    };
    let admissible = parity_admissible(n);
    let (mut forced_c_m, mut forced_c_d, mut note) = (None, None, String::new());
    if admissible {
        match forced_values(n).map_err(check)? {
            ForcedValues::Consistent {
                c_m_top_minus_one,
                c_d_top_minus_two,
            } => {
                forced_c_m = Some(c_m_top_minus_one.to_string());
                forced_c_d = Some(c_d_top_minus_two.to_string());
            }
            ForcedValues::Inconsistent {
                side,
                index,
                first,
                second,
            } => {
                note = format!("c_{index}({side}) forced to both {first} and {second}");
            }
        }
    } else if half.integral {
        note = "c_1 parity excludes the half branch".into();
    } else {
        note = "half root not integral".into();
    }
    Ok(TableRow {
        n,
        standard_root: standard.value.to_string(),
        half_root: half.value.to_string(),
        half_integral: half.integral,
        half_admissible: admissible,
        forced_c_m,
        forced_c_d,
        note,
    })
}

pub fn table(a: &TableArgs) -> Result<u8, Failure> {
    if a.max_n < 2 {
        return Err(usage("--max-n must be at least 2"));
    }
    let format = format_or(
        &a.out,
        Format::Csv,
        &[Format::Csv, Format::Json, Format::Text],
    )?;
    let rows = (2..=a.max_n)
        .map(table_row)
        .collect::<Result<Vec<_>, _>>()?;
    let opt = |o: &Option<String>| o.clone().unwrap_or_default();
    let text = match format {
        Format::Json => json(&rows),
        Format::Csv => csv(
            &[
                "n",
                "standard_root",
                "half_root",
                "half_integral",
                "half_admissible",
                "forced_c_m",
                "forced_c_d",
                "note",
            ],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.standard_root.clone(),
                    r.half_root.clone(),
                    r.half_integral.to_string(),
                    r.half_admissible.to_string(),
                    opt(&r.forced_c_m),
                    opt(&r.forced_c_d),
                    r.note.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>3}  roots {{{}, {}}}  {:<14} {}",
                    r.n,
                    r.standard_root,
                    r.half_root,
                    if r.half_admissible {
                        "admissible"
                    } else {
                        "not admissible"
                    },
                    match (&r.forced_c_m, &r.forced_c_d) {
                        (Some(m), Some(d)) =>
                            format!("c_{}(M) = {m}, c_{}(D) = {d}", r.n - 1, r.n - 2),
                        _ => r.note.clone(),
                    }
                );
            }
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(EXIT_OK)
}
