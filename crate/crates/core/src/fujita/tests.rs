use super::*;
use crate::series::{binomial, rat};
use proptest::prelude::*;

fn ints(v: &[i64]) -> ChernVector<Rational> {
    ChernVector::new(v.iter().map(|&x| int(x)).collect()).unwrap()
}

#[test]
fn adjunction_of_projective_space_is_hyperplane() {
    for n in 2..=10 {
        let d = adjunction_chern(&projective_space_chern(n).unwrap()).unwrap();
        assert_eq!(d, projective_space_chern(n - 1).unwrap(), "n = {n}");
    }
}

#[test]
fn adjunction_rejects_curves() {
    assert!(adjunction_chern(&ints(&[2])).is_err());
}

#[test]
fn dichotomy_has_standard_and_half_roots() {
    for n in 2..=30usize {
        let roots = dichotomy_roots(n).unwrap();
        let values: Vec<Rational> = roots.iter().map(|r| r.value.clone()).collect();
        assert_eq!(
            values,
            vec![int(n as i64 + 1), rat(n as i64 + 1, 2)],
            "n = {n}"
        );
        for r in &roots {
            assert_eq!(dichotomy_residual(n, &r.value), Some(int(0)));
            assert_eq!(r.integral, n % 2 == 1 || r.value == int(n as i64 + 1));
        }
    }
}

#[test]
fn dichotomy_residual_is_nonzero_elsewhere() {
    for n in 2..=12usize {
        for c in -20i64..=40 {
            let c = int(c);
            if let Some(r) = dichotomy_residual(n, &c) {
                let root = c == int(n as i64 + 1) || c == rat(n as i64 + 1, 2);
                assert_eq!(r == int(0), root, "n = {n}, c = {c}");
            }
        }
        assert_eq!(dichotomy_residual(n, &int(0)), None);
        assert_eq!(dichotomy_residual(n, &int(1)), None);
    }
}

#[test]
fn parity_matches_three_mod_four() {
    for n in 0..200 {
        assert_eq!(parity_admissible(n), n % 4 == 3, "n = {n}");
    }
}

#[test]
fn half_branch_needs_odd_dimension() {
    assert!(Branch::Half.first_chern(4).is_err());
    assert_eq!(Branch::Half.first_chern(7).unwrap(), BigInt::from(4));
    assert_eq!(Branch::Standard.first_chern(4).unwrap(), BigInt::from(5));
}

#[test]
fn forced_values_in_dimension_three_collide() {
    assert_eq!(
        forced_values(3).unwrap(),
        ForcedValues::Inconsistent {
            side: Side::D,
            index: 1,
            first: BigInt::from(1),
            second: BigInt::from(9),
        }
    );
}

#[test]
fn forced_values_in_dimension_seven() {
    assert_eq!(
        forced_values(7).unwrap(),
        ForcedValues::Consistent {
            c_m_top_minus_one: BigInt::from(56),
            c_d_top_minus_two: BigInt::from(49),
        }
    );
    for n in [11usize, 15, 19] {
        let ForcedValues::Consistent {
            c_m_top_minus_one,
            c_d_top_minus_two,
        } = forced_values(n).unwrap()
        else {
            panic!("n = {n}");
        };
        assert_eq!(c_m_top_minus_one, BigInt::from(n * (n + 1)));
        assert_eq!(c_d_top_minus_two, BigInt::from(n * n));
    }
    assert!(forced_values(5).is_err());
}

#[test]
fn alternating_sum_on_projective_space() {
    for n in 1..=12 {
        assert!(alternating_sum_check(&projective_space_chern(n).unwrap()));
    }
    assert!(!alternating_sum_check(&ints(&[3, 4])));
}

#[test]
fn standard_systems_vanish_at_binomials() {
    for n in 3..=8 {
        for mode in [Mode::AkOnly, Mode::FullChiY] {
            let sys = generate_system(n, Branch::Standard, mode).unwrap();
            assert!(
                sys.is_satisfied_by(&binomial_assignment(n)).unwrap(),
                "n = {n}, {mode}"
            );
        }
    }
}

#[test]
fn dimension_five_equation_list() {
    let sys = generate_system(5, Branch::Half, Mode::AkOnly).unwrap();
    let names: Vec<String> = sys
        .equations()
        .iter()
        .map(|e| e.provenance.to_string())
        .collect();
    assert_eq!(
        names,
        [
            "A_1(M)",
            "A_2(M)",
            "A_0(D)",
            "A_1(D)",
            "A_2(D)",
            "alternating_sum"
        ]
    );
    assert_eq!(sys.variables(), ["c2", "c3", "c4"]);
    assert!(!sys.is_satisfied_by(&binomial_assignment(5)).unwrap());

    let full = generate_system(5, Branch::Half, Mode::FullChiY).unwrap();
    assert!(full.equations().len() > sys.equations().len());
}

#[test]
fn half_branch_a1_is_linear_in_dimension_five() {
    // A_1(M) = n(3n-5)/24 c_n + c_1 c_{n-1}/12 - its P^5 value
    let sys = generate_system(5, Branch::Half, Mode::AkOnly).unwrap();
    let a1 = &sys.equations()[0].polynomial;
    let expected_p5 = int(5 * 10 * 6) / int(24) + int(6 * 15) / int(12);
    let want = Polynomial::constant(int(5 * 10 * 6) / int(24))
        .add(&Polynomial::generators(&["c4"])[0].scale(&rat(3, 12)))
        .sub(&Polynomial::constant(expected_p5));
    assert_eq!(a1, &want);
}

#[test]
fn system_json_round_trip() {
    for (n, branch, mode) in [
        (5, Branch::Half, Mode::AkOnly),
        (4, Branch::Standard, Mode::FullChiY),
        (7, Branch::Half, Mode::AkOnly),
    ] {
        let sys = generate_system(n, branch, mode).unwrap();
        let text = sys.to_json();
        let back = EquationSystem::from_json(&text).unwrap();
        assert_eq!(back.equations(), sys.equations());
        assert_eq!(back.origin(), sys.origin());
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn system_json_rejects_unknown_variables() {
    let text = r#"{"n":null,"branch":null,"mode":null,"variables":["x"],
        "equations":[{"provenance":"e","monomials":[{"coeff_num":"1","coeff_den":"1","exponents":[1,1]}]}]}"#;
    assert!(EquationSystem::from_json(text).is_err());
}

#[test]
fn provenance_text_round_trip() {
    for p in [
        Provenance::Expansion {
            side: Side::M,
            index: 4,
        },
        Provenance::Expansion {
            side: Side::D,
            index: 3,
        },
        Provenance::AlternatingSum,
        Provenance::Custom("extra".into()),
    ] {
        assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
    }
}

#[test]
fn binomial_assignment_matches_projective_space() {
    let c = projective_space_chern(6).unwrap();
    let b = binomial_assignment(6);
    for i in 2..6 {
        assert_eq!(b[i - 2], c.get(i));
        assert_eq!(b[i - 2], big(binomial(7, i)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjunction_is_inverted_by_sum(v in prop::collection::vec(-50i64..50, 2..9)) {
        let pair = PairModel::new(ints(&v), Branch::Standard).unwrap();
        prop_assert!(pair.adjunction_holds());
        prop_assert_eq!(pair.chern_d.dim(), v.len() - 1);
    }

    #[test]
    fn generated_systems_agree_with_numeric_expansion(
        n in 3usize..7,
        vals in prop::collection::vec(-30i64..30, 4),
    ) {
        // Evaluating the symbolic system equals comparing numeric expansions.
        let sys = generate_system(n, Branch::Standard, Mode::FullChiY).unwrap();
        let point: Vec<Rational> = vals.iter().take(n - 2).map(|&v| int(v)).collect();
        let mut cm = vec![int(n as i64 + 1)];
        cm.extend(point.iter().cloned());
        cm.push(int(n as i64 + 1));
        let cm = ChernVector::new(cm).unwrap();
        let cd = adjunction_chern(&cm).unwrap();
        let res = sys.residuals(&point).unwrap();
        let em = expansion_of(&cm);
        let pm = expansion_of(&projective_space_chern(n).unwrap());
        let ed = expansion_of(&cd);
        let pd = expansion_of(&projective_space_chern(n - 1).unwrap());
        for (eq, r) in sys.equations().iter().zip(&res) {
            let want = match eq.provenance {
                Provenance::Expansion { side: Side::M, index } => {
                    &em.coefficients()[index] - &pm.coefficients()[index]
                }
                Provenance::Expansion { side: Side::D, index } => {
                    &ed.coefficients()[index] - &pd.coefficients()[index]
                }
                Provenance::AlternatingSum => alternating_sum_residual(&cm),
                Provenance::Custom(_) => unreachable!(),
            };
            prop_assert_eq!(r, &want);
        }
    }
}
