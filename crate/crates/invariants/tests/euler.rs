use evaluate::{BackendRegistry, FixtureRegistry, Integrator};
use exact::Rational;
use proptest::prelude::*;
use invariants::{
    c1_log_cotangent, chern_character, chern_class, chern_polynomial, euler_characteristic, exponential_boundary,
};
use strata::StratumSpec;
use tautring::{Atom, Monomial, TautClass};

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}

fn table_integrator() -> Integrator {
    Integrator::new(BackendRegistry::with_fixtures(FixtureRegistry::table_subset(&[&[0], &[2]])))
}

fn paired_poles() -> StratumSpec {
    StratumSpec::from_json(
        r#"{"components":[{"genus":0,"orders":[-2,-2,2]},{"genus":0,"orders":[-2,-2,1,1]}],
            "residue_parts":[{"points":[[0,0],[1,0]],"constrained":true},
                             {"points":[[0,1],[1,1]],"constrained":true}]}"#,
    )
    .unwrap()
}

fn sample_strata() -> Vec<StratumSpec> {
    vec![
        StratumSpec::connected(2, &[2]),
        StratumSpec::connected(1, &[-3, 1, 2]),
        StratumSpec::connected(1, &[-4, 1, 3]),
        StratumSpec::connected(0, &[-3, -2, 1, 1, 1]),
        StratumSpec::connected(0, &[-6, 1, 1, 1, 1, 0]),
        StratumSpec::connected(0, &[1, 1, 2, 2, -8]),
        paired_poles(),
    ]
}

#[test]
fn minimal_genus_two() {
    let report = euler_characteristic(&StratumSpec::connected(2, &[2]), &table_integrator()).unwrap();
    assert_eq!(report.chi, q(-1, 40));
    let mut contributions: Vec<Rational> = report.rows.iter().map(|r| r.contribution.clone()).collect();
    contributions.sort();
    let mut expected = vec![q(-4, 640), Rational::zero(), q(-2, 24 * 8), q(2, 2 * 24)];
    expected.sort();
    assert_eq!(contributions, expected);
}

#[test]
fn elliptic_family() {
    let integrator = Integrator::default();
    for k in 2..=6i64 {
        let spec = StratumSpec::connected(1, &[-k - 1, 1, k]);
        assert_eq!(euler_characteristic(&spec, &integrator).unwrap().chi, q(k * (k + 1), 6), "k = {k}");
    }
}

#[test]
fn genus_zero_small() {
    let integrator = Integrator::new(BackendRegistry::recursion_only());
    for orders in [vec![-4, 1, 1, 0], vec![-3, -3, 1, 3], vec![-2, -2, -2, 1, 3], vec![-9, 1, 2, 1, 3], vec![-3, -2, -2, 1, 1, 1, 2]] {
        let spec = StratumSpec::connected(0, &orders);
        let n = orders.len() as u64;
        let expected = Rational::from(oracles::m0n_euler_characteristic(n));
        assert_eq!(euler_characteristic(&spec, &integrator).unwrap().chi, expected, "{orders:?}");
    }
}

#[test]
fn top_chern_class_is_the_euler_characteristic() {
    let integrator = Integrator::default();
    for spec in sample_strata() {
        let report = chern_polynomial(&spec, &integrator).unwrap();
        assert!(report.consistent, "{}\n{}", spec.to_json(), report.to_table());
    }
}

#[test]
fn chern_character_in_low_degree() {
    let integrator = Integrator::default();
    for spec in sample_strata() {
        let d = spec.dim();
        let c1 = c1_log_cotangent(&spec, &integrator).unwrap();
        let xi = |e: i64| TautClass::monomial(Monomial::xi_power(e as u32), Rational::one());
        if d >= 1 {
            let ch1 = chern_character(&spec, 1, &integrator).unwrap().pair_with_xi(&spec, &integrator).unwrap();
            assert_eq!(ch1, integrator.integrate(&spec, &c1.mul(&xi(d - 1))).unwrap(), "{}", spec.to_json());
        }
        if d >= 2 {
            let ch2 = chern_character(&spec, 2, &integrator).unwrap().pair_with_xi(&spec, &integrator).unwrap();
            let c1sq = integrator.integrate(&spec, &c1.mul(&c1).mul(&xi(d - 2))).unwrap();
            let c2 = chern_class(&spec, 2, &integrator).unwrap().pair_with_xi(&spec, &integrator).unwrap();
            assert_eq!(ch2, (c1sq - c2 * Rational::from(2)) * q(1, 2), "{}", spec.to_json());
        }
    }
}

#[test]
fn exponential_of_the_correction_class() {
    let integrator = Integrator::default();
    for spec in sample_strata() {
        let d = spec.dim();
        let mut factorial = Rational::one();
        for k in 1..=d {
            factorial *= Rational::from(k);
            let mut m = Monomial::xi_power((d - k) as u32);
            m.mul_atom(Atom::L, k as u32);
            let lhs = integrator.integrate_monomial(&spec, &m).unwrap() * factorial.recip().unwrap();
            let rhs = exponential_boundary(&spec, k, &integrator).unwrap().pair_with_xi(&spec, &integrator).unwrap();
            assert_eq!(lhs, rhs, "k = {k} on {}", spec.to_json());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Genus-zero strata are the moduli spaces of pointed rational curves.
    #[test]
    fn genus_zero_euler_characteristic(zeros in prop::collection::vec(1i64..4, 2..4), poles in 1usize..3) {
        let total: i64 = zeros.iter().sum::<i64>() + 2;
        let mut orders = zeros;
        if poles == 2 && total >= 3 {
            orders.extend([-(total - 2), -2]);
        } else {
            orders.push(-total);
        }
        let spec = StratumSpec::connected(0, &orders);
        let chi = euler_characteristic(&spec, &Integrator::new(BackendRegistry::recursion_only())).unwrap().chi;
        prop_assert_eq!(chi, Rational::from(oracles::m0n_euler_characteristic(orders.len() as u64)));
    }
}
