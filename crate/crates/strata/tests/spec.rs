use proptest::prelude::*;
use strata::{Component, ComponentKind, Point, ResiduePart, StrataError, StratumSpec};

/// Two genus-zero components with two constrained parts pairing their poles.
fn paired_poles() -> StratumSpec {
    StratumSpec {
        components: vec![
            Component { genus: 0, orders: vec![-2, -2, 2] },
            Component { genus: 0, orders: vec![-2, -2, 1, 1] },
        ],
        residue_parts: vec![
            ResiduePart { points: vec![Point::new(0, 0), Point::new(1, 0)], constrained: true },
            ResiduePart { points: vec![Point::new(0, 1), Point::new(1, 1)], constrained: true },
        ],
    }
}

#[test]
fn validate_examples() {
    assert_eq!(StratumSpec::connected(2, &[2]).validate().unwrap(), vec![ComponentKind::Holomorphic]);
    assert_eq!(StratumSpec::connected(0, &[-2, -2, 2]).validate().unwrap(), vec![ComponentKind::Meromorphic]);
    assert_eq!(
        StratumSpec::connected(1, &[1]).validate(),
        Err(StrataError::Degree { component: 0, sum: 1, expected: 0 })
    );
    assert!(paired_poles().validate().is_ok());
}

#[test]
fn validate_rejects_bad_parts() {
    let mut s = StratumSpec::connected(0, &[-1, -3, 2]);
    s.residue_parts.push(ResiduePart { points: vec![Point::new(0, 0)], constrained: true });
    assert!(matches!(s.validate(), Err(StrataError::NotAHigherPole { .. })));
    let mut s = StratumSpec::connected(0, &[-2, -3, 3]);
    s.residue_parts.push(ResiduePart { points: vec![Point::new(0, 0)], constrained: true });
    s.residue_parts.push(ResiduePart { points: vec![Point::new(0, 0), Point::new(0, 1)], constrained: false });
    assert!(matches!(s.validate(), Err(StrataError::NotDisjoint { .. })));
    let mut s = StratumSpec::connected(0, &[-2, -3, 3]);
    s.residue_parts.push(ResiduePart { points: vec![Point::new(0, 7)], constrained: true });
    assert!(matches!(s.validate(), Err(StrataError::MissingPoint { .. })));
    assert!(matches!(StratumSpec::connected(0, &[-2]).validate(), Err(StrataError::Unstable(0))));
}

#[test]
fn dimension_examples() {
    let d = StratumSpec::connected(2, &[2]).dimension();
    assert_eq!((d.unprojectivized, d.projectivized), (4, 3));
    assert_eq!(paired_poles().dimension().projectivized, 1);
    let d = StratumSpec::connected(0, &[1, 1, 1, 1, -6]).dimension();
    assert_eq!((d.unprojectivized, d.projectivized), (3, 2));
}

#[test]
fn residue_rank_examples() {
    assert_eq!(paired_poles().residue_subspace_rank(), 1);
    // no parts: the residue theorem alone
    assert_eq!(StratumSpec::connected(0, &[-2, -3, -1, 4]).residue_subspace_rank(), 2);
    assert_eq!(StratumSpec::connected(1, &[-3, 3]).residue_subspace_rank(), 0);
    assert_eq!(StratumSpec::connected(1, &[-3, 3]).forced_zero_residues(), vec![true]);
}

#[test]
fn json_round_trip() {
    let s = paired_poles();
    let text = s.to_json();
    assert!(text.contains("\"points\":[[0,0],[1,0]]"));
    assert_eq!(StratumSpec::from_json(&text).unwrap(), s);
    let bare = StratumSpec::from_json(r#"{"components":[{"genus":2,"orders":[2]}]}"#).unwrap();
    assert_eq!(bare, StratumSpec::connected(2, &[2]));
}

#[test]
fn canonical_form_is_a_relabelling() {
    let s = StratumSpec {
        components: vec![
            Component { genus: 0, orders: vec![1, -2, -2, 1] },
            Component { genus: 0, orders: vec![2, -2, -2] },
        ],
        residue_parts: vec![
            ResiduePart { points: vec![Point::new(1, 1), Point::new(0, 1)], constrained: true },
            ResiduePart { points: vec![Point::new(0, 2), Point::new(1, 2)], constrained: true },
        ],
    };
    let (c, map) = s.canonical_form();
    assert!(c.validate().is_ok());
    for p in s.points() {
        let q = map[p.comp][p.idx];
        assert_eq!(s.order(p), c.order(q));
    }
    assert_eq!(c.dimension(), s.dimension());
    assert_eq!(c.canonical_form().0, c);
    assert_eq!(c, paired_poles().canonical_form().0);
}

fn genus_orders() -> impl Strategy<Value = (u32, Vec<i64>)> {
    (0u32..3, proptest::collection::vec(-4i64..5, 1..5)).prop_filter_map("fix degree", |(g, mut o)| {
        let need = 2 * i64::from(g) - 2 - o.iter().sum::<i64>();
        o.push(need);
        let s = StratumSpec::connected(g, &o);
        s.validate().ok().map(|_| (g, o))
    })
}

proptest! {
    #[test]
    fn connected_dimension_formula((g, orders) in genus_orders()) {
        let s = StratumSpec::connected(g, &orders);
        let n = orders.len() as i64;
        let expect = if s.is_holomorphic() { 2 * i64::from(g) - 1 + n } else { 2 * i64::from(g) - 2 + n };
        prop_assert_eq!(s.dimension().unprojectivized, expect);
    }

    #[test]
    fn disjoint_union_dimension((g1, o1) in genus_orders(), (g2, o2) in genus_orders()) {
        let a = StratumSpec::connected(g1, &o1);
        let b = StratumSpec::connected(g2, &o2);
        let u = StratumSpec { components: vec![a.components[0].clone(), b.components[0].clone()], residue_parts: vec![] };
        // Unprojectivized dimensions add; the projectivized one drops by one more.
        prop_assert_eq!(u.dimension().unprojectivized, a.dimension().unprojectivized + b.dimension().unprojectivized);
        prop_assert_eq!(u.dim(), a.dim() + b.dim() + 1);
    }

    #[test]
    fn constraints_never_raise_dimension((g, orders) in genus_orders(), mask in 0u32..16) {
        let mut s = StratumSpec::connected(g, &orders);
        let poles: Vec<Point> = s.poles().into_iter().filter(|&p| s.order(p) <= -2).collect();
        let chosen: Vec<Point> = poles.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let before = s.dimension().unprojectivized;
        if !chosen.is_empty() {
            s.residue_parts.push(ResiduePart { points: chosen, constrained: true });
        }
        let after = s.dimension().unprojectivized;
        prop_assert!(after == before || after == before - 1);
    }
}
