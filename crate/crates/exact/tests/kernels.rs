use exact::{
    binomial, in_row_space, lattice_index, lcm_list, multinomial, orbit_count, rank, smith_diagonal, BigInt,
    ExactError, IntegerMatrix, LatticeIndex, Rational,
};
use oracles::{bfs_orbit_count, factorial_multinomial};
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

#[test]
fn lcm_examples() {
    assert_eq!(lcm_list(&[2, 4, 6]).unwrap(), 12);
    // cherry enhancements a1+a2+1 and a3+a4+1 with a = (1,1,2,2)
    assert_eq!(lcm_list(&[3, 5]).unwrap(), 15);
    assert_eq!(lcm_list(&[1]).unwrap(), 1);
    assert!(matches!(lcm_list(&[]), Err(ExactError::InvalidArgument(_))));
    assert!(matches!(lcm_list(&[3, 0]), Err(ExactError::InvalidArgument(_))));
}

#[test]
fn multinomial_examples() {
    assert_eq!(multinomial(1, &[1]).unwrap(), 1u32.into());
    assert_eq!(multinomial(2, &[1, 1]).unwrap(), 2u32.into());
    assert_eq!(multinomial(3, &[2, 1]).unwrap(), 3u32.into());
    assert!(multinomial(3, &[1, 1]).is_err());
}

#[test]
fn generalized_binomial() {
    assert_eq!(binomial(5, 2), BigInt::from(10));
    assert_eq!(binomial(2, 3), BigInt::from(0));
    assert_eq!(binomial(-1, 3), BigInt::from(-1));
    assert_eq!(binomial(-2, 2), BigInt::from(3));
    assert_eq!(binomial(0, 0), BigInt::from(1));
}

#[test]
fn lattice_index_examples() {
    let m = IntegerMatrix::from_rows(1, &[vec![7]]).unwrap();
    assert_eq!(lattice_index(1, &m).unwrap(), LatticeIndex::Finite(7.into()));
    let (k1, k2) = (4, 6);
    let m = IntegerMatrix::from_rows(2, &[vec![0, k1], vec![k2, -k2]]).unwrap();
    assert_eq!(lattice_index(2, &m).unwrap(), LatticeIndex::Finite((k1 * k2).into()));
    let m = IntegerMatrix::from_rows(2, &[vec![1, 0]]).unwrap();
    assert_eq!(lattice_index(2, &m).unwrap(), LatticeIndex::Infinite);
    assert!(matches!(lattice_index(3, &m), Err(ExactError::Shape(_))));
}

#[test]
fn orbit_count_examples() {
    let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
    assert_eq!(orbit_count(&[2, 4, 6], &rows).unwrap(), 2.into());
    assert_eq!(orbit_count(&[5], &[vec![1]]).unwrap(), 1.into());
    assert_eq!(orbit_count(&[2, 4], &[vec![1, 1]]).unwrap(), 2.into());
    assert_eq!(bfs_orbit_count(&[2, 4], &[vec![1, 1]]), 2);
}

#[test]
fn smith_form_is_divisibility_chain() {
    let m = IntegerMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let d = smith_diagonal(&m);
    assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
}

#[test]
fn rational_text_round_trip() {
    assert_eq!(q("6/-4").to_string(), "-3/2");
    assert_eq!(q("10/5").to_string(), "2");
    assert!("1/0".parse::<Rational>().is_err());
    let json = serde_json::to_string(&q("-1/640")).unwrap();
    assert_eq!(json, "\"-1/640\"");
    let back: Rational = serde_json::from_str(&json).unwrap();
    assert_eq!(back, q("-1/640"));
    assert_eq!(q("2/3").pow(-2), q("9/4"));
}

#[test]
fn rational_rank() {
    let r = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
    // The four-residue example: two constrained parts plus two residue theorems.
    let rows = vec![r(&[1, 1, 0, 0]), r(&[0, 0, 1, 1]), r(&[1, 0, 1, 0]), r(&[0, 1, 0, 1])];
    assert_eq!(rank(&rows), 3);
    assert!(in_row_space(&rows, &r(&[1, 1, 1, 1])));
    assert!(!in_row_space(&rows, &r(&[1, 0, 0, 0])));
}

/// Exhaustive: every modulus vector with entries up to 6 on up to three
/// cyclic factors, every 0/1 action with up to three generators.
#[test]
fn orbit_count_matches_bfs_exhaustively() {
    for e in 1..=3usize {
        let mut moduli = vec![1u64; e];
        loop {
            let patterns: Vec<Vec<u8>> = (1u32..(1 << e))
                .map(|m| (0..e).map(|i| ((m >> i) & 1) as u8).collect())
                .collect();
            // all sets of at most three action rows
            let n = patterns.len();
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        for rows in [vec![patterns[a].clone()], vec![patterns[a].clone(), patterns[b].clone()], vec![
                            patterns[a].clone(),
                            patterns[b].clone(),
                            patterns[c].clone(),
                        ]] {
                            let fast = orbit_count(&moduli, &rows).unwrap();
                            let slow = bfs_orbit_count(&moduli, &rows);
                            assert_eq!(fast, BigInt::from(slow), "moduli {moduli:?} rows {rows:?}");
                        }
                    }
                }
            }
            // next modulus vector
            let mut i = 0;
            while i < e && moduli[i] == 6 {
                moduli[i] = 1;
                i += 1;
            }
            if i == e {
                break;
            }
            moduli[i] += 1;
        }
    }
}

proptest! {
    #[test]
    fn lattice_index_is_product_of_smith_entries(entries in proptest::collection::vec(-9i64..10, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
        let m = IntegerMatrix::from_rows(3, &rows).unwrap();
        let d = smith_diagonal(&m);
        // |det| is the product of the invariant factors for a square matrix.
        let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
        match lattice_index(3, &m).unwrap() {
            LatticeIndex::Finite(i) => {
                prop_assert_eq!(d.len(), 3);
                prop_assert_eq!(i.clone(), d.iter().product::<BigInt>());
                prop_assert_eq!(i, BigInt::from(det.abs()));
            }
            LatticeIndex::Infinite => prop_assert_eq!(det, 0),
        }
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn multinomial_symmetric_and_matches_factorials(mut parts in proptest::collection::vec(0u64..6, 1..5), seed in 0usize..24) {
        let total: u64 = parts.iter().sum();
        let a = multinomial(total, &parts).unwrap();
        prop_assert_eq!(a.clone(), factorial_multinomial(total, &parts));
        let len = parts.len();
        parts.rotate_left(seed % len);
        parts.reverse();
        prop_assert_eq!(a, multinomial(total, &parts).unwrap());
    }

    #[test]
    fn rational_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Rational::new(a, b).unwrap();
        let y = Rational::new(c, d).unwrap();
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) - &(&y * &x), Rational::zero());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert!(x.denom() > &BigInt::from(0));
        let s = x.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), x);
    }
}
