use exact::{binomial, Rational};
use invariants::{cross_check, hyperelliptic_chi, ChiTable, HyperellipticVariant};
use oracles::TruncPoly;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}

/// The product side of the Chern polynomial identity for `M` passages with
/// level dimensions `n[0..=M]`: over all index subsets `J = [j_1 < ... < j_L]`
/// and `I` in `1..=L`, factors `(1 + xi + sum_{i in I} y_{j_i})` raised to
/// `(-1)^{L - |I|} N_{j_L}`, where `N_s` sums the dimensions of level `s`
/// and below (`N_empty = N`).
fn product_side(n: &[i64], max_degree: u32) -> TruncPoly {
    let m = n.len() - 1;
    let vars = m + 1;
    let one = TruncPoly::constant(vars, max_degree, Rational::one());
    let xi = TruncPoly::var(vars, max_degree, 0, Rational::one());
    let mut out = one.clone();
    for mask in 0u32..(1 << m) {
        let js: Vec<usize> = (0..m).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        let l = js.len();
        let big_n: i64 = match js.last() {
            None => n.iter().sum(),
            Some(&last) => n[last..].iter().sum(),
        };
        for sub in 0u32..(1 << l) {
            let mut base = one.add(&xi);
            for (i, &j) in js.iter().enumerate() {
                if sub & (1 << i) != 0 {
                    base = base.add(&TruncPoly::var(vars, max_degree, j, Rational::one()));
                }
            }
            let size = sub.count_ones() as usize;
            let sign = if (l - size) % 2 == 0 { 1 } else { -1 };
            out = out.mul(&base.pow(sign * big_n));
        }
    }
    out
}

/// The binomial side, summed over all exponent tuples of degree at most
/// `max_degree`.
fn binomial_side(n: &[i64], max_degree: u32) -> TruncPoly {
    let m = n.len() - 1;
    let total: i64 = n.iter().sum();
    let mut out = TruncPoly::constant(m + 1, max_degree, Rational::zero());
    fn tuples(len: usize, budget: u32) -> Vec<Vec<u32>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..=budget {
            for mut rest in tuples(len - 1, budget - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    for ks in tuples(m + 1, max_degree) {
        let lower: i64 = ks[1..].iter().map(|&k| i64::from(k)).sum();
        let mut c = Rational::from(binomial(total - lower, u64::from(ks[0])));
        for i in 1..=m {
            let r: i64 = n[i..].iter().sum();
            let later: i64 = ks[i + 1..].iter().map(|&k| i64::from(k)).sum();
            c *= Rational::from(binomial(r - later, u64::from(ks[i])));
        }
        if c.is_zero() {
            continue;
        }
        let mut mono = TruncPoly::constant(m + 1, max_degree, c);
        for (v, &k) in ks.iter().enumerate() {
            for _ in 0..k {
                mono = mono.mul(&TruncPoly::var(m + 1, max_degree, v, Rational::one()));
            }
        }
        out = out.add(&mono);
    }
    out
}

#[test]
fn chern_polynomial_product_equals_binomial_sum() {
    for n in [[1, 1, 1], [2, 1, 3], [3, 2, 1], [1, 4, 2], [0, 2, 2]] {
        let lhs = product_side(&n, 5);
        let rhs = binomial_side(&n, 5);
        assert_eq!(lhs, rhs, "level dimensions {n:?}");
    }
    for n in [[2, 3], [4, 1]] {
        assert_eq!(product_side(&n, 6), binomial_side(&n, 6));
    }
}

#[test]
fn hyperelliptic_values() {
    assert_eq!(hyperelliptic_chi(3, HyperellipticVariant::Minimal), Some(q(-1, 84)));
    assert_eq!(hyperelliptic_chi(2, HyperellipticVariant::Minimal), Some(q(-1, 40)));
    assert_eq!(hyperelliptic_chi(2, HyperellipticVariant::BiZero), Some(q(1, 30)));
    assert_eq!(hyperelliptic_chi(1, HyperellipticVariant::Minimal), None);
}

#[test]
fn published_values_glue() {
    let ledger = cross_check(&ChiTable::published());
    assert!(ledger.passed(), "{}", ledger.to_table());
    assert_eq!(ledger.rows.len(), 2);
}

#[test]
fn perturbed_input_fails_the_ledger() {
    let mut table = ChiTable::published();
    table.insert("3,1", q(16, 63) + Rational::one(), "perturbed");
    let ledger = cross_check(&table);
    assert!(!ledger.passed());
    assert!(!ledger.rows[0].passed);
    assert!(ledger.rows[1].passed);
    assert!(ledger.to_table().contains("FAIL"));
    let mut missing = ChiTable::published();
    missing.values.remove("1,1");
    assert!(!cross_check(&missing).rows[1].passed);
}
