//! Brute-force and textbook oracles.
//!
//! Nothing here shares code with the production crates beyond the
//! [`exact::Rational`] number type: orbit counts are found by breadth-first
//! search, genus-zero psi integrals by the string equation, automorphisms by
//! trying every permutation, and polynomial identities by naive truncated
//! expansion. The production code is tested against these.

use exact::Rational;
use num_bigint::{BigInt, BigUint};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

/// Number of orbits of the translation action of the subgroup generated by
/// the 0/1 `rows` on `prod Z/moduli_i`, by explicit breadth-first search.
pub fn bfs_orbit_count(moduli: &[u64], rows: &[Vec<u8>]) -> u64 {
    let total: u64 = moduli.iter().product();
    let encode = |v: &[u64]| v.iter().zip(moduli).fold(0u64, |acc, (x, m)| acc * m + x);
    let decode = |mut c: u64| {
        let mut v = vec![0u64; moduli.len()];
        for i in (0..moduli.len()).rev() {
            v[i] = c % moduli[i];
            c /= moduli[i];
        }
        v
    };
    let mut seen = vec![false; total as usize];
    let mut orbits = 0;
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let v = decode(c);
            for r in rows {
                let w: Vec<u64> = v.iter().zip(r).zip(moduli).map(|((x, &a), m)| (x + u64::from(a)) % m).collect();
                let code = encode(&w);
                if !seen[code as usize] {
                    seen[code as usize] = true;
                    queue.push_back(code);
                }
            }
        }
    }
    orbits
}

/// `n!` by repeated multiplication.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Multinomial coefficient straight from the factorial definition.
pub fn factorial_multinomial(total: u64, parts: &[u64]) -> BigUint {
    let mut den = BigUint::from(1u32);
    for &p in parts {
        den *= factorial(p);
    }
    factorial(total) / den
}

/// The genus-zero intersection number `<tau_{k_1} ... tau_{k_n}>` on the
/// moduli space of `n`-pointed stable rational curves, computed with the
/// string equation from `<tau_0^3> = 1`.
pub fn string_equation(exponents: &[u64]) -> BigInt {
    let mut memo = HashMap::new();
    let mut key = exponents.to_vec();
    key.sort_unstable();
    string_rec(&key, &mut memo)
}

fn string_rec(k: &[u64], memo: &mut HashMap<Vec<u64>, BigInt>) -> BigInt {
    let n = k.len() as u64;
    if n < 3 || k.iter().sum::<u64>() != n - 3 {
        return BigInt::from(0);
    }
    if n == 3 {
        return BigInt::from(1);
    }
    if let Some(v) = memo.get(k) {
        return v.clone();
    }
    // A zero exponent always exists when sum = n - 3 < n.
    let z = k.iter().position(|&x| x == 0).expect("a tau_0 insertion");
    let mut rest = k.to_vec();
    rest.remove(z);
    let mut acc = BigInt::from(0);
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut r = rest.clone();
            r[j] -= 1;
            r.sort_unstable();
            acc += string_rec(&r, memo);
        }
    }
    memo.insert(k.to_vec(), acc.clone());
    acc
}

/// The classical orbifold Euler characteristic `(-1)^(n-3) (n-3)!` of the
/// moduli space of `n`-pointed smooth rational curves.
pub fn m0n_euler_characteristic(n: u64) -> BigInt {
    let f = BigInt::from(factorial(n - 3));
    if (n - 3) % 2 == 0 {
        f
    } else {
        -f
    }
}

/// Counts automorphisms of a directed multigraph by trying every vertex
/// permutation preserving `vertex_keys` and every edge permutation.
///
/// `edges` are `(from, to, weight)`. Vertices carrying labelled legs should
/// be given unique keys so they are fixed.
pub fn brute_force_automorphisms<K: Eq>(vertex_keys: &[K], edges: &[(usize, usize, u64)]) -> u64 {
    let vperms = permutations(vertex_keys.len());
    let eperms = permutations(edges.len());
    let mut count = 0;
    for s in &vperms {
        if (0..vertex_keys.len()).any(|v| vertex_keys[s[v]] != vertex_keys[v]) {
            continue;
        }
        for t in &eperms {
            let ok = edges.iter().enumerate().all(|(i, &(a, b, w))| {
                let (c, d, x) = edges[t[i]];
                c == s[a] && d == s[b] && x == w
            });
            if ok {
                count += 1;
            }
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Counts the set partitions of `n` labelled items (Bell numbers), by
/// generating them explicitly.
pub fn bell_by_enumeration(n: usize) -> usize {
    let mut seen = HashSet::new();
    let mut stack = vec![Vec::<usize>::new()];
    while let Some(p) = stack.pop() {
        if p.len() == n {
            seen.insert(p);
            continue;
        }
        let max = p.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=max {
            let mut q = p.clone();
            q.push(b);
            stack.push(q);
        }
    }
    seen.len()
}

/// A multivariate polynomial with rational coefficients, truncated at a
/// fixed total degree. Monomials are exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPoly {
    vars: usize,
    max_degree: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TruncPoly {
    /// The constant polynomial `c`.
    pub fn constant(vars: usize, max_degree: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        TruncPoly { vars, max_degree, terms }
    }

    /// `c * x_i`.
    pub fn var(vars: usize, max_degree: u32, i: usize, c: Rational) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        if !c.is_zero() && max_degree >= 1 {
            terms.insert(e, c);
        }
        TruncPoly { vars, max_degree, terms }
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// All non-zero terms.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let v = out.coeff(e) + c;
            if v.is_zero() {
                out.terms.remove(e);
            } else {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TruncPoly::constant(self.vars, self.max_degree, Rational::zero());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                let v = out.coeff(&e) + c1 * c2;
                if v.is_zero() {
                    out.terms.remove(&e);
                } else {
                    out.terms.insert(e, v);
                }
            }
        }
        out
    }

    /// Integer power of a polynomial with constant term one, by truncated
    /// power series (negative exponents use the geometric series).
    pub fn pow(&self, n: i64) -> Self {
        let one = TruncPoly::constant(self.vars, self.max_degree, Rational::one());
        assert_eq!(self.coeff(&vec![0; self.vars]), Rational::one(), "constant term must be one");
        let base = if n >= 0 {
            self.clone()
        } else {
            // 1/(1+u) = sum (-u)^k
            let u = self.add(&TruncPoly::constant(self.vars, self.max_degree, -Rational::one()));
            let neg_u = u.mul(&TruncPoly::constant(self.vars, self.max_degree, -Rational::one()));
            let mut acc = one.clone();
            let mut p = one.clone();
            for _ in 0..self.max_degree {
                p = p.mul(&neg_u);
                acc = acc.add(&p);
            }
            acc
        };
        let mut acc = one;
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}
