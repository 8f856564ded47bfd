use exact::Rational;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use strata::Point;

/// A degree-one generator of the polynomial presentation of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// The tautological class `xi`, the first Chern class of `O(-1)`.
    Xi,
    /// The top-level correction class: the sum of `ell_G [D_G]` over all
    /// two-level graphs `G` of the stratum.
    L,
    /// The cotangent class at a marked point.
    Psi(Point),
    /// The boundary divisor of the two-level graph with this index.
    Divisor(usize),
}

/// A monomial in [`Atom`]s on one stratum.
///
/// Divisor indices refer to the two-level graph list of that stratum.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    /// Exponent of `xi`.
    pub xi: u32,
    /// Exponent of the correction class.
    pub lpow: u32,
    /// Exponents of `psi` classes.
    pub psi: BTreeMap<Point, u32>,
    /// Exponents of boundary divisors.
    pub divisors: BTreeMap<usize, u32>,
}

impl Monomial {
    /// The unit monomial.
    pub fn one() -> Self {
        Monomial::default()
    }

    /// `xi^a`.
    pub fn xi_power(a: u32) -> Self {
        Monomial { xi: a, ..Monomial::default() }
    }

    /// A single atom raised to a power.
    pub fn atom(atom: Atom, e: u32) -> Self {
        let mut m = Monomial::one();
        m.mul_atom(atom, e);
        m
    }

    /// Multiplies in `atom^e`.
    pub fn mul_atom(&mut self, atom: Atom, e: u32) {
        if e == 0 {
            return;
        }
        match atom {
            Atom::Xi => self.xi += e,
            Atom::L => self.lpow += e,
            Atom::Psi(p) => *self.psi.entry(p).or_insert(0) += e,
            Atom::Divisor(i) => *self.divisors.entry(i).or_insert(0) += e,
        }
    }

    /// Removes one factor `atom`; returns `false` if it is absent.
    pub fn remove_atom(&mut self, atom: Atom) -> bool {
        fn dec<K: Ord>(map: &mut BTreeMap<K, u32>, k: K) -> bool {
            match map.get_mut(&k) {
                Some(e) => {
                    *e -= 1;
                    if *e == 0 {
                        map.remove(&k);
                    }
                    true
                }
                None => false,
            }
        }
        match atom {
            Atom::Xi if self.xi > 0 => {
                self.xi -= 1;
                true
            }
            Atom::L if self.lpow > 0 => {
                self.lpow -= 1;
                true
            }
            Atom::Psi(p) => dec(&mut self.psi, p),
            Atom::Divisor(i) => dec(&mut self.divisors, i),
            _ => false,
        }
    }

    /// The product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (a, e) in other.atoms() {
            m.mul_atom(a, e);
        }
        m
    }

    /// Total degree.
    pub fn degree(&self) -> i64 {
        i64::from(self.xi)
            + i64::from(self.lpow)
            + self.psi.values().map(|&e| i64::from(e)).sum::<i64>()
            + self.divisors.values().map(|&e| i64::from(e)).sum::<i64>()
    }

    /// The atoms with their exponents.
    pub fn atoms(&self) -> Vec<(Atom, u32)> {
        let mut out = Vec::new();
        if self.xi > 0 {
            out.push((Atom::Xi, self.xi));
        }
        if self.lpow > 0 {
            out.push((Atom::L, self.lpow));
        }
        out.extend(self.psi.iter().map(|(&p, &e)| (Atom::Psi(p), e)));
        out.extend(self.divisors.iter().map(|(&i, &e)| (Atom::Divisor(i), e)));
        out
    }

    /// Whether only `xi` and the correction class occur, so that the
    /// integral does not depend on the labelling of points or graphs.
    pub fn is_label_free(&self) -> bool {
        self.psi.is_empty() && self.divisors.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, e) in self.atoms() {
            let base = match a {
                Atom::Xi => "xi".to_string(),
                Atom::L => "L".to_string(),
                Atom::Psi(p) => format!("psi{p}"),
                Atom::Divisor(i) => format!("D{i}"),
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A class on one stratum, kept as a polynomial in [`Atom`]s.
///
/// Products are formal: a product of divisors is resolved into boundary
/// strata only when it is integrated, by restriction to one of the
/// divisors. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TautClass {
    terms: BTreeMap<Monomial, Rational>,
}

impl TautClass {
    /// The zero class.
    pub fn zero() -> Self {
        TautClass::default()
    }

    /// The fundamental class.
    pub fn one() -> Self {
        TautClass::monomial(Monomial::one(), Rational::one())
    }

    /// `c * m`.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut t = TautClass::zero();
        t.add_term(m, c);
        t
    }

    /// `c * atom`.
    pub fn atom(atom: Atom, c: Rational) -> Self {
        TautClass::monomial(Monomial::atom(atom, 1), c)
    }

    /// Adds `c * m`.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The terms, sorted by monomial.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether the class is zero as a polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum.
    pub fn add(&self, other: &TautClass) -> TautClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> TautClass {
        let mut out = TautClass::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Formal product.
    pub fn mul(&self, other: &TautClass) -> TautClass {
        let mut out = TautClass::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Formal power, dropping terms of degree above `max_degree`.
    pub fn pow_truncated(&self, n: u32, max_degree: i64) -> TautClass {
        let mut out = TautClass::one();
        for _ in 0..n {
            out = out.mul(self).truncate(max_degree);
        }
        out
    }

    /// The part of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: i64) -> TautClass {
        TautClass { terms: self.terms.iter().filter(|(m, _)| m.degree() <= max_degree).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// The homogeneous part of degree `k`.
    pub fn homogeneous(&self, k: i64) -> TautClass {
        TautClass { terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One row of a class dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTerm {
    /// Exponent of `xi`.
    pub xi: u32,
    /// Exponent of the correction class.
    pub l: u32,
    /// `psi` exponents as `(component, index, exponent)`.
    pub psi: Vec<(usize, usize, u32)>,
    /// Divisors as `(graph description, exponent)`.
    pub divisors: Vec<(String, u32)>,
    /// The coefficient, as `"p/q"`.
    pub coeff: Rational,
}

impl TautClass {
    /// Serializable rows, with divisors described by `describe`.
    pub fn dump(&self, describe: impl Fn(usize) -> String) -> Vec<ClassTerm> {
        self.terms
            .iter()
            .map(|(m, c)| ClassTerm {
                xi: m.xi,
                l: m.lpow,
                psi: m.psi.iter().map(|(p, &e)| (p.comp, p.idx, e)).collect(),
                divisors: m.divisors.iter().map(|(&i, &e)| (describe(i), e)).collect(),
                coeff: c.clone(),
            })
            .collect()
    }
}

/// A class on a boundary stratum `D_G`, written as a sum of products of one
/// monomial per level of `G`, each living on the corresponding level
/// stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitClass {
    levels: usize,
    terms: BTreeMap<Vec<Monomial>, Rational>,
}

impl SplitClass {
    /// The zero class on a graph with `levels` levels.
    pub fn zero(levels: usize) -> Self {
        SplitClass { levels, terms: BTreeMap::new() }
    }

    /// The fundamental class.
    pub fn one(levels: usize) -> Self {
        let mut s = SplitClass::zero(levels);
        s.add_term(vec![Monomial::one(); levels], Rational::one());
        s
    }

    /// `c * atom` with the atom on `level`.
    pub fn atom(levels: usize, level: usize, atom: Atom, c: Rational) -> Self {
        let mut ms = vec![Monomial::one(); levels];
        ms[level] = Monomial::atom(atom, 1);
        let mut s = SplitClass::zero(levels);
        s.add_term(ms, c);
        s
    }

    /// A class living on a single level.
    pub fn on_level(levels: usize, level: usize, class: &TautClass) -> Self {
        let mut s = SplitClass::zero(levels);
        for (m, c) in class.terms() {
            let mut ms = vec![Monomial::one(); levels];
            ms[level] = m.clone();
            s.add_term(ms, c.clone());
        }
        s
    }

    /// Number of levels.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Adds `c * (m_0 x ... x m_L)`.
    pub fn add_term(&mut self, ms: Vec<Monomial>, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(ms.len(), self.levels);
        let entry = self.terms.entry(ms.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&ms);
        }
    }

    /// The terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Rational)> {
        self.terms.iter()
    }

    /// Whether the class is zero as a polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum.
    pub fn add(&self, other: &SplitClass) -> SplitClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> SplitClass {
        let mut out = SplitClass::zero(self.levels);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Product, dropping every term whose degree on some level exceeds
    /// `bounds[level]` (such terms integrate to zero).
    pub fn mul(&self, other: &SplitClass, bounds: &[i64]) -> SplitClass {
        let mut out = SplitClass::zero(self.levels);
        for (a, ca) in &self.terms {
            'pairs: for (b, cb) in &other.terms {
                let mut ms = Vec::with_capacity(self.levels);
                for (j, (x, y)) in a.iter().zip(b).enumerate() {
                    let m = x.mul(y);
                    if m.degree() > bounds[j] {
                        continue 'pairs;
                    }
                    ms.push(m);
                }
                out.add_term(ms, ca * cb);
            }
        }
        out
    }

    /// Power with the same pruning as [`SplitClass::mul`].
    pub fn pow(&self, n: u32, bounds: &[i64]) -> SplitClass {
        let mut out = SplitClass::one(self.levels);
        for _ in 0..n {
            out = out.mul(self, bounds);
        }
        out
    }

    /// The terms whose degree on every level equals `dims[level]`.
    pub fn top_part(&self, dims: &[i64]) -> SplitClass {
        SplitClass {
            levels: self.levels,
            terms: self
                .terms
                .iter()
                .filter(|(ms, _)| ms.iter().zip(dims).all(|(m, &d)| m.degree() == d))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for SplitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(ms, c)| format!("({c})*[{}]", ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" | ")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
