use crate::{BackendRegistry, EvalError, EvalKey};
use exact::{multinomial, Rational};
use levelgraphs::Lg1;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use strata::{Point, StratumSpec};
use tautring::{
    integrate_split, psi_as_xi, remove_residue_condition, xi_as_psi, Atom, LevelIntegrator, Monomial, RingCache,
    TautClass, TautError,
};

/// How a top `xi`-power was (or would be) obtained.
pub const RULE_RECURSION: &str = "xi-psi recursion";
/// A residue condition is removed first.
pub const RULE_RESIDUE_REMOVAL: &str = "residue removal";

/// Evaluates top-degree classes on generalized strata.
///
/// Dispatch for a monomial `xi^a L^b psi^M prod [D]` on `B`:
///
/// 1. a boundary divisor is present: restrict the rest of the monomial to
///    it and integrate over the two levels;
/// 2. the correction class is present: replace one factor by
///    `sum ell_G [D_G]` and proceed as in 1;
/// 3. `B` carries a residue condition: write `B` as a class on the stratum
///    without it;
/// 4. `B` is connected: pure `xi`-powers go to the backend registry, `psi`
///    monomials in genus zero are multinomial coefficients, and otherwise
///    `xi` or `psi` is traded via [`xi_as_psi`] / [`psi_as_xi`];
/// 5. `B` is disconnected: `psi` monomials of positive dimension vanish,
///    `xi` is traded via [`xi_as_psi`].
///
/// Results are memoized per `(stratum, monomial)`, keyed by the canonical
/// stratum when the monomial does not involve labels.
pub struct Integrator {
    rings: RingCache,
    backends: BackendRegistry,
    memo: Option<Mutex<HashMap<(StratumSpec, Monomial), Rational>>>,
}

impl std::fmt::Debug for Integrator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Integrator").field("backends", &self.backends).field("memoized", &self.memo.is_some()).finish()
    }
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator::new(BackendRegistry::default())
    }
}

impl Integrator {
    /// An integrator with the given backends and memoization on.
    pub fn new(backends: BackendRegistry) -> Self {
        Integrator::with_rings(RingCache::new(), backends)
    }

    /// An integrator sharing an enumeration memo.
    pub fn with_memo(memo: Arc<Lg1>, backends: BackendRegistry) -> Self {
        Integrator::with_rings(RingCache::with_memo(memo), backends)
    }

    /// An integrator over an existing ring store.
    pub fn with_rings(rings: RingCache, backends: BackendRegistry) -> Self {
        Integrator { rings, backends, memo: Some(Mutex::new(HashMap::new())) }
    }

    /// Turns memoization of integrals off (the ring store is still shared).
    pub fn without_memo(mut self) -> Self {
        self.memo = None;
        self
    }

    /// The backends.
    pub fn backends(&self) -> &BackendRegistry {
        &self.backends
    }

    /// Number of memoized integrals.
    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.lock().unwrap_or_else(|e| e.into_inner()).len())
    }

    /// `int_B xi^{dim B}`.
    pub fn xi_top(&self, spec: &StratumSpec) -> Result<Rational, EvalError> {
        Ok(self.xi_top_with_rule(spec)?.0)
    }

    /// `int_B xi^{dim B}` with the name of the rule applied first.
    pub fn xi_top_with_rule(&self, spec: &StratumSpec) -> Result<(Rational, &'static str), EvalError> {
        let d = checked_dim(spec)?;
        let rule = self.rule_for(spec);
        let value = self.integrate_monomial(spec, &Monomial::xi_power(d))?;
        Ok((value, rule))
    }

    /// The first rule the dispatch applies to `int_B xi^{dim B}`.
    pub fn rule_for(&self, spec: &StratumSpec) -> &'static str {
        if spec.dim() == 0 {
            "dimension-zero"
        } else if spec.has_constraints() {
            RULE_RESIDUE_REMOVAL
        } else if !spec.is_connected() {
            RULE_RECURSION
        } else if let Some((name, _)) = self.backends.first_match(spec) {
            name
        } else if spec.components[0].genus == 0 {
            RULE_RECURSION
        } else {
            "none"
        }
    }

    /// `int_B prod psi_p^{e_p}`.
    pub fn psi_top(&self, spec: &StratumSpec, exponents: &BTreeMap<Point, u32>) -> Result<Rational, EvalError> {
        let mut m = Monomial::one();
        for (&p, &e) in exponents {
            m.mul_atom(Atom::Psi(p), e);
        }
        self.integrate_monomial(spec, &m)
    }

    /// `int_B class`; only the part of top degree contributes.
    pub fn integrate(&self, spec: &StratumSpec, class: &TautClass) -> Result<Rational, EvalError> {
        checked_dim(spec)?;
        let mut total = Rational::zero();
        for (m, c) in class.terms() {
            total += c * self.integrate_monomial(spec, m)?;
        }
        Ok(total)
    }

    /// `int_B m`.
    pub fn integrate_monomial(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, EvalError> {
        spec.validate().map_err(|e| TautError::InvalidArgument(e.to_string()))?;
        Ok(self.eval(spec, m)?)
    }

    fn eval(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError> {
        let d = spec.dim();
        if d < 0 || m.degree() != d {
            return Ok(Rational::zero());
        }
        let key_spec = if m.is_label_free() { spec.canonical_form().0 } else { spec.clone() };
        let key = (key_spec, m.clone());
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
                return Ok(v.clone());
            }
        }
        let value = self.compute(&key.0, m).map_err(|e| e.within(|| format!("{m} on {}", key.0.to_json())))?;
        if let Some(memo) = &self.memo {
            memo.lock().unwrap_or_else(|e| e.into_inner()).insert(key, value.clone());
        }
        Ok(value)
    }

    fn compute(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError> {
        let ring = self.rings.ring(spec);
        // 1. A boundary divisor.
        if let Some(&i) = m.divisors.keys().next() {
            let mut rest = m.clone();
            rest.remove_atom(Atom::Divisor(i));
            return self.on_divisor(spec, i, &rest);
        }
        // 2. The correction class.
        if m.lpow > 0 {
            let mut rest = m.clone();
            rest.remove_atom(Atom::L);
            let mut total = Rational::zero();
            for (i, info) in ring.lg1()?.graphs.iter().enumerate() {
                let v = self.on_divisor(spec, i, &rest)?;
                total += v * Rational::from(info.prong.ell as i64);
            }
            return Ok(total);
        }
        // 3. A residue condition.
        if let Some(part) = spec.residue_parts.iter().position(|p| p.constrained) {
            let removal = remove_residue_condition(spec, part, &self.rings)?;
            let mut total = Rational::zero();
            for (t, c) in removal.class.terms() {
                total += c * self.eval(&removal.ambient, &m.mul(t))?;
            }
            return Ok(total);
        }
        if spec.is_connected() {
            self.connected(spec, m)
        } else {
            self.disconnected(spec, m)
        }
    }

    fn on_divisor(&self, spec: &StratumSpec, i: usize, rest: &Monomial) -> Result<Rational, TautError> {
        let div = self.rings.ring(spec).divisor(i, &self.rings)?;
        let split = div.restrict(rest)?;
        let levels = [div.levels[0].spec(), div.levels[1].spec()];
        integrate_split(self, &levels, &div.dims, &div.weight, &split)
    }

    fn connected(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError> {
        let genus = spec.components[0].genus;
        if m.degree() == 0 {
            return Ok(Rational::one());
        }
        if m.psi.is_empty() {
            if let Some((_, v)) = self.backends.first_match(spec) {
                return Ok(v);
            }
            if genus > 0 {
                return Err(unevaluatable(spec, m));
            }
        }
        if genus == 0 {
            if m.xi == 0 {
                let n = spec.n_points() as u64;
                let exps: Vec<u64> = m.psi.values().map(|&e| u64::from(e)).collect();
                return Ok(Rational::from(multinomial(n - 3, &exps).map_err(|e| TautError::Consistency(e.to_string()))?));
            }
            return self.trade_xi(spec, m);
        }
        if m.xi == 0 {
            if let Some(v) = self.backends.fixtures().get(&EvalKey::psi(spec, &m.psi)) {
                return Ok(v.clone());
            }
        }
        let ring = self.rings.ring(spec);
        let mut best: Option<(usize, Point)> = None;
        for &p in m.psi.keys() {
            if spec.order(p) == -1 {
                continue;
            }
            let cost = ring.graphs_with_lower(p)?.len();
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, p));
            }
        }
        let Some((_, p)) = best else {
            return Err(unevaluatable(spec, m));
        };
        let mut rest = m.clone();
        rest.remove_atom(Atom::Psi(p));
        let relation = psi_as_xi(&ring, p)?;
        self.apply(spec, &rest, &relation)
    }

    fn disconnected(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError> {
        if m.xi == 0 {
            // Top-degree psi monomials come from the product of the
            // projectivized components, which has smaller dimension.
            return Ok(if m.degree() == 0 { Rational::one() } else { Rational::zero() });
        }
        self.trade_xi(spec, m)
    }

    /// `xi^a psi^M = xi^{a-1} psi^M ((m_p+1) psi_p - sum ell_G [D_G])` at the
    /// point with the fewest graphs carrying it on lower level.
    fn trade_xi(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError> {
        let ring = self.rings.ring(spec);
        let mut best: Option<(usize, Point)> = None;
        for p in spec.points() {
            if spec.order(p) == -1 {
                continue;
            }
            let cost = ring.graphs_with_lower(p)?.len();
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, p));
            }
        }
        let Some((_, p)) = best else {
            return Err(unevaluatable(spec, m));
        };
        let mut rest = m.clone();
        rest.remove_atom(Atom::Xi);
        let relation = xi_as_psi(&ring, p)?;
        self.apply(spec, &rest, &relation)
    }

    fn apply(&self, spec: &StratumSpec, rest: &Monomial, relation: &TautClass) -> Result<Rational, TautError> {
        let mut total = Rational::zero();
        for (t, c) in relation.terms() {
            total += c * self.eval(spec, &rest.mul(t))?;
        }
        Ok(total)
    }
}

impl LevelIntegrator for Integrator {
    fn rings(&self) -> &RingCache {
        &self.rings
    }

    fn integrate_monomial(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError> {
        self.eval(spec, m)
    }
}

fn checked_dim(spec: &StratumSpec) -> Result<u32, EvalError> {
    spec.validate().map_err(|e| TautError::InvalidArgument(e.to_string()))?;
    u32::try_from(spec.dim())
        .map_err(|_| EvalError::Taut(TautError::InvalidArgument(format!("{} is empty", spec.to_json()))))
}

fn unevaluatable(spec: &StratumSpec, m: &Monomial) -> TautError {
    TautError::Unevaluatable { spec: spec.to_json(), integrand: m.to_string(), chain: Vec::new() }
}
