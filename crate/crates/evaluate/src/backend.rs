use crate::{EvalKey, FixtureRegistry};
use exact::Rational;
use strata::StratumSpec;

/// A named rule for `int xi^d` on a connected stratum without residue
/// conditions.
pub trait XiTopBackend: Send + Sync {
    /// Stable name, reported alongside values obtained from this backend.
    fn name(&self) -> &'static str;

    /// The value, or `None` if the rule does not apply to `spec`.
    fn xi_top(&self, spec: &StratumSpec) -> Option<Rational>;
}

/// A zero-dimensional stratum integrates `1` to one.
#[derive(Debug, Clone, Copy, Default)]
pub struct DimensionZero;

impl XiTopBackend for DimensionZero {
    fn name(&self) -> &'static str {
        "dimension-zero"
    }

    fn xi_top(&self, spec: &StratumSpec) -> Option<Rational> {
        (spec.dim() == 0).then(Rational::one)
    }
}

/// Holomorphic strata with at least two marked points have vanishing top
/// `xi`-power.
#[derive(Debug, Clone, Copy, Default)]
pub struct HolomorphicVanishing;

impl XiTopBackend for HolomorphicVanishing {
    fn name(&self) -> &'static str {
        "holomorphic-vanishing"
    }

    fn xi_top(&self, spec: &StratumSpec) -> Option<Rational> {
        (spec.is_holomorphic() && spec.n_points() >= 2).then(Rational::zero)
    }
}

/// Genus zero with a single pole of order `-2 - sum a_i` and zeros
/// `a_1..a_n`: `int xi^{n-2} = (-1 - sum a_i)^{n-2}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GenusZeroSinglePole;

impl XiTopBackend for GenusZeroSinglePole {
    fn name(&self) -> &'static str {
        "genus-zero-single-pole"
    }

    fn xi_top(&self, spec: &StratumSpec) -> Option<Rational> {
        let comp = &spec.components[0];
        if comp.genus != 0 || comp.orders.iter().filter(|&&m| m < 0).count() != 1 {
            return None;
        }
        let pole = comp.orders.iter().find(|&&m| m < 0).copied()?;
        let n = comp.orders.len() as i32 - 1;
        Some(Rational::from(pole + 1).pow(n - 2))
    }
}

/// Genus one: `(-k, k)` gives `-(k-1)(k^2-1)/24` and `(-k-1, 1, k)` gives
/// `(k^4-1)/24`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GenusOneClosedForms;

impl XiTopBackend for GenusOneClosedForms {
    fn name(&self) -> &'static str {
        "genus-one-closed-form"
    }

    fn xi_top(&self, spec: &StratumSpec) -> Option<Rational> {
        let comp = &spec.components[0];
        if comp.genus != 1 {
            return None;
        }
        let mut orders = comp.orders.clone();
        orders.sort_unstable();
        let q = |p: i64| Rational::new(p, 24).expect("nonzero");
        match orders.as_slice() {
            &[a, b] if a < -1 && b == -a => {
                let k = b;
                Some(-q((k - 1) * (k * k - 1)))
            }
            &[a, 1, b] if a < -1 && b == -a - 1 => {
                let k = b;
                Some(q(k.pow(4) - 1))
            }
            _ => None,
        }
    }
}

/// Lookup in a [`FixtureRegistry`].
#[derive(Debug, Clone, Default)]
pub struct Fixtures(pub FixtureRegistry);

impl XiTopBackend for Fixtures {
    fn name(&self) -> &'static str {
        "fixture"
    }

    fn xi_top(&self, spec: &StratumSpec) -> Option<Rational> {
        let d = u32::try_from(spec.dim()).ok()?;
        self.0.get(&EvalKey::xi_power(spec, d)).cloned()
    }
}

/// An ordered list of backends; the first that applies wins.
pub struct BackendRegistry {
    backends: Vec<Box<dyn XiTopBackend>>,
    fixtures: FixtureRegistry,
}

impl std::fmt::Debug for BackendRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BackendRegistry").field("backends", &self.names()).finish()
    }
}

impl Default for BackendRegistry {
    /// Closed forms followed by the shipped fixture table.
    fn default() -> Self {
        BackendRegistry::with_fixtures(FixtureRegistry::table())
    }
}

impl BackendRegistry {
    /// An empty registry.
    pub fn empty() -> Self {
        BackendRegistry { backends: Vec::new(), fixtures: FixtureRegistry::new() }
    }

    /// The closed-form rules only, in dispatch order.
    pub fn closed_forms() -> Self {
        let mut reg = BackendRegistry::empty();
        reg.push(Box::new(DimensionZero));
        reg.push(Box::new(HolomorphicVanishing));
        reg.push(Box::new(GenusZeroSinglePole));
        reg.push(Box::new(GenusOneClosedForms));
        reg
    }

    /// Closed forms followed by lookup in `fixtures`.
    pub fn with_fixtures(fixtures: FixtureRegistry) -> Self {
        let mut reg = BackendRegistry::closed_forms();
        reg.fixtures = fixtures.clone();
        reg.push(Box::new(Fixtures(fixtures)));
        reg
    }

    /// Only the rules that hold for every stratum with no further input:
    /// zero-dimensional strata and holomorphic vanishing. Everything else
    /// goes through the recursion.
    pub fn recursion_only() -> Self {
        let mut reg = BackendRegistry::empty();
        reg.push(Box::new(DimensionZero));
        reg.push(Box::new(HolomorphicVanishing));
        reg
    }

    /// Appends a backend.
    pub fn push(&mut self, backend: Box<dyn XiTopBackend>) {
        self.backends.push(backend);
    }

    /// Names, in dispatch order.
    pub fn names(&self) -> Vec<&'static str> {
        self.backends.iter().map(|b| b.name()).collect()
    }

    /// The fixtures consulted by the fixture backend (also used for `psi`
    /// lookups).
    pub fn fixtures(&self) -> &FixtureRegistry {
        &self.fixtures
    }

    /// The first applicable backend and its value.
    pub fn first_match(&self, spec: &StratumSpec) -> Option<(&'static str, Rational)> {
        self.backends.iter().find_map(|b| b.xi_top(spec).map(|v| (b.name(), v)))
    }
}
