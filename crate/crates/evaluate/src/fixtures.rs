use crate::EvalError;
use exact::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use strata::{Point, StratumSpec};

/// What is integrated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrand {
    /// `xi^d`.
    XiPower(u32),
    /// A `psi` monomial as `(component, index, exponent)` triples.
    Psi(Vec<(usize, usize, u32)>),
}

/// A memo/fixture key: a stratum in canonical labelling and an integrand
/// in the same labelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvalKey {
    /// Canonically relabelled stratum.
    pub spec: StratumSpec,
    /// The integrand.
    pub integrand: Integrand,
}

impl EvalKey {
    /// The key of `int xi^d` on `spec`.
    pub fn xi_power(spec: &StratumSpec, d: u32) -> Self {
        EvalKey { spec: spec.canonical_form().0, integrand: Integrand::XiPower(d) }
    }

    /// The key of a `psi` monomial on `spec`, relabelled along with it.
    pub fn psi(spec: &StratumSpec, exponents: &BTreeMap<Point, u32>) -> Self {
        let (canon, map) = spec.canonical_form();
        let mut triples: Vec<(usize, usize, u32)> = exponents
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| {
                let q = map[p.comp][p.idx];
                (q.comp, q.idx, e)
            })
            .collect();
        triples.sort_unstable();
        EvalKey { spec: canon, integrand: Integrand::Psi(triples) }
    }
}

impl std::fmt::Display for EvalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let integrand = serde_json::to_string(&self.integrand).unwrap_or_default();
        write!(f, "{} {}", self.spec.to_json(), integrand)
    }
}

/// One fixture as stored in a fixture file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    /// The stratum (any labelling; it is canonicalized on load).
    pub spec: StratumSpec,
    /// The integrand.
    pub integrand: Integrand,
    /// The value, as `"p/q"`.
    pub value: Rational,
    /// Where the value comes from.
    pub provenance: String,
}

/// Known integral values with their provenance.
///
/// A value is never silently overridden: registering a different value for
/// an existing key is an error, registering the same value again is a no-op.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureRegistry {
    entries: BTreeMap<EvalKey, (Rational, String)>,
}

impl FixtureRegistry {
    /// An empty registry.
    pub fn new() -> Self {
        FixtureRegistry::default()
    }

    /// The shipped top-`xi` values for connected strata.
    pub fn table() -> Self {
        let mut reg = FixtureRegistry::new();
        for (genus, orders, value, provenance) in shipped_xi_tops() {
            let spec = StratumSpec::connected(genus, &orders);
            let d = u32::try_from(spec.dim()).expect("shipped fixture has nonnegative dimension");
            reg.register(EvalKey::xi_power(&spec, d), value, provenance).expect("shipped fixtures are consistent");
        }
        reg
    }

    /// The shipped table restricted to the given signatures.
    pub fn table_subset(signatures: &[&[i64]]) -> Self {
        let mut reg = FixtureRegistry::new();
        for (genus, orders, value, provenance) in shipped_xi_tops() {
            if signatures.iter().any(|s| *s == orders.as_slice()) {
                let spec = StratumSpec::connected(genus, &orders);
                let d = u32::try_from(spec.dim()).expect("nonnegative dimension");
                reg.register(EvalKey::xi_power(&spec, d), value, provenance).expect("consistent");
            }
        }
        reg
    }

    /// Registers a value.
    pub fn register(&mut self, key: EvalKey, value: Rational, provenance: &str) -> Result<(), EvalError> {
        if let Some((existing, existing_provenance)) = self.entries.get(&key) {
            if *existing == value {
                return Ok(());
            }
            return Err(EvalError::FixtureCollision {
                key: key.to_string(),
                existing: existing.to_string(),
                existing_provenance: existing_provenance.clone(),
                new: value.to_string(),
                new_provenance: provenance.to_string(),
            });
        }
        self.entries.insert(key, (value, provenance.to_string()));
        Ok(())
    }

    /// Looks up a value.
    pub fn get(&self, key: &EvalKey) -> Option<&Rational> {
        self.entries.get(key).map(|(v, _)| v)
    }

    /// All entries with their provenance, in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&EvalKey, &Rational, &str)> {
        self.entries.iter().map(|(k, (v, p))| (k, v, p.as_str()))
    }

    /// Looks up a value with its provenance.
    pub fn get_with_provenance(&self, key: &EvalKey) -> Option<(&Rational, &str)> {
        self.entries.get(key).map(|(v, p)| (v, p.as_str()))
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether the registry is empty.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges another registry, failing on the first collision.
    pub fn extend(&mut self, other: &FixtureRegistry) -> Result<(), EvalError> {
        for (k, (v, p)) in &other.entries {
            self.register(k.clone(), v.clone(), p)?;
        }
        Ok(())
    }

    /// Parses a fixture file: a JSON list of [`FixtureEntry`].
    pub fn from_json(text: &str) -> Result<Self, EvalError> {
        let entries: Vec<FixtureEntry> = serde_json::from_str(text).map_err(|e| EvalError::FixtureFormat(e.to_string()))?;
        let mut reg = FixtureRegistry::new();
        for e in entries {
            e.spec.validate().map_err(|err| EvalError::FixtureFormat(err.to_string()))?;
            let (canon, map) = e.spec.canonical_form();
            let integrand = match e.integrand {
                Integrand::XiPower(d) => Integrand::XiPower(d),
                Integrand::Psi(triples) => {
                    let mut out = Vec::with_capacity(triples.len());
                    for (c, i, x) in triples {
                        let q = map
                            .get(c)
                            .and_then(|comp| comp.get(i))
                            .ok_or_else(|| EvalError::FixtureFormat(format!("point ({c},{i}) not in spec")))?;
                        out.push((q.comp, q.idx, x));
                    }
                    out.sort_unstable();
                    Integrand::Psi(out)
                }
            };
            reg.register(EvalKey { spec: canon, integrand }, e.value, &e.provenance)?;
        }
        Ok(reg)
    }

    /// Serializes the registry in the fixture-file format.
    pub fn to_json(&self) -> String {
        let entries: Vec<FixtureEntry> = self
            .entries
            .iter()
            .map(|(k, (v, p))| FixtureEntry { spec: k.spec.clone(), integrand: k.integrand.clone(), value: v.clone(), provenance: p.clone() })
            .collect();
        serde_json::to_string_pretty(&entries).expect("fixtures serialize")
    }
}

/// Top `xi`-powers of connected strata that no rule in this crate derives,
/// plus a few that rules do derive (kept as cross-checks).
fn shipped_xi_tops() -> Vec<(u32, Vec<i64>, Rational, &'static str)> {
    let r = |p: i64, q: i64| Rational::new(p, q).expect("nonzero denominator");
    vec![
        (1, vec![0], r(1, 24), "published top xi-power table"),
        (2, vec![2], r(-1, 640), "published top xi-power table"),
        (3, vec![4], r(-305, 580608), "published top xi-power table"),
        (4, vec![6], r(-87983, 199065600), "published top xi-power table"),
        (0, vec![0, 0, -2], r(1, 1), "published top xi-power table"),
        (1, vec![2, -2], r(-1, 8), "published top xi-power table"),
        (1, vec![1, 1, -2], r(0, 1), "published top xi-power table"),
        (2, vec![4, -2], r(23, 1152), "published top xi-power table, sign ambiguous"),
        (2, vec![3, 1, -2], r(0, 1), "published top xi-power table"),
        (1, vec![2, 1, -3], r(5, 8), "published top xi-power table"),
        (2, vec![5, -3], r(-21, 20), "published top xi-power table"),
        (2, vec![8, -2, -2, -2], r(-4527, 32), "published top xi-power table"),
    ]
}
