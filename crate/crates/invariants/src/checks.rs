use crate::euler::align;
use exact::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which hyperelliptic component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HyperellipticVariant {
    /// The hyperelliptic component of the minimal stratum `(2g-2)`.
    Minimal,
    /// The hyperelliptic component of `(g-1, g-1)`.
    BiZero,
}

/// Euler characteristic of a hyperelliptic component:
/// `-1/(4g(2g+1))` for the minimal stratum and `1/((2g+1)(2g+2))` for two
/// zeros of equal order.
pub fn hyperelliptic_chi(genus: u32, variant: HyperellipticVariant) -> Option<Rational> {
    if genus < 2 {
        return None;
    }
    let g = i64::from(genus);
    Some(match variant {
        HyperellipticVariant::Minimal => Rational::new(-1, 4 * g * (2 * g + 1)).ok()?,
        HyperellipticVariant::BiZero => Rational::new(1, (2 * g + 1) * (2 * g + 2)).ok()?,
    })
}

/// Euler characteristics of projectivized strata, keyed by signature
/// (comma-separated orders, e.g. `"2,1,1,-2"`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiTable {
    /// Values by signature.
    pub values: BTreeMap<String, Rational>,
    /// Where each value comes from.
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

impl ChiTable {
    /// The published values used by the cross-checks: genus-three
    /// holomorphic strata and genus-two strata with one double pole.
    pub fn published() -> Self {
        let mut t = ChiTable::default();
        let r = |p: i64, q: i64| Rational::new(p, q).expect("nonzero");
        for (sig, v, prov) in [
            ("4", r(-55, 504), "published holomorphic table"),
            ("3,1", r(16, 63), "published holomorphic table"),
            ("2,2", r(15, 56), "published holomorphic table"),
            ("2,1,1", r(-6, 7), "published holomorphic table"),
            ("1,1,1,1", r(11, 3), "published holomorphic table"),
            ("2", r(-1, 40), "published holomorphic table"),
            ("1,1", r(1, 30), "published holomorphic table"),
            ("4,-2", r(-19, 24), "published double-pole table"),
            ("3,1,-2", r(28, 15), "published double-pole table"),
            ("2,2,-2", r(17, 10), "published double-pole table"),
            ("2,1,1,-2", r(-6, 1), "published double-pole table"),
            ("1,1,1,1,-2", r(26, 1), "published double-pole table"),
        ] {
            t.insert(sig, v, prov);
        }
        t
    }

    /// Sets a value.
    pub fn insert(&mut self, signature: &str, value: Rational, provenance: &str) {
        self.values.insert(signature.to_string(), value);
        self.provenance.insert(signature.to_string(), provenance.to_string());
    }

    /// Looks up a value.
    pub fn get(&self, signature: &str) -> Option<&Rational> {
        self.values.get(signature)
    }
}

/// One identity of the cross-check ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckRow {
    /// Name of the identity.
    pub name: String,
    /// The weighted sum of the inputs.
    pub lhs: Option<Rational>,
    /// The expected value.
    pub rhs: Rational,
    /// Whether both sides agree.
    pub passed: bool,
    /// Signatures and weights used, or the missing signature.
    pub detail: String,
}

/// The outcome of all cross-checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckLedger {
    /// One row per identity.
    pub rows: Vec<CrossCheckRow>,
}

impl CrossCheckLedger {
    /// Whether every identity holds.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    /// An aligned text table.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<[String; 5]> = vec![["identity", "lhs", "rhs", "status", "terms"].map(String::from)];
        for r in &self.rows {
            rows.push([
                r.name.clone(),
                r.lhs.as_ref().map_or("missing".to_string(), |v| v.to_string()),
                r.rhs.to_string(),
                if r.passed { "pass".into() } else { "FAIL".into() },
                r.detail.clone(),
            ]);
        }
        align(&rows).join("\n")
    }
}

/// Weighted sum of table entries; signatures marked with a forgetful
/// factor `f` contribute `f * chi(signature)` (adding an unmarked regular
/// point multiplies by the Euler characteristic of the punctured fiber).
fn weighted(table: &ChiTable, terms: &[(&str, Rational)]) -> (Option<Rational>, String) {
    let mut sum = Rational::zero();
    let mut detail = Vec::new();
    for (sig, w) in terms {
        match table.get(sig) {
            Some(v) => {
                sum += w * v;
                detail.push(format!("{w}*chi({sig})"));
            }
            None => return (None, format!("missing chi({sig})")),
        }
    }
    (Some(sum), detail.join(" + "))
}

/// Checks the two gluing identities:
///
/// * the holomorphic genus-three strata with weights `1/|Sym|` sum to
///   `3/1008`, the Euler characteristic of the projectivized Hodge bundle
///   over the genus-three curve space;
/// * the genus-two strata with one double pole, together with the
///   holomorphic genus-two strata with an extra regular point (forgetting it
///   multiplies by `2 - 2g - n`) and the strata themselves, sum to `1/40`.
pub fn cross_check(table: &ChiTable) -> CrossCheckLedger {
    let r = |p: i64, q: i64| Rational::new(p, q).expect("nonzero");
    let mut rows = Vec::new();
    let genus_three = [
        ("4", r(1, 1)),
        ("3,1", r(1, 1)),
        ("2,2", r(1, 2)),
        ("2,1,1", r(1, 2)),
        ("1,1,1,1", r(1, 24)),
    ];
    let (lhs, detail) = weighted(table, &genus_three);
    let rhs = r(3, 1008);
    rows.push(CrossCheckRow {
        name: "genus-three Hodge bundle".into(),
        passed: lhs.as_ref() == Some(&rhs),
        lhs,
        rhs,
        detail,
    });
    let twisted = [
        ("4,-2", r(1, 1)),
        ("3,1,-2", r(1, 1)),
        ("2,2,-2", r(1, 2)),
        ("2,1,1,-2", r(1, 2)),
        ("1,1,1,1,-2", r(1, 24)),
        // (2,0): the regular point ranges over the curve minus the zero.
        ("2", r(-3, 1)),
        // (1,1,0) with the two zeros unordered: weight 1/2 times -4.
        ("1,1", r(-2, 1)),
        ("2", r(1, 1)),
        ("1,1", r(1, 1)),
    ];
    let (lhs, detail) = weighted(table, &twisted);
    let rhs = r(1, 40);
    rows.push(CrossCheckRow {
        name: "twisted genus-two Hodge bundle".into(),
        passed: lhs.as_ref() == Some(&rhs),
        lhs,
        rhs,
        detail,
    });
    CrossCheckLedger { rows }
}
