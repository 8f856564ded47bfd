use crate::StrataError;
use exact::{in_row_space, rank, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A marked point, addressed by component index and position within the
/// component's order list. Serialized as `[component, index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Point {
    /// Component index.
    pub comp: usize,
    /// Position within the component.
    pub idx: usize,
}

impl Point {
    /// The point `(comp, idx)`.
    pub const fn new(comp: usize, idx: usize) -> Self {
        Point { comp, idx }
    }
}

impl From<[usize; 2]> for Point {
    fn from(a: [usize; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [usize; 2] {
    fn from(p: Point) -> Self {
        [p.comp, p.idx]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.comp, self.idx)
    }
}

/// One connected component: a genus and the orders of its marked points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    /// Genus of the component.
    pub genus: u32,
    /// Orders of zeros (positive), regular points (zero) and poles (negative).
    pub orders: Vec<i64>,
}

/// A set of poles whose residues may be constrained to sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResiduePart {
    /// The poles in the part.
    pub points: Vec<Point>,
    /// Whether the part imposes the vanishing of its residue sum.
    pub constrained: bool,
}

/// A generalized stratum: components plus residue parts.
///
/// This is also the canonical JSON input format:
/// `{"components": [{"genus": g, "orders": [...]}, ...],
///   "residue_parts": [{"points": [[c, i], ...], "constrained": true}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumSpec {
    /// The connected components.
    pub components: Vec<Component>,
    /// Residue parts (constrained or not).
    #[serde(default)]
    pub residue_parts: Vec<ResiduePart>,
}

/// Holomorphic (no poles) versus meromorphic component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    /// All orders are non-negative.
    Holomorphic,
    /// At least one pole.
    Meromorphic,
}

/// Dimension data of a generalized stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimensionData {
    /// Unprojectivized dimension `N`.
    pub unprojectivized: i64,
    /// Projectivized dimension `d = N - 1`.
    pub projectivized: i64,
    /// Dimension of the residue space cut out by the residue theorem on every
    /// component and by the constrained parts.
    pub residue_rank: i64,
}

impl StratumSpec {
    /// A connected stratum without residue parts.
    pub fn connected(genus: u32, orders: &[i64]) -> Self {
        StratumSpec { components: vec![Component { genus, orders: orders.to_vec() }], residue_parts: vec![] }
    }

    /// Parses the canonical JSON format.
    pub fn from_json(text: &str) -> Result<Self, StrataError> {
        serde_json::from_str(text).map_err(|e| StrataError::Parse(e.to_string()))
    }

    /// Serializes to the canonical JSON format (compact).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }

    /// Order of a marked point.
    pub fn order(&self, p: Point) -> i64 {
        self.components[p.comp].orders[p.idx]
    }

    /// All marked points in `(component, index)` order.
    pub fn points(&self) -> Vec<Point> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (0..comp.orders.len()).map(move |i| Point::new(c, i)))
            .collect()
    }

    /// All poles (order at most -1), in point order.
    pub fn poles(&self) -> Vec<Point> {
        self.points().into_iter().filter(|&p| self.order(p) < 0).collect()
    }

    /// Total number of marked points.
    pub fn n_points(&self) -> usize {
        self.components.iter().map(|c| c.orders.len()).sum()
    }

    /// Whether the stratum has a single component.
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Whether no component carries a pole.
    pub fn is_holomorphic(&self) -> bool {
        self.components.iter().all(|c| c.orders.iter().all(|&m| m >= 0))
    }

    /// Indices of the constrained residue parts.
    pub fn constrained_parts(&self) -> Vec<usize> {
        (0..self.residue_parts.len()).filter(|&i| self.residue_parts[i].constrained).collect()
    }

    /// Whether any residue part is constrained.
    pub fn has_constraints(&self) -> bool {
        self.residue_parts.iter().any(|p| p.constrained)
    }

    /// Index of the residue part containing `p`, if any.
    pub fn part_of(&self, p: Point) -> Option<usize> {
        self.residue_parts.iter().position(|part| part.points.contains(&p))
    }

    /// Whether `p` is a pole lying in no constrained part.
    pub fn is_free_pole(&self, p: Point) -> bool {
        self.order(p) < 0 && self.part_of(p).is_none_or(|i| !self.residue_parts[i].constrained)
    }

    /// Checks every invariant and classifies the components.
    pub fn validate(&self) -> Result<Vec<ComponentKind>, StrataError> {
        if self.components.is_empty() {
            return Err(StrataError::NoComponents);
        }
        let mut kinds = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let sum: i64 = c.orders.iter().sum();
            let expected = 2 * i64::from(c.genus) - 2;
            if sum != expected {
                return Err(StrataError::Degree { component: i, sum, expected });
            }
            if expected + c.orders.len() as i64 <= 0 {
                return Err(StrataError::Unstable(i));
            }
            kinds.push(if c.orders.iter().all(|&m| m >= 0) {
                ComponentKind::Holomorphic
            } else {
                ComponentKind::Meromorphic
            });
        }
        let mut seen = BTreeSet::new();
        for (k, part) in self.residue_parts.iter().enumerate() {
            if part.points.is_empty() {
                return Err(StrataError::EmptyPart(k));
            }
            for &p in &part.points {
                let exists = self.components.get(p.comp).is_some_and(|c| p.idx < c.orders.len());
                if !exists {
                    return Err(StrataError::MissingPoint { part: k, comp: p.comp, idx: p.idx });
                }
                let order = self.order(p);
                if order > -2 {
                    return Err(StrataError::NotAHigherPole { part: k, comp: p.comp, idx: p.idx, order });
                }
                if !seen.insert(p) {
                    return Err(StrataError::NotDisjoint { comp: p.comp, idx: p.idx });
                }
            }
        }
        Ok(kinds)
    }

    /// The linear conditions on the residue vector (one coordinate per pole,
    /// in [`Self::poles`] order): the residue theorem on each component with a
    /// pole, followed by one row per constrained part.
    pub fn residue_conditions(&self) -> Vec<Vec<Rational>> {
        let poles = self.poles();
        let row = |pred: &dyn Fn(Point) -> bool| -> Vec<Rational> {
            poles.iter().map(|&p| if pred(p) { Rational::one() } else { Rational::zero() }).collect()
        };
        let mut rows = Vec::new();
        for c in 0..self.components.len() {
            if poles.iter().any(|p| p.comp == c) {
                rows.push(row(&|p: Point| p.comp == c));
            }
        }
        for part in self.residue_parts.iter().filter(|p| p.constrained) {
            rows.push(row(&|p: Point| part.points.contains(&p)));
        }
        rows
    }

    /// Dimension of the space of residue vectors satisfying the residue
    /// theorem on every component and every constrained part.
    pub fn residue_subspace_rank(&self) -> i64 {
        let poles = self.poles().len() as i64;
        poles - rank(&self.residue_conditions()) as i64
    }

    /// For each pole (in [`Self::poles`] order), whether its residue is forced
    /// to vanish on the residue space.
    pub fn forced_zero_residues(&self) -> Vec<bool> {
        let rows = self.residue_conditions();
        let poles = self.poles();
        (0..poles.len())
            .map(|i| {
                let unit: Vec<Rational> =
                    (0..poles.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
                in_row_space(&rows, &unit)
            })
            .collect()
    }

    /// `N`, `d = N - 1` and the residue-space dimension.
    pub fn dimension(&self) -> DimensionData {
        let base: i64 = self.components.iter().map(|c| 2 * i64::from(c.genus) + c.orders.len() as i64 - 1).sum();
        let poles = self.poles().len() as i64;
        let residue_rank = self.residue_subspace_rank();
        let n = base - (poles - residue_rank);
        DimensionData { unprojectivized: n, projectivized: n - 1, residue_rank }
    }

    /// Projectivized dimension.
    pub fn dim(&self) -> i64 {
        self.dimension().projectivized
    }

    /// The same stratum with residue part `k` removed.
    pub fn without_part(&self, k: usize) -> Self {
        let mut s = self.clone();
        s.residue_parts.remove(k);
        s
    }

    /// The same stratum with every unconstrained part removed.
    pub fn without_unconstrained_parts(&self) -> Self {
        let mut s = self.clone();
        s.residue_parts.retain(|p| p.constrained);
        s
    }

    /// A deterministic relabelling of components and points.
    ///
    /// Returns the relabelled spec and the map from old points to new points
    /// (`map[c][i]`). Isomorphic inputs usually, but not always, produce equal
    /// outputs; the result is only ever used as a cache key, so a miss costs
    /// time, never correctness.
    pub fn canonical_form(&self) -> (StratumSpec, Vec<Vec<Point>>) {
        type Key = (i64, Option<(bool, usize, Vec<i64>)>);
        let key = |p: Point| -> Key {
            let info = self.part_of(p).map(|k| {
                let part = &self.residue_parts[k];
                let mut orders: Vec<i64> = part.points.iter().map(|&q| self.order(q)).collect();
                orders.sort_unstable();
                (part.constrained, part.points.len(), orders)
            });
            (self.order(p), info)
        };
        let mut per_comp: Vec<(u32, Vec<(Key, usize)>, usize)> = self
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let mut keys: Vec<(Key, usize)> =
                    (0..comp.orders.len()).map(|i| (key(Point::new(c, i)), i)).collect();
                keys.sort();
                (comp.genus, keys, c)
            })
            .collect();
        per_comp.sort_by(|a, b| (a.0, a.1.iter().map(|k| &k.0).collect::<Vec<_>>()).cmp(&(b.0, b.1.iter().map(|k| &k.0).collect::<Vec<_>>())));
        let mut map: Vec<Vec<Point>> =
            self.components.iter().map(|c| vec![Point::new(0, 0); c.orders.len()]).collect();
        let mut components = Vec::with_capacity(self.components.len());
        for (new_c, (genus, keys, old_c)) in per_comp.iter().enumerate() {
            let mut orders = Vec::with_capacity(keys.len());
            for (new_i, (_, old_i)) in keys.iter().enumerate() {
                map[*old_c][*old_i] = Point::new(new_c, new_i);
                orders.push(self.order(Point::new(*old_c, *old_i)));
            }
            components.push(Component { genus: *genus, orders });
        }
        let mut residue_parts: Vec<ResiduePart> = self
            .residue_parts
            .iter()
            .map(|part| {
                let mut points: Vec<Point> = part.points.iter().map(|p| map[p.comp][p.idx]).collect();
                points.sort();
                ResiduePart { points, constrained: part.constrained }
            })
            .collect();
        residue_parts.sort();
        (StratumSpec { components, residue_parts }, map)
    }
}

impl fmt::Display for StratumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let o: Vec<String> = c.orders.iter().map(i64::to_string).collect();
                format!("g{}({})", c.genus, o.join(","))
            })
            .collect();
        write!(f, "{}", comps.join(" + "))?;
        for part in &self.residue_parts {
            let pts: Vec<String> = part.points.iter().map(Point::to_string).collect();
            write!(f, " {}{{{}}}", if part.constrained { "R" } else { "r" }, pts.join(""))?;
        }
        Ok(())
    }
}
