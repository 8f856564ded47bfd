use crate::{LevelGraph, LevelStratum};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use strata::{Point, StratumSpec};

/// Why a candidate graph was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// A structural invariant failed.
    Invariant(String),
    /// A level stratum has negative projectivized dimension.
    NegativeDimension {
        /// Depth of the level.
        depth: usize,
    },
    /// The level dimensions do not add up to the ambient dimension.
    DimensionSum {
        /// `sum (d_i + 1)`.
        sum: i64,
        /// Ambient unprojectivized dimension.
        expected: i64,
    },
    /// A simple pole would be forced to have zero residue.
    SimplePoleResidue {
        /// Depth of the level.
        depth: usize,
    },
    /// A genus-zero vertex would need an exact differential that cannot
    /// exist.
    ExactObstruction {
        /// Depth of the level.
        depth: usize,
        /// Component of the level stratum.
        component: usize,
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Invariant(s) => write!(f, "invariant: {s}"),
            Rejection::NegativeDimension { depth } => write!(f, "level at depth {depth} has negative dimension"),
            Rejection::DimensionSum { sum, expected } => {
                write!(f, "level dimensions sum to {sum}, expected {expected}")
            }
            Rejection::SimplePoleResidue { depth } => {
                write!(f, "simple pole with forced zero residue at depth {depth}")
            }
            Rejection::ExactObstruction { depth, component } => {
                write!(f, "no exact differential on component {component} at depth {depth}")
            }
        }
    }
}

/// A predicate deciding whether a candidate level graph bounds a stratum.
pub trait Realizability: Send + Sync {
    /// Short name of the predicate, used in reports.
    fn name(&self) -> &'static str;

    /// Accepts or rejects `graph` inside `ambient`, given its level strata.
    fn check(&self, graph: &LevelGraph, ambient: &StratumSpec, levels: &[LevelStratum]) -> Result<(), Rejection>;
}

/// The default predicate: type invariants, non-negative level dimensions
/// adding up to the ambient dimension, no simple pole with a forced zero
/// residue, and the genus-zero exact-differential obstruction.
#[derive(Debug, Default)]
pub struct ResidueRealizability {
    dimension_sum_rejections: AtomicU64,
}

impl ResidueRealizability {
    /// A fresh predicate with zeroed statistics.
    pub fn new() -> Self {
        Self::default()
    }

    /// How many candidates had non-negative level dimensions that failed to
    /// add up to the ambient dimension.
    pub fn dimension_sum_rejections(&self) -> u64 {
        self.dimension_sum_rejections.load(Ordering::Relaxed)
    }
}

impl Realizability for ResidueRealizability {
    fn name(&self) -> &'static str {
        "residue"
    }

    fn check(&self, graph: &LevelGraph, ambient: &StratumSpec, levels: &[LevelStratum]) -> Result<(), Rejection> {
        graph.check_invariants(ambient).map_err(Rejection::Invariant)?;
        let mut sum = 0;
        for lv in levels {
            let d = lv.spec.dimension();
            if d.projectivized < 0 {
                return Err(Rejection::NegativeDimension { depth: lv.depth });
            }
            sum += d.unprojectivized;
        }
        let expected = ambient.dimension().unprojectivized;
        if sum != expected {
            self.dimension_sum_rejections.fetch_add(1, Ordering::Relaxed);
            return Err(Rejection::DimensionSum { sum, expected });
        }
        for lv in levels {
            residue_obstructions(&lv.spec).map_err(|c| match c {
                None => Rejection::SimplePoleResidue { depth: lv.depth },
                Some(component) => Rejection::ExactObstruction { depth: lv.depth, component },
            })?;
        }
        Ok(())
    }
}

/// Checks a (level) stratum for residue obstructions: `Err(None)` if a simple
/// pole is forced to have zero residue, `Err(Some(c))` if component `c` has
/// genus zero, all its residues forced to vanish, and a zero too large for an
/// exact differential.
pub fn residue_obstructions(spec: &StratumSpec) -> Result<(), Option<usize>> {
    let poles = spec.poles();
    if poles.is_empty() {
        return Ok(());
    }
    let forced = spec.forced_zero_residues();
    for (p, &f) in poles.iter().zip(&forced) {
        if f && spec.order(*p) == -1 {
            return Err(None);
        }
    }
    for (c, comp) in spec.components.iter().enumerate() {
        if comp.genus != 0 {
            continue;
        }
        let mine: Vec<(Point, bool)> =
            poles.iter().zip(&forced).filter(|(p, _)| p.comp == c).map(|(p, f)| (*p, *f)).collect();
        if mine.is_empty() || !mine.iter().all(|(_, f)| *f) {
            continue;
        }
        // An exact differential df: f has poles of order b_j - 1, degree
        // sum(b_j) - p, and a zero of df of order a needs a + 1 <= deg f.
        let bsum: i64 = mine.iter().map(|(p, _)| -spec.order(*p)).sum();
        let degree = bsum - mine.len() as i64;
        if comp.orders.iter().any(|&a| a > 0 && a + 1 > degree) {
            return Err(Some(c));
        }
    }
    Ok(())
}
