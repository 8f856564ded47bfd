//! Serializable reports for the graph-oriented commands.

use evaluate::{EvalError, Integrator};
use exact::Rational;
use levelgraphs::{GraphInfo, LevelGraph, ProngData};
use serde::Serialize;
use strata::{DimensionData, StratumSpec};
use tautring::{Atom, LevelIntegrator, Monomial, TautClass, TautError};

/// Dimension data and boundary counts of a stratum.
#[derive(Debug, Clone, Serialize)]
pub struct InfoReport {
    /// The stratum.
    pub spec: StratumSpec,
    /// Its dimensions.
    pub dimension: DimensionData,
    /// Number of boundary graphs with `L` levels below zero, `L = 1, 2, ...`.
    pub graph_counts: Vec<usize>,
    /// Name of the realizability predicate used for enumeration.
    pub realizability: &'static str,
}

impl InfoReport {
    /// Collects the report.
    pub fn build(spec: &StratumSpec, integ: &Integrator) -> Result<Self, EvalError> {
        let ring = integ.rings().ring(spec);
        let cache = ring.cache();
        let mut graph_counts = Vec::new();
        for l in 1..=cache.max_levels() {
            graph_counts.push(cache.lg(l).map_err(TautError::from)?.len());
        }
        Ok(InfoReport {
            spec: spec.clone(),
            dimension: spec.dimension(),
            graph_counts,
            realizability: integ.rings().memo().realizability().name(),
        })
    }

    /// A text rendering.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("dimension (unprojectivized) = {}", self.dimension.unprojectivized),
            format!("dimension (projectivized) = {}", self.dimension.projectivized),
            format!("residue rank = {}", self.dimension.residue_rank),
            format!("realizability = {}", self.realizability),
        ];
        for (i, n) in self.graph_counts.iter().enumerate() {
            lines.push(format!("graphs with {} level(s) below zero = {n}", i + 1));
        }
        lines.join("\n")
    }
}

/// One level of a boundary graph.
#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    /// Depth of the level (0 is the top).
    pub depth: usize,
    /// The level stratum.
    pub spec: StratumSpec,
    /// Its dimensions.
    pub dimension: DimensionData,
}

/// A boundary graph with its derived data.
#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    /// Number of levels below zero.
    pub levels_below: usize,
    /// Position in the (canonically sorted) list of graphs with that many
    /// levels.
    pub index: usize,
    /// The graph.
    pub graph: LevelGraph,
    /// A one-line description.
    pub description: String,
    /// Prong data.
    pub prong: ProngData,
    /// Indices of the two-level undegenerations.
    pub profile: Vec<usize>,
    /// The levels, top to bottom.
    pub levels: Vec<LevelReport>,
    /// Name of the realizability predicate used for enumeration.
    pub realizability: &'static str,
}

impl GraphReport {
    fn of(info: &GraphInfo, levels_below: usize, index: usize, realizability: &'static str) -> Self {
        GraphReport {
            levels_below,
            index,
            graph: info.graph.clone(),
            description: info.graph.describe(),
            prong: info.prong.clone(),
            profile: info.profile.clone(),
            levels: info
                .levels
                .iter()
                .zip(&info.dims)
                .map(|(l, d)| LevelReport { depth: l.depth, spec: l.spec.clone(), dimension: *d })
                .collect(),
            realizability,
        }
    }

    /// All boundary graphs with at least one level below zero, or only those
    /// with exactly `levels` levels below zero.
    pub fn collect(spec: &StratumSpec, integ: &Integrator, levels: Option<usize>) -> Result<Vec<Self>, EvalError> {
        let ring = integ.rings().ring(spec);
        let cache = ring.cache();
        let name = integ.rings().memo().realizability().name();
        let range: Vec<usize> = match levels {
            Some(l) => vec![l],
            None => (1..=cache.max_levels()).collect(),
        };
        let mut out = Vec::new();
        for l in range {
            for (i, info) in cache.lg(l).map_err(TautError::from)?.graphs.iter().enumerate() {
                out.push(GraphReport::of(info, l, i, name));
            }
        }
        Ok(out)
    }

    /// A text rendering.
    pub fn to_text(graphs: &[Self], levels: Option<usize>) -> String {
        let mut lines = vec![match levels {
            Some(l) => format!("{} graphs with {l} level(s) below zero", graphs.len()),
            None => format!("{} boundary graphs", graphs.len()),
        }];
        for g in graphs {
            let levels: Vec<String> = g.levels.iter().map(|l| format!("{}", l.spec)).collect();
            lines.push(format!(
                "[{}.{}] {}  ell={} K={} |Aut|={} profile={:?}  levels: {}",
                g.levels_below,
                g.index,
                g.description,
                g.prong.ell,
                g.prong.k,
                g.prong.aut,
                g.profile,
                levels.join(" | ")
            ));
        }
        lines.join("\n")
    }
}

/// A boundary divisor with the data entering the first Chern class.
#[derive(Debug, Clone, Serialize)]
pub struct DivisorRow {
    /// Index in the two-level list.
    pub index: usize,
    /// A one-line description.
    pub description: String,
    /// `ell` of the divisor.
    pub ell: u64,
    /// Unprojectivized dimension of the top level.
    pub n_top: i64,
    /// Unprojectivized dimension of the bottom level.
    pub n_bottom: i64,
    /// `int xi^{d-1} [D]`, if evaluable.
    pub xi_degree: Option<Rational>,
}

impl DivisorRow {
    /// One row per two-level graph.
    pub fn collect(spec: &StratumSpec, integ: &Integrator) -> Result<Vec<Self>, EvalError> {
        let ring = integ.rings().ring(spec);
        let d = spec.dim();
        let mut out = Vec::new();
        for (i, info) in ring.lg1()?.graphs.iter().enumerate() {
            let xi_degree = if d >= 1 {
                let mut m = Monomial::xi_power((d - 1) as u32);
                m.mul_atom(Atom::Divisor(i), 1);
                let class = TautClass::monomial(m, Rational::one());
                match integ.integrate(spec, &class) {
                    Ok(v) => Some(v),
                    Err(e) if e.is_unevaluatable() => None,
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            out.push(DivisorRow {
                index: i,
                description: info.graph.describe(),
                ell: info.prong.ell,
                n_top: info.n_top(),
                n_bottom: info.dims[1].unprojectivized,
                xi_degree,
            });
        }
        Ok(out)
    }

    /// A text rendering.
    pub fn to_text(rows: &[Self]) -> String {
        let mut lines = vec![format!("{} divisors", rows.len())];
        for r in rows {
            let deg = r.xi_degree.as_ref().map_or("unevaluatable".to_string(), |v| v.to_string());
            lines.push(format!(
                "[{}] {}  ell={} N_top={} N_bot={} int xi^(d-1) D = {deg}",
                r.index, r.description, r.ell, r.n_top, r.n_bottom
            ));
        }
        lines.join("\n")
    }
}

/// The profile of a graph with several levels below zero.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    /// Number of levels below zero.
    pub levels_below: usize,
    /// Position in the list of graphs with that many levels.
    pub index: usize,
    /// Indices of the two-level undegenerations, top passage first.
    pub profile: Vec<usize>,
    /// A one-line description.
    pub description: String,
}

impl ProfileRow {
    /// Profiles of all graphs with at least two levels below zero (or exactly
    /// `levels`).
    pub fn collect(spec: &StratumSpec, integ: &Integrator, levels: Option<usize>) -> Result<Vec<Self>, EvalError> {
        Ok(GraphReport::collect(spec, integ, levels)?
            .into_iter()
            .filter(|g| levels.is_some() || g.levels_below >= 2)
            .map(|g| ProfileRow { levels_below: g.levels_below, index: g.index, profile: g.profile, description: g.description })
            .collect())
    }

    /// A text rendering.
    pub fn to_text(rows: &[Self]) -> String {
        let mut lines = vec![format!("{} profiles", rows.len())];
        for r in rows {
            lines.push(format!("[{}.{}] {:?}  {}", r.levels_below, r.index, r.profile, r.description));
        }
        lines.join("\n")
    }
}

/// The top `xi`-power with the rule that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct XiTopReport {
    /// The stratum.
    pub spec: StratumSpec,
    /// `int xi^dim`.
    pub value: Rational,
    /// The rule that produced the value.
    pub rule: String,
}
