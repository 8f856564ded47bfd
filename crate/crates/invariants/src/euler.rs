use crate::boundary::{all_graphs, k_over_aut};
use evaluate::{EvalError, Integrator};
use exact::Rational;
use serde::Serialize;
use strata::StratumSpec;

/// The top `xi`-power of one level stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelFactor {
    /// The level stratum.
    pub spec: StratumSpec,
    /// Its projectivized dimension.
    pub dim: i64,
    /// `int xi^dim` on it.
    pub value: Rational,
    /// The rule that produced the value.
    pub rule: &'static str,
}

/// The contribution of one boundary graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerRow {
    /// Description of the graph.
    pub graph: String,
    /// Number of levels below zero.
    pub levels_below: usize,
    /// Product of the enhancements.
    pub k: u64,
    /// Unprojectivized dimension of the top level.
    pub n_top: i64,
    /// Order of the automorphism group.
    pub aut: u64,
    /// Top `xi`-powers of the levels.
    pub factors: Vec<LevelFactor>,
    /// `K N_top / |Aut| * prod factors`.
    pub contribution: Rational,
}

/// The orbifold Euler characteristic with its per-graph assembly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    /// The stratum.
    pub spec: StratumSpec,
    /// Its projectivized dimension.
    pub dim: i64,
    /// The Euler characteristic, `(-1)^dim` times the sum of contributions.
    pub chi: Rational,
    /// One row per boundary graph, the open stratum first.
    pub rows: Vec<EulerRow>,
}

impl EulerReport {
    /// An aligned text table.
    pub fn to_table(&self) -> String {
        let mut lines = vec![format!("dim = {}", self.dim)];
        let header = ["L", "K", "N_top", "|Aut|", "levels", "contribution", "graph"];
        let mut rows: Vec<[String; 7]> = vec![header.map(String::from)];
        for r in &self.rows {
            let levels: Vec<String> = r.factors.iter().map(|f| format!("{} [{}]", f.value, f.rule)).collect();
            rows.push([
                r.levels_below.to_string(),
                r.k.to_string(),
                r.n_top.to_string(),
                r.aut.to_string(),
                levels.join(" * "),
                r.contribution.to_string(),
                r.graph.clone(),
            ]);
        }
        lines.extend(align(&rows));
        lines.push(format!("χ = {}", self.chi));
        lines.join("\n")
    }
}

/// Pads the columns of a table (the last column is left ragged).
pub fn align<const N: usize>(rows: &[[String; N]]) -> Vec<String> {
    let mut widths = [0usize; N];
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(i, c)| if i + 1 == N { c.clone() } else { format!("{c:<width$}", width = widths[i]) })
                .collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect()
}

/// `chi(B) = (-1)^d sum_L sum_{G in LG_L} K_G N_G^top / |Aut G| prod_i int xi^{d_i}`.
pub fn euler_characteristic(spec: &StratumSpec, integrator: &Integrator) -> Result<EulerReport, EvalError> {
    spec.validate().map_err(|e| tautring::TautError::InvalidArgument(e.to_string()))?;
    let d = spec.dim();
    let mut rows = Vec::new();
    let mut sum = Rational::zero();
    for g in all_graphs(spec, integrator)? {
        let mut factors = Vec::new();
        let mut product = Rational::one();
        for level in &g.levels {
            let (value, rule) = integrator.xi_top_with_rule(level.spec())?;
            product *= &value;
            factors.push(LevelFactor { spec: level.spec().clone(), dim: level.dim(), value, rule });
        }
        let contribution = k_over_aut(&g) * Rational::from(g.info.n_top()) * product;
        sum += &contribution;
        rows.push(EulerRow {
            graph: g.info.graph.describe(),
            levels_below: g.level_count() - 1,
            k: g.info.prong.k,
            n_top: g.info.n_top(),
            aut: g.info.prong.aut,
            factors,
            contribution,
        });
    }
    let chi = if d % 2 == 0 { sum } else { -sum };
    Ok(EulerReport { spec: spec.clone(), dim: d, chi, rows })
}
