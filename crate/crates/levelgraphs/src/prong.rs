use crate::{GraphError, LevelGraph};
use exact::{lcm_list, orbit_count};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// The integers attached to a non-horizontal level graph by its prongs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProngData {
    /// `ell = prod ell_levels`.
    pub ell: u64,
    /// `ell_levels[i-1]` is the lcm of the enhancements of the edges crossing
    /// passage `i` (between depths `i-1` and `i`); `1` if no edge crosses.
    pub ell_levels: Vec<u64>,
    /// Product of all enhancements.
    pub k: u64,
    /// Number of prong-matching equivalence classes (orbits of the level
    /// rotation group).
    pub g: u64,
    /// Index of the simple twist group in the twist group, `ell * g / K`.
    pub e: u64,
    /// Order of the automorphism group.
    pub aut: u64,
}

impl ProngData {
    /// Computes the prong data of a graph.
    pub fn of(graph: &LevelGraph) -> Result<Self, GraphError> {
        let levels = graph.levels_below();
        let kappas: Vec<u64> = graph.edges.iter().map(|e| e.kappa).collect();
        let mut ell_levels = Vec::with_capacity(levels);
        let mut rows = Vec::with_capacity(levels);
        for p in 1..=levels {
            let crossing: Vec<u64> =
                (0..graph.edges.len()).filter(|&e| graph.crosses(e, p)).map(|e| kappas[e]).collect();
            ell_levels.push(if crossing.is_empty() { 1 } else { lcm_list(&crossing)? });
            rows.push((0..graph.edges.len()).map(|e| u8::from(graph.crosses(e, p))).collect::<Vec<u8>>());
        }
        let ell = checked_product(&ell_levels)?;
        let k = checked_product(&kappas)?;
        let g = if kappas.is_empty() {
            1
        } else {
            orbit_count(&kappas, &rows)?
                .to_u64()
                .ok_or_else(|| GraphError::Arithmetic("orbit count overflow".into()))?
        };
        let num = u128::from(ell) * u128::from(g);
        if num % u128::from(k) != 0 {
            return Err(GraphError::Arithmetic(format!("twist index {num}/{k} is not integral")));
        }
        let e = u64::try_from(num / u128::from(k)).map_err(|_| GraphError::Arithmetic("twist index overflow".into()))?;
        Ok(ProngData { ell, ell_levels, k, g, e, aut: graph.automorphism_order() })
    }
}

fn checked_product(xs: &[u64]) -> Result<u64, GraphError> {
    xs.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x)).ok_or_else(|| GraphError::Arithmetic("product overflow".into()))
}
