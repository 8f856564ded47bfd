use crate::{GraphRings, Monomial, RingCache, SplitClass, TautError};
use exact::Rational;
use levelgraphs::{GraphInfo, LevelGraph};
use std::collections::BTreeMap;
use strata::{Point, StratumSpec};

/// Evaluation of top-degree monomials on (level) strata.
///
/// The calculus in this crate reduces integrals over boundary strata to
/// products of integrals over level strata; an implementor supplies those.
pub trait LevelIntegrator {
    /// The ring store shared with the caller.
    fn rings(&self) -> &RingCache;

    /// `int_B m` for a monomial whose divisor indices refer to the
    /// two-level list of `spec`. Monomials whose degree differs from the
    /// dimension integrate to zero.
    fn integrate_monomial(&self, spec: &StratumSpec, m: &Monomial) -> Result<Rational, TautError>;
}

/// `weight * sum_terms coeff * prod_i int_{B_i} m_i` for a class split over
/// the levels of a boundary stratum; only terms of top degree on every level
/// contribute.
pub fn integrate_split<I: LevelIntegrator + ?Sized>(
    integrator: &I,
    levels: &[&StratumSpec],
    dims: &[i64],
    weight: &Rational,
    class: &SplitClass,
) -> Result<Rational, TautError> {
    let mut total = Rational::zero();
    for (ms, c) in class.top_part(dims).terms() {
        let mut value = c.clone();
        for (spec, m) in levels.iter().zip(ms) {
            value *= integrator.integrate_monomial(spec, m)?;
            if value.is_zero() {
                break;
            }
        }
        total += value;
    }
    Ok(total * weight)
}

/// Integrates a split class over the boundary stratum of a graph.
pub fn integrate_on_graph<I: LevelIntegrator + ?Sized>(
    integrator: &I,
    graph: &GraphRings,
    class: &SplitClass,
) -> Result<Rational, TautError> {
    let specs: Vec<&StratumSpec> = graph.levels.iter().map(|r| r.spec()).collect();
    integrate_split(integrator, &specs, &graph.dims, &graph.weight()?, class)
}

/// An additive generator: the push-forward from a boundary stratum of a
/// product of `psi` monomials, one per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AddGen {
    /// The graph (the trivial graph for classes on the open stratum).
    pub graph: LevelGraph,
    /// For each level, `psi` exponents at points of the level stratum.
    pub psi: Vec<BTreeMap<Point, u32>>,
}

impl AddGen {
    /// Degree: codimension of the boundary stratum plus the `psi` degree.
    pub fn degree(&self) -> i64 {
        self.graph.levels_below() as i64 + self.psi.iter().flat_map(|m| m.values()).map(|&e| i64::from(e)).sum::<i64>()
    }
}

/// `int_B gen = K/(|Aut| ell) prod_i int_{B_i} (psi monomial of level i)`.
pub fn evaluate_generator<I: LevelIntegrator + ?Sized>(
    gen: &AddGen,
    ambient: &StratumSpec,
    integrator: &I,
) -> Result<Rational, TautError> {
    if gen.degree() != ambient.dim() {
        return Err(TautError::InvalidArgument(format!(
            "generator of degree {} on a stratum of dimension {}",
            gen.degree(),
            ambient.dim()
        )));
    }
    let info = GraphInfo::new(gen.graph.canonical().graph, ambient)?;
    if gen.graph.canonical().graph != gen.graph {
        return Err(TautError::InvalidArgument("generator graph must be in canonical form".into()));
    }
    if gen.psi.len() != info.levels.len() {
        return Err(TautError::InvalidArgument(format!("{} psi monomials for {} levels", gen.psi.len(), info.levels.len())));
    }
    let rings = GraphRings::new(&info, integrator.rings());
    let mut class = SplitClass::one(rings.level_count());
    for (j, exps) in gen.psi.iter().enumerate() {
        let mut m = Monomial::one();
        for (&p, &e) in exps {
            m.mul_atom(crate::Atom::Psi(p), e);
        }
        let mut ms = vec![Monomial::one(); rings.level_count()];
        ms[j] = m;
        let mut factor = SplitClass::zero(rings.level_count());
        factor.add_term(ms, Rational::one());
        class = class.mul(&factor, &rings.dims);
    }
    integrate_on_graph(integrator, &rings, &class)
}
