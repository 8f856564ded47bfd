use evaluate::{EvalError, Integrator};
use exact::Rational;
use std::sync::Arc;
use strata::StratumSpec;
use tautring::{integrate_split, Atom, GraphRings, LevelIntegrator, SplitClass, TautError};

/// Every boundary graph of `spec` (the trivial graph first), with the rings
/// of its levels.
pub fn all_graphs(spec: &StratumSpec, integrator: &Integrator) -> Result<Vec<GraphRings>, EvalError> {
    let ring = integrator.rings().ring(spec);
    let cache = ring.cache();
    let mut out = Vec::new();
    for l in 0..=cache.max_levels() {
        for info in &cache.lg(l).map_err(TautError::from)?.graphs {
            out.push(GraphRings::new(info, integrator.rings()));
        }
    }
    Ok(out)
}

/// `K / |Aut|` of a graph: the factor by which an integral over the
/// boundary stratum, scaled by `ell`, differs from the product of the
/// level integrals.
pub fn k_over_aut(graph: &GraphRings) -> Rational {
    let p = &graph.info.prong;
    Rational::new(p.k as i64, p.aut as i64).expect("positive automorphism count")
}

/// One summand of a [`PushforwardClass`]: a class on the levels of a
/// boundary stratum with a scalar weight.
#[derive(Debug, Clone)]
pub struct PushforwardTerm {
    /// The boundary stratum.
    pub graph: Arc<GraphRings>,
    /// The class on its levels.
    pub class: SplitClass,
}

/// A homogeneous class on the ambient stratum written as a sum of
/// push-forwards from boundary strata.
///
/// A term integrates to `K/|Aut|` times the product of its level integrals,
/// i.e. the push-forward is normalized by `ell_G` relative to the divisor
/// classes of the calculus.
#[derive(Debug, Clone)]
pub struct PushforwardClass {
    /// Degree on the ambient stratum.
    pub degree: i64,
    /// The summands.
    pub terms: Vec<PushforwardTerm>,
}

impl PushforwardClass {
    /// `int_B class * xi^{d - degree}`.
    pub fn pair_with_xi(&self, spec: &StratumSpec, integrator: &Integrator) -> Result<Rational, EvalError> {
        let d = spec.dim();
        if self.degree > d || self.degree < 0 {
            return Ok(Rational::zero());
        }
        let mut total = Rational::zero();
        for term in &self.terms {
            let g = &term.graph;
            let n = g.level_count();
            let xi = SplitClass::atom(n, 0, Atom::Xi, Rational::one()).pow((d - self.degree) as u32, &g.dims);
            let class = term.class.mul(&xi, &g.dims);
            let specs: Vec<&StratumSpec> = g.levels.iter().map(|r| r.spec()).collect();
            total += integrate_split(integrator, &specs, &g.dims, &k_over_aut(g), &class)?;
        }
        Ok(total)
    }
}

/// `sum_{m >= 0} x^m / (m+1)!` for the scaled normal bundle `x` of a
/// passage: the inverse Todd class of the dual power of the normal bundle.
pub fn inverse_todd(graph: &GraphRings, passage: usize, max_degree: u32) -> SplitClass {
    let n = graph.level_count();
    let x = graph.scaled_normal_bundle(passage);
    let mut out = SplitClass::zero(n);
    let mut power = SplitClass::one(n);
    let mut factorial = Rational::one();
    for m in 0..=max_degree {
        factorial *= Rational::from(i64::from(m) + 1);
        out = out.add(&power.scale(&factorial.recip().expect("nonzero factorial")));
        power = power.mul(&x, &graph.dims);
    }
    out
}

/// The part of degree `k` (summed over levels) of a split class.
pub fn degree_part(class: &SplitClass, k: i64) -> SplitClass {
    let mut out = SplitClass::zero(class.levels());
    for (ms, c) in class.terms() {
        if ms.iter().map(|m| m.degree()).sum::<i64>() == k {
            out.add_term(ms.clone(), c.clone());
        }
    }
    out
}
