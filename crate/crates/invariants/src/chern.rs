use crate::boundary::{all_graphs, degree_part, inverse_todd, PushforwardClass, PushforwardTerm};
use crate::euler::euler_characteristic;
use evaluate::{EvalError, Integrator};
use exact::{binomial, Rational};
use serde::Serialize;
use std::sync::Arc;
use strata::StratumSpec;
use tautring::{Atom, LevelIntegrator, Monomial, SplitClass, TautClass, TautError};

/// The first Chern class of the logarithmic cotangent bundle,
/// `N xi + sum_{G in LG_1} (N - N_G^top) ell_G [D_G]`.
pub fn c1_log_cotangent(spec: &StratumSpec, integrator: &Integrator) -> Result<TautClass, EvalError> {
    let n = spec.dimension().unprojectivized;
    let ring = integrator.rings().ring(spec);
    let mut c1 = TautClass::atom(Atom::Xi, Rational::from(n));
    for (i, info) in ring.lg1()?.graphs.iter().enumerate() {
        let coeff = Rational::from(n - info.n_top()) * Rational::from(info.prong.ell as i64);
        c1.add_term(Monomial::atom(Atom::Divisor(i), 1), coeff);
    }
    Ok(c1)
}

/// Compositions `(k_1, ..., k_L)` with every part at least one and sum at
/// most `max`.
fn compositions(parts: usize, max: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=max {
        for mut rest in compositions(parts - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The Chern class `c_k` of the logarithmic cotangent bundle as a sum of
/// push-forwards:
///
/// `c_k = sum_G sum_{k_0 + k_1 + ... + k_L = k, k_i >= 1} binom(N - sum k_i, k_0)
///   prod_i binom(r_i - sum_{j>i} k_j, k_i)  i_G*( xi^{k_0} prod_i (ell_i nu_i)^{k_i - 1} )`,
///
/// where `r_i` is the unprojectivized dimension of levels `i` and below and
/// `ell_i nu_i = -xi_{i-1} - L_{i-1} + xi_i`.
pub fn chern_class(spec: &StratumSpec, k: i64, integrator: &Integrator) -> Result<PushforwardClass, EvalError> {
    let n = spec.dimension().unprojectivized;
    let mut terms = Vec::new();
    for g in all_graphs(spec, integrator)? {
        let levels_below = g.level_count() - 1;
        if levels_below as i64 > k {
            continue;
        }
        let g = Arc::new(g);
        let count = g.level_count();
        let level_n: Vec<i64> = g.info.dims.iter().map(|d| d.unprojectivized).collect();
        let r: Vec<i64> = (0..count).map(|i| level_n[i..].iter().sum()).collect();
        let mut class = SplitClass::zero(count);
        for ks in compositions(levels_below, k) {
            let used: i64 = ks.iter().sum();
            let k0 = k - used;
            let mut coeff = Rational::from(binomial(n - used, k0 as u64));
            for i in 1..=levels_below {
                let later: i64 = ks[i..].iter().sum();
                coeff *= Rational::from(binomial(r[i] - later, ks[i - 1] as u64));
            }
            if coeff.is_zero() {
                continue;
            }
            let mut term = SplitClass::one(count).scale(&coeff);
            term = term.mul(&SplitClass::atom(count, 0, Atom::Xi, Rational::one()).pow(k0 as u32, &g.dims), &g.dims);
            for (i, &ki) in ks.iter().enumerate() {
                term = term.mul(&g.scaled_normal_bundle(i + 1).pow((ki - 1) as u32, &g.dims), &g.dims);
            }
            class = class.add(&term);
        }
        if !class.is_zero() {
            terms.push(PushforwardTerm { graph: g, class });
        }
    }
    Ok(PushforwardClass { degree: k, terms })
}

/// The degree-`k` part (`k >= 1`) of the Chern character of the logarithmic
/// cotangent bundle:
/// `[e^xi sum_G ell_G (N - N^top_{delta_L G}) i_G*( prod_i Td^{-1}_i )]_k`.
pub fn chern_character(spec: &StratumSpec, k: i64, integrator: &Integrator) -> Result<PushforwardClass, EvalError> {
    let n = spec.dimension().unprojectivized;
    let mut terms = Vec::new();
    for g in all_graphs(spec, integrator)? {
        let levels_below = g.level_count() - 1;
        if levels_below as i64 > k {
            continue;
        }
        let count = g.level_count();
        // N minus the top of the undegeneration keeping the lowest passage:
        // the unprojectivized dimension of the bottom level.
        let weight = if levels_below == 0 { n } else { g.info.dims[levels_below].unprojectivized };
        let mut class = exp_xi(count, 0, k as u32, &g.dims);
        for i in 1..=levels_below {
            class = class.mul(&inverse_todd(&g, i, k as u32), &g.dims);
        }
        let class = degree_part(&class, k - levels_below as i64).scale(&Rational::from(weight));
        if !class.is_zero() {
            terms.push(PushforwardTerm { graph: Arc::new(g), class });
        }
    }
    Ok(PushforwardClass { degree: k, terms })
}

/// The degree-`k` part (`k >= 1`) of
/// `sum_{L >= 1} sum_{G in LG_L} ell_G i_G*( prod_i Td^{-1}_i )`, which
/// equals `exp(L)` in degree `k` for the correction class `L`.
pub fn exponential_boundary(spec: &StratumSpec, k: i64, integrator: &Integrator) -> Result<PushforwardClass, EvalError> {
    let mut terms = Vec::new();
    for g in all_graphs(spec, integrator)? {
        let levels_below = g.level_count() - 1;
        if levels_below == 0 || levels_below as i64 > k {
            continue;
        }
        let mut class = SplitClass::one(g.level_count());
        for i in 1..=levels_below {
            class = class.mul(&inverse_todd(&g, i, k as u32), &g.dims);
        }
        let class = degree_part(&class, k - levels_below as i64);
        if !class.is_zero() {
            terms.push(PushforwardTerm { graph: Arc::new(g), class });
        }
    }
    Ok(PushforwardClass { degree: k, terms })
}

fn exp_xi(levels: usize, level: usize, max: u32, dims: &[i64]) -> SplitClass {
    let xi = SplitClass::atom(levels, level, Atom::Xi, Rational::one());
    let mut out = SplitClass::zero(levels);
    let mut power = SplitClass::one(levels);
    let mut factorial = Rational::one();
    for m in 0..=max {
        if m > 0 {
            factorial *= Rational::from(i64::from(m));
        }
        out = out.add(&power.scale(&factorial.recip().expect("nonzero factorial")));
        power = power.mul(&xi, dims);
    }
    out
}

/// The Chern classes of the logarithmic cotangent bundle, evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernReport {
    /// The stratum.
    pub spec: StratumSpec,
    /// Its projectivized dimension.
    pub dim: i64,
    /// `int c_k xi^{d-k}` for `k = 0..=d`.
    pub pairings: Vec<Rational>,
    /// `int c_1 xi^{d-1}` computed from the closed form of `c_1`.
    pub c1_pairing: Option<Rational>,
    /// `int c_d`.
    pub top: Rational,
    /// The Euler characteristic from the graph sum.
    pub chi: Rational,
    /// Whether `int c_d = (-1)^d chi`.
    pub consistent: bool,
}

impl ChernReport {
    /// A text rendering.
    pub fn to_table(&self) -> String {
        let mut lines = vec![format!("dim = {}", self.dim)];
        for (k, v) in self.pairings.iter().enumerate() {
            lines.push(format!("int c_{k} xi^{} = {v}", self.dim - k as i64));
        }
        if let Some(c1) = &self.c1_pairing {
            lines.push(format!("int c_1 xi^{} (closed form) = {c1}", self.dim - 1));
        }
        lines.push(format!("int c_top = {}", self.top));
        lines.push(format!("(-1)^d chi = {}", if self.dim % 2 == 0 { self.chi.clone() } else { -self.chi.clone() }));
        lines.push(format!("consistent = {}", self.consistent));
        lines.join("\n")
    }
}

/// Evaluates every Chern class against powers of `xi` and checks the top
/// class against the Euler characteristic.
pub fn chern_polynomial(spec: &StratumSpec, integrator: &Integrator) -> Result<ChernReport, EvalError> {
    spec.validate().map_err(|e| TautError::InvalidArgument(e.to_string()))?;
    let d = spec.dim();
    let mut pairings = Vec::new();
    for k in 0..=d {
        pairings.push(chern_class(spec, k, integrator)?.pair_with_xi(spec, integrator)?);
    }
    let c1_pairing = if d >= 1 {
        let class = c1_log_cotangent(spec, integrator)?.mul(&TautClass::monomial(Monomial::xi_power((d - 1) as u32), Rational::one()));
        Some(integrator.integrate(spec, &class)?)
    } else {
        None
    };
    let top = pairings.last().cloned().unwrap_or_else(Rational::zero);
    let chi = euler_characteristic(spec, integrator)?.chi;
    let signed = if d % 2 == 0 { chi.clone() } else { -chi.clone() };
    let consistent = top == signed && c1_pairing.as_ref().is_none_or(|c| Some(c) == pairings.get(1));
    Ok(ChernReport { spec: spec.clone(), dim: d, pairings, c1_pairing, top, chi, consistent })
}
