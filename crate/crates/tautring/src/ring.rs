use crate::{Atom, SplitClass, TautError};
use exact::Rational;
use levelgraphs::{BoundaryCache, GraphInfo, GraphList, HalfEdge, Lg1, PointSource, ProngData};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use strata::{Point, StratumSpec};

/// The tautological data of one (labelled) stratum: its boundary graphs and
/// the lazily built restriction data of each boundary divisor.
#[derive(Debug)]
pub struct StratumRing {
    cache: BoundaryCache,
    dim: i64,
    divisors: OnceLock<Vec<OnceLock<Result<Arc<DivisorData>, TautError>>>>,
    lower: OnceLock<BTreeMap<Point, Vec<usize>>>,
}

impl StratumRing {
    fn new(spec: &StratumSpec, memo: Arc<Lg1>) -> Self {
        StratumRing { cache: BoundaryCache::with_memo(spec, memo), dim: spec.dim(), divisors: OnceLock::new(), lower: OnceLock::new() }
    }

    /// The stratum.
    pub fn spec(&self) -> &StratumSpec {
        self.cache.spec()
    }

    /// Projectivized dimension.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// The boundary graphs of the stratum.
    pub fn cache(&self) -> &BoundaryCache {
        &self.cache
    }

    /// The two-level graphs; [`Atom::Divisor`] indices refer to this list.
    pub fn lg1(&self) -> Result<&GraphList, TautError> {
        Ok(self.cache.lg(1)?)
    }

    /// Indices of the two-level graphs carrying the leg `p` on lower level.
    pub fn graphs_with_lower(&self, p: Point) -> Result<&[usize], TautError> {
        if self.lower.get().is_none() {
            let lg1 = self.lg1()?;
            let mut map: BTreeMap<Point, Vec<usize>> = self.spec().points().into_iter().map(|q| (q, vec![])).collect();
            for (i, info) in lg1.graphs.iter().enumerate() {
                for leg in &info.graph.legs {
                    if info.graph.vertices[leg.vertex].depth == 1 {
                        map.entry(leg.point).or_default().push(i);
                    }
                }
            }
            let _ = self.lower.set(map);
        }
        Ok(self.lower.get().and_then(|m| m.get(&p)).map(|v| v.as_slice()).unwrap_or(&[]))
    }

    /// The restriction data of the divisor with index `i`.
    pub fn divisor(&self, i: usize, rings: &RingCache) -> Result<Arc<DivisorData>, TautError> {
        let n = self.lg1()?.len();
        let slots = self.divisors.get_or_init(|| (0..n).map(|_| OnceLock::new()).collect());
        let slot = slots
            .get(i)
            .ok_or_else(|| TautError::InvalidArgument(format!("divisor index {i} out of range ({n} divisors)")))?;
        if let Some(done) = slot.get() {
            return done.clone();
        }
        let built = DivisorData::build(self, i, rings).map(Arc::new);
        let _ = slot.set(built);
        slot.get().cloned().unwrap_or_else(|| Err(TautError::Consistency("divisor slot".into())))
    }
}

/// Shared store of [`StratumRing`]s keyed by labelled spec, backed by one
/// two-level enumeration memo.
#[derive(Debug)]
pub struct RingCache {
    memo: Arc<Lg1>,
    rings: Mutex<HashMap<StratumSpec, Arc<StratumRing>>>,
}

impl Default for RingCache {
    fn default() -> Self {
        RingCache::with_memo(Arc::new(Lg1::default()))
    }
}

impl RingCache {
    /// A cache with a fresh enumeration memo.
    pub fn new() -> Self {
        RingCache::default()
    }

    /// A cache sharing an existing enumeration memo.
    pub fn with_memo(memo: Arc<Lg1>) -> Self {
        RingCache { memo, rings: Mutex::new(HashMap::new()) }
    }

    /// The enumeration memo.
    pub fn memo(&self) -> &Arc<Lg1> {
        &self.memo
    }

    /// The ring of a stratum, created on first use.
    pub fn ring(&self, spec: &StratumSpec) -> Arc<StratumRing> {
        let mut rings = self.rings.lock().unwrap_or_else(|e| e.into_inner());
        rings.entry(spec.clone()).or_insert_with(|| Arc::new(StratumRing::new(spec, self.memo.clone()))).clone()
    }

    /// Number of strata seen so far.
    pub fn len(&self) -> usize {
        self.rings.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    /// Whether no stratum has been seen.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A boundary divisor `D_G` together with everything needed to restrict
/// classes of the ambient stratum to it.
///
/// On `D_G` a class is written through the two level strata (see
/// [`SplitClass`]); integrals over `D_G` are `weight` times the product of
/// the level integrals.
#[derive(Debug)]
pub struct DivisorData {
    /// Index in the ambient two-level list.
    pub index: usize,
    /// The graph and its data.
    pub info: GraphInfo,
    /// Rings of the top and bottom level strata.
    pub levels: [Arc<StratumRing>; 2],
    /// Projectivized dimensions of the two levels.
    pub dims: [i64; 2],
    /// `K / (|Aut| ell)`.
    pub weight: Rational,
    /// Ambient leg to `(level, level point)`.
    pub point_map: BTreeMap<Point, (usize, Point)>,
    /// For each level and each two-level graph `H` of that level stratum:
    /// the ambient divisor `G'` such that splitting the level of `G` by `H`
    /// gives a three-level graph with undegenerations `{G, G'}`, and the
    /// coefficient `ell_H / ell_new` of `[D_H]` in the restriction of
    /// `[D_G']`.
    pub lookup: [Vec<(usize, Rational)>; 2],
    by_target: HashMap<usize, Vec<(usize, usize, Rational)>>,
}

impl DivisorData {
    fn build(ring: &StratumRing, index: usize, rings: &RingCache) -> Result<Self, TautError> {
        let lg1 = ring.lg1()?;
        let info = lg1.graphs[index].clone();
        let spec = ring.spec();
        let levels = [rings.ring(&info.levels[0].spec), rings.ring(&info.levels[1].spec)];
        let dims = [levels[0].dim(), levels[1].dim()];
        let weight = Rational::from(i64::try_from(info.prong.k).map_err(|_| overflow())?)
            * Rational::new(1, i64::try_from(info.prong.aut * info.prong.ell).map_err(|_| overflow())?)
                .map_err(|e| TautError::Consistency(e.to_string()))?;
        let mut point_map = BTreeMap::new();
        for p in spec.points() {
            for (j, level) in info.levels.iter().enumerate() {
                if let Some(q) = level.point_of(PointSource::Leg(p)) {
                    point_map.insert(p, (j, q));
                }
            }
        }
        let mut lookup: [Vec<(usize, Rational)>; 2] = [vec![], vec![]];
        let mut by_target: HashMap<usize, Vec<(usize, usize, Rational)>> = HashMap::new();
        for j in 0..2 {
            let inner = levels[j].lg1()?;
            for (h, hinfo) in inner.graphs.iter().enumerate() {
                let glued = info.graph.glue(&info.levels[j], &hinfo.graph)?;
                let pi = glued.graph;
                let prong = ProngData::of(&pi)?;
                let ell_new = prong.ell_levels[j];
                let other = pi.delta(j + 1);
                let target = lg1.find_any(&other).ok_or_else(|| {
                    TautError::Consistency(format!(
                        "splitting level {j} of {} by {} gives an undegeneration {} missing from the boundary of {}",
                        info.graph.describe(),
                        hinfo.graph.describe(),
                        other.describe(),
                        spec.to_json()
                    ))
                })?;
                if target == index {
                    return Err(TautError::Consistency(format!("repeated divisor {} in a profile", info.graph.describe())));
                }
                let coeff = Rational::new(
                    i64::try_from(hinfo.prong.ell).map_err(|_| overflow())?,
                    i64::try_from(ell_new).map_err(|_| overflow())?,
                )
                .map_err(|e| TautError::Consistency(e.to_string()))?;
                by_target.entry(target).or_default().push((j, h, coeff.clone()));
                lookup[j].push((target, coeff));
            }
        }
        Ok(DivisorData { index, info, levels, dims, weight, point_map, lookup, by_target })
    }

    /// `ell` of the divisor.
    pub fn ell(&self) -> u64 {
        self.info.prong.ell
    }

    /// The level point of an edge end.
    pub fn half_edge_point(&self, edge: usize, upper: bool) -> Option<(usize, Point)> {
        let level = if upper { 0 } else { 1 };
        self.info.levels[level].point_of(PointSource::Half(HalfEdge { edge, upper })).map(|q| (level, q))
    }

    /// The class `ell * c_1(N)` of the normal bundle, i.e.
    /// `-xi_top - L_top + xi_bot`.
    pub fn scaled_normal_bundle(&self) -> SplitClass {
        let m1 = -Rational::one();
        SplitClass::atom(2, 0, Atom::Xi, m1.clone())
            .add(&SplitClass::atom(2, 0, Atom::L, m1))
            .add(&SplitClass::atom(2, 1, Atom::Xi, Rational::one()))
    }

    /// The first Chern class of the normal bundle,
    /// `(-xi_top - L_top + xi_bot) / ell`.
    pub fn normal_bundle(&self) -> SplitClass {
        self.scaled_normal_bundle().scale(&inverse(self.ell()))
    }

    /// The first Chern class of the normal bundle through an edge `e`:
    /// `-(kappa_e/ell)(psi_{e+} + psi_{e-}) - (1/ell) sum ell_H [D_H]`,
    /// the sum running over the splittings `H` of either level in which `e`
    /// becomes long.
    pub fn normal_bundle_via_edge(&self, edge: usize) -> Result<SplitClass, TautError> {
        let e = self
            .info
            .graph
            .edges
            .get(edge)
            .ok_or_else(|| TautError::InvalidArgument(format!("edge {edge} out of range")))?;
        let ell = inverse(self.ell());
        let kappa = Rational::from(i64::try_from(e.kappa).map_err(|_| overflow())?);
        let mut out = SplitClass::zero(2);
        let mut long_points = [None, None];
        for upper in [true, false] {
            let (level, q) = self
                .half_edge_point(edge, upper)
                .ok_or_else(|| TautError::Consistency(format!("edge {edge} has no level point")))?;
            out = out.add(&SplitClass::atom(2, level, Atom::Psi(q), -(&kappa * &ell)));
            long_points[level] = Some(q);
        }
        for (j, q) in long_points.iter().enumerate() {
            let q = q.ok_or_else(|| TautError::Consistency("missing edge end".into()))?;
            // The edge becomes long when its top end stays on the upper part
            // of a split top level, or its bottom end sinks to the lower
            // part of a split bottom level.
            let wanted_depth = if j == 0 { 0 } else { 1 };
            for (h, hinfo) in self.levels[j].lg1()?.graphs.iter().enumerate() {
                let depth = hinfo
                    .graph
                    .legs
                    .iter()
                    .find(|l| l.point == q)
                    .map(|l| hinfo.graph.vertices[l.vertex].depth)
                    .ok_or_else(|| TautError::Consistency("edge end missing from level graph".into()))?;
                if depth == wanted_depth {
                    let c = Rational::from(i64::try_from(hinfo.prong.ell).map_err(|_| overflow())?);
                    out = out.add(&SplitClass::atom(2, j, Atom::Divisor(h), -(c * &ell)));
                }
            }
        }
        Ok(out)
    }

    /// The restriction of one ambient atom to `D_G`.
    ///
    /// * `xi` restricts to `xi` of the top level;
    /// * `psi_p` to `psi` at the level point of `p`;
    /// * the correction class to `xi_bot - xi_top + L_bot`;
    /// * another divisor `[D_G']` to the sum over the level splittings
    ///   listed in [`DivisorData::lookup`];
    /// * `[D_G]` itself to the normal bundle.
    pub fn restrict_atom(&self, atom: Atom) -> Result<SplitClass, TautError> {
        Ok(match atom {
            Atom::Xi => SplitClass::atom(2, 0, Atom::Xi, Rational::one()),
            Atom::L => SplitClass::atom(2, 1, Atom::Xi, Rational::one())
                .add(&SplitClass::atom(2, 0, Atom::Xi, -Rational::one()))
                .add(&SplitClass::atom(2, 1, Atom::L, Rational::one())),
            Atom::Psi(p) => {
                let (j, q) = self
                    .point_map
                    .get(&p)
                    .ok_or_else(|| TautError::InvalidArgument(format!("point {p} is not a leg")))?;
                SplitClass::atom(2, *j, Atom::Psi(*q), Rational::one())
            }
            Atom::Divisor(i) if i == self.index => self.normal_bundle(),
            Atom::Divisor(i) => {
                let mut out = SplitClass::zero(2);
                for (j, h, c) in self.by_target.get(&i).map(|v| v.as_slice()).unwrap_or(&[]) {
                    out = out.add(&SplitClass::atom(2, *j, Atom::Divisor(*h), c.clone()));
                }
                out
            }
        })
    }

    /// The restriction of a monomial to `D_G`, keeping only the terms that
    /// can contribute to a top-degree integral.
    pub fn restrict(&self, m: &crate::Monomial) -> Result<SplitClass, TautError> {
        let mut out = SplitClass::one(2);
        for (atom, e) in m.atoms() {
            let f = self.restrict_atom(atom)?;
            out = out.mul(&f.pow(e, &self.dims), &self.dims);
            if out.is_zero() {
                break;
            }
        }
        Ok(out)
    }
}

/// A boundary stratum with any number of levels, with the rings of its
/// level strata.
#[derive(Debug, Clone)]
pub struct GraphRings {
    /// The graph and its data.
    pub info: GraphInfo,
    /// Rings of the level strata, top to bottom.
    pub levels: Vec<Arc<StratumRing>>,
    /// Projectivized dimensions of the levels.
    pub dims: Vec<i64>,
}

impl GraphRings {
    /// Collects the level rings of a graph.
    pub fn new(info: &GraphInfo, rings: &RingCache) -> Self {
        let levels: Vec<_> = info.levels.iter().map(|l| rings.ring(&l.spec)).collect();
        let dims = levels.iter().map(|r| r.dim()).collect();
        GraphRings { info: info.clone(), levels, dims }
    }

    /// Number of levels (one more than the number of passages).
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// `K / (|Aut| ell)` for the whole graph.
    pub fn weight(&self) -> Result<Rational, TautError> {
        let p = &self.info.prong;
        Ok(Rational::from(i64::try_from(p.k).map_err(|_| overflow())?)
            * Rational::new(1, i64::try_from(p.aut * p.ell).map_err(|_| overflow())?)
                .map_err(|e| TautError::Consistency(e.to_string()))?)
    }

    /// `ell_i` times the first Chern class of the normal bundle of `D_G` in
    /// the undegeneration contracting passage `i` (1-based):
    /// `-xi_{i-1} - L_{i-1} + xi_i`.
    pub fn scaled_normal_bundle(&self, passage: usize) -> SplitClass {
        let n = self.level_count();
        let m1 = -Rational::one();
        SplitClass::atom(n, passage - 1, Atom::Xi, m1.clone())
            .add(&SplitClass::atom(n, passage - 1, Atom::L, m1))
            .add(&SplitClass::atom(n, passage, Atom::Xi, Rational::one()))
    }

    /// The first Chern class of the normal bundle for passage `i`.
    pub fn normal_bundle(&self, passage: usize) -> SplitClass {
        self.scaled_normal_bundle(passage).scale(&inverse(self.info.prong.ell_levels[passage - 1]))
    }
}

fn inverse(n: u64) -> Rational {
    Rational::new(1, n as i64).expect("positive prong number")
}

fn overflow() -> TautError {
    TautError::Consistency("prong number exceeds i64".into())
}
