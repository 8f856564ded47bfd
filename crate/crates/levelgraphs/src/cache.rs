use crate::{
    enumerate_lg1_with, GraphError, Leg, LevelGraph, LevelStratum, ProngData, Realizability, ResidueRealizability,
};
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use strata::{DimensionData, Point, StratumSpec};

/// A boundary graph together with its derived data.
#[derive(Debug, Clone)]
pub struct GraphInfo {
    /// The graph, in canonical form.
    pub graph: LevelGraph,
    /// Its prong data.
    pub prong: ProngData,
    /// Its level strata, top to bottom.
    pub levels: Vec<LevelStratum>,
    /// Dimension data of each level.
    pub dims: Vec<DimensionData>,
    /// Indices of `delta_1, ..., delta_L` in the two-level list.
    pub profile: Vec<usize>,
}

impl GraphInfo {
    /// Derives the data of a canonical graph; the profile is left empty.
    pub fn new(graph: LevelGraph, ambient: &StratumSpec) -> Result<Self, GraphError> {
        let prong = ProngData::of(&graph)?;
        let levels = LevelStratum::all(&graph, ambient);
        let dims = levels.iter().map(|l| l.spec.dimension()).collect();
        Ok(GraphInfo { graph, prong, levels, dims, profile: vec![] })
    }

    /// Unprojectivized dimension of the top level.
    pub fn n_top(&self) -> i64 {
        self.dims[0].unprojectivized
    }

    /// Projectivized dimensions of the levels.
    pub fn level_dims(&self) -> Vec<i64> {
        self.dims.iter().map(|d| d.projectivized).collect()
    }
}

/// The graphs with a fixed number of levels, with lookup by canonical form.
#[derive(Debug, Clone, Default)]
pub struct GraphList {
    /// The graphs, sorted by canonical form.
    pub graphs: Vec<GraphInfo>,
    index: HashMap<LevelGraph, usize>,
}

impl GraphList {
    fn new(graphs: Vec<GraphInfo>) -> Self {
        let index = graphs.iter().enumerate().map(|(i, g)| (g.graph.clone(), i)).collect();
        GraphList { graphs, index }
    }

    /// Index of a graph given in canonical form.
    pub fn find(&self, canonical: &LevelGraph) -> Option<usize> {
        self.index.get(canonical).copied()
    }

    /// Index of an arbitrary graph (canonicalized first).
    pub fn find_any(&self, graph: &LevelGraph) -> Option<usize> {
        self.find(&graph.canonical().graph)
    }

    /// Number of graphs.
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    /// Whether the list is empty.
    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

/// A shared memo of two-level enumerations, keyed by stratum.
///
/// Lookups first try the labelled stratum, then its canonical relabelling;
/// results computed for a relabelled stratum are transported back.
pub struct Lg1 {
    realizability: Box<dyn Realizability>,
    labelled: Mutex<HashMap<StratumSpec, Arc<Vec<LevelGraph>>>>,
    canonical: Mutex<HashMap<StratumSpec, Arc<Vec<LevelGraph>>>>,
}

impl std::fmt::Debug for Lg1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lg1").field("realizability", &self.realizability.name()).finish_non_exhaustive()
    }
}

impl Default for Lg1 {
    fn default() -> Self {
        Self::new(Box::new(ResidueRealizability::new()))
    }
}

impl Lg1 {
    /// A memo using the given predicate.
    pub fn new(realizability: Box<dyn Realizability>) -> Self {
        Lg1 { realizability, labelled: Mutex::default(), canonical: Mutex::default() }
    }

    /// The predicate in use.
    pub fn realizability(&self) -> &dyn Realizability {
        self.realizability.as_ref()
    }

    /// The two-level graphs of `spec`, canonical and sorted.
    pub fn get(&self, spec: &StratumSpec) -> Arc<Vec<LevelGraph>> {
        if let Some(hit) = self.labelled.lock().expect("memo lock").get(spec) {
            return hit.clone();
        }
        let (canon, map) = spec.canonical_form();
        let cached = self.canonical.lock().expect("memo lock").get(&canon).cloned();
        let base = match cached {
            Some(b) => b,
            None => {
                let b = Arc::new(enumerate_lg1_with(&canon, self.realizability.as_ref()));
                self.canonical.lock().expect("memo lock").insert(canon.clone(), b.clone());
                b
            }
        };
        // Transport back: new point -> old point, new component -> old component.
        let mut inverse: HashMap<Point, Point> = HashMap::new();
        let mut comp_inverse = vec![0; spec.components.len()];
        for (c, row) in map.iter().enumerate() {
            for (i, q) in row.iter().enumerate() {
                inverse.insert(*q, Point::new(c, i));
                comp_inverse[q.comp] = c;
            }
        }
        let set: BTreeSet<LevelGraph> = base
            .iter()
            .map(|g| {
                let mut h = g.clone();
                for v in &mut h.vertices {
                    v.comp = comp_inverse[v.comp];
                }
                h.legs = g.legs.iter().map(|l| Leg { point: inverse[&l.point], vertex: l.vertex, order: l.order }).collect();
                h.legs.sort();
                h.canonical().graph
            })
            .collect();
        let out = Arc::new(set.into_iter().collect::<Vec<_>>());
        self.labelled.lock().expect("memo lock").insert(spec.clone(), out.clone());
        out
    }
}

/// All boundary graphs of one stratum, level count by level count.
pub struct BoundaryCache {
    spec: StratumSpec,
    memo: Arc<Lg1>,
    lists: Vec<OnceLock<Result<GraphList, GraphError>>>,
}

impl std::fmt::Debug for BoundaryCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryCache").field("spec", &self.spec).finish_non_exhaustive()
    }
}

impl BoundaryCache {
    /// A cache for `spec` using a fresh memo with the default predicate.
    pub fn new(spec: &StratumSpec) -> Self {
        Self::with_memo(spec, Arc::new(Lg1::default()))
    }

    /// A cache for `spec` sharing an existing two-level memo.
    pub fn with_memo(spec: &StratumSpec, memo: Arc<Lg1>) -> Self {
        let d = usize::try_from(spec.dim().max(0)).unwrap_or(0);
        BoundaryCache { spec: spec.clone(), memo, lists: (0..=d).map(|_| OnceLock::new()).collect() }
    }

    /// The ambient stratum.
    pub fn spec(&self) -> &StratumSpec {
        &self.spec
    }

    /// The shared two-level memo.
    pub fn memo(&self) -> &Arc<Lg1> {
        &self.memo
    }

    /// Largest possible number of levels below zero (the dimension).
    pub fn max_levels(&self) -> usize {
        self.lists.len() - 1
    }

    /// The graphs with `levels` levels below zero (`0` gives the trivial
    /// graph alone). Empty beyond the dimension.
    pub fn lg(&self, levels: usize) -> Result<&GraphList, GraphError> {
        static EMPTY: OnceLock<GraphList> = OnceLock::new();
        if levels >= self.lists.len() {
            return Ok(EMPTY.get_or_init(GraphList::default));
        }
        self.lists[levels].get_or_init(|| self.build(levels)).as_ref().map_err(Clone::clone)
    }

    fn build(&self, levels: usize) -> Result<GraphList, GraphError> {
        let canon: Vec<LevelGraph> = match levels {
            0 => vec![LevelGraph::trivial(&self.spec).canonical().graph],
            1 => self.memo.get(&self.spec).as_ref().clone(),
            _ => {
                let prev = self.lg(levels - 1)?;
                let mut set = BTreeSet::new();
                for info in &prev.graphs {
                    for level in &info.levels {
                        for inner in self.memo.get(&level.spec).iter() {
                            let glued = info.graph.glue(level, inner)?;
                            let all = LevelStratum::all(&glued.graph, &self.spec);
                            if self.memo.realizability().check(&glued.graph, &self.spec, &all).is_ok() {
                                set.insert(glued.graph.canonical().graph);
                            }
                        }
                    }
                }
                set.into_iter().collect()
            }
        };
        let two_level = if levels >= 2 { Some(self.lg(1)?) } else { None };
        let mut infos = Vec::with_capacity(canon.len());
        for g in canon {
            let mut info = GraphInfo::new(g, &self.spec)?;
            if levels >= 2 {
                let list = two_level.expect("two-level list");
                for i in 1..=levels {
                    let d = info.graph.delta(i);
                    let idx = list.find_any(&d).ok_or_else(|| {
                        GraphError::Consistency(format!("undegeneration {i} of {} is not a boundary divisor", info.graph.describe()))
                    })?;
                    info.profile.push(idx);
                }
            } else if levels == 1 {
                info.profile = vec![usize::MAX];
            }
            infos.push(info);
        }
        if levels == 1 {
            for (i, info) in infos.iter_mut().enumerate() {
                info.profile = vec![i];
            }
        }
        Ok(GraphList::new(infos))
    }
}
