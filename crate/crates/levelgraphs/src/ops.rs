use crate::graph::UnionFind;
use crate::{Edge, GraphError, HalfEdge, Leg, LevelGraph, LevelStratum, PointSource, Vertex};

/// The result of splitting one level of a graph by a two-level graph of its
/// level stratum, with the maps from the pieces into the result.
#[derive(Debug, Clone)]
pub struct Glued {
    /// The glued graph (not canonicalized).
    pub graph: LevelGraph,
    /// Vertex of the result for each vertex of the outer graph not at the
    /// split depth (`None` for vertices at that depth).
    pub vertex_from_outer: Vec<Option<usize>>,
    /// Vertex of the result for each vertex of the inner graph.
    pub vertex_from_inner: Vec<usize>,
    /// Edge of the result for each edge of the outer graph.
    pub edge_from_outer: Vec<usize>,
    /// Edge of the result for each edge of the inner graph.
    pub edge_from_inner: Vec<usize>,
}

impl LevelGraph {
    /// Splits the level at `depth` by `inner`, a two-level graph of the level
    /// stratum `level` (which must be `LevelStratum::new(self, _, depth)`).
    /// Deeper levels move down by one.
    pub fn glue(&self, level: &LevelStratum, inner: &LevelGraph) -> Result<Glued, GraphError> {
        let depth = level.depth;
        if inner.levels_below() != 1 {
            return Err(GraphError::Invalid("inner graph must have two levels".into()));
        }
        let mut vertices = Vec::new();
        let mut vertex_from_outer = vec![None; self.vertices.len()];
        for (v, vx) in self.vertices.iter().enumerate() {
            if vx.depth != depth {
                vertex_from_outer[v] = Some(vertices.len());
                let d = if vx.depth > depth { vx.depth + 1 } else { vx.depth };
                vertices.push(Vertex { comp: vx.comp, genus: vx.genus, depth: d });
            }
        }
        let mut vertex_from_inner = Vec::with_capacity(inner.vertices.len());
        for vx in &inner.vertices {
            let outer = level.vertices[vx.comp];
            vertex_from_inner.push(vertices.len());
            vertices.push(Vertex { comp: self.vertices[outer].comp, genus: vx.genus, depth: depth + vx.depth });
        }
        // Where each level point ended up.
        let mut half_target = std::collections::HashMap::new();
        let mut legs: Vec<Leg> = self
            .legs
            .iter()
            .filter_map(|l| vertex_from_outer[l.vertex].map(|v| Leg { point: l.point, vertex: v, order: l.order }))
            .collect();
        for leg in &inner.legs {
            let v = vertex_from_inner[leg.vertex];
            match level.source(leg.point) {
                PointSource::Leg(p) => legs.push(Leg { point: p, vertex: v, order: leg.order }),
                PointSource::Half(h) => {
                    half_target.insert(h, v);
                }
            }
        }
        legs.sort();
        let mut edges = Vec::with_capacity(self.edges.len() + inner.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            let end = |v: usize, upper: bool| -> Result<usize, GraphError> {
                match vertex_from_outer[v] {
                    Some(w) => Ok(w),
                    None => half_target
                        .get(&HalfEdge { edge: e, upper })
                        .copied()
                        .ok_or_else(|| GraphError::Consistency(format!("edge end {e} lost in gluing"))),
                }
            };
            edges.push(Edge { top: end(edge.top, true)?, bottom: end(edge.bottom, false)?, kappa: edge.kappa });
        }
        let edge_from_outer = (0..self.edges.len()).collect();
        let mut edge_from_inner = Vec::with_capacity(inner.edges.len());
        for edge in &inner.edges {
            edge_from_inner.push(edges.len());
            edges.push(Edge {
                top: vertex_from_inner[edge.top],
                bottom: vertex_from_inner[edge.bottom],
                kappa: edge.kappa,
            });
        }
        Ok(Glued {
            graph: LevelGraph { vertices, legs, edges },
            vertex_from_outer,
            vertex_from_inner,
            edge_from_outer,
            edge_from_inner,
        })
    }

    /// The undegeneration keeping exactly the passages in `keep` (each in
    /// `1..=L`): all other passages are contracted. Returns the graph (not
    /// canonicalized) and the vertex map.
    pub fn undegenerate_with_map(&self, keep: &[usize]) -> (LevelGraph, Vec<usize>) {
        let new_depth = |d: usize| keep.iter().filter(|&&p| p <= d).count();
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if new_depth(self.vertices[e.top].depth) == new_depth(self.vertices[e.bottom].depth) {
                uf.union(e.top, e.bottom);
            }
        }
        let mut root_index = std::collections::BTreeMap::new();
        let mut vmap = vec![0; n];
        for v in 0..n {
            let r = uf.find(v);
            let next = root_index.len();
            vmap[v] = *root_index.entry(r).or_insert(next);
        }
        let m = root_index.len();
        let mut genus = vec![0i64; m];
        let mut vcount = vec![0i64; m];
        let mut ecount = vec![0i64; m];
        let mut vertices = vec![Vertex { comp: 0, genus: 0, depth: 0 }; m];
        for (v, vx) in self.vertices.iter().enumerate() {
            genus[vmap[v]] += i64::from(vx.genus);
            vcount[vmap[v]] += 1;
            vertices[vmap[v]].comp = vx.comp;
            vertices[vmap[v]].depth = new_depth(vx.depth);
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let (t, b) = (vmap[e.top], vmap[e.bottom]);
            if t == b {
                ecount[t] += 1;
            } else {
                edges.push(Edge { top: t, bottom: b, kappa: e.kappa });
            }
        }
        for w in 0..m {
            let g = genus[w] + ecount[w] - vcount[w] + 1;
            vertices[w].genus = u32::try_from(g).expect("contracted genus is non-negative");
        }
        let mut legs: Vec<Leg> =
            self.legs.iter().map(|l| Leg { point: l.point, vertex: vmap[l.vertex], order: l.order }).collect();
        legs.sort();
        (LevelGraph { vertices, legs, edges }, vmap)
    }

    /// `delta_I`: the undegeneration keeping the passages in `keep`.
    pub fn undegenerate(&self, keep: &[usize]) -> LevelGraph {
        self.undegenerate_with_map(keep).0
    }

    /// `delta_i`: the two-level undegeneration keeping only passage `i`.
    pub fn delta(&self, i: usize) -> LevelGraph {
        self.undegenerate(&[i])
    }

    /// The undegeneration contracting only passage `i`, i.e. merging the
    /// levels at depths `i-1` and `i`.
    pub fn delta_complement(&self, i: usize) -> LevelGraph {
        let keep: Vec<usize> = (1..=self.levels_below()).filter(|&p| p != i).collect();
        self.undegenerate(&keep)
    }
}
