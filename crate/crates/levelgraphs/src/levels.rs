use crate::graph::UnionFind;
use crate::LevelGraph;
use serde::{Deserialize, Serialize};
use strata::{Component, Point, ResiduePart, StratumSpec};

/// One end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    /// Edge index in the graph.
    pub edge: usize,
    /// `true` for the upper end (a zero of order `kappa - 1`), `false` for
    /// the lower end (a pole of order `-kappa - 1`).
    pub upper: bool,
}

/// Where a marked point of a level stratum comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointSource {
    /// A leg, i.e. a marked point of the ambient stratum.
    Leg(Point),
    /// An edge end.
    Half(HalfEdge),
}

/// The generalized stratum of one level of a graph, with the provenance of
/// each of its marked points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStratum {
    /// Depth of the level in the graph.
    pub depth: usize,
    /// The level stratum: one component per vertex at the depth.
    pub spec: StratumSpec,
    /// `vertices[c]` is the graph vertex of component `c`.
    pub vertices: Vec<usize>,
    /// `sources[c][j]` is the origin of point `(c, j)`.
    pub sources: Vec<Vec<PointSource>>,
}

impl LevelStratum {
    /// Builds the stratum of the level at `depth` of `graph`, inside the
    /// ambient stratum `ambient`.
    ///
    /// Orders: legs keep their order, an upper edge end has order
    /// `kappa - 1`, a lower end `-kappa - 1`. Points of a component are the
    /// legs in point order followed by the edge ends in edge order.
    ///
    /// Residue parts are induced through the auxiliary graph: every
    /// constrained ambient part becomes an auxiliary vertex above the top
    /// level, joined to the vertices carrying its points. For each connected
    /// component `Y` of the part of this auxiliary graph strictly above
    /// `depth` that carries no free pole, the poles at `depth` reached from
    /// `Y` (lower ends of edges leaving `Y`, and legs of the parts in `Y`)
    /// form one constrained part.
    pub fn new(graph: &LevelGraph, ambient: &StratumSpec, depth: usize) -> Self {
        let vertices = graph.vertices_at(depth);
        let mut components = Vec::with_capacity(vertices.len());
        let mut sources = Vec::with_capacity(vertices.len());
        let mut where_is = std::collections::HashMap::new();
        for (c, &v) in vertices.iter().enumerate() {
            let mut orders = Vec::new();
            let mut src = Vec::new();
            for leg in graph.legs.iter().filter(|l| l.vertex == v) {
                where_is.insert(PointSource::Leg(leg.point), Point::new(c, orders.len()));
                orders.push(leg.order);
                src.push(PointSource::Leg(leg.point));
            }
            for (e, edge) in graph.edges.iter().enumerate() {
                let k = edge.kappa as i64;
                if edge.top == v {
                    let s = PointSource::Half(HalfEdge { edge: e, upper: true });
                    where_is.insert(s, Point::new(c, orders.len()));
                    orders.push(k - 1);
                    src.push(s);
                } else if edge.bottom == v {
                    let s = PointSource::Half(HalfEdge { edge: e, upper: false });
                    where_is.insert(s, Point::new(c, orders.len()));
                    orders.push(-k - 1);
                    src.push(s);
                }
            }
            components.push(Component { genus: graph.vertices[v].genus, orders });
            sources.push(src);
        }

        // Auxiliary graph: real vertices 0..n, then one node per constrained part.
        let n = graph.vertices.len();
        let constrained = ambient.constrained_parts();
        let mut uf = UnionFind::new(n + constrained.len());
        for e in &graph.edges {
            if graph.vertices[e.bottom].depth < depth {
                uf.union(e.top, e.bottom);
            }
        }
        let mut leg_vertex = std::collections::HashMap::new();
        for leg in &graph.legs {
            leg_vertex.insert(leg.point, leg.vertex);
        }
        for (a, &k) in constrained.iter().enumerate() {
            for p in &ambient.residue_parts[k].points {
                let v = leg_vertex[p];
                if graph.vertices[v].depth < depth {
                    uf.union(n + a, v);
                }
            }
        }
        let mut free_pole_class = vec![false; n + constrained.len()];
        for leg in &graph.legs {
            if graph.vertices[leg.vertex].depth < depth && ambient.is_free_pole(leg.point) {
                let r = uf.find(leg.vertex);
                free_pole_class[r] = true;
            }
        }
        // Collect the reached poles per class, in a deterministic order.
        let mut parts: std::collections::BTreeMap<usize, Vec<Point>> = std::collections::BTreeMap::new();
        for (e, edge) in graph.edges.iter().enumerate() {
            if graph.vertices[edge.bottom].depth == depth && graph.vertices[edge.top].depth < depth {
                let r = uf.find(edge.top);
                if !free_pole_class[r] {
                    let p = where_is[&PointSource::Half(HalfEdge { edge: e, upper: false })];
                    parts.entry(r).or_default().push(p);
                }
            }
        }
        for (a, &k) in constrained.iter().enumerate() {
            let r = uf.find(n + a);
            if free_pole_class[r] {
                continue;
            }
            for p in &ambient.residue_parts[k].points {
                if graph.vertices[leg_vertex[p]].depth == depth {
                    parts.entry(r).or_default().push(where_is[&PointSource::Leg(*p)]);
                }
            }
        }
        let mut residue_parts: Vec<ResiduePart> = parts
            .into_values()
            .map(|mut points| {
                points.sort();
                ResiduePart { points, constrained: true }
            })
            .collect();
        residue_parts.sort();
        LevelStratum { depth, spec: StratumSpec { components, residue_parts }, vertices, sources }
    }

    /// All level strata of a graph, top to bottom.
    pub fn all(graph: &LevelGraph, ambient: &StratumSpec) -> Vec<LevelStratum> {
        (0..=graph.levels_below()).map(|d| LevelStratum::new(graph, ambient, d)).collect()
    }

    /// The level point with the given source, if present.
    pub fn point_of(&self, source: PointSource) -> Option<Point> {
        self.sources.iter().enumerate().find_map(|(c, srcs)| {
            srcs.iter().position(|s| *s == source).map(|j| Point::new(c, j))
        })
    }

    /// The source of a level point.
    pub fn source(&self, p: Point) -> PointSource {
        self.sources[p.comp][p.idx]
    }
}
