use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use strata::{Point, StratumSpec};

/// A vertex: a component of a level of the boundary curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    /// Index of the ambient connected component the vertex belongs to.
    pub comp: usize,
    /// Genus of the vertex.
    pub genus: u32,
    /// Depth: `0` is the top level, depth `i` is level `-i`.
    pub depth: usize,
}

/// A labelled leg (marked point of the ambient stratum) attached to a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Leg {
    /// The ambient marked point.
    pub point: Point,
    /// The vertex carrying it.
    pub vertex: usize,
    /// Its order.
    pub order: i64,
}

/// An edge from an upper vertex to a strictly lower vertex with enhancement
/// `kappa >= 1`. The upper end is a zero of order `kappa - 1`, the lower end
/// a pole of order `-kappa - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    /// Upper vertex.
    pub top: usize,
    /// Lower vertex.
    pub bottom: usize,
    /// Enhancement.
    pub kappa: u64,
}

/// An enhanced level graph without horizontal edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelGraph {
    /// Vertices.
    pub vertices: Vec<Vertex>,
    /// Legs, sorted by point.
    pub legs: Vec<Leg>,
    /// Edges.
    pub edges: Vec<Edge>,
}

/// Result of canonical relabelling.
#[derive(Debug, Clone)]
pub struct Canonical {
    /// The canonical graph.
    pub graph: LevelGraph,
    /// `vertex_map[old] = new`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[old] = new`.
    pub edge_map: Vec<usize>,
    /// Number of vertex permutations that are automorphisms.
    pub vertex_automorphisms: u64,
}

impl LevelGraph {
    /// The one-level graph with one vertex per ambient component.
    pub fn trivial(spec: &StratumSpec) -> Self {
        let vertices =
            spec.components.iter().enumerate().map(|(c, comp)| Vertex { comp: c, genus: comp.genus, depth: 0 }).collect();
        let legs = spec.points().into_iter().map(|p| Leg { point: p, vertex: p.comp, order: spec.order(p) }).collect();
        LevelGraph { vertices, legs, edges: vec![] }
    }

    /// Number of levels below zero (`L`).
    pub fn levels_below(&self) -> usize {
        self.vertices.iter().map(|v| v.depth).max().unwrap_or(0)
    }

    /// Vertex indices at a depth, ascending.
    pub fn vertices_at(&self, depth: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].depth == depth).collect()
    }

    /// Whether an edge crosses passage `p` (between depths `p-1` and `p`).
    pub fn crosses(&self, e: usize, p: usize) -> bool {
        let ed = &self.edges[e];
        self.vertices[ed.top].depth < p && self.vertices[ed.bottom].depth >= p
    }

    /// Sum of orders of legs and edge ends at a vertex.
    pub fn vertex_degree(&self, v: usize) -> i64 {
        let legs: i64 = self.legs.iter().filter(|l| l.vertex == v).map(|l| l.order).sum();
        let ends: i64 = self
            .edges
            .iter()
            .map(|e| {
                let k = e.kappa as i64;
                (if e.top == v { k - 1 } else { 0 }) + (if e.bottom == v { -k - 1 } else { 0 })
            })
            .sum();
        legs + ends
    }

    /// Number of special points (legs and edge ends) at a vertex.
    pub fn valence(&self, v: usize) -> usize {
        self.legs.iter().filter(|l| l.vertex == v).count()
            + self.edges.iter().filter(|e| e.top == v || e.bottom == v).count()
    }

    /// Checks the structural invariants against the ambient stratum.
    pub fn check_invariants(&self, ambient: &StratumSpec) -> Result<(), String> {
        let points = ambient.points();
        if self.legs.len() != points.len() {
            return Err(format!("{} legs for {} marked points", self.legs.len(), points.len()));
        }
        for (leg, p) in self.legs.iter().zip(&points) {
            if leg.point != *p || leg.order != ambient.order(*p) {
                return Err(format!("leg {} does not match the ambient points", leg.point));
            }
            if self.vertices[leg.vertex].comp != p.comp {
                return Err(format!("leg {} on a vertex of another component", leg.point));
            }
        }
        for e in &self.edges {
            let (t, b) = (&self.vertices[e.top], &self.vertices[e.bottom]);
            if t.depth >= b.depth || e.kappa == 0 {
                return Err("edge not strictly descending with positive enhancement".into());
            }
            if t.comp != b.comp {
                return Err("edge joins different ambient components".into());
            }
        }
        for (v, vx) in self.vertices.iter().enumerate() {
            let expected = 2 * i64::from(vx.genus) - 2;
            if self.vertex_degree(v) != expected {
                return Err(format!("vertex {v}: degree {} != 2g-2 = {expected}", self.vertex_degree(v)));
            }
            if expected + self.valence(v) as i64 <= 0 {
                return Err(format!("vertex {v} is unstable"));
            }
        }
        let lmax = self.levels_below();
        for d in 0..=lmax {
            if self.vertices_at(d).is_empty() {
                return Err(format!("depth {d} is empty"));
            }
        }
        // Per ambient component: connected, with the right total genus.
        for (c, comp) in ambient.components.iter().enumerate() {
            let vs: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.vertices[v].comp == c).collect();
            if vs.is_empty() {
                return Err(format!("component {c} has no vertex"));
            }
            let mut uf = UnionFind::new(self.vertices.len());
            let mut ecount = 0;
            for e in self.edges.iter().filter(|e| self.vertices[e.top].comp == c) {
                uf.union(e.top, e.bottom);
                ecount += 1;
            }
            if vs.iter().any(|&v| uf.find(v) != uf.find(vs[0])) {
                return Err(format!("component {c} is disconnected"));
            }
            let gsum: i64 = vs.iter().map(|&v| i64::from(self.vertices[v].genus)).sum();
            let h1 = ecount as i64 - vs.len() as i64 + 1;
            if gsum + h1 != i64::from(comp.genus) {
                return Err(format!("component {c}: genus {gsum} + loops {h1} != {}", comp.genus));
            }
        }
        Ok(())
    }

    /// Canonical relabelling of vertices and edges.
    pub fn canonical(&self) -> Canonical {
        let n = self.vertices.len();
        let key = |v: usize| {
            let min_leg = self.legs.iter().filter(|l| l.vertex == v).map(|l| l.point).min();
            let mut inc: Vec<(u64, bool)> = self
                .edges
                .iter()
                .filter_map(|e| {
                    if e.top == v {
                        Some((e.kappa, false))
                    } else if e.bottom == v {
                        Some((e.kappa, true))
                    } else {
                        None
                    }
                })
                .collect();
            inc.sort_unstable();
            let vx = &self.vertices[v];
            (vx.depth, vx.comp, min_leg.is_none(), min_leg, vx.genus, inc)
        };
        let keys: Vec<_> = (0..n).map(key).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        // Classes of interchangeable (legless, equal-key) vertices.
        let mut classes: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i + 1;
            while j < n && keys[order[j]] == keys[order[i]] {
                j += 1;
            }
            if j - i > 1 {
                classes.push((i, j));
            }
            i = j;
        }
        let encode = |ord: &[usize]| -> Vec<(usize, usize, u64)> {
            let mut inv = vec![0; n];
            for (pos, &v) in ord.iter().enumerate() {
                inv[v] = pos;
            }
            let mut es: Vec<(usize, usize, u64)> = self.edges.iter().map(|e| (inv[e.top], inv[e.bottom], e.kappa)).collect();
            es.sort_unstable();
            es
        };
        let mut best_ord = order.clone();
        let mut best_enc = encode(&order);
        let mut ties = 0u64;
        let mut cur = order.clone();
        permute_classes(&mut cur, &classes, 0, &mut |ord| {
            let enc = encode(ord);
            match enc.cmp(&best_enc) {
                std::cmp::Ordering::Less => {
                    best_enc = enc;
                    best_ord = ord.to_vec();
                    ties = 1;
                }
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Greater => {}
            }
        });
        let mut vertex_map = vec![0; n];
        for (pos, &v) in best_ord.iter().enumerate() {
            vertex_map[v] = pos;
        }
        let vertices: Vec<Vertex> = best_ord.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut legs: Vec<Leg> =
            self.legs.iter().map(|l| Leg { point: l.point, vertex: vertex_map[l.vertex], order: l.order }).collect();
        legs.sort();
        let mut eidx: Vec<usize> = (0..self.edges.len()).collect();
        let mapped: Vec<(usize, usize, u64)> =
            self.edges.iter().map(|e| (vertex_map[e.top], vertex_map[e.bottom], e.kappa)).collect();
        eidx.sort_by(|&a, &b| mapped[a].cmp(&mapped[b]));
        let mut edge_map = vec![0; self.edges.len()];
        for (pos, &e) in eidx.iter().enumerate() {
            edge_map[e] = pos;
        }
        let edges = eidx.iter().map(|&e| Edge { top: mapped[e].0, bottom: mapped[e].1, kappa: mapped[e].2 }).collect();
        Canonical { graph: LevelGraph { vertices, legs, edges }, vertex_map, edge_map, vertex_automorphisms: ties }
    }

    /// Order of the automorphism group fixing all legs and preserving levels,
    /// genera and enhancements.
    pub fn automorphism_order(&self) -> u64 {
        let c = self.canonical();
        let mut groups: BTreeMap<(usize, usize, u64), u64> = BTreeMap::new();
        for e in &c.graph.edges {
            *groups.entry((e.top, e.bottom, e.kappa)).or_default() += 1;
        }
        let edge_perms: u64 = groups.values().map(|&m| (1..=m).product::<u64>()).product();
        c.vertex_automorphisms * edge_perms
    }

    /// The graph with all depths shifted so that levels are `0..=L` and none
    /// is empty.
    pub fn normalize_depths(&mut self) {
        let mut used: Vec<usize> = self.vertices.iter().map(|v| v.depth).collect();
        used.sort_unstable();
        used.dedup();
        for v in &mut self.vertices {
            v.depth = used.binary_search(&v.depth).expect("depth present");
        }
    }

    /// A compact human-readable description.
    pub fn describe(&self) -> String {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let legs: Vec<String> =
                    self.legs.iter().filter(|l| l.vertex == i).map(|l| format!("{}", l.order)).collect();
                format!("v{i}[c{} g{} L{} ({})]", v.comp, v.genus, -(v.depth as i64), legs.join(","))
            })
            .collect();
        let es: Vec<String> = self.edges.iter().map(|e| format!("v{}->v{}:{}", e.top, e.bottom, e.kappa)).collect();
        format!("{} | {}", vs.join(" "), es.join(" "))
    }
}

fn permute_classes(cur: &mut Vec<usize>, classes: &[(usize, usize)], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == classes.len() {
        f(cur);
        return;
    }
    let (a, b) = classes[k];
    heap_permute(cur, a, b, b - a, &mut |c: &mut Vec<usize>| permute_classes(c, classes, k + 1, f));
}

/// Heap's algorithm over the slice `cur[a..b]`.
fn heap_permute(cur: &mut Vec<usize>, a: usize, b: usize, m: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if m <= 1 {
        f(cur);
        return;
    }
    for i in 0..m - 1 {
        heap_permute(cur, a, b, m - 1, f);
        if m % 2 == 0 {
            cur.swap(a + i, a + m - 1);
        } else {
            cur.swap(a, a + m - 1);
        }
    }
    heap_permute(cur, a, b, m - 1, f);
}

/// Minimal union-find over `0..n`.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
