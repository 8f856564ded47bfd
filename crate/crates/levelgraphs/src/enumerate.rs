use crate::{Edge, Leg, LevelGraph, LevelStratum, Realizability, ResidueRealizability, Vertex};
use std::collections::BTreeSet;
use strata::{Point, StratumSpec};

/// A candidate restriction of a two-level graph to one ambient component.
#[derive(Debug, Clone)]
struct Piece {
    /// `(genus, depth)` per vertex.
    vertices: Vec<(u32, usize)>,
    /// `(point, local vertex)` per leg.
    legs: Vec<(Point, usize)>,
    /// `(top, bottom, kappa)` with local vertex indices.
    edges: Vec<(usize, usize, u64)>,
}

/// All two-level graphs without horizontal edges bounding `spec`, judged by
/// the default [`ResidueRealizability`], in canonical form and sorted.
pub fn enumerate_lg1(spec: &StratumSpec) -> Vec<LevelGraph> {
    enumerate_lg1_with(spec, &ResidueRealizability::new())
}

/// As [`enumerate_lg1`] with an explicit realizability predicate.
pub fn enumerate_lg1_with(spec: &StratumSpec, realizability: &dyn Realizability) -> Vec<LevelGraph> {
    let per_comp: Vec<Vec<Piece>> = (0..spec.components.len()).map(|c| component_pieces(spec, c)).collect();
    let mut found = BTreeSet::new();
    let mut choice = vec![0usize; per_comp.len()];
    loop {
        let pieces: Vec<&Piece> = choice.iter().enumerate().map(|(c, &i)| &per_comp[c][i]).collect();
        let occupied = |d: usize| pieces.iter().any(|p| p.vertices.iter().any(|v| v.1 == d));
        if occupied(0) && occupied(1) {
            let graph = assemble(spec, &pieces);
            let levels = LevelStratum::all(&graph, spec);
            if realizability.check(&graph, spec, &levels).is_ok() {
                found.insert(graph.canonical().graph);
            }
        }
        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return found.into_iter().collect();
            }
            choice[k] += 1;
            if choice[k] < per_comp[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn assemble(spec: &StratumSpec, pieces: &[&Piece]) -> LevelGraph {
    let mut vertices = Vec::new();
    let mut legs = Vec::new();
    let mut edges = Vec::new();
    for (c, piece) in pieces.iter().enumerate() {
        let base = vertices.len();
        vertices.extend(piece.vertices.iter().map(|&(genus, depth)| Vertex { comp: c, genus, depth }));
        legs.extend(piece.legs.iter().map(|&(p, v)| Leg { point: p, vertex: base + v, order: spec.order(p) }));
        edges.extend(piece.edges.iter().map(|&(t, b, kappa)| Edge { top: base + t, bottom: base + b, kappa }));
    }
    legs.sort();
    LevelGraph { vertices, legs, edges }
}

/// Candidate pieces of component `c`: a single vertex on either level, or a
/// connected bipartite split between the two levels.
fn component_pieces(spec: &StratumSpec, c: usize) -> Vec<Piece> {
    let genus = spec.components[c].genus;
    let points: Vec<Point> = (0..spec.components[c].orders.len()).map(|i| Point::new(c, i)).collect();
    let all_legs: Vec<(Point, usize)> = points.iter().map(|&p| (p, 0)).collect();
    let mut out = vec![
        Piece { vertices: vec![(genus, 0)], legs: all_legs.clone(), edges: vec![] },
        Piece { vertices: vec![(genus, 1)], legs: all_legs, edges: vec![] },
    ];
    let orders: Vec<i64> = points.iter().map(|&p| spec.order(p)).collect();
    for blocks in set_partitions(points.len()) {
        let k = blocks.len();
        let block_sums: Vec<i64> = blocks.iter().map(|b| b.iter().map(|&i| orders[i]).sum()).collect();
        for mask in 0..(1u32 << k) {
            // bit set = bottom block.
            let is_bottom = |b: usize| mask & (1 << b) != 0;
            for legless in 0..=genus as usize {
                let tops: Vec<usize> = (0..k).filter(|&b| !is_bottom(b)).collect();
                let bottoms: Vec<usize> = (0..k).filter(|&b| is_bottom(b)).collect();
                if bottoms.is_empty() || tops.len() + legless == 0 {
                    continue;
                }
                // Vertex order: top blocks, legless tops, bottom blocks.
                let mut leg_sum: Vec<i64> = tops.iter().map(|&b| block_sums[b]).collect();
                leg_sum.extend(std::iter::repeat_n(0, legless));
                let n_top = leg_sum.len();
                leg_sum.extend(bottoms.iter().map(|&b| block_sums[b]));
                let n_vert = leg_sum.len();
                let mut legs = Vec::with_capacity(points.len());
                for (v, &b) in tops.iter().chain(bottoms.iter()).enumerate() {
                    let v = if v < tops.len() { v } else { v + legless };
                    legs.extend(blocks[b].iter().map(|&i| (points[i], v)));
                }
                legs.sort();
                // Genus bounds per vertex.
                let mut lo = vec![0u32; n_vert];
                let mut hi = vec![genus; n_vert];
                let mut feasible = true;
                for v in 0..n_vert {
                    if v < n_top {
                        // 2g - 2 - legs >= 0.
                        let need = (leg_sum[v] + 2).max(0);
                        lo[v] = u32::try_from((need + 1) / 2).unwrap_or(u32::MAX);
                        if v >= tops.len() {
                            lo[v] = lo[v].max(1);
                        }
                    } else {
                        // legs - 2g + 2 >= 2 (at least one edge).
                        if leg_sum[v] < 0 {
                            feasible = false;
                        } else {
                            hi[v] = hi[v].min(u32::try_from(leg_sum[v] / 2).unwrap_or(u32::MAX));
                        }
                    }
                    if lo[v] > hi[v] {
                        feasible = false;
                    }
                }
                if !feasible {
                    continue;
                }
                for h1 in 0..=genus {
                    let budget = genus - h1;
                    let n_edges = h1 as usize + n_vert - 1;
                    for genera in compositions(budget, &lo, &hi) {
                        let sums: Vec<i64> = (0..n_vert)
                            .map(|v| {
                                let g2 = 2 * i64::from(genera[v]) - 2;
                                if v < n_top {
                                    g2 - leg_sum[v]
                                } else {
                                    leg_sum[v] - g2
                                }
                            })
                            .collect();
                        for matrix in bipartite_multigraphs(n_top, n_vert - n_top, n_edges, &sums[n_top..]) {
                            let edge_list: Vec<(usize, usize)> = matrix
                                .iter()
                                .flat_map(|&(t, b, m)| std::iter::repeat_n((t, n_top + b), m))
                                .collect();
                            for kappas in enhancements(&edge_list, &sums, n_top) {
                                out.push(Piece {
                                    vertices: (0..n_vert)
                                        .map(|v| (genera[v], usize::from(v >= n_top)))
                                        .collect(),
                                    legs: legs.clone(),
                                    edges: edge_list.iter().zip(&kappas).map(|(&(t, b), &k)| (t, b, k)).collect(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All set partitions of `0..n` as lists of blocks (restricted growth
/// strings); the empty set has the single partition with no blocks.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == rgs.len() {
            let mut blocks = vec![Vec::new(); if rgs.is_empty() { 0 } else { max + 1 }];
            for (j, &b) in rgs.iter().enumerate() {
                blocks[b].push(j);
            }
            out.push(blocks);
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            rec(i + 1, if i == 0 { 0 } else { max.max(b) }, rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// All vectors `x` with `lo <= x <= hi` componentwise and sum `total`.
fn compositions(total: u32, lo: &[u32], hi: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; lo.len()];
    fn rec(i: usize, left: u32, lo: &[u32], hi: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lo.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest_lo: u32 = lo[i + 1..].iter().sum();
        if left < lo[i] + rest_lo {
            return;
        }
        for x in lo[i]..=hi[i].min(left - rest_lo) {
            cur[i] = x;
            rec(i + 1, left - x, lo, hi, cur, out);
        }
    }
    rec(0, total, lo, hi, &mut cur, &mut out);
    out
}

/// Connected bipartite multigraphs between `n_top` and `n_bot` vertices with
/// `n_edges` edges, every vertex of positive degree and bottom vertex `b`
/// of degree at most `bot_sums[b] / 2`. Returned as `(top, bottom,
/// multiplicity)` lists.
fn bipartite_multigraphs(n_top: usize, n_bot: usize, n_edges: usize, bot_sums: &[i64]) -> Vec<Vec<(usize, usize, usize)>> {
    let cells: Vec<(usize, usize)> = (0..n_top).flat_map(|t| (0..n_bot).map(move |b| (t, b))).collect();
    let caps: Vec<usize> = bot_sums.iter().map(|&s| usize::try_from(s / 2).unwrap_or(0)).collect();
    if n_edges < n_top.max(n_bot) || caps.iter().sum::<usize>() < n_edges {
        return vec![];
    }
    let mut out = Vec::new();
    let mut mult = vec![0usize; cells.len()];
    let mut bot_deg = vec![0usize; n_bot];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        left: usize,
        cells: &[(usize, usize)],
        caps: &[usize],
        mult: &mut Vec<usize>,
        bot_deg: &mut Vec<usize>,
        n_top: usize,
        out: &mut Vec<Vec<(usize, usize, usize)>>,
    ) {
        if i == cells.len() {
            if left == 0 && connected_and_covering(cells, mult, n_top, bot_deg.len()) {
                out.push(cells.iter().zip(mult.iter()).filter(|(_, &m)| m > 0).map(|(&(t, b), &m)| (t, b, m)).collect());
            }
            return;
        }
        let b = cells[i].1;
        let max = left.min(caps[b] - bot_deg[b]);
        for m in 0..=max {
            mult[i] = m;
            bot_deg[b] += m;
            rec(i + 1, left - m, cells, caps, mult, bot_deg, n_top, out);
            bot_deg[b] -= m;
        }
        mult[i] = 0;
    }
    rec(0, n_edges, &cells, &caps, &mut mult, &mut bot_deg, n_top, &mut out);
    out
}

fn connected_and_covering(cells: &[(usize, usize)], mult: &[usize], n_top: usize, n_bot: usize) -> bool {
    let n = n_top + n_bot;
    let mut uf = crate::graph::UnionFind::new(n);
    let mut deg = vec![0usize; n];
    for (&(t, b), &m) in cells.iter().zip(mult) {
        if m > 0 {
            uf.union(t, n_top + b);
            deg[t] += m;
            deg[n_top + b] += m;
        }
    }
    deg.iter().all(|&d| d > 0) && (0..n).all(|v| uf.find(v) == uf.find(0))
}

/// All enhancement vectors on `edges` (pairs `(top, bottom)` with global
/// local indices) such that each top vertex `v` has `sum kappa = sums[v] +
/// deg(v)` and each bottom vertex `w` has `sum kappa = sums[w] - deg(w)`;
/// parallel edges carry non-decreasing enhancements.
fn enhancements(edges: &[(usize, usize)], sums: &[i64], n_top: usize) -> Vec<Vec<u64>> {
    let n = sums.len();
    let mut deg = vec![0i64; n];
    for &(t, b) in edges {
        deg[t] += 1;
        deg[b] += 1;
    }
    let mut remaining: Vec<i64> = (0..n).map(|v| if v < n_top { sums[v] + deg[v] } else { sums[v] - deg[v] }).collect();
    if remaining.iter().zip(&deg).any(|(&r, &d)| r < d) {
        return vec![];
    }
    let mut left_edges = deg.clone();
    let mut out = Vec::new();
    let mut cur = vec![0u64; edges.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        edges: &[(usize, usize)],
        remaining: &mut Vec<i64>,
        left_edges: &mut Vec<i64>,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if i == edges.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (t, b) = edges[i];
        let max_t = remaining[t] - (left_edges[t] - 1);
        let max_b = remaining[b] - (left_edges[b] - 1);
        let mut lo = 1i64;
        if i > 0 && edges[i - 1] == edges[i] {
            lo = cur[i - 1] as i64;
        }
        let mut hi = max_t.min(max_b);
        if left_edges[t] == 1 {
            lo = lo.max(remaining[t]);
            hi = hi.min(remaining[t]);
        }
        if left_edges[b] == 1 {
            lo = lo.max(remaining[b]);
            hi = hi.min(remaining[b]);
        }
        for k in lo..=hi {
            cur[i] = k as u64;
            remaining[t] -= k;
            remaining[b] -= k;
            left_edges[t] -= 1;
            left_edges[b] -= 1;
            rec(i + 1, edges, remaining, left_edges, cur, out);
            left_edges[t] += 1;
            left_edges[b] += 1;
            remaining[t] += k;
            remaining[b] += k;
        }
    }
    rec(0, edges, &mut remaining, &mut left_edges, &mut cur, &mut out);
    out
}
