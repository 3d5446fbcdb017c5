use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use super::MetrizedGraph;

/// Above this many vertices the global min-cut is not attempted.
pub const EDGE_CONNECTIVITY_LIMIT: usize = 10_000;

/// Combinatorial summary of a metrized graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub genus: i64,
    /// `Some(r)` when every vertex has valence `r`.
    pub regular_degree: Option<usize>,
    pub is_cubic: bool,
    pub bridge_edge_ids: Vec<usize>,
    /// `None` when skipped (more than [`EDGE_CONNECTIVITY_LIMIT`] vertices)
    /// or undefined (a single vertex).
    pub edge_connectivity: Option<usize>,
    pub has_self_loops: bool,
    pub has_multi_edges: bool,
}

impl StructureReport {
    pub fn compute(g: &MetrizedGraph) -> Self {
        let degrees = g.degrees();
        let regular_degree = degrees
            .first()
            .copied()
            .filter(|&d| degrees.iter().all(|&x| x == d));
        let edge_connectivity = if g.vertex_count() <= EDGE_CONNECTIVITY_LIMIT {
            edge_connectivity(g)
        } else {
            None
        };
        Self {
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            genus: g.genus(),
            regular_degree,
            is_cubic: regular_degree == Some(3),
            bridge_edge_ids: bridges(g),
            edge_connectivity,
            has_self_loops: g.has_self_loops(),
            has_multi_edges: g.has_multi_edges(),
        }
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridge_edge_ids.is_empty()
    }
}

/// Bridge edge ids in increasing order (Tarjan low-link, iterative).
/// Parallel edges are never bridges because the parent edge is skipped by id,
/// not by endpoint.
pub fn bridges(g: &MetrizedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let inc = g.incidence();
    let edges = g.edges();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter it, next incidence position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        while let Some(&mut (u, parent_edge, ref mut pos)) = stack.last_mut() {
            if *pos < inc[u].len() {
                let id = inc[u][*pos];
                *pos += 1;
                if id == parent_edge || edges[id].is_loop() {
                    continue;
                }
                let w = edges[id].other(u).expect("incident edge");
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, id, 0));
                } else {
                    low[u] = low[u].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > order[p] {
                        out.push(parent_edge);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Global minimum edge cut with unit capacity per edge (Stoer–Wagner with a
/// lazy binary heap). `None` for a single vertex.
pub fn edge_connectivity(g: &MetrizedGraph) -> Option<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let mut adj: Vec<HashMap<usize, u64>> = vec![HashMap::new(); n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        *adj[e.a].entry(e.b).or_default() += 1;
        *adj[e.b].entry(e.a).or_default() += 1;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    let mut weight = vec![0u64; n];
    let mut added = vec![false; n];
    while active.len() > 1 {
        for &v in &active {
            weight[v] = 0;
            added[v] = false;
        }
        let mut heap = BinaryHeap::new();
        heap.push((0u64, Reverse(active[0])));
        let mut prev = usize::MAX;
        let mut last = usize::MAX;
        let mut last_weight = 0;
        let mut taken = 0;
        while taken < active.len() {
            let (w, Reverse(v)) = match heap.pop() {
                Some(item) => item,
                None => {
                    // Remaining vertices are unreachable from the merged set.
                    let v = *active.iter().find(|&&v| !added[v]).expect("unadded vertex");
                    (0, Reverse(v))
                }
            };
            if added[v] || w != weight[v] {
                continue;
            }
            added[v] = true;
            taken += 1;
            prev = last;
            last = v;
            last_weight = w;
            for (&u, &c) in &adj[v] {
                if !added[u] {
                    weight[u] += c;
                    heap.push((weight[u], Reverse(u)));
                }
            }
        }
        best = best.min(last_weight);
        if best == 0 {
            break;
        }
        // Merge `last` into `prev`.
        let merged = std::mem::take(&mut adj[last]);
        for (u, c) in merged {
            adj[u].remove(&last);
            if u != prev {
                *adj[prev].entry(u).or_default() += c;
                *adj[u].entry(prev).or_default() += c;
            }
        }
        active.retain(|&v| v != last);
    }
    Some(best as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> MetrizedGraph {
        let recs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
        MetrizedGraph::from_edge_list(&recs).unwrap()
    }

    #[test]
    fn circle_report() {
        let r = cycle(5).structure_report();
        assert_eq!(r.genus, 1);
        assert!(r.bridge_edge_ids.is_empty());
        assert_eq!(r.edge_connectivity, Some(2));
        assert_eq!(r.regular_degree, Some(2));
    }

    #[test]
    fn path_report() {
        let g = MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let r = g.structure_report();
        assert_eq!(r.genus, 0);
        assert_eq!(r.bridge_edge_ids, vec![0, 1]);
        assert_eq!(r.edge_connectivity, Some(1));
        assert_eq!(r.regular_degree, None);
    }

    #[test]
    fn parallel_edges_are_not_bridges() {
        let g = MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0)]).unwrap();
        let r = g.structure_report();
        assert_eq!(r.bridge_edge_ids, vec![2]);
        assert!(r.has_multi_edges);
        assert_eq!(r.edge_connectivity, Some(1));
    }

    #[test]
    fn two_triangles_joined_by_bridge() {
        let g = MetrizedGraph::from_edge_list(&[
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 0, 1.0),
            (2, 3, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (5, 3, 1.0),
        ])
        .unwrap();
        assert_eq!(bridges(&g), vec![3]);
        assert_eq!(edge_connectivity(&g), Some(1));
    }

    #[test]
    fn complete_graph_connectivity() {
        let mut recs = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                recs.push((i, j, 1.0));
            }
        }
        let g = MetrizedGraph::from_edge_list(&recs).unwrap();
        assert_eq!(edge_connectivity(&g), Some(5));
        assert!(bridges(&g).is_empty());
    }

    #[test]
    fn loops_ignored_by_cut_and_bridges() {
        let g = MetrizedGraph::from_edge_list(&[(0, 0, 1.0), (0, 1, 1.0)]).unwrap();
        assert_eq!(bridges(&g), vec![1]);
        assert_eq!(edge_connectivity(&g), Some(1));
        assert_eq!(edge_connectivity(&MetrizedGraph::point()), None);
    }
}
