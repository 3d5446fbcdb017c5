//! Metrized graphs: a finite connected multigraph whose edges carry positive
//! lengths.
//!
//! Vertices are dense `0..vertex_count` indices and an edge id is the
//! position of the edge in [`MetrizedGraph::edges`]. Self-loops and parallel
//! edges are representable; the discrete Laplacian needs an *adequate* vertex
//! set (no loops, no parallel edges), which [`MetrizedGraph::make_adequate`]
//! produces by inserting valence-2 points.

mod io;
mod structure;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::compensated_sum;

pub use io::{read_edge_list, read_edge_list_file, write_edge_list, write_edge_list_file};
pub use structure::{bridges, edge_connectivity, StructureReport, EDGE_CONNECTIVITY_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, length: f64) -> Self {
        Self { a, b, length }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.a == x {
            Some(self.b)
        } else if self.b == x {
            Some(self.a)
        } else {
            None
        }
    }
}

/// A connected metrized multigraph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetrizedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

/// Result of [`MetrizedGraph::make_adequate`].
///
/// The original vertices keep their indices `0..original_vertex_count`;
/// inserted valence-2 points are appended after them. `edge_origin[k]` is the
/// id of the original edge that adequate edge `k` was cut from.
#[derive(Debug, Clone, PartialEq)]
pub struct Adequation {
    pub graph: MetrizedGraph,
    pub original_vertex_count: usize,
    pub edge_origin: Vec<usize>,
}

impl MetrizedGraph {
    /// Builds a graph with an explicit vertex count. Fails if any length is
    /// not a positive finite number, an endpoint is out of range, or the
    /// graph is disconnected.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        for (id, edge) in edges.iter().enumerate() {
            if !(edge.length.is_finite() && edge.length > 0.0) {
                return Err(Error::NonPositiveLength {
                    edge: id,
                    length: edge.length,
                });
            }
            for x in [edge.a, edge.b] {
                if x >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        index: x,
                        vertex_count,
                    });
                }
            }
        }
        let graph = Self {
            vertex_count,
            edges,
            labels: None,
        };
        let components = graph.component_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(graph)
    }

    /// Builds a graph from `(a, b, length)` records; the vertex count is the
    /// largest index plus one.
    pub fn from_edge_list(records: &[(usize, usize, f64)]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let vertex_count = records.iter().map(|&(a, b, _)| a.max(b)).max().unwrap_or(0) + 1;
        let edges = records
            .iter()
            .map(|&(a, b, length)| Edge::new(a, b, length))
            .collect();
        Self::new(vertex_count, edges)
    }

    /// The one-point metrized graph (no edges, zero length).
    pub fn point() -> Self {
        Self {
            vertex_count: 1,
            edges: Vec::new(),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::ParameterOutOfRange(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::BadEdgeId(id))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// First Betti number `e - v + 1`.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertex_count as i64 + 1
    }

    pub fn total_length(&self) -> f64 {
        compensated_sum(self.edges.iter().map(|e| e.length))
    }

    /// Valence of each vertex; a self-loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    /// Incident edge ids per vertex (a self-loop is listed once).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            inc[e.a].push(id);
            if !e.is_loop() {
                inc[e.b].push(id);
            }
        }
        inc
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .any(|e| !seen.insert((e.a.min(e.b), e.a.max(e.b))))
    }

    pub fn is_adequate(&self) -> bool {
        !self.has_self_loops() && !self.has_multi_edges()
    }

    /// `Some(length)` when every edge has the same length to 1e-12 relative.
    pub fn common_edge_length(&self) -> Option<f64> {
        let first = self.edges.first()?.length;
        self.edges
            .iter()
            .all(|e| (e.length - first).abs() <= 1e-12 * first)
            .then_some(first)
    }

    fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertex_count;
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    /// Every length multiplied by `factor`.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::ParameterOutOfRange(format!(
                "scale factor {factor} must be positive"
            )));
        }
        let mut out = self.clone();
        for e in &mut out.edges {
            e.length *= factor;
        }
        Ok(out)
    }

    /// Rescales to total length 1.
    pub fn normalize(&self) -> Result<Self> {
        let total = self.total_length();
        if total <= 0.0 {
            return Err(Error::ZeroLength);
        }
        let mut out = self.clone();
        for e in &mut out.edges {
            e.length /= total;
        }
        Ok(out)
    }

    /// Splits edge `edge_id` at fraction `t` from its `a` endpoint. The edge
    /// keeps its id as the `(a, new)` piece; the `(new, b)` piece is appended.
    /// The new vertex gets index `vertex_count`.
    pub fn subdivide_edge(&self, edge_id: usize, t: f64) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::TOutOfRange(t));
        }
        let edge = *self.edge(edge_id)?;
        let mid = self.vertex_count;
        let mut out = self.clone();
        out.vertex_count += 1;
        let first = t * edge.length;
        out.edges[edge_id] = Edge::new(edge.a, mid, first);
        out.edges.push(Edge::new(mid, edge.b, edge.length - first));
        if let Some(labels) = &mut out.labels {
            labels.push(format!("sub{edge_id}"));
        }
        Ok(out)
    }

    /// Inserts valence-2 points until there are no self-loops and no parallel
    /// edges. A loop gets points at 1/3 and then halfway along the remainder
    /// (a triangle); each parallel copy beyond the first gets a midpoint.
    pub fn make_adequate(&self) -> Adequation {
        let mut graph = self.clone();
        let mut edge_origin: Vec<usize> = (0..self.edges.len()).collect();
        let mut seen = HashSet::new();
        for id in 0..self.edges.len() {
            let e = self.edges[id];
            if e.is_loop() {
                graph = graph.subdivide_edge(id, 1.0 / 3.0).expect("valid id");
                edge_origin.push(id);
                let remainder = graph.edges.len() - 1;
                graph = graph.subdivide_edge(remainder, 0.5).expect("valid id");
                edge_origin.push(id);
            } else if !seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                graph = graph.subdivide_edge(id, 0.5).expect("valid id");
                edge_origin.push(id);
            }
        }
        Adequation {
            graph,
            original_vertex_count: self.vertex_count,
            edge_origin,
        }
    }

    /// Glues `other` onto `self` by identifying `self`'s vertex `at_self`
    /// with `other`'s vertex `at_other`. Other's vertices are renumbered
    /// after self's, skipping the identified one.
    pub fn wedge(&self, at_self: usize, other: &Self, at_other: usize) -> Result<Self> {
        for (x, n) in [(at_self, self.vertex_count), (at_other, other.vertex_count)] {
            if x >= n {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    vertex_count: n,
                });
            }
        }
        let offset = self.vertex_count;
        let map = |x: usize| -> usize {
            match x.cmp(&at_other) {
                std::cmp::Ordering::Equal => at_self,
                std::cmp::Ordering::Less => offset + x,
                std::cmp::Ordering::Greater => offset + x - 1,
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge::new(map(e.a), map(e.b), e.length)),
        );
        Self::new(self.vertex_count + other.vertex_count - 1, edges)
    }

    pub fn structure_report(&self) -> StructureReport {
        StructureReport::compute(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MetrizedGraph {
        MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap()
    }

    #[test]
    fn builds_triangle_and_loop() {
        let g = triangle();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        let l = MetrizedGraph::from_edge_list(&[(0, 0, 1.0)]).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (1, 1));
        assert!(l.has_self_loops());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (2, 3, 1.0)]),
            Err(Error::Disconnected { components: 2 })
        );
        assert_eq!(MetrizedGraph::from_edge_list(&[]), Err(Error::EmptyGraph));
        assert!(matches!(
            MetrizedGraph::from_edge_list(&[(0, 1, 0.0)]),
            Err(Error::NonPositiveLength { edge: 0, .. })
        ));
        assert!(matches!(
            MetrizedGraph::from_edge_list(&[(0, 1, f64::NAN)]),
            Err(Error::NonPositiveLength { .. })
        ));
        assert!(matches!(
            MetrizedGraph::new(2, vec![Edge::new(0, 2, 1.0)]),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let n = triangle().normalize().unwrap();
        for e in n.edges() {
            assert!((e.length - 1.0 / 3.0).abs() < 1e-15);
        }
        let again = n.normalize().unwrap();
        assert_eq!(
            again.edges().iter().map(|e| e.length).collect::<Vec<_>>(),
            n.edges().iter().map(|e| e.length).collect::<Vec<_>>()
        );
        let two = MetrizedGraph::from_edge_list(&[(0, 1, 2.0), (1, 2, 6.0)])
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(two.edges()[0].length, 0.25);
        assert_eq!(two.edges()[1].length, 0.75);
        assert!(MetrizedGraph::point().normalize().is_err());
    }

    #[test]
    fn subdivide_circle() {
        let c = MetrizedGraph::from_edge_list(&[(0, 0, 1.0)]).unwrap();
        let s = c.subdivide_edge(0, 0.5).unwrap();
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edges()[0], Edge::new(0, 1, 0.5));
        assert_eq!(s.edges()[1], Edge::new(1, 0, 0.5));
        assert_eq!(c.subdivide_edge(0, 1.0), Err(Error::TOutOfRange(1.0)));
        assert_eq!(c.subdivide_edge(0, 0.0), Err(Error::TOutOfRange(0.0)));
        assert_eq!(c.subdivide_edge(3, 0.5), Err(Error::BadEdgeId(3)));
    }

    #[test]
    fn adequate_loop_becomes_triangle() {
        let l = MetrizedGraph::from_edge_list(&[(0, 0, 1.0)]).unwrap();
        let ad = l.make_adequate();
        assert!(ad.graph.is_adequate());
        assert_eq!(ad.graph.vertex_count(), 3);
        assert_eq!(ad.graph.edge_count(), 3);
        for e in ad.graph.edges() {
            assert!((e.length - 1.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(ad.edge_origin, vec![0, 0, 0]);
    }

    #[test]
    fn adequate_parallel_pair() {
        let g = MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let ad = g.make_adequate();
        assert_eq!(ad.graph.edges()[0], Edge::new(0, 1, 1.0));
        assert_eq!(ad.graph.edges()[1], Edge::new(1, 2, 0.5));
        assert_eq!(ad.graph.edges()[2], Edge::new(2, 0, 0.5));
        assert!(ad.graph.is_adequate());
    }

    #[test]
    fn adequate_is_identity_on_simple_graphs() {
        let g = triangle();
        assert_eq!(g.make_adequate().graph, g);
    }

    #[test]
    fn wedge_counts() {
        let t = triangle();
        let w = t.wedge(2, &t, 0).unwrap();
        assert_eq!(w.vertex_count(), 5);
        assert_eq!(w.edge_count(), 6);
        assert_eq!(w.genus(), 2);
    }
}
