//! Unit-length generators for the graph families studied here.
//!
//! Vertex numbering is fixed per family so generated Laplacians are
//! reproducible entry-for-entry:
//!
//! * [`circle`]: `i ~ i+1 (mod n)`.
//! * [`hexagonal_torus`]: `n+1` cycles of length `2m+2`; vertex `(a, t)` has
//!   index `a·(2m+2) + t`. The adjacency is
//!   `I_{n+1} ⊗ A(C_{2m+2}) + B_{n+1} ⊗ F_{2m+2} + (B ⊗ F)ᵀ` with `B` the
//!   cyclic shift and `F` holding ones at `(2k+1, 2k)`, so `(a, 2k+1)` is
//!   joined to `(a+1, 2k)`.
//! * [`mm_graph`]: 1-based labels `v_1..v_{4ab}` map to `0..4ab`: cycle `A`
//!   on `v_1..v_ab`, cycle `B` on `v_{ab+1}..v_{2ab}`, then `a` cycles `C_k`
//!   of length `2b`; `v_{2ab+2b(k−1)+2j−1}` joins `v_{a(j−1)+k}` and
//!   `v_{2ab+2b(k−1)+2j}` joins `v_{ab+a(j−1)+k}`.
//! * [`tt_graph`]: 3-Cayley tree of depth `a` in breadth-first order (root
//!   `0`, leaves last), then one chord per leaf: leaf `i` (1-based among the
//!   `M = 3·2^{a−1}` leaves) joins leaf `i+b` for odd `i` and leaf `i+c−1`
//!   for even `i`, indices mod `M` in `1..=M`.

use log::warn;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, MetrizedGraph};

fn unit(edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Edge> {
    edges.into_iter().map(|(a, b)| Edge::new(a, b, 1.0)).collect()
}

/// Cycle with `n ≥ 1` unit edges (`n = 1` is a loop, `n = 2` a double edge).
pub fn circle(n: usize) -> MetrizedGraph {
    assert!(n >= 1, "circle needs at least one vertex");
    MetrizedGraph::new(n, unit((0..n).map(|i| (i, (i + 1) % n)))).expect("cycle is connected")
}

/// Path with `edges ≥ 1` unit edges.
pub fn path(edges: usize) -> MetrizedGraph {
    assert!(edges >= 1, "path needs at least one edge");
    MetrizedGraph::new(edges + 1, unit((0..edges).map(|i| (i, i + 1)))).expect("path is connected")
}

/// Complete graph `K_v`, `v ≥ 2`, unit edges.
pub fn complete(v: usize) -> MetrizedGraph {
    assert!(v >= 2, "complete graph needs at least two vertices");
    let edges = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j)));
    MetrizedGraph::new(v, unit(edges)).expect("complete graph is connected")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexTorusSpec {
    pub n: usize,
    pub m: usize,
}

impl HexTorusSpec {
    pub fn vertex_count(&self) -> usize {
        2 * (self.n + 1) * (self.m + 1)
    }

    pub fn edge_count(&self) -> usize {
        3 * (self.n + 1) * (self.m + 1)
    }
}

/// Hexagonal torus `H(n, m)`: `2(n+1)(m+1)` vertices, cubic. Small
/// parameters (`n = 0` or `m = 0`) give parallel edges.
pub fn hexagonal_torus(n: usize, m: usize) -> Result<MetrizedGraph> {
    let blocks = n + 1;
    let len = 2 * m + 2;
    let mut edges = Vec::with_capacity(3 * blocks * (m + 1));
    for a in 0..blocks {
        for t in 0..len {
            edges.push((a * len + t, a * len + (t + 1) % len));
        }
        let next = (a + 1) % blocks;
        for k in 0..=m {
            edges.push((a * len + 2 * k + 1, next * len + 2 * k));
        }
    }
    MetrizedGraph::new(blocks * len, unit(edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MMSpec {
    pub a: usize,
    pub b: usize,
}

/// `MM(a, b)`: `4ab` vertices, `6ab` edges, cubic. Intended for `a, b > 2`;
/// `a = 2` or `b = 2` is accepted with a warning.
pub fn mm_graph(a: usize, b: usize) -> Result<MetrizedGraph> {
    if a < 2 || b < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "MM({a},{b}) needs a, b >= 2"
        )));
    }
    if a == 2 || b == 2 {
        warn!("MM({a},{b}): parameters outside a, b > 2");
    }
    let ab = a * b;
    // 1-based label -> index
    let v = |label: usize| label - 1;
    let mut edges = Vec::with_capacity(6 * ab);
    for i in 0..ab {
        edges.push((i, (i + 1) % ab));
        edges.push((ab + i, ab + (i + 1) % ab));
    }
    for k in 1..=a {
        let base = 2 * ab + 2 * b * (k - 1);
        for t in 0..2 * b {
            edges.push((base + t, base + (t + 1) % (2 * b)));
        }
        for j in 1..=b {
            edges.push((v(base + 2 * j - 1), v(a * (j - 1) + k)));
            edges.push((v(base + 2 * j), v(ab + a * (j - 1) + k)));
        }
    }
    MetrizedGraph::new(4 * ab, unit(edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TTSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl TTSpec {
    pub fn vertex_count(&self) -> usize {
        3 * (1 << self.a) - 2
    }

    pub fn leaf_count(&self) -> usize {
        3 * (1 << (self.a - 1))
    }
}

/// `TT(a, b, c)`: a 3-Cayley tree with `3·2^a − 2` vertices whose leaves are
/// joined by chords. `b` and `c` must differ in parity; chord rules that
/// produce a loop, a repeated edge, or a non-cubic graph are rejected.
pub fn tt_graph(a: usize, b: usize, c: usize) -> Result<MetrizedGraph> {
    if a == 0 || b == 0 || c == 0 || a > 30 {
        return Err(Error::ParameterOutOfRange(format!(
            "TT({a},{b},{c}) needs positive parameters and a <= 30"
        )));
    }
    if b % 2 == c % 2 {
        return Err(Error::ParityViolation { b, c });
    }
    let spec = TTSpec { a, b, c };
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next = 1;
    for level in 0..a {
        let children = if level == 0 { 3 } else { 2 };
        let mut grown = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next));
                grown.push(next);
                next += 1;
            }
        }
        frontier = grown;
    }
    let v = next;
    debug_assert_eq!(v, spec.vertex_count());
    let leaves = spec.leaf_count();
    let inner = v - leaves;
    // leaf label in 1..=M -> vertex index
    let leaf = |label: usize| {
        let r = label % leaves;
        inner + if r == 0 { leaves } else { r } - 1
    };
    let mut seen = std::collections::HashSet::new();
    for i in 1..=leaves {
        let offset = if i % 2 == 1 { b } else { c - 1 };
        let (x, y) = (leaf(i), leaf(i + offset));
        if x == y {
            return Err(Error::DegenerateChord(format!("leaf {i} is joined to itself")));
        }
        if !seen.insert((x.min(y), x.max(y))) {
            return Err(Error::DegenerateChord(format!(
                "chord from leaf {i} repeats an existing edge"
            )));
        }
        edges.push((x, y));
    }
    let g = MetrizedGraph::new(v, unit(edges))?;
    if g.degrees().iter().any(|&d| d != 3) {
        return Err(Error::DegenerateChord(format!(
            "TT({a},{b},{c}) is not cubic"
        )));
    }
    Ok(g)
}

/// Random 2-edge-connected graph: a random Hamiltonian cycle plus `chords`
/// random extra edges (parallel edges possible), lengths uniform in
/// `[0.25, 2]`. For property tests.
pub fn random_bridgeless(v: usize, chords: usize, seed: u64) -> MetrizedGraph {
    assert!(v >= 3, "need at least three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..v).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<Edge> = (0..v)
        .map(|i| Edge::new(order[i], order[(i + 1) % v], rng.gen_range(0.25..2.0)))
        .collect();
    for _ in 0..chords {
        let a = rng.gen_range(0..v);
        let mut b = rng.gen_range(0..v - 1);
        if b >= a {
            b += 1;
        }
        edges.push(Edge::new(a, b, rng.gen_range(0.25..2.0)));
    }
    MetrizedGraph::new(v, edges).expect("contains a spanning cycle")
}

/// Random tree on `edges + 1` vertices with lengths uniform in `[0.25, 2]`.
pub fn random_tree(edges: usize, seed: u64) -> MetrizedGraph {
    assert!(edges >= 1, "need at least one edge");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let list = (1..=edges)
        .map(|i| Edge::new(rng.gen_range(0..i), i, rng.gen_range(0.25..2.0)))
        .collect();
    MetrizedGraph::new(edges + 1, list).expect("tree is connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplacian::DiscreteLaplacian;

    #[test]
    fn circle_shapes() {
        assert_eq!(circle(3).edge_count(), 3);
        assert!(circle(1).has_self_loops());
        assert!(circle(2).has_multi_edges());
    }

    #[test]
    fn complete_counts() {
        assert_eq!(complete(4).edge_count(), 6);
        let k2 = complete(2);
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(k2.structure_report().bridge_edge_ids, vec![0]);
    }

    #[test]
    fn hex_counts_and_structure() {
        for (n, m) in [(2, 1), (4, 4), (1, 3), (3, 0)] {
            let g = hexagonal_torus(n, m).unwrap();
            let spec = HexTorusSpec { n, m };
            assert_eq!(g.vertex_count(), spec.vertex_count());
            assert_eq!(g.edge_count(), spec.edge_count());
            assert_eq!(g.genus(), ((n + 1) * (m + 1) + 1) as i64);
            assert!(g.degrees().iter().all(|&d| d == 3));
        }
        let r = hexagonal_torus(4, 4).unwrap().structure_report();
        assert_eq!((r.vertex_count, r.edge_count), (50, 75));
        assert!(r.is_cubic && r.is_bridgeless());
    }

    #[test]
    fn hex_laplacian_matches_tensor_form() {
        // Build D − A directly from the Kronecker expression.
        let (n, m) = (3usize, 2usize);
        let (nb, len) = (n + 1, 2 * m + 2);
        let shift = |k: usize| -> nalgebra::DMatrix<f64> {
            nalgebra::DMatrix::from_fn(k, k, |i, j| if j == (i + 1) % k { 1.0 } else { 0.0 })
        };
        let f = nalgebra::DMatrix::from_fn(len, len, |i, j| if i % 2 == 1 && j + 1 == i { 1.0 } else { 0.0 });
        let c = shift(len) + shift(len).transpose();
        let id = nalgebra::DMatrix::<f64>::identity(nb, nb);
        let bf = shift(nb).kronecker(&f);
        let adj = id.kronecker(&c) + &bf + bf.transpose();
        let lap = nalgebra::DMatrix::<f64>::identity(nb * len, nb * len) * 3.0 - adj;
        let built = DiscreteLaplacian::build(&hexagonal_torus(n, m).unwrap());
        assert_eq!(built.matrix(), &lap);
    }

    #[test]
    fn mm_counts() {
        for (a, b) in [(4, 2), (3, 3), (5, 5)] {
            let g = mm_graph(a, b).unwrap();
            assert_eq!(g.vertex_count(), 4 * a * b);
            assert_eq!(g.edge_count(), 6 * a * b);
            assert!(g.degrees().iter().all(|&d| d == 3));
            assert!(g.is_adequate());
        }
        assert!(matches!(mm_graph(1, 5), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn tt_counts() {
        let g = tt_graph(3, 3, 2).unwrap();
        assert_eq!(g.vertex_count(), 22);
        assert_eq!(g.edge_count(), 33);
        let g = tt_graph(6, 9, 4).unwrap();
        assert_eq!(g.vertex_count(), 190);
        assert!(g.structure_report().is_bridgeless());
        assert_eq!(TTSpec { a: 13, b: 1, c: 2 }.vertex_count(), 24574);
        assert_eq!(TTSpec { a: 14, b: 1, c: 2 }.vertex_count(), 49150);
    }

    #[test]
    fn tt_errors() {
        assert_eq!(tt_graph(3, 3, 3).unwrap_err(), Error::ParityViolation { b: 3, c: 3 });
        // 12 leaves; b = 12 maps every odd leaf onto itself.
        assert!(matches!(tt_graph(3, 12, 1), Err(Error::DegenerateChord(_))));
        // b = 6: leaf i -> i+6 -> i+12 = i repeats the chord.
        assert!(matches!(tt_graph(3, 6, 1), Err(Error::DegenerateChord(_))));
    }

    #[test]
    fn smallest_member_is_k4() {
        // Root with three leaves; the chords close the leaves into a triangle.
        let g = tt_graph(1, 1, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        assert!(g.is_adequate());
    }

    #[test]
    fn random_helpers() {
        let g = random_bridgeless(12, 6, 3);
        assert!(g.structure_report().is_bridgeless());
        assert_eq!(g, random_bridgeless(12, 6, 3));
        let t = random_tree(9, 1);
        assert_eq!(t.genus(), 0);
    }
}
