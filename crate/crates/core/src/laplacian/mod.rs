//! Discrete Laplacian `L = D − A` (conductance `1/L_k` per edge) and its
//! Moore–Penrose pseudo-inverse.
//!
//! Two routes to `L⁺`:
//!
//! * dense: `(L + J/v)⁻¹ − J/v` via one Cholesky factorization (the matrix
//!   `L + J/v` is positive definite for a connected graph);
//! * spectral: `Σ vᵢvᵢᵀ/λᵢ` over the nonzero eigenpairs.
//!
//! The stochastic route in [`stochastic`] estimates only `tr(L⁺)`.

pub mod dump;
pub mod stochastic;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::sum::compensated_sum;

/// Largest vertex count handled by the dense route unless overridden.
pub const DEFAULT_DENSE_LIMIT: usize = 6_000;

/// Laplacian of an adequate vertex set of a metrized graph.
#[derive(Debug, Clone)]
pub struct DiscreteLaplacian {
    matrix: DMatrix<f64>,
    graph: MetrizedGraph,
    original_vertex_count: usize,
}

impl DiscreteLaplacian {
    /// Builds the Laplacian, inserting valence-2 points first if the graph
    /// has loops or parallel edges. Original vertices keep their indices.
    pub fn build(g: &MetrizedGraph) -> Self {
        if g.is_adequate() {
            Self::assemble(g.clone(), g.vertex_count())
        } else {
            let ad = g.make_adequate();
            Self::assemble(ad.graph, ad.original_vertex_count)
        }
    }

    /// Like [`build`](Self::build), but refuses before allocating when the
    /// adequate vertex set exceeds `limit`.
    pub fn build_limited(g: &MetrizedGraph, limit: usize) -> Result<Self> {
        let (graph, original) = if g.is_adequate() {
            (g.clone(), g.vertex_count())
        } else {
            let ad = g.make_adequate();
            (ad.graph, ad.original_vertex_count)
        };
        if graph.vertex_count() > limit {
            return Err(Error::TooLarge {
                vertices: graph.vertex_count(),
                limit,
                what: "the dense Laplacian",
            });
        }
        Ok(Self::assemble(graph, original))
    }

    /// Like [`build`](Self::build) but refuses non-adequate input.
    pub fn from_adequate(g: &MetrizedGraph) -> Result<Self> {
        if !g.is_adequate() {
            return Err(Error::NotAdequate);
        }
        Ok(Self::assemble(g.clone(), g.vertex_count()))
    }

    fn assemble(graph: MetrizedGraph, original_vertex_count: usize) -> Self {
        let v = graph.vertex_count();
        let mut m = DMatrix::zeros(v, v);
        for e in graph.edges() {
            let c = 1.0 / e.length;
            m[(e.a, e.b)] -= c;
            m[(e.b, e.a)] -= c;
        }
        for p in 0..v {
            let off = compensated_sum((0..v).filter(|&q| q != p).map(|q| m[(p, q)]));
            m[(p, p)] = -off;
        }
        Self {
            matrix: m,
            graph,
            original_vertex_count,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// The adequate graph the matrix was assembled from.
    pub fn graph(&self) -> &MetrizedGraph {
        &self.graph
    }

    pub fn original_vertex_count(&self) -> usize {
        self.original_vertex_count
    }

    /// Largest absolute row sum relative to the largest entry.
    pub fn row_sum_residual(&self) -> f64 {
        let scale = self.matrix.amax().max(f64::MIN_POSITIVE);
        self.matrix
            .row_iter()
            .map(|r| compensated_sum(r.iter().copied()).abs())
            .fold(0.0, f64::max)
            / scale
    }

    /// All eigenvalues in ascending order (dense symmetric solver).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PinvRoute {
    Dense,
    Spectral,
}

/// Dense symmetric, doubly centered `L⁺`.
#[derive(Debug, Clone)]
pub struct PseudoInverse {
    matrix: DMatrix<f64>,
    trace: f64,
    route: PinvRoute,
}

impl PseudoInverse {
    /// `(L + J/v)⁻¹ − J/v`.
    pub fn dense(lap: &DiscreteLaplacian) -> Result<Self> {
        let v = lap.dim();
        let shift = 1.0 / v as f64;
        let shifted = lap.matrix().map(|x| x + shift);
        let chol = shifted.cholesky().ok_or(Error::SingularBeyondNullspace)?;
        let mut inv = chol.inverse();
        inv.apply(|x| *x -= shift);
        Ok(Self::finish(inv, PinvRoute::Dense))
    }

    /// `Σ vᵢvᵢᵀ/λᵢ` over eigenpairs with `λᵢ` above the nullspace threshold.
    pub fn spectral(lap: &DiscreteLaplacian) -> Result<Self> {
        let v = lap.dim();
        let eig = SymmetricEigen::new(lap.matrix().clone());
        let threshold = nullspace_threshold(eig.eigenvalues.as_slice(), v);
        let mut zero_count = 0;
        let mut out = DMatrix::zeros(v, v);
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda.abs() <= threshold {
                zero_count += 1;
                continue;
            }
            let col = eig.eigenvectors.column(k);
            out.ger(1.0 / lambda, &col, &col, 1.0);
        }
        if zero_count != 1 {
            return Err(Error::SingularBeyondNullspace);
        }
        Ok(Self::finish(out, PinvRoute::Spectral))
    }

    fn finish(mut m: DMatrix<f64>, route: PinvRoute) -> Self {
        let v = m.nrows();
        for p in 0..v {
            for q in p + 1..v {
                let s = 0.5 * (m[(p, q)] + m[(q, p)]);
                m[(p, q)] = s;
                m[(q, p)] = s;
            }
        }
        let trace = compensated_sum((0..v).map(|p| m[(p, p)]));
        Self {
            matrix: m,
            trace,
            route,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn route(&self) -> PinvRoute {
        self.route
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// `l⁺_pq` without bounds checking beyond the matrix's own.
    #[inline]
    pub fn entry(&self, p: usize, q: usize) -> f64 {
        self.matrix[(p, q)]
    }

    fn check(&self, idx: &[usize]) -> Result<()> {
        let n = self.dim();
        match idx.iter().find(|&&i| i >= n) {
            Some(&index) => Err(Error::IndexOutOfRange {
                index,
                vertex_count: n,
            }),
            None => Ok(()),
        }
    }

    /// Effective resistance `r(p,q) = l⁺_pp − 2l⁺_pq + l⁺_qq`.
    pub fn resistance(&self, p: usize, q: usize) -> Result<f64> {
        self.check(&[p, q])?;
        Ok(self.resistance_unchecked(p, q))
    }

    #[inline]
    pub(crate) fn resistance_unchecked(&self, p: usize, q: usize) -> f64 {
        if p == q {
            return 0.0;
        }
        self.entry(p, p) - 2.0 * self.entry(p, q) + self.entry(q, q)
    }

    /// Voltage `j_p(q,s) = l⁺_pp − l⁺_pq − l⁺_ps + l⁺_qs`: potential at `q`
    /// for unit current entering at `s` and leaving at the ground `p`.
    pub fn voltage(&self, p: usize, q: usize, s: usize) -> Result<f64> {
        self.check(&[p, q, s])?;
        if p == q || p == s {
            return Ok(0.0);
        }
        Ok(self.entry(p, p) - self.entry(p, q) - self.entry(p, s) + self.entry(q, s))
    }

    /// Largest absolute row sum relative to `max(tr, 1)`.
    pub fn centering_residual(&self) -> f64 {
        self.matrix
            .row_iter()
            .map(|r| compensated_sum(r.iter().copied()).abs())
            .fold(0.0, f64::max)
            / self.trace.max(1.0)
    }

    /// Relative Frobenius residuals of `L L⁺ L = L` and `L⁺ L L⁺ = L⁺`.
    pub fn penrose_residuals(&self, lap: &DiscreteLaplacian) -> (f64, f64) {
        let l = lap.matrix();
        let p = &self.matrix;
        let first = (l * p * l - l).norm() / l.norm().max(f64::MIN_POSITIVE);
        let second = (p * l * p - p).norm() / p.norm().max(f64::MIN_POSITIVE);
        (first, second)
    }
}

/// Eigenvalues with magnitude at or below this are treated as the constant
/// nullspace.
fn nullspace_threshold(eigenvalues: &[f64], v: usize) -> f64 {
    let scale = eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    scale * (v as f64) * 1e-13
}

/// `tr(L⁺)` from the eigenvalues alone.
pub fn trace_spectral(lap: &DiscreteLaplacian) -> Result<f64> {
    let v = lap.dim();
    let ev = lap.eigenvalues();
    let threshold = nullspace_threshold(&ev, v);
    let zeros = ev.iter().filter(|x| x.abs() <= threshold).count();
    if zeros != 1 {
        return Err(Error::SingularBeyondNullspace);
    }
    Ok(compensated_sum(
        ev.iter().filter(|x| x.abs() > threshold).map(|x| 1.0 / x),
    ))
}

/// Residuals of the trace identities for resistances and voltages.
#[derive(Debug, Clone, Serialize)]
pub struct ResistanceSumDiagnostics {
    /// `max_p |Σ_q r(p,q) − (v·l⁺_pp + tr L⁺)|`.
    pub max_row_residual: f64,
    /// `|Σ_{p,q} r(p,q) − 2v·tr L⁺|`.
    pub total_residual: f64,
    /// `max |Σ_s j_s(p,q) − (tr L⁺ + v·l⁺_pq)|` over the checked pairs.
    pub max_voltage_residual: f64,
    pub voltage_pairs_checked: usize,
}

impl ResistanceSumDiagnostics {
    pub fn max_residual(&self) -> f64 {
        self.max_row_residual
            .max(self.total_residual)
            .max(self.max_voltage_residual)
    }
}

pub fn resistance_sum_checks(pinv: &PseudoInverse) -> ResistanceSumDiagnostics {
    let v = pinv.dim();
    let tr = pinv.trace();
    let vf = v as f64;
    let mut max_row: f64 = 0.0;
    let mut total = Vec::with_capacity(v);
    for p in 0..v {
        let row = compensated_sum((0..v).map(|q| pinv.resistance_unchecked(p, q)));
        max_row = max_row.max((row - (vf * pinv.entry(p, p) + tr)).abs());
        total.push(row);
    }
    let total_residual = (compensated_sum(total) - 2.0 * vf * tr).abs();

    let pairs: Vec<(usize, usize)> = if v <= 32 {
        (0..v).flat_map(|p| (0..v).map(move |q| (p, q))).collect()
    } else {
        (0..64).map(|k| (k * v / 64, (k * v / 64 * 7 + 3) % v)).collect()
    };
    let mut max_voltage: f64 = 0.0;
    for &(p, q) in &pairs {
        let sum = compensated_sum((0..v).map(|s| pinv.voltage(s, p, q).expect("in range")));
        max_voltage = max_voltage.max((sum - (tr + vf * pinv.entry(p, q))).abs());
    }
    ResistanceSumDiagnostics {
        max_row_residual: max_row,
        total_residual,
        max_voltage_residual: max_voltage,
        voltage_pairs_checked: pairs.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(v: usize) -> MetrizedGraph {
        let mut recs = Vec::new();
        for i in 0..v {
            for j in i + 1..v {
                recs.push((i, j, 1.0));
            }
        }
        MetrizedGraph::from_edge_list(&recs).unwrap()
    }

    fn cycle(n: usize) -> MetrizedGraph {
        let recs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
        MetrizedGraph::from_edge_list(&recs).unwrap()
    }

    #[test]
    fn triangle_and_path_laplacians() {
        let l = DiscreteLaplacian::build(&cycle(3));
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(l.matrix()[(p, q)], if p == q { 2.0 } else { -1.0 });
            }
        }
        let path = MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let l = DiscreteLaplacian::build(&path);
        let expect = [[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]];
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(l.matrix()[(p, q)], expect[p][q]);
            }
        }
        assert_eq!(l.row_sum_residual(), 0.0);
    }

    #[test]
    fn builds_on_adequate_vertex_set() {
        let two = MetrizedGraph::from_edge_list(&[(0, 1, 1.0), (0, 1, 1.0)]).unwrap();
        assert_eq!(DiscreteLaplacian::from_adequate(&two).unwrap_err(), Error::NotAdequate);
        let l = DiscreteLaplacian::build(&two);
        assert_eq!(l.dim(), 3);
        assert_eq!(l.original_vertex_count(), 2);
        let p = PseudoInverse::dense(&l).unwrap();
        // Two unit edges in parallel.
        assert!((p.resistance(0, 1).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn complete_graph_pseudo_inverse() {
        // Brute force: L⁺ of unit K_v is (I − J/v)/v.
        let l = DiscreteLaplacian::build(&complete(4));
        for pinv in [PseudoInverse::dense(&l).unwrap(), PseudoInverse::spectral(&l).unwrap()] {
            for p in 0..4 {
                for q in 0..4 {
                    let expect = if p == q { 3.0 / 16.0 } else { -1.0 / 16.0 };
                    assert!((pinv.entry(p, q) - expect).abs() < 1e-14);
                }
            }
            assert!((pinv.trace() - 0.75).abs() < 1e-14);
            assert!((pinv.resistance(0, 3).unwrap() - 0.5).abs() < 1e-14);
            assert!(pinv.centering_residual() < 1e-14);
        }
    }

    #[test]
    fn cycle_three_resistance_and_voltage() {
        let l = DiscreteLaplacian::build(&cycle(3));
        let p = PseudoInverse::dense(&l).unwrap();
        // Nonzero eigenvalues {3, 3}.
        assert!((p.trace() - 2.0 / 3.0).abs() < 1e-14);
        assert!((trace_spectral(&l).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((p.resistance(0, 1).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert_eq!(p.resistance(2, 2).unwrap(), 0.0);
        // Unit current 2 -> 0: the path via 1 carries 1/3, so j_0(1,2) = 1/3.
        assert!((p.voltage(0, 1, 2).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(p.voltage(0, 0, 2).unwrap(), 0.0);
        assert!((p.voltage(0, 1, 1).unwrap() - p.resistance(0, 1).unwrap()).abs() < 1e-15);
        assert!(matches!(p.resistance(0, 3), Err(Error::IndexOutOfRange { index: 3, .. })));
        assert!(p.voltage(5, 0, 0).is_err());
    }

    #[test]
    fn sum_identities_on_complete_graph() {
        let l = DiscreteLaplacian::build(&complete(4));
        let p = PseudoInverse::dense(&l).unwrap();
        let d = resistance_sum_checks(&p);
        assert!(d.max_residual() < 1e-13, "{d:?}");
        assert_eq!(d.voltage_pairs_checked, 16);
    }

    #[test]
    fn single_vertex() {
        let l = DiscreteLaplacian::build(&MetrizedGraph::point());
        let p = PseudoInverse::dense(&l).unwrap();
        assert_eq!(p.trace(), 0.0);
        assert_eq!(resistance_sum_checks(&p).max_residual(), 0.0);
    }

    #[test]
    fn penrose_identities() {
        let g = MetrizedGraph::from_edge_list(&[
            (0, 1, 0.3),
            (1, 2, 1.7),
            (2, 3, 0.9),
            (3, 0, 2.2),
            (0, 2, 0.4),
            (3, 4, 1.1),
        ])
        .unwrap();
        let l = DiscreteLaplacian::build(&g);
        let dense = PseudoInverse::dense(&l).unwrap();
        let spectral = PseudoInverse::spectral(&l).unwrap();
        let (a, b) = dense.penrose_residuals(&l);
        assert!(a < 1e-12 && b < 1e-12);
        let diff = (dense.matrix() - spectral.matrix()).amax() / dense.matrix().amax();
        assert!(diff < 1e-12);
    }
}
