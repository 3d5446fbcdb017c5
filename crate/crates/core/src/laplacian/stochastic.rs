//! Hutchinson estimate of `tr(L⁺)` for graphs too large for a dense
//! factorization.
//!
//! Each probe `z` is a centered Rademacher vector; `x = L⁺z` is obtained by
//! conjugate gradients on `(L + J/v)x = z`, which has the same solution
//! because `z ⟂ 1`. The estimate is the mean of `zᵀx` and the confidence
//! interval is the normal 95% interval from the sample standard error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::MetrizedGraph;
use crate::sum::compensated_sum;

/// Weighted adjacency lists of a Laplacian (self-loops dropped, parallel
/// conductances kept as separate entries).
#[derive(Debug, Clone)]
pub struct SparseLaplacian {
    diagonal: Vec<f64>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl SparseLaplacian {
    pub fn from_graph(g: &MetrizedGraph) -> Self {
        let v = g.vertex_count();
        let mut diagonal = vec![0.0; v];
        let mut neighbors = vec![Vec::new(); v];
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            let c = 1.0 / e.length;
            diagonal[e.a] += c;
            diagonal[e.b] += c;
            neighbors[e.a].push((e.b, c));
            neighbors[e.b].push((e.a, c));
        }
        Self { diagonal, neighbors }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// `y = (L + J/v) x`.
    fn apply_shifted(&self, x: &[f64], y: &mut [f64]) {
        let mean = compensated_sum(x.iter().copied()) / x.len() as f64;
        for (p, out) in y.iter_mut().enumerate() {
            let off: f64 = self.neighbors[p].iter().map(|&(q, c)| c * x[q]).sum();
            *out = self.diagonal[p] * x[p] - off + mean;
        }
    }

    /// Jacobi-preconditioned CG for `(L + J/v) x = b`. Returns the iteration
    /// count.
    pub fn solve(&self, b: &[f64], x: &mut [f64], rel_tol: f64, max_iter: usize) -> usize {
        let n = self.dim();
        let precond: Vec<f64> = self
            .diagonal
            .iter()
            .map(|&d| 1.0 / (d + 1.0 / n as f64))
            .collect();
        let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        x.iter_mut().for_each(|v| *v = 0.0);
        let mut r = b.to_vec();
        let mut z: Vec<f64> = r.iter().zip(&precond).map(|(a, m)| a * m).collect();
        let mut p = z.clone();
        let mut ap = vec![0.0; n];
        let b_norm = dot(b, b).sqrt().max(f64::MIN_POSITIVE);
        let mut rz = dot(&r, &z);
        for it in 0..max_iter {
            if dot(&r, &r).sqrt() <= rel_tol * b_norm {
                return it;
            }
            self.apply_shifted(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            for i in 0..n {
                z[i] = r[i] * precond[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        max_iter
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StochasticTrace {
    pub estimate: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub probes: usize,
    pub max_cg_iterations: usize,
}

pub fn hutchinson_trace(g: &MetrizedGraph, probes: usize, seed: u64) -> StochasticTrace {
    let lap = SparseLaplacian::from_graph(g);
    let n = lap.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(probes);
    let mut z = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut max_iter = 0;
    for _ in 0..probes.max(2) {
        for zi in z.iter_mut() {
            *zi = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        }
        let mean = compensated_sum(z.iter().copied()) / n as f64;
        z.iter_mut().for_each(|zi| *zi -= mean);
        let iters = lap.solve(&z, &mut x, 1e-10, 20 * n + 100);
        max_iter = max_iter.max(iters);
        samples.push(compensated_sum(z.iter().zip(&x).map(|(a, b)| a * b)));
    }
    let k = samples.len() as f64;
    let estimate = compensated_sum(samples.iter().copied()) / k;
    let var = compensated_sum(samples.iter().map(|s| (s - estimate).powi(2))) / (k - 1.0);
    let std_error = (var / k).sqrt();
    StochasticTrace {
        estimate,
        std_error,
        ci95: (estimate - 1.96 * std_error, estimate + 1.96 * std_error),
        probes: samples.len(),
        max_cg_iterations: max_iter,
    }
}
