//! The tau constant `τ(Γ) = ¼∫_Γ (d/dx r(x,p))² dx` and related invariants.
//!
//! Three routes, all on an adequate vertex set with its pseudo-inverse:
//!
//! * [`tau_fixed_point`]: for a base vertex `p`,
//!   `τ = (1/12)Σ (L_i − r_i)²/L_i + (1/4)Σ (r(p_i,p) − r(q_i,p))²/L_i`
//!   where `r_i = r(p_i,q_i)`. The first summand is `L_i³/(L_i+R_i)²`
//!   rewritten through `r_i = L_iR_i/(L_i+R_i)` so that no division by
//!   `L_i − r_i` occurs. Bridges contribute `L_i/4`, all in the second term.
//! * [`tau_trace`]: the second term as
//!   `(1/4)[(4/v)tr(L⁺) + Σ (l⁺_{p_ip_i} − l⁺_{q_iq_i})²/L_i]`.
//! * [`tau_special`]: for `r`-regular equal-length graphs whose edges all
//!   have the same endpoint resistance,
//!   `τ = (ℓ/12)(1 − 2(v−1)/(rv))² + tr(L⁺)/v`.

mod bounds;
mod oracle;
mod special;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bridges, MetrizedGraph};
use crate::laplacian::{DiscreteLaplacian, PseudoInverse, DEFAULT_DENSE_LIMIT};
use crate::sum::{compensated_sum, CompensatedSum};

pub use bounds::{tau_bounds_check, BoundsReport};
pub use oracle::{tau_integral_oracle, ORACLE_MAX_VERTICES, ORACLE_MIN_MESH};
pub use special::{
    check_special_conditions, special_structure_constants, special_tau_terms, tau_special,
    IdentityCheck, SpecialConditionsReport, SpecialConstantsReport,
};

/// Relative tolerance used to flag a combinatorial non-bridge whose measured
/// endpoint resistance has collapsed onto its length.
const BRIDGE_COLLAPSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauMethod {
    FixedPoint,
    Trace,
    Special,
    Analytic,
}

impl std::fmt::Display for TauMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TauMethod::FixedPoint => "fixed_point",
            TauMethod::Trace => "trace",
            TauMethod::Special => "special",
            TauMethod::Analytic => "analytic",
        })
    }
}

/// Per-edge resistance data: `r = r(p_i,q_i)` and `R_i`, the resistance
/// between the endpoints in `Γ − e_i` (infinite for a bridge).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeResistanceData {
    pub edge_id: usize,
    pub length: f64,
    pub r_endpoints: f64,
    pub big_r: f64,
    pub is_bridge: bool,
}

impl EdgeResistanceData {
    /// `L_i³/(L_i+R_i)² = (L_i − r)²/L_i`; zero for a bridge.
    pub fn first_term_summand(&self) -> f64 {
        if self.is_bridge {
            0.0
        } else {
            (self.length - self.r_endpoints).powi(2) / self.length
        }
    }

    /// `L_i/(L_i+R_i) = (L_i − r)/L_i`; zero for a bridge.
    pub fn genus_summand(&self) -> f64 {
        if self.is_bridge {
            0.0
        } else {
            (self.length - self.r_endpoints) / self.length
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TauDiagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_vertex: Option<usize>,
    pub total_length: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus_residual: Option<f64>,
    pub bridge_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_conditions: Option<SpecialConditionsReport>,
    /// 95% interval on `tr(L⁺)` when it was estimated stochastically.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_ci95: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Tau value with its two-term split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauResult {
    pub tau: f64,
    pub first_term: f64,
    pub second_term: f64,
    pub method: TauMethod,
    pub v: usize,
    pub e: usize,
    pub genus: i64,
    pub normalized: bool,
    pub diagnostics: TauDiagnostics,
}

impl TauResult {
    pub(crate) fn new(
        g: &MetrizedGraph,
        first_term: f64,
        second_term: f64,
        method: TauMethod,
        diagnostics: TauDiagnostics,
    ) -> Self {
        Self {
            tau: first_term + second_term,
            first_term,
            second_term,
            method,
            v: g.vertex_count(),
            e: g.edge_count(),
            genus: g.genus(),
            normalized: (diagnostics.total_length - 1.0).abs() <= 1e-12,
            diagnostics,
        }
    }

    /// `τ/ℓ`, the tau constant of the normalized graph.
    pub fn normalized_tau(&self) -> f64 {
        self.tau / self.diagnostics.total_length
    }
}

fn check_pair(g: &MetrizedGraph, pinv: &PseudoInverse) -> Result<()> {
    if !g.is_adequate() {
        return Err(Error::NotAdequate);
    }
    if g.vertex_count() != pinv.dim() {
        return Err(Error::DimensionMismatch {
            graph: g.vertex_count(),
            pinv: pinv.dim(),
        });
    }
    Ok(())
}

/// Endpoint resistance and `R_i` for every edge of an adequate graph.
/// Bridges come from the combinatorial bridge search, never from comparing
/// `r` with `L_i`.
pub fn edge_resistance_data(g: &MetrizedGraph, pinv: &PseudoInverse) -> Result<Vec<EdgeResistanceData>> {
    check_pair(g, pinv)?;
    let bridge_ids = bridges(g);
    let mut is_bridge = vec![false; g.edge_count()];
    for id in bridge_ids {
        is_bridge[id] = true;
    }
    g.edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let r = pinv.resistance_unchecked(e.a, e.b);
            if is_bridge[id] {
                return Ok(EdgeResistanceData {
                    edge_id: id,
                    length: e.length,
                    r_endpoints: r,
                    big_r: f64::INFINITY,
                    is_bridge: true,
                });
            }
            if r >= e.length * (1.0 - BRIDGE_COLLAPSE_TOL) {
                return Err(Error::NumericalInconsistency {
                    edge: id,
                    resistance: r,
                    length: e.length,
                });
            }
            Ok(EdgeResistanceData {
                edge_id: id,
                length: e.length,
                r_endpoints: r,
                big_r: e.length * r / (e.length - r),
                is_bridge: false,
            })
        })
        .collect()
}

/// `Σ L_i/(L_i+R_i) − g`, bridges contributing zero.
pub fn genus_identity_residual(g: &MetrizedGraph, data: &[EdgeResistanceData]) -> f64 {
    compensated_sum(data.iter().map(EdgeResistanceData::genus_summand)) - g.genus() as f64
}

fn first_term(data: &[EdgeResistanceData]) -> f64 {
    compensated_sum(data.iter().map(EdgeResistanceData::first_term_summand)) / 12.0
}

fn base_diagnostics(g: &MetrizedGraph, data: &[EdgeResistanceData]) -> TauDiagnostics {
    TauDiagnostics {
        total_length: g.total_length(),
        genus_residual: Some(genus_identity_residual(g, data)),
        bridge_count: data.iter().filter(|d| d.is_bridge).count(),
        ..TauDiagnostics::default()
    }
}

/// Tau from the edge formula with base vertex `p`.
pub fn tau_fixed_point(g: &MetrizedGraph, pinv: &PseudoInverse, p: usize) -> Result<TauResult> {
    check_pair(g, pinv)?;
    if p >= g.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: p,
            vertex_count: g.vertex_count(),
        });
    }
    let data = edge_resistance_data(g, pinv)?;
    let mut second = CompensatedSum::new();
    for (d, e) in data.iter().zip(g.edges()) {
        if d.is_bridge {
            second.add(e.length);
        } else {
            let diff = pinv.resistance_unchecked(e.a, p) - pinv.resistance_unchecked(e.b, p);
            second.add(diff * diff / e.length);
        }
    }
    let mut diag = base_diagnostics(g, &data);
    diag.base_vertex = Some(p);
    Ok(TauResult::new(
        g,
        first_term(&data),
        second.value() / 4.0,
        TauMethod::FixedPoint,
        diag,
    ))
}

/// Tau with the second term expressed through `tr(L⁺)` and the diagonal of
/// `L⁺`. The identity holds with bridges as well: averaging the base-vertex
/// form over all `p` gives it, and a bridge's base-vertex summand is exactly
/// `L_i`.
pub fn tau_trace(g: &MetrizedGraph, pinv: &PseudoInverse) -> Result<TauResult> {
    check_pair(g, pinv)?;
    let data = edge_resistance_data(g, pinv)?;
    let v = g.vertex_count() as f64;
    let mut diag_part = CompensatedSum::new();
    for e in g.edges() {
        let d = pinv.entry(e.a, e.a) - pinv.entry(e.b, e.b);
        diag_part.add(d * d / e.length);
    }
    let second = (4.0 / v * pinv.trace() + diag_part.value()) / 4.0;
    Ok(TauResult::new(
        g,
        first_term(&data),
        second,
        TauMethod::Trace,
        base_diagnostics(g, &data),
    ))
}

/// Kirchhoff index `½Σ_{p,q} r(p,q) = v·tr(L⁺)`.
pub fn kirchhoff_index(pinv: &PseudoInverse) -> f64 {
    pinv.dim() as f64 * pinv.trace()
}

/// Adequate graph, Laplacian and dense pseudo-inverse bundled for repeated
/// tau and resistance queries.
#[derive(Debug, Clone)]
pub struct ResistanceModel {
    pub laplacian: DiscreteLaplacian,
    pub pinv: PseudoInverse,
}

impl ResistanceModel {
    /// Dense route, refusing graphs whose adequate vertex set exceeds
    /// `dense_limit`.
    pub fn dense(g: &MetrizedGraph, dense_limit: usize) -> Result<Self> {
        let laplacian = DiscreteLaplacian::build_limited(g, dense_limit)?;
        let pinv = PseudoInverse::dense(&laplacian)?;
        Ok(Self { laplacian, pinv })
    }

    pub fn new(g: &MetrizedGraph) -> Result<Self> {
        Self::dense(g, DEFAULT_DENSE_LIMIT)
    }

    pub fn graph(&self) -> &MetrizedGraph {
        self.laplacian.graph()
    }

    pub fn tau_fixed_point(&self, p: usize) -> Result<TauResult> {
        tau_fixed_point(self.graph(), &self.pinv, p)
    }

    pub fn tau_trace(&self) -> Result<TauResult> {
        tau_trace(self.graph(), &self.pinv)
    }

    pub fn tau_special(&self) -> Result<TauResult> {
        tau_special(self.graph(), &self.pinv)
    }

    pub fn edge_data(&self) -> Result<Vec<EdgeResistanceData>> {
        edge_resistance_data(self.graph(), &self.pinv)
    }

    pub fn kirchhoff_index(&self) -> f64 {
        kirchhoff_index(&self.pinv)
    }

    /// Largest resistance over all vertex pairs.
    pub fn max_resistance(&self) -> f64 {
        let v = self.pinv.dim();
        (0..v)
            .flat_map(|p| (p + 1..v).map(move |q| (p, q)))
            .map(|(p, q)| self.pinv.resistance_unchecked(p, q))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn model(g: &MetrizedGraph) -> ResistanceModel {
        ResistanceModel::new(g).unwrap()
    }

    #[test]
    fn circle_and_tree_values() {
        let c = families::circle(7).normalize().unwrap();
        let m = model(&c);
        let t = m.tau_fixed_point(0).unwrap();
        assert!((t.tau - 1.0 / 12.0).abs() < 1e-14);
        assert!(t.normalized);
        let tree = families::path(5).normalize().unwrap();
        let m = model(&tree);
        let t = m.tau_fixed_point(2).unwrap();
        assert_eq!(t.first_term, 0.0);
        assert!((t.tau - 0.25).abs() < 1e-15);
        assert_eq!(t.diagnostics.bridge_count, 5);
        let t = m.tau_trace().unwrap();
        assert!((t.tau - 0.25).abs() < 1e-13);
    }

    #[test]
    fn complete_four_normalized() {
        let g = families::complete(4).normalize().unwrap();
        let m = model(&g);
        let data = m.edge_data().unwrap();
        for d in &data {
            assert!((d.length - 1.0 / 6.0).abs() < 1e-15);
            assert!((d.r_endpoints - 1.0 / 12.0).abs() < 1e-14);
            assert!((d.big_r - 1.0 / 6.0).abs() < 1e-13);
        }
        for t in [m.tau_fixed_point(0).unwrap(), m.tau_trace().unwrap(), m.tau_special().unwrap()] {
            assert!((t.tau - 5.0 / 96.0).abs() < 1e-14, "{t:?}");
            assert!((t.first_term + t.second_term - t.tau).abs() < 1e-15);
        }
    }

    #[test]
    fn two_cycle_after_adequation() {
        let g = families::circle(2);
        let m = model(&g);
        assert_eq!(m.graph().vertex_count(), 3);
        let data = m.edge_data().unwrap();
        // The unsplit unit edge sees the other (split) unit edge in parallel.
        assert!((data[0].big_r - 1.0).abs() < 1e-13);
        assert!((m.tau_trace().unwrap().tau - 2.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn path_edge_is_bridge() {
        let g = families::path(1);
        let m = model(&g);
        let d = m.edge_data().unwrap();
        assert!(d[0].is_bridge);
        assert_eq!(d[0].big_r, f64::INFINITY);
        assert!((d[0].r_endpoints - 1.0).abs() < 1e-14);
    }

    #[test]
    fn genus_residuals() {
        for g in [families::circle(5), families::path(4), families::hexagonal_torus(2, 1).unwrap()] {
            let m = model(&g);
            let res = genus_identity_residual(m.graph(), &m.edge_data().unwrap());
            assert!(res.abs() < 1e-9, "{res}");
        }
    }

    #[test]
    fn kirchhoff_examples() {
        assert!((model(&families::complete(4)).kirchhoff_index() - 3.0).abs() < 1e-13);
        assert!((model(&families::circle(3)).kirchhoff_index() - 2.0).abs() < 1e-13);
        assert_eq!(model(&MetrizedGraph::point()).kirchhoff_index(), 0.0);
    }

    #[test]
    fn rejects_mismatched_input() {
        let g = families::circle(4);
        let other = model(&families::circle(5));
        assert!(matches!(
            tau_trace(&g, &other.pinv),
            Err(Error::DimensionMismatch { graph: 4, pinv: 5 })
        ));
        assert_eq!(
            tau_trace(&families::circle(2), &other.pinv).unwrap_err(),
            Error::NotAdequate
        );
        let m = model(&g);
        assert!(m.tau_fixed_point(9).is_err());
        assert!(matches!(
            ResistanceModel::dense(&g, 3),
            Err(Error::TooLarge { vertices: 4, .. })
        ));
    }

    #[test]
    fn result_serializes_flat() {
        let m = model(&families::circle(3).normalize().unwrap());
        let json = serde_json::to_value(m.tau_trace().unwrap()).unwrap();
        for key in ["tau", "first_term", "second_term", "method", "v", "e", "genus", "normalized", "diagnostics"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["method"], "trace");
        assert_eq!(json["normalized"], true);
    }
}
