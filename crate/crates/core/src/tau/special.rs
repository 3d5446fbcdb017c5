use serde::Serialize;

use super::{check_pair, edge_resistance_data, EdgeResistanceData, TauDiagnostics, TauMethod, TauResult};
use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::laplacian::PseudoInverse;
use crate::sum::compensated_sum;

/// Relative spread allowed between endpoint resistances of different edges.
const EQUAL_RESISTANCE_TOL: f64 = 1e-9;

/// Which of the regular-graph conditions hold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialConditionsReport {
    pub regular_degree: Option<usize>,
    pub equal_lengths: bool,
    pub no_self_loops: bool,
    pub no_multi_edges: bool,
    pub no_bridges: bool,
    /// `(max r − min r)/max r` over edge endpoint resistances.
    pub resistance_spread: f64,
    pub equal_edge_resistances: bool,
}

impl SpecialConditionsReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.regular_degree.is_none() {
            out.push("not regular");
        }
        if !self.equal_lengths {
            out.push("unequal edge lengths");
        }
        if !self.no_self_loops {
            out.push("self-loops");
        }
        if !self.no_multi_edges {
            out.push("multiple edges");
        }
        if !self.no_bridges {
            out.push("bridges");
        }
        if !self.equal_edge_resistances {
            out.push("unequal edge endpoint resistances");
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn check_special_conditions(g: &MetrizedGraph, pinv: &PseudoInverse) -> Result<SpecialConditionsReport> {
    check_pair(g, pinv)?;
    let degrees = g.degrees();
    let regular_degree = degrees
        .first()
        .copied()
        .filter(|&d| degrees.iter().all(|&x| x == d));
    let data = edge_resistance_data(g, pinv)?;
    let (lo, hi) = data
        .iter()
        .map(|d| d.r_endpoints)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
    let resistance_spread = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
    Ok(SpecialConditionsReport {
        regular_degree,
        equal_lengths: g.common_edge_length().is_some(),
        no_self_loops: !g.has_self_loops(),
        no_multi_edges: !g.has_multi_edges(),
        no_bridges: data.iter().all(|d| !d.is_bridge),
        resistance_spread,
        equal_edge_resistances: resistance_spread <= EQUAL_RESISTANCE_TOL,
    })
}

/// `(first, second)` of the regular-graph formula for a graph with `v`
/// vertices, degree `r`, total length `ℓ` and `tr(L⁺)`:
/// `(ℓ/12)(1 − 2(v−1)/(rv))²` and `tr(L⁺)/v`.
pub fn special_tau_terms(v: usize, degree: usize, total_length: f64, trace: f64) -> (f64, f64) {
    let (vf, rf) = (v as f64, degree as f64);
    let x = 1.0 - 2.0 * (vf - 1.0) / (rf * vf);
    (total_length * x * x / 12.0, trace / vf)
}

/// Tau from the regular-graph formula, after verifying its preconditions.
pub fn tau_special(g: &MetrizedGraph, pinv: &PseudoInverse) -> Result<TauResult> {
    let report = check_special_conditions(g, pinv)?;
    if !report.all_hold() {
        return Err(Error::SpecialConditionsNotMet(report.failures().join(", ")));
    }
    let degree = report.regular_degree.expect("checked");
    let total_length = g.total_length();
    let (first, second) = special_tau_terms(g.vertex_count(), degree, total_length, pinv.trace());
    let diagnostics = TauDiagnostics {
        total_length,
        bridge_count: 0,
        special_conditions: Some(report),
        ..TauDiagnostics::default()
    };
    Ok(TauResult::new(g, first, second, TauMethod::Special, diagnostics))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub predicted: f64,
    pub measured: f64,
    pub residual: f64,
}

/// Predicted edge constants of a special graph (on its normalization) with
/// the values measured from `L⁺`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialConstantsReport {
    pub v: usize,
    pub e: usize,
    pub genus: i64,
    pub degree: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SpecialConstantsReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn special_structure_constants(g: &MetrizedGraph, pinv: &PseudoInverse) -> Result<SpecialConstantsReport> {
    let report = check_special_conditions(g, pinv)?;
    if !report.all_hold() {
        return Err(Error::SpecialConditionsNotMet(report.failures().join(", ")));
    }
    let degree = report.regular_degree.expect("checked");
    let ell = g.total_length();
    // Measured on the normalization: lengths and resistances scale by 1/ℓ.
    let data: Vec<EdgeResistanceData> = edge_resistance_data(g, pinv)?
        .into_iter()
        .map(|d| EdgeResistanceData {
            length: d.length / ell,
            r_endpoints: d.r_endpoints / ell,
            big_r: d.big_r / ell,
            ..d
        })
        .collect();
    let (v, e, genus) = (g.vertex_count(), g.edge_count(), g.genus());
    let (vf, ef, gf, rf) = (v as f64, e as f64, genus as f64, degree as f64);

    let mut checks = Vec::new();
    let mut push_per_edge = |name, predicted: f64, f: &dyn Fn(&EdgeResistanceData) -> f64| {
        let worst = data
            .iter()
            .map(f)
            .max_by(|x, y| (x - predicted).abs().total_cmp(&(y - predicted).abs()))
            .unwrap_or(f64::NAN);
        checks.push(IdentityCheck {
            name,
            predicted,
            measured: worst,
            residual: (worst - predicted).abs(),
        });
    };
    push_per_edge("L_i", 1.0 / ef, &|d| d.length);
    push_per_edge("R_i", (vf - 1.0) / (ef * gf), &|d| d.big_r);
    push_per_edge("R_i/(L_i+R_i)", (vf - 1.0) / ef, &|d| d.r_endpoints / d.length);
    push_per_edge("L_i/(L_i+R_i)", gf / ef, &|d| (d.length - d.r_endpoints) / d.length);
    push_per_edge("L_i (regular)", 2.0 / (rf * vf), &|d| d.length);
    push_per_edge(
        "R_i (regular)",
        4.0 * (vf - 1.0) / (rf * (rf - 2.0) * vf * vf + 2.0 * rf * vf),
        &|d| d.big_r,
    );

    let mut push_sum = |name, predicted: f64, f: &dyn Fn(&EdgeResistanceData) -> f64| {
        let measured = compensated_sum(data.iter().map(f));
        checks.push(IdentityCheck {
            name,
            predicted,
            measured,
            residual: (measured - predicted).abs(),
        });
    };
    let a = (vf - 1.0) / ef;
    let b = gf / ef;
    push_sum("sum L_iR_i/(L_i+R_i)", a, &|d| d.r_endpoints);
    push_sum("sum L_iR_i^2/(L_i+R_i)^2", a * a, &|d| d.r_endpoints * d.r_endpoints / d.length);
    push_sum("sum L_i^2/(L_i+R_i)", b, &|d| d.length - d.r_endpoints);
    push_sum("sum L_i^3/(L_i+R_i)^2", b * b, &|d| (d.length - d.r_endpoints).powi(2) / d.length);
    let c = 1.0 - 2.0 * (vf - 1.0) / (rf * vf);
    push_sum("sum L_i^3/(L_i+R_i)^2 (regular)", c * c, &|d| {
        (d.length - d.r_endpoints).powi(2) / d.length
    });
    if degree == 3 {
        let cubic = (1.0 + 2.0 / vf).powi(2) / 9.0;
        push_sum("sum L_i^3/(L_i+R_i)^2 (cubic)", cubic, &|d| {
            (d.length - d.r_endpoints).powi(2) / d.length
        });
    }
    Ok(SpecialConstantsReport {
        v,
        e,
        genus,
        degree,
        checks,
    })
}
