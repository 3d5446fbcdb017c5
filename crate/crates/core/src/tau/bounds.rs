use serde::Serialize;

use super::TauResult;
use crate::error::{Error, Result};
use crate::graph::{MetrizedGraph, StructureReport};

/// Slack allowed when comparing a computed tau against a bound.
const BOUND_TOL: f64 = 1e-12;

/// Regular-graph tau bounds evaluated at the normalized tau `τ/ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub degree: usize,
    pub v: usize,
    pub normalized_tau: f64,
    /// `1/12 − (v−1)(r−2)/(3vr²)`
    pub upper: f64,
    /// `1/12 − (v−1)((r−1)v² − 5v + 6)/(3r²v³)`
    pub lower: f64,
    pub upper_holds: bool,
    pub lower_holds: bool,
    /// `1/108 + (7v² − 11v + 6)/(27v³)` for cubic graphs.
    pub cubic_floor: Option<f64>,
    pub cubic_floor_holds: Option<bool>,
    /// Sanity flag `τ/ℓ > 1/108`; a conjectured bound, never asserted.
    pub above_conjectural_floor: bool,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.upper_holds && self.lower_holds && self.cubic_floor_holds.unwrap_or(true)
    }
}

/// Checks tau against the bounds for `r`-regular equal-length graphs with
/// edge connectivity `r`, for `r ≥ 3`.
pub fn tau_bounds_check(g: &MetrizedGraph, structure: &StructureReport, tau: &TauResult) -> Result<BoundsReport> {
    let degree = match structure.regular_degree {
        Some(r) if r >= 3 => r,
        Some(r) => return Err(Error::PreconditionNotMet(format!("degree {r} is below 3"))),
        None => return Err(Error::PreconditionNotMet("graph is not regular".into())),
    };
    if g.common_edge_length().is_none() {
        return Err(Error::PreconditionNotMet("edge lengths differ".into()));
    }
    if structure.has_self_loops || structure.has_multi_edges {
        return Err(Error::PreconditionNotMet("self-loops or multiple edges".into()));
    }
    match structure.edge_connectivity {
        Some(k) if k == degree => {}
        Some(k) => {
            return Err(Error::PreconditionNotMet(format!(
                "edge connectivity {k} differs from degree {degree}"
            )))
        }
        None => return Err(Error::PreconditionNotMet("edge connectivity not computed".into())),
    }
    let (v, r) = (g.vertex_count() as f64, degree as f64);
    let t = tau.normalized_tau();
    let upper = 1.0 / 12.0 - (v - 1.0) * (r - 2.0) / (3.0 * v * r * r);
    let lower = 1.0 / 12.0 - (v - 1.0) * ((r - 1.0) * v * v - 5.0 * v + 6.0) / (3.0 * r * r * v.powi(3));
    let cubic_floor = (degree == 3).then(|| 1.0 / 108.0 + (7.0 * v * v - 11.0 * v + 6.0) / (27.0 * v.powi(3)));
    Ok(BoundsReport {
        degree,
        v: g.vertex_count(),
        normalized_tau: t,
        upper,
        lower,
        upper_holds: t <= upper + BOUND_TOL,
        lower_holds: t >= lower - BOUND_TOL,
        cubic_floor,
        cubic_floor_holds: cubic_floor.map(|f| t >= f - BOUND_TOL),
        above_conjectural_floor: t > 1.0 / 108.0,
    })
}
