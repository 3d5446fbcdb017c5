use clap::{Args, ValueEnum};
use log::{info, warn};
use metrized_tau::analytic::{hex_eigenvalues, hex_trace_pinv, kirchhoff_hex_bounds, tau_hex_closed_result, tau_hex_lattice_sum};
use metrized_tau::laplacian::stochastic::hutchinson_trace;
use metrized_tau::laplacian::DEFAULT_DENSE_LIMIT;
use metrized_tau::sum::compensated_sum;
use metrized_tau::tau::{special_tau_terms, ResistanceModel, TauDiagnostics};
use metrized_tau::{DiscreteLaplacian, MetrizedGraph, TauMethod, TauResult};
use serde::Serialize;

use crate::error::CliError;
use crate::source::GraphSource;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Method {
    /// Dense trace route. Past the size limit: the closed form for hexagonal
    /// tori, otherwise (with --allow-large) the regular-graph formula with a
    /// stochastic trace.
    Auto,
    FixedPoint,
    Trace,
    /// Regular-graph formula; with --allow-large past the size limit the
    /// trace is estimated stochastically and the resistance condition is
    /// not checked.
    Special,
    /// Closed form (hexagonal tori only).
    Analytic,
}

#[derive(Args, Clone, Debug)]
pub struct RouteOptions {
    /// Largest adequate vertex count for dense routes.
    #[arg(long, default_value_t = DEFAULT_DENSE_LIMIT, value_parser = parse_limit)]
    pub size_limit: usize,
    /// Permit graphs past --size-limit (long-running).
    #[arg(long)]
    pub allow_large: bool,
    /// Base vertex for the fixed-point route.
    #[arg(long, default_value_t = 0)]
    pub base: usize,
    /// Probe vectors for the stochastic trace.
    #[arg(long, default_value_t = 64)]
    pub probes: usize,
    /// Seed for the stochastic trace probes.
    #[arg(long, default_value_t = 1)]
    pub probe_seed: u64,
}

fn parse_limit(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 2 => Ok(v),
        Ok(_) => Err("must be at least 2".into()),
        Err(e) => Err(e.to_string()),
    }
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self {
            size_limit: DEFAULT_DENSE_LIMIT,
            allow_large: false,
            base: 0,
            probes: 64,
            probe_seed: 1,
        }
    }
}

fn adequate_size(g: &MetrizedGraph) -> usize {
    if g.is_adequate() {
        g.vertex_count()
    } else {
        g.make_adequate().graph.vertex_count()
    }
}

fn dense_model(g: &MetrizedGraph, route: &RouteOptions) -> Result<ResistanceModel, CliError> {
    let dim = adequate_size(g);
    let limit = if route.allow_large {
        if dim > route.size_limit {
            warn!("dense route on {dim} vertices past --size-limit {}", route.size_limit);
        }
        usize::MAX
    } else {
        route.size_limit
    };
    info!("factorizing {dim}x{dim} Laplacian");
    Ok(ResistanceModel::dense(g, limit)?)
}

/// Scales a normalized analytic result to total length `ell`.
fn rescale(mut r: TauResult, ell: f64) -> TauResult {
    r.tau *= ell;
    r.first_term *= ell;
    r.second_term *= ell;
    r.normalized = false;
    r.diagnostics.total_length = ell;
    r
}

fn analytic_hex(n: usize, m: usize, normalized: bool) -> TauResult {
    let r = if n == m {
        tau_hex_closed_result(n + 1)
    } else {
        tau_hex_lattice_sum(n, m)
    };
    if normalized {
        r
    } else {
        rescale(r, 3.0 * ((n + 1) * (m + 1)) as f64)
    }
}

pub fn tau(source: &GraphSource, normalized: bool, method: Method, route: &RouteOptions) -> Result<TauResult, CliError> {
    let hex = source.hex_params()?;
    let past_limit = source.predicted_vertices().is_some_and(|v| v > route.size_limit);
    match (method, hex) {
        (Method::Analytic, None) => {
            return Err(CliError::Usage("--method analytic applies to hexagonal tori only".into()))
        }
        (Method::Analytic, Some((n, m))) => return Ok(analytic_hex(n, m, normalized)),
        (Method::Auto, Some((n, m))) if past_limit => {
            info!("H({n},{m}) is past --size-limit; using the closed form");
            return Ok(analytic_hex(n, m, normalized));
        }
        _ => {}
    }
    let (_, g) = source.resolve()?;
    let g = if normalized { g.normalize()? } else { g };
    let stochastic = matches!(method, Method::Special | Method::Auto);
    if stochastic && route.allow_large && adequate_size(&g) > route.size_limit {
        return stochastic_special(&g, route);
    }
    let model = dense_model(&g, route)?;
    let result = match method {
        Method::FixedPoint => model.tau_fixed_point(route.base)?,
        Method::Special => model.tau_special()?,
        _ => model.tau_trace()?,
    };
    Ok(result)
}

/// Regular-graph formula with a Hutchinson estimate of `tr(L⁺)`.
fn stochastic_special(g: &MetrizedGraph, route: &RouteOptions) -> Result<TauResult, CliError> {
    let s = g.structure_report();
    let degree = s
        .regular_degree
        .ok_or_else(|| CliError::Usage("the special formula needs a regular graph".into()))?;
    if s.has_self_loops || s.has_multi_edges || g.common_edge_length().is_none() || !s.is_bridgeless() {
        return Err(CliError::Usage(
            "the special formula needs equal lengths, no loops, no multiple edges and no bridges".into(),
        ));
    }
    info!("estimating tr(L+) with {} probes", route.probes);
    let est = hutchinson_trace(g, route.probes, route.probe_seed);
    let total_length = g.total_length();
    let (first, second) = special_tau_terms(g.vertex_count(), degree, total_length, est.estimate);
    Ok(TauResult {
        tau: first + second,
        first_term: first,
        second_term: second,
        method: TauMethod::Special,
        v: g.vertex_count(),
        e: g.edge_count(),
        genus: g.genus(),
        normalized: (total_length - 1.0).abs() <= 1e-12,
        diagnostics: TauDiagnostics {
            total_length,
            bridge_count: 0,
            trace_ci95: Some(est.ci95),
            note: Some(format!(
                "stochastic trace ({} probes, std error {:.3e}); equal endpoint resistances not verified",
                est.probes, est.std_error
            )),
            ..TauDiagnostics::default()
        },
    })
}

#[derive(Debug, Serialize)]
pub struct KirchhoffReport {
    pub label: String,
    pub v: usize,
    pub kirchhoff_index: f64,
    pub normalized: bool,
    pub route: &'static str,
    /// Published bracket for unit-length `H(n, n)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hex_bounds: Option<(f64, f64)>,
}

pub fn kirchhoff(source: &GraphSource, normalized: bool, route: &RouteOptions) -> Result<KirchhoffReport, CliError> {
    let label = source.label();
    let hex = source.hex_params()?;
    let hex_bounds = match hex {
        Some((n, m)) if n == m && !normalized => Some(kirchhoff_hex_bounds(n)),
        _ => None,
    };
    if let (Some((n, m)), Some(v)) = (hex, source.predicted_vertices()) {
        if v > route.size_limit {
            let cells = ((n + 1) * (m + 1)) as f64;
            let scale = if normalized { 1.0 / (3.0 * cells) } else { 1.0 };
            return Ok(KirchhoffReport {
                label,
                v,
                kirchhoff_index: 2.0 * cells * hex_trace_pinv(n, m) * scale,
                normalized,
                route: "analytic",
                hex_bounds,
            });
        }
    }
    let (_, g) = source.resolve()?;
    let g = if normalized { g.normalize()? } else { g };
    let v = g.vertex_count();
    let model = dense_model(&g, route)?;
    // Sum over the input's own vertices; adequation points are excluded.
    let kf = compensated_sum((0..v).flat_map(|p| (p + 1..v).map(move |q| (p, q))).map(|(p, q)| {
        model.pinv.resistance(p, q).expect("original vertices are in range")
    }));
    Ok(KirchhoffReport {
        label,
        v,
        kirchhoff_index: kf,
        normalized,
        route: "dense",
        hex_bounds,
    })
}

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub label: String,
    pub dim: usize,
    /// Ascending Laplacian eigenvalues (numerical when `numeric`).
    pub eigenvalues: Vec<f64>,
    pub numeric: bool,
    /// Largest sorted gap to the closed-form hexagonal spectrum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_gap: Option<f64>,
}

pub fn spectrum(source: &GraphSource, route: &RouteOptions) -> Result<SpectrumReport, CliError> {
    let label = source.label();
    let hex = source.hex_params()?;
    if let (Some((n, m)), Some(v)) = (hex, source.predicted_vertices()) {
        if v > route.size_limit && !route.allow_large {
            info!("H({n},{m}) is past --size-limit; reporting the closed form only");
            return Ok(SpectrumReport {
                label,
                dim: v,
                eigenvalues: hex_eigenvalues(n, m).eigenvalues,
                numeric: false,
                closed_form_gap: None,
            });
        }
    }
    let (_, g) = source.resolve()?;
    let limit = if route.allow_large { usize::MAX } else { route.size_limit };
    let lap = DiscreteLaplacian::build_limited(&g, limit)?;
    let eigenvalues = lap.eigenvalues();
    let closed_form_gap = match hex {
        Some((n, m)) if g.is_adequate() => Some(
            hex_eigenvalues(n, m)
                .eigenvalues
                .iter()
                .zip(&eigenvalues)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        ),
        _ => None,
    };
    Ok(SpectrumReport {
        label,
        dim: lap.dim(),
        eigenvalues,
        numeric: true,
        closed_form_gap,
    })
}
