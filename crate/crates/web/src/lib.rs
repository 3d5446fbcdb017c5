//! Browser bindings. Every export returns a JSON string; the `*_json`
//! functions hold the logic so they can be exercised natively.

use metrized_tau::analytic::{
    hex_eigenvalues, tau_hex_approx, tau_hex_bounds, tau_hex_closed, tau_hex_lattice_sum,
};
use metrized_tau::families::{circle, complete, hexagonal_torus, mm_graph, random_bridgeless, tt_graph};
use metrized_tau::tau::ResistanceModel;
use metrized_tau::{DiscreteLaplacian, MetrizedGraph};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest graph the page factorizes densely.
pub const BROWSER_DENSE_LIMIT: usize = 1200;
const SWEEP_MAX: usize = 400;

#[derive(Serialize)]
struct Summary {
    label: String,
    v: usize,
    e: usize,
    genus: i64,
    tau: f64,
    reciprocal: f64,
    first_term: f64,
    second_term: f64,
    kirchhoff_index: Option<f64>,
    method: String,
    edges: Vec<(usize, usize)>,
}

fn family_graph(family: &str, p: u32, q: u32, r: u32) -> Result<(String, MetrizedGraph), String> {
    let (p, q, r) = (p as usize, q as usize, r as usize);
    let g = match family {
        "hex" => hexagonal_torus(p, q),
        "mm" => mm_graph(p, q),
        "tt" => tt_graph(p, q, r),
        "circle" if p >= 1 => Ok(circle(p)),
        "complete" if p >= 2 => Ok(complete(p)),
        "random" if p >= 3 => Ok(random_bridgeless(p, q, r as u64)),
        "circle" | "complete" | "random" => return Err(format!("{family}: first parameter too small")),
        other => return Err(format!("unknown family {other}")),
    }
    .map_err(|e| e.to_string())?;
    let label = match family {
        "hex" => format!("H({p},{q})"),
        "mm" => format!("MM({p},{q})"),
        "tt" => format!("TT({p},{q},{r})"),
        "circle" => format!("C{p}"),
        "complete" => format!("K{p}"),
        _ => format!("random(v={p},chords={q},seed={r})"),
    };
    Ok((label, g))
}

/// Normalized tau and Kirchhoff index of a family member, with its edges
/// for drawing. Hexagonal tori past the dense limit use the lattice sum.
pub fn family_summary_json(family: &str, p: u32, q: u32, r: u32) -> Result<String, String> {
    if family == "hex" && 2 * (p as usize + 1) * (q as usize + 1) > BROWSER_DENSE_LIMIT {
        let t = tau_hex_lattice_sum(p as usize, q as usize);
        let summary = Summary {
            label: format!("H({p},{q})"),
            v: t.v,
            e: t.e,
            genus: t.genus,
            tau: t.tau,
            reciprocal: 1.0 / t.tau,
            first_term: t.first_term,
            second_term: t.second_term,
            kirchhoff_index: None,
            method: t.method.to_string(),
            edges: Vec::new(),
        };
        return serde_json::to_string(&summary).map_err(|e| e.to_string());
    }
    let (label, g) = family_graph(family, p, q, r)?;
    let g = g.normalize().map_err(|e| e.to_string())?;
    let model = ResistanceModel::dense(&g, BROWSER_DENSE_LIMIT).map_err(|e| e.to_string())?;
    let t = model.tau_trace().map_err(|e| e.to_string())?;
    let summary = Summary {
        label,
        v: t.v,
        e: t.e,
        genus: t.genus,
        tau: t.tau,
        reciprocal: 1.0 / t.tau,
        first_term: t.first_term,
        second_term: t.second_term,
        kirchhoff_index: g.is_adequate().then(|| model.kirchhoff_index()),
        method: t.method.to_string(),
        edges: g.edges().iter().map(|e| (e.a, e.b)).collect(),
    };
    serde_json::to_string(&summary).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Spectrum {
    n: usize,
    m: usize,
    eigenvalues: Vec<f64>,
    numeric_gap: Option<f64>,
}

/// Closed-form spectrum of `H(n, m)`, checked against a dense
/// eigendecomposition when the torus is small.
pub fn hex_spectrum_json(n: u32, m: u32) -> Result<String, String> {
    let (n, m) = (n as usize, m as usize);
    let closed = hex_eigenvalues(n, m).eigenvalues;
    let numeric_gap = if closed.len() <= 400 {
        let g = hexagonal_torus(n, m).map_err(|e| e.to_string())?;
        g.is_adequate().then(|| {
            DiscreteLaplacian::build(&g)
                .eigenvalues()
                .iter()
                .zip(&closed)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    } else {
        None
    };
    serde_json::to_string(&Spectrum {
        n,
        m,
        eigenvalues: closed,
        numeric_gap,
    })
    .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SweepPoint {
    n: usize,
    tau: f64,
    lower: f64,
    upper: f64,
    approx: f64,
}

/// Closed-form normalized tau of square tori for `n = 2..=n_max`, with
/// the polynomial bracket and the large-n approximation.
pub fn hex_sweep_json(n_max: u32) -> Result<String, String> {
    let n_max = n_max as usize;
    if !(2..=SWEEP_MAX).contains(&n_max) {
        return Err(format!("n_max must lie in 2..={SWEEP_MAX}"));
    }
    let points: Vec<SweepPoint> = (2..=n_max)
        .map(|n| {
            let (lower, upper) = tau_hex_bounds(n);
            SweepPoint {
                n,
                tau: tau_hex_closed(n),
                lower,
                upper,
                approx: tau_hex_approx(n),
            }
        })
        .collect();
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn family_summary(family: &str, p: u32, q: u32, r: u32) -> Result<String, JsValue> {
    family_summary_json(family, p, q, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hex_spectrum(n: u32, m: u32) -> Result<String, JsValue> {
    hex_spectrum_json(n, m).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hex_sweep(n_max: u32) -> Result<String, JsValue> {
    hex_sweep_json(n_max).map_err(|e| JsValue::from_str(&e))
}
